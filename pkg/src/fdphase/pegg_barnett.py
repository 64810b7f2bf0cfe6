"""Pegg-Barnett phase bases and shift operators on a finite space.

The phase states are discrete-Fourier superpositions of the number states
over a 2*pi window anchored at theta_0. The hermitian phase operator is
their real-weighted projector sum, the unitary phase operator steps number
states down cyclically, and the number-power operator q^-N steps phase
states down cyclically; the window origin shows up only in the wrap-around
entry exp(i(s+1)theta_0) of the unitary phase operator.

The phase/number commutator is exposed through three routes: the direct
matrix product, a closed form derived from the phase-state expansion, and a
commonly quoted double-sum kernel. The first two agree to rounding for
every window; the kernel form differs from them by a unit-modulus factor
per element and is kept for flagged comparison, not as ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DimensionMismatch,
    NonOrthonormalFrame,
    OperatorMatrix,
    StateVector,
    TolerancePolicy,
    certified,
    max_abs,
    spectral_synthesize,
)

__all__ = [
    "SpaceConfig",
    "PhaseFrame",
    "build_phase_frame",
    "number_operator",
    "hermitian_phase_operator",
    "unitary_phase_operator",
    "unitary_phase_from_spectrum",
    "number_shift_operator",
    "commutator",
    "commutator_closed_form",
    "commutator_double_sum",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class SpaceConfig:
    """Finite Hilbert space of dimension s+1 with phase window origin theta0.

    The deformation parameter q = exp(2*pi*i/(s+1)) is the primitive root
    of unity inherent to the space, and the admissible phase angles are
    theta_m = theta0 + 2*pi*m/(s+1) for m = 0..s.
    """

    s: int
    theta0: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.s, bool) or not isinstance(self.s, (int, np.integer)):
            raise ValueError(f"top level index s must be an integer, got {self.s!r}")
        if self.s < 0:
            raise ValueError(f"top level index s must be non-negative, got {self.s}")
        object.__setattr__(self, "s", int(self.s))
        theta0 = float(self.theta0)
        if not math.isfinite(theta0):
            raise ValueError("theta0 must be finite")
        object.__setattr__(self, "theta0", theta0)

    @classmethod
    def from_dim(cls, dim: int, theta0: float = 0.0) -> "SpaceConfig":
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        return cls(s=int(dim) - 1, theta0=theta0)

    @property
    def dim(self) -> int:
        return self.s + 1

    @property
    def q(self) -> complex:
        """Primitive (s+1)-th root of unity exp(2*pi*i/(s+1))."""
        return complex(np.exp(2j * np.pi / self.dim))

    def root_power(self, exponent):
        """q**exponent on the principal branch exp(2*pi*i*exponent/(s+1))."""
        return np.exp(2j * np.pi * np.asarray(exponent, dtype=float) / self.dim)

    def thetas(self) -> np.ndarray:
        """All phase angles theta_m = theta0 + 2*pi*m/(s+1), m = 0..s."""
        return self.theta0 + TWO_PI * np.arange(self.dim) / self.dim

    def theta(self, m: int) -> float:
        return self.theta0 + TWO_PI * m / self.dim


@dataclass(frozen=True, eq=False)
class PhaseFrame:
    """The orthonormal phase states as columns of a dim x dim matrix."""

    config: SpaceConfig
    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=np.complex128, copy=True)
        if arr.shape != (self.config.dim, self.config.dim):
            raise DimensionMismatch(
                f"frame matrix must be {self.config.dim} x {self.config.dim}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def states(self) -> tuple[StateVector, ...]:
        return tuple(StateVector(self.matrix[:, m]) for m in range(self.config.dim))

    def state(self, m: int) -> StateVector:
        return StateVector(self.matrix[:, m])


def build_phase_frame(
    config: SpaceConfig, policy: TolerancePolicy | None = None
) -> PhaseFrame:
    """Build the phase states, certifying the frame orthonormal."""
    dim = config.dim
    policy = policy or TolerancePolicy.for_dim(dim)
    levels = np.arange(dim)
    matrix = np.exp(1j * np.outer(levels, config.thetas())) / math.sqrt(dim)
    deviation = max_abs(matrix.conj().T @ matrix - np.eye(dim))
    if deviation > policy.tol_op:
        raise NonOrthonormalFrame(deviation, policy.tol_op)
    return PhaseFrame(config=config, matrix=matrix)


def number_operator(config: SpaceConfig) -> OperatorMatrix:
    """diag(0, 1, ..., s)."""
    return OperatorMatrix(
        np.diag(np.arange(config.dim, dtype=np.complex128)),
        tags={"hermitian", "diagonal"},
    )


def hermitian_phase_operator(
    config: SpaceConfig, frame: PhaseFrame | None = None
) -> OperatorMatrix:
    """Phase operator sum_m theta_m |theta_m><theta_m|, hermitian-certified."""
    frame = frame or build_phase_frame(config)
    op = spectral_synthesize(frame.states, config.thetas().astype(np.complex128))
    return certified(op, "hermitian")


def unitary_phase_operator(config: SpaceConfig) -> OperatorMatrix:
    """The explicit cyclic down-shift on number states.

    Ones on |n-1><n| for n = 1..s plus the wrap-around entry
    exp(i(s+1)theta_0) on |s><0|; unitary-certified.
    """
    dim = config.dim
    entries = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(1, dim):
        entries[n - 1, n] = 1.0
    entries[dim - 1, 0] = np.exp(1j * dim * config.theta0)
    return certified(OperatorMatrix(entries), "unitary")


def unitary_phase_from_spectrum(
    config: SpaceConfig, frame: PhaseFrame | None = None
) -> OperatorMatrix:
    """sum_m exp(i theta_m)|theta_m><theta_m|, the spectral route to exp(iPhi)."""
    frame = frame or build_phase_frame(config)
    op = spectral_synthesize(frame.states, np.exp(1j * config.thetas()))
    return certified(op, "unitary")


def number_shift_operator(config: SpaceConfig, sign: str = "-") -> OperatorMatrix:
    """q^{sign N} = diag(q^{sign n}); for sign "-" the phase-state down-shift."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    exponents = np.arange(config.dim)
    if sign == "-":
        exponents = -exponents
    op = OperatorMatrix(np.diag(config.root_power(exponents)))
    return certified(certified(op, "diagonal"), "unitary")


def commutator(ml: OperatorMatrix, mr: OperatorMatrix) -> OperatorMatrix:
    """Ml Mr - Mr Ml."""
    if ml.dim != mr.dim:
        raise DimensionMismatch(f"operator dimensions differ: {ml.dim} vs {mr.dim}")
    return OperatorMatrix(ml.entries @ mr.entries - mr.entries @ ml.entries)


def commutator_closed_form(config: SpaceConfig) -> OperatorMatrix:
    """Closed form of [Phi, N] derived from the phase-state expansion.

    Element (n, n') for n != n' is
    (2*pi/(s+1)) (n'-n) exp(i(n-n')theta_0) / (exp(2*pi*i(n-n')/(s+1)) - 1)
    with zero diagonal. This agrees with the direct commutator for every
    window origin and dimension.
    """
    dim = config.dim
    levels = np.arange(dim)
    delta = levels[:, None] - levels[None, :]  # n - n'
    entries = np.zeros((dim, dim), dtype=np.complex128)
    off = delta != 0
    denom = np.exp(2j * np.pi * delta[off] / dim) - 1.0
    entries[off] = (
        (TWO_PI / dim)
        * (-delta[off])
        * np.exp(1j * delta[off] * config.theta0)
        / denom
    )
    return OperatorMatrix(entries)


def commutator_double_sum(config: SpaceConfig) -> OperatorMatrix:
    """The commonly quoted double-sum kernel for [Phi, N], taken verbatim.

    Sums (2*pi/(s+1)) (n'-n)|n'><n| / (exp(2*pi*i(n-n')/(s+1)) - 1) over all
    pairs n != n' in 0..s; the single-level space has no such pair and gives
    the zero matrix. The result carries no window dependence and differs
    from :func:`commutator_closed_form` by a unit-modulus factor per
    element, so it is reported as a flagged deviation rather than asserted.
    """
    dim = config.dim
    entries = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(dim):
        for n_prime in range(dim):
            if n_prime == n:
                continue
            weight = (n_prime - n) / (np.exp(2j * np.pi * (n - n_prime) / dim) - 1.0)
            entries[n_prime, n] += weight
    return OperatorMatrix(entries * (TWO_PI / dim))
