"""Small dense complex linear algebra with certified structural tags.

Vectors and operators are immutable wrappers around numpy arrays. Structural
facts (hermitian / unitary / diagonal) travel as tags that are attached only
after a numerical certification against a :class:`TolerancePolicy`, never
assumed. Every operator exponential used elsewhere in this package is
assembled from a known eigenbasis through :func:`spectral_synthesize`, so no
general matrix exponential or eigensolver lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "VALID_TAGS",
    "DimensionMismatch",
    "NonOrthonormalFrame",
    "TolerancePolicy",
    "StateVector",
    "OperatorMatrix",
    "PhaseComparison",
    "Certification",
    "basis_state",
    "identity",
    "mat_apply",
    "mat_mul",
    "mat_power",
    "adjoint",
    "equal_up_to_global_phase",
    "spectral_synthesize",
    "certify",
    "certified",
    "hermitian_deviation",
    "unitary_deviation",
    "diagonal_deviation",
    "tag_deviation",
    "max_abs",
]

TWO_PI = 2.0 * np.pi

VALID_TAGS = frozenset({"hermitian", "unitary", "diagonal"})


class DimensionMismatch(ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class NonOrthonormalFrame(ValueError):
    """An eigenvector frame failed its orthonormality certification."""

    def __init__(self, max_deviation: float, tolerance: float) -> None:
        super().__init__(
            "frame is not orthonormal: max deviation %.3e exceeds tolerance %.3e"
            % (max_deviation, tolerance)
        )
        self.max_deviation = max_deviation
        self.tolerance = tolerance


@dataclass(frozen=True)
class TolerancePolicy:
    """Comparison thresholds, scaled linearly with the dimension.

    ``tol_elem`` bounds per-element and per-state deviations, ``tol_norm``
    bounds norm drift, and ``tol_op`` bounds operator-level identities and
    tag certifications.
    """

    tol_elem: float
    tol_norm: float
    tol_op: float

    def __post_init__(self) -> None:
        for name in ("tol_elem", "tol_norm", "tol_op"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    @classmethod
    def for_dim(cls, dim: int) -> "TolerancePolicy":
        """Default thresholds for a space of the given dimension."""
        return cls(tol_elem=1e-12 * dim, tol_norm=1e-12 * dim, tol_op=1e-11 * dim)


def max_abs(values: np.ndarray) -> float:
    """Largest entry modulus; zero for empty input."""
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def hermitian_deviation(entries: np.ndarray) -> float:
    return max_abs(entries - entries.conj().T)


def unitary_deviation(entries: np.ndarray) -> float:
    dim = entries.shape[0]
    return max_abs(entries.conj().T @ entries - np.eye(dim))


def diagonal_deviation(entries: np.ndarray) -> float:
    off = entries - np.diag(np.diag(entries))
    return max_abs(off)


_TAG_DEVIATIONS = {
    "hermitian": hermitian_deviation,
    "unitary": unitary_deviation,
    "diagonal": diagonal_deviation,
}


def tag_deviation(entries: np.ndarray, tag: str) -> float:
    """Measured deviation of the matrix from the structure named by ``tag``."""
    try:
        measure = _TAG_DEVIATIONS[tag]
    except KeyError:
        raise ValueError(f"unknown tag {tag!r}; expected one of {sorted(VALID_TAGS)}")
    return measure(entries)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A ket in number-basis coordinates (finite amplitudes, any norm)."""

    amp: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.amp, dtype=np.complex128, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("state amplitudes must form a non-empty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("state amplitudes must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "amp", arr)

    @property
    def dim(self) -> int:
        return self.amp.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def is_normalized(self, tol_norm: float) -> bool:
        return abs(self.norm - 1.0) <= tol_norm

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amp / n)

    def inner(self, other: "StateVector") -> complex:
        """Inner product <self|other>, conjugate-linear in ``self``."""
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"state dimensions differ: {self.dim} vs {other.dim}"
            )
        return complex(np.vdot(self.amp, other.amp))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A dense square operator whose tags are re-certified on construction.

    Tags may only name structure the entries actually have: each requested
    tag is checked against the dimension-scaled default ``tol_op`` and the
    constructor refuses uncertified tags.
    """

    entries: np.ndarray
    tags: frozenset = frozenset()

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("operator entries must form a non-empty square matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("operator entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

        tags = frozenset(self.tags)
        unknown = tags - VALID_TAGS
        if unknown:
            raise ValueError(f"unknown tags: {sorted(unknown)}")
        tol = TolerancePolicy.for_dim(arr.shape[0]).tol_op
        for tag in sorted(tags):
            deviation = tag_deviation(arr, tag)
            if deviation > tol:
                raise ValueError(
                    f"tag {tag!r} is not certified: deviation {deviation:.3e} "
                    f"exceeds {tol:.3e}"
                )
        object.__setattr__(self, "tags", tags)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def basis_state(dim: int, n: int) -> StateVector:
    """The standard basis ket |n> in a space of the given dimension."""
    if not 0 <= n < dim:
        raise ValueError(f"basis index {n} out of range for dimension {dim}")
    amp = np.zeros(dim, dtype=np.complex128)
    amp[n] = 1.0
    return StateVector(amp)


def identity(dim: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(dim), tags=VALID_TAGS)


def mat_apply(m: OperatorMatrix, v: StateVector) -> StateVector:
    if m.dim != v.dim:
        raise DimensionMismatch(
            f"operator dimension {m.dim} does not match state dimension {v.dim}"
        )
    return StateVector(m.entries @ v.amp)


def mat_mul(ml: OperatorMatrix, mr: OperatorMatrix) -> OperatorMatrix:
    """Matrix product. Only diagonal-times-diagonal keeps its tag."""
    if ml.dim != mr.dim:
        raise DimensionMismatch(
            f"operator dimensions differ: {ml.dim} vs {mr.dim}"
        )
    tags = frozenset()
    if "diagonal" in ml.tags and "diagonal" in mr.tags:
        tags = frozenset({"diagonal"})
    return OperatorMatrix(ml.entries @ mr.entries, tags=tags)


def mat_power(m: OperatorMatrix, k: int) -> OperatorMatrix:
    """Non-negative integer matrix power by repeated multiplication."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 0:
        raise ValueError(f"power must be a non-negative integer, got {k!r}")
    tags = frozenset({"diagonal"}) if "diagonal" in m.tags else frozenset()
    return OperatorMatrix(np.linalg.matrix_power(m.entries, int(k)), tags=tags)


def adjoint(m: OperatorMatrix) -> OperatorMatrix:
    """Conjugate transpose; a hermitian tag survives unchanged."""
    tags = frozenset({"hermitian"}) if "hermitian" in m.tags else frozenset()
    return OperatorMatrix(m.entries.conj().T, tags=tags)


@dataclass(frozen=True)
class PhaseComparison:
    """Outcome of a global-phase comparison; ``phase`` is set only on match."""

    equal: bool
    phase: float | None = None


def equal_up_to_global_phase(
    u: StateVector, v: StateVector, tol: float
) -> PhaseComparison:
    """Decide whether two nonzero states differ only by a global phase.

    The states compare equal when the overlap modulus |<u|v>| reaches
    ``|u| |v| (1 - tol)``. On a match the reported phase is arg<u|v>
    reduced into [0, 2*pi), so (u, exp(i a) u) reports a mod 2*pi.
    """
    if u.dim != v.dim:
        raise DimensionMismatch(
            f"state dimensions differ: {u.dim} vs {v.dim}"
        )
    nu, nv = u.norm, v.norm
    if nu == 0.0 or nv == 0.0:
        raise ValueError("global-phase comparison requires nonzero vectors")
    overlap = u.inner(v)
    if abs(overlap) < nu * nv * (1.0 - tol):
        return PhaseComparison(equal=False, phase=None)
    return PhaseComparison(equal=True, phase=float(np.angle(overlap)) % TWO_PI)


@dataclass(frozen=True)
class Certification:
    """Result of measuring one structural tag on one operator."""

    tag: str
    passed: bool
    max_deviation: float
    matrix: OperatorMatrix


def certify(
    m: OperatorMatrix, tag: str, policy: TolerancePolicy | None = None
) -> Certification:
    """Measure the deviation from ``tag`` structure and attach it on success.

    Returns the measured deviation together with either the tagged matrix
    (deviation within ``tol_op``) or the input unchanged.
    """
    if tag not in VALID_TAGS:
        raise ValueError(f"unknown tag {tag!r}; expected one of {sorted(VALID_TAGS)}")
    policy = policy or TolerancePolicy.for_dim(m.dim)
    deviation = tag_deviation(m.entries, tag)
    if deviation <= policy.tol_op:
        tagged = OperatorMatrix(m.entries, tags=m.tags | {tag})
        return Certification(tag, True, deviation, tagged)
    return Certification(tag, False, deviation, m)


def certified(
    m: OperatorMatrix, tag: str, policy: TolerancePolicy | None = None
) -> OperatorMatrix:
    """Like :func:`certify` but raises when certification fails."""
    cert = certify(m, tag, policy)
    if not cert.passed:
        raise ArithmeticError(
            f"{tag} certification failed with deviation {cert.max_deviation:.3e}"
        )
    return cert.matrix


def spectral_synthesize(
    eigvecs: Sequence[StateVector],
    eigvals: Iterable[complex],
    policy: TolerancePolicy | None = None,
) -> OperatorMatrix:
    """Assemble sum_k lambda_k |v_k><v_k| from a complete orthonormal frame.

    The frame must contain exactly one eigenvector per dimension and pass an
    orthonormality certification within ``tol_op``; otherwise the frame is
    rejected with the measured deviation attached to the error.
    """
    vecs = list(eigvecs)
    vals = np.asarray(list(eigvals), dtype=np.complex128)
    if not vecs:
        raise ValueError("at least one eigenvector is required")
    dim = vecs[0].dim
    if any(v.dim != dim for v in vecs):
        raise DimensionMismatch("all eigenvectors must share one dimension")
    if len(vecs) != dim or vals.shape != (dim,):
        raise ValueError(
            "frame must be complete: one eigenvector and one eigenvalue per dimension"
        )
    frame = np.column_stack([v.amp for v in vecs])
    policy = policy or TolerancePolicy.for_dim(dim)
    deviation = max_abs(frame.conj().T @ frame - np.eye(dim))
    if deviation > policy.tol_op:
        raise NonOrthonormalFrame(deviation, policy.tol_op)
    return OperatorMatrix((frame * vals) @ frame.conj().T)
