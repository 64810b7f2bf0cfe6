"""Verification suites behind the command-line ``verify`` run.

Each suite turns the operator identities of one subsystem into check
records at the manifest's dimension and parameters. Record order is fixed
so that reports with equal manifests are byte-identical.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .deformed import (
    DeformationProfile,
    build_generalized_frame,
    build_ladder_operators,
    cycle_operator_power,
    deformation_linear,
    duality_check,
    eta_class,
    generalized_number_shift,
    modified_number_shift,
    profile_from_json,
    recover_phase_operator,
)
from .evolution import (
    CycleClassification,
    classify_cycle,
    compare_shift_vs_evolution,
    cycle_phase_per_level,
    oscillator_spectrum,
    time_evolution,
)
from .numerics import (
    StateVector,
    TolerancePolicy,
    hermitian_deviation,
    mat_apply,
    mat_mul,
    mat_power,
    max_abs,
    unitary_deviation,
)
from .pegg_barnett import (
    SpaceConfig,
    build_phase_frame,
    commutator,
    commutator_closed_form,
    commutator_double_sum,
    hermitian_phase_operator,
    number_operator,
    number_shift_operator,
    unitary_phase_from_spectrum,
    unitary_phase_operator,
)
from .report import CheckRecord, RunManifest, VerificationReport

__all__ = [
    "SUITE_NAMES",
    "resolve_profile",
    "run_suites",
    "suite_pb_core",
    "suite_gdo",
    "suite_evolution",
    "suite_cross_module",
]

SUITE_NAMES = ("pb-core", "gdo", "evolution", "cross-module")

TWO_PI = 2.0 * np.pi


def resolve_profile(source: str, config: SpaceConfig, eta: float) -> DeformationProfile:
    """Turn a manifest profile entry (a variant name or a file path) into a table."""
    if source == "linear":
        return deformation_linear(config, eta)
    return profile_from_json(Path(source).read_text(encoding="utf-8"), config.dim)


def _random_state(rng: np.random.Generator, dim: int) -> StateVector:
    amp = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(amp).normalized()


def suite_pb_core(config: SpaceConfig, policy: TolerancePolicy) -> list:
    dim = config.dim
    frame = build_phase_frame(config, policy)
    v = frame.matrix
    eye = np.eye(dim)
    records = []

    records.append(
        CheckRecord.measured(
            "phase_frame_orthonormal",
            "<theta_m|theta_k> = delta_mk",
            max_abs(v.conj().T @ v - eye),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "phase_frame_complete",
            "sum_m |theta_m><theta_m| = 1",
            max_abs(v @ v.conj().T - eye),
            policy.tol_op,
        )
    )
    expected = np.exp(1j * np.outer(np.arange(dim), config.thetas())) / np.sqrt(dim)
    records.append(
        CheckRecord.measured(
            "phase_state_components",
            "<n|theta_m> = exp(i n theta_m)/sqrt(s+1)",
            max_abs(v - expected),
            policy.tol_elem,
        )
    )

    phi = hermitian_phase_operator(config, frame)
    records.append(
        CheckRecord.measured(
            "phase_operator_hermitian",
            "Phi = sum_m theta_m |theta_m><theta_m|",
            hermitian_deviation(phi.entries),
            policy.tol_op,
        )
    )

    realization = unitary_phase_operator(config)
    spectral = unitary_phase_from_spectrum(config, frame)
    corner = np.exp(1j * dim * config.theta0)

    # Shift action measured on the spectral route; the explicit realization
    # satisfies it by construction.
    action_dev = 0.0
    for n in range(1, dim):
        applied = spectral.entries[:, n]
        want = eye[:, n - 1]
        action_dev = max(action_dev, max_abs(applied - want))
    action_dev = max(action_dev, max_abs(spectral.entries[:, 0] - corner * eye[:, dim - 1]))
    records.append(
        CheckRecord.measured(
            "unitary_phase_shift_action",
            "exp(iPhi)|n> = |n-1> and exp(iPhi)|0> = exp(i(s+1)theta_0)|s>",
            action_dev,
            policy.tol_elem,
        )
    )
    records.append(
        CheckRecord.measured(
            "unitary_phase_realization",
            "exp(iPhi) = sum_n |n-1><n| + exp(i(s+1)theta_0)|s><0|",
            max_abs(realization.entries - spectral.entries),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "unitary_phase_cyclic",
            "exp(iPhi)^(s+1) = exp(i(s+1)theta_0) 1",
            max_abs(mat_power(realization, dim).entries - corner * eye),
            policy.tol_op,
        )
    )

    down = number_shift_operator(config, "-")
    shifted = down.entries @ v
    shift_dev = max_abs(shifted[:, 0] - v[:, dim - 1])
    for m in range(1, dim):
        shift_dev = max(shift_dev, max_abs(shifted[:, m] - v[:, m - 1]))
    records.append(
        CheckRecord.measured(
            "number_shift_action",
            "q^-N |theta_m> = |theta_m-1> and q^-N |theta_0> = |theta_s>",
            shift_dev,
            policy.tol_elem,
        )
    )
    pattern = np.zeros((dim, dim), dtype=np.complex128)
    for m in range(1, dim):
        pattern[m - 1, m] = 1.0
    pattern[dim - 1, 0] = 1.0
    realization_sum = v @ pattern @ v.conj().T
    records.append(
        CheckRecord.measured(
            "number_shift_realization",
            "q^-N = sum_m |theta_m-1><theta_m| + |theta_s><theta_0|",
            max_abs(realization_sum - down.entries),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "number_shift_cyclic",
            "(q^-N)^(s+1) = 1",
            max_abs(mat_power(down, dim).entries - eye),
            policy.tol_op,
        )
    )

    in_phase_basis = v.conj().T @ spectral.entries @ v
    duality_dev = max(
        max_abs(in_phase_basis - np.diag(np.diag(in_phase_basis))),
        max_abs(np.diag(in_phase_basis) - np.exp(1j * config.thetas())),
    )
    records.append(
        CheckRecord.measured(
            "unitary_phase_diagonal_in_phase_frame",
            "exp(iPhi)|theta_m> = exp(i theta_m)|theta_m>",
            duality_dev,
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "number_shift_diagonal_in_number_basis",
            "q^-N |n> = q^-n |n>",
            max_abs(down.entries - np.diag(config.root_power(-np.arange(dim)))),
            policy.tol_op,
        )
    )

    closed = commutator_closed_form(config)
    direct = commutator(phi, number_operator(config))
    records.append(
        CheckRecord.measured(
            "commutator_direct_vs_closed_form",
            "[Phi;N] equals its closed form from the phase-state expansion",
            max_abs(direct.entries - closed.entries),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.flagged(
            "commutator_double_sum_vs_closed_form",
            "[Phi;N] double-sum kernel differs by a unit-modulus factor per element",
            max_abs(commutator_double_sum(config).entries - closed.entries),
            policy.tol_op,
        )
    )
    return records


def suite_gdo(
    config: SpaceConfig,
    eta: float,
    profile: DeformationProfile,
    policy: TolerancePolicy,
) -> list:
    dim = config.dim
    frame = build_generalized_frame(config, eta, policy)
    eye = np.eye(dim)
    records = []

    records.append(
        CheckRecord.measured(
            "generalized_number_frame_orthonormal",
            "<n+eta|k+eta> = delta_nk",
            max_abs(frame.number_matrix.conj().T @ frame.number_matrix - eye),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "generalized_phase_frame_orthonormal",
            "offset-window <theta_m|theta_k> = delta_mk",
            max_abs(frame.phase_matrix.conj().T @ frame.phase_matrix - eye),
            policy.tol_op,
        )
    )

    coeff = np.exp(
        1j * np.outer(np.arange(dim) + frame.eta, config.thetas())
    ) / np.sqrt(dim)
    rebuilt = frame.phase_matrix @ coeff.conj().T
    records.append(
        CheckRecord.measured(
            "continuous_shift_roundtrip",
            "exp(-i eta Phi)|n> = |n+eta>",
            max_abs(rebuilt - frame.number_matrix),
            policy.tol_elem,
        )
    )

    ladder = build_ladder_operators(config, eta, profile, frame)
    records.append(
        CheckRecord.measured(
            "ladder_number_product",
            "Adag A |n+eta> = F_n |n+eta>",
            max_abs(frame.to_frame(mat_mul(ladder.a_dag, ladder.a)) - np.diag(profile.values)),
            policy.tol_op,
        )
    )
    records.append(
        CheckRecord.measured(
            "ladder_reversed_product",
            "A Adag carries the cyclically shifted weights",
            max_abs(
                frame.to_frame(mat_mul(ladder.a, ladder.a_dag))
                - np.diag(np.roll(profile.values, -1))
            ),
            policy.tol_op,
        )
    )

    if np.all(profile.values > 0.0):
        recovered = recover_phase_operator(ladder.a, profile, frame)
        records.append(
            CheckRecord.measured(
                "phase_operator_recovery",
                "A F(q^(N+eta))^(-1/2) = exp(iPhi)",
                max_abs(recovered.entries - unitary_phase_operator(config).entries),
                policy.tol_op,
            )
        )
        records.append(
            CheckRecord.measured(
                "recovered_phase_unitary",
                "A F(q^(N+eta))^(-1/2) is unitary",
                unitary_deviation(recovered.entries),
                policy.tol_op,
            )
        )

    qshift = generalized_number_shift(frame, "-")
    records.append(
        CheckRecord.measured(
            "modified_shift_realization",
            "q^-(N+eta) = sum_m |theta_m-1><theta_m| + exp(-i 2 pi eta)|theta_s><theta_0|",
            max_abs(modified_number_shift(config, eta, frame).entries - qshift.entries),
            policy.tol_op,
        )
    )
    records.extend(duality_check(config, eta, policy, frame))

    cycle = mat_power(qshift, dim)
    records.append(
        CheckRecord.measured(
            "cycle_identity",
            "(q^-(N+eta))^(s+1) = exp(-i 2 pi eta) 1",
            max_abs(cycle.entries - np.exp(-2j * np.pi * frame.eta) * eye),
            policy.tol_op,
        )
    )
    kind = eta_class(frame.eta)
    if kind != "generic":
        target = eye if kind == "integer" else -eye
        records.append(
            CheckRecord.measured(
                "cycle_sign_dichotomy",
                "integer eta keeps the sign after one cycle; half-odd eta flips it",
                max_abs(cycle.entries - target),
                policy.tol_op,
            )
        )
    return records


def suite_evolution(
    config: SpaceConfig, omega: float, seed: int, policy: TolerancePolicy
) -> list:
    dim = config.dim
    spectrum = oscillator_spectrum(config, omega)
    records = []

    diffs = np.diff(spectrum.energies)
    records.append(
        CheckRecord.measured(
            "spectrum_monotone",
            "E_n = omega(n + 1/2 + (s+1)/2 delta_ns) increases with n",
            max(0.0, float(-diffs.min())) if diffs.size else 0.0,
            policy.tol_elem,
        )
    )
    records.append(
        CheckRecord.measured(
            "spectrum_top_level_shift",
            "E_s sits (s+1)/2 quanta above the equally spaced ladder",
            abs(spectrum.energies[-1] - (config.s + 0.5) * omega - dim / 2.0 * omega),
            policy.tol_elem,
        )
    )

    period = TWO_PI / float(omega)
    u = time_evolution(config, omega, period)
    records.append(
        CheckRecord.measured(
            "evolution_unitary",
            "U(t) = exp(-i H t) is unitary",
            unitary_deviation(u.entries),
            policy.tol_op,
        )
    )
    t1, t2 = 0.37 / float(omega), 1.91 / float(omega)
    records.append(
        CheckRecord.measured(
            "evolution_group_law",
            "U(t1) U(t2) = U(t1+t2)",
            max_abs(
                time_evolution(config, omega, t1).entries
                @ time_evolution(config, omega, t2).entries
                - time_evolution(config, omega, t1 + t2).entries
            ),
            policy.tol_op,
        )
    )
    factors = cycle_phase_per_level(config)
    records.append(
        CheckRecord.measured(
            "cycle_phase_factors",
            "U(2 pi/omega) diagonal is exp(-i 2 pi (n + 1/2 + (s+1)/2 delta_ns))",
            max_abs(np.diag(u.entries) - factors),
            policy.tol_elem,
        )
    )

    outcome = classify_cycle(config, omega, policy)
    if dim % 2 == 0:
        parity_dev = 0.0 if outcome.classification is CycleClassification.GLOBAL_SIGN_FLIP else 1.0
        if outcome.global_phase is not None:
            parity_dev = max(parity_dev, abs(outcome.global_phase - np.pi))
        else:
            parity_dev = 1.0
    elif dim == 1:
        parity_dev = 0.0 if outcome.classification is CycleClassification.IDENTITY else 1.0
        if outcome.global_phase is not None:
            parity_dev = max(parity_dev, abs(np.exp(1j * outcome.global_phase) - 1.0))
        else:
            parity_dev = 1.0
    else:
        parity_dev = 0.0 if outcome.classification is CycleClassification.MIXED_PHASES else 1.0
        expected = np.concatenate([-np.ones(dim - 1), [1.0]])
        parity_dev = max(
            parity_dev, max_abs(np.asarray(outcome.per_level_phase) - expected)
        )
    records.append(
        CheckRecord.measured(
            "cycle_parity",
            "one period flips the sign of every state iff s+1 is even",
            parity_dev,
            1e-9,
        )
    )

    records.extend(compare_shift_vs_evolution(config, omega, policy))

    rng = np.random.default_rng(seed)
    psi = _random_state(rng, dim)
    evolved = mat_apply(u, psi)
    records.append(
        CheckRecord.measured(
            "random_superposition_cycle",
            "one period multiplies each amplitude by its level factor",
            max_abs(evolved.amp - factors * psi.amp),
            policy.tol_elem,
        )
    )
    return records


def suite_cross_module(
    config: SpaceConfig, omega: float, seed: int, policy: TolerancePolicy
) -> list:
    """The shift route at eta = 1/2 against the Hamiltonian route."""
    dim = config.dim
    cycle = cycle_operator_power(config, 0.5, dim)
    u = time_evolution(config, omega, TWO_PI / float(omega))
    records = []

    if dim % 2 == 0:
        records.append(
            CheckRecord.measured(
                "cross_cycle_even_dims",
                "(q^-(N+1/2))^(s+1) = U(2 pi/omega) when s+1 is even",
                max_abs(cycle.entries - u.entries),
                policy.tol_op,
            )
        )
    below_dev = max_abs(cycle.entries[:, : dim - 1] - u.entries[:, : dim - 1])
    records.append(
        CheckRecord.measured(
            "cross_shift_evolution_below_top",
            "both one-cycle routes agree on every level below the top",
            below_dev,
            policy.tol_op,
        )
    )
    if dim % 2 == 0:
        rng = np.random.default_rng(seed)
        psi = _random_state(rng, dim)
        records.append(
            CheckRecord.measured(
                "cross_random_state_even",
                "both one-cycle routes act identically on a random state",
                max_abs(mat_apply(cycle, psi).amp - mat_apply(u, psi).amp),
                policy.tol_op,
            )
        )
    return records


def run_suites(
    manifest: RunManifest,
    profile: DeformationProfile | None = None,
    policy: TolerancePolicy | None = None,
) -> VerificationReport:
    """Run the manifest's suites in canonical order and assemble the report."""
    unknown = [name for name in manifest.suites if name not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown suite names: {unknown}; expected {SUITE_NAMES}")
    if not manifest.suites:
        raise ValueError("at least one suite is required for a verify run")
    config = SpaceConfig.from_dim(manifest.dim, manifest.theta0)
    policy = policy or TolerancePolicy.for_dim(config.dim)
    selected = [name for name in SUITE_NAMES if name in manifest.suites]

    records = []
    if "pb-core" in selected:
        records.extend(suite_pb_core(config, policy))
    if "gdo" in selected:
        table = profile or resolve_profile(manifest.profile, config, manifest.eta)
        records.extend(suite_gdo(config, manifest.eta, table, policy))
    if "evolution" in selected:
        records.extend(suite_evolution(config, manifest.omega, manifest.seed, policy))
    if "cross-module" in selected:
        records.extend(suite_cross_module(config, manifest.omega, manifest.seed, policy))
    return VerificationReport(manifest=manifest, records=tuple(records))
