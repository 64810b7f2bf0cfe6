"""Deformed ladder algebra: profiles, frames, recovery, cycle phases."""

import numpy as np
import pytest

from fdphase.deformed import (
    DeformationProfile,
    ProfileError,
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
from fdphase.numerics import (
    DimensionMismatch,
    equal_up_to_global_phase,
    mat_apply,
    mat_mul,
)
from fdphase.pegg_barnett import (
    SpaceConfig,
    build_phase_frame,
    number_shift_operator,
    unitary_phase_operator,
)
from fdphase.report import STATUS_PASS


class TestDeformationProfile:
    def test_linear_values(self):
        profile = deformation_linear(SpaceConfig.from_dim(3), 0.5)
        assert np.allclose(profile.values, [0.5, 1.5, 2.5])
        assert profile.variant == "linear"

    def test_linear_integer_offset(self):
        profile = deformation_linear(SpaceConfig.from_dim(2), 1.0)
        assert np.allclose(profile.values, [1.0, 2.0])

    @pytest.mark.parametrize("eta", [0.0, -0.5, -3.0])
    def test_linear_rejects_non_positive_bottom(self, eta):
        with pytest.raises(ProfileError):
            deformation_linear(SpaceConfig.from_dim(3), eta)

    def test_rejects_negative_weight(self):
        with pytest.raises(ProfileError):
            DeformationProfile(np.array([1.0, -0.1]))

    def test_rejects_zero_bottom_weight(self):
        with pytest.raises(ProfileError):
            DeformationProfile(np.array([0.0, 1.0]))

    def test_zero_above_bottom_is_allowed(self):
        profile = DeformationProfile(np.array([1.0, 0.0]))
        assert profile.dim == 2


class TestProfileFromJson:
    def test_accepts_matching_array(self):
        profile = profile_from_json("[0.5, 1.25, 7]", 3)
        assert np.allclose(profile.values, [0.5, 1.25, 7.0])
        assert profile.variant == "user"

    def test_rejects_wrong_length(self):
        with pytest.raises(ProfileError):
            profile_from_json("[1.0, 2.0]", 3)

    def test_rejects_non_array(self):
        with pytest.raises(ProfileError):
            profile_from_json('{"values": [1.0]}', 1)

    def test_rejects_non_real_entries(self):
        with pytest.raises(ProfileError):
            profile_from_json('[1.0, "x"]', 2)

    def test_rejects_bad_json(self):
        with pytest.raises(ProfileError):
            profile_from_json("[1.0,", 1)

    def test_rejects_negative(self):
        with pytest.raises(ProfileError):
            profile_from_json("[1.0, -2.0]", 2)


class TestGeneralizedFrame:
    def test_eta_zero_reduces_to_standard_bases(self):
        config = SpaceConfig.from_dim(4, 0.7)
        frame = build_generalized_frame(config, 0.0)
        base = build_phase_frame(config)
        assert np.max(np.abs(frame.number_matrix - np.eye(4))) <= 4e-12
        assert np.max(np.abs(frame.phase_matrix - base.matrix)) <= 4e-12

    def test_integer_eta_phase_states_match_base_frame(self):
        # The net factor on each phase state is one: the coefficient factor
        # exp(i eta theta_m) cancels against the eigenvalue of
        # exp(-i eta Phi) on that state.
        config = SpaceConfig.from_dim(2, 0.0)
        frame = build_generalized_frame(config, 1.0)
        base = build_phase_frame(config)
        for m in range(2):
            result = equal_up_to_global_phase(base.state(m), frame.phase_state(m), 1e-12)
            assert result.equal
            assert abs(np.exp(1j * result.phase) - 1.0) < 1e-12

    def test_half_eta_number_states_orthogonal(self):
        frame = build_generalized_frame(SpaceConfig.from_dim(2, 0.0), 0.5)
        overlap = frame.number_state(0).inner(frame.number_state(1))
        assert abs(overlap) <= 2e-12

    @pytest.mark.parametrize("dim", [1, 2, 3, 5, 8])
    @pytest.mark.parametrize("eta", [0.25, 0.5, 1.0, 1.5])
    def test_roundtrip_through_phase_states(self, dim, eta):
        # Rebuild |n+eta> from the inverse Fourier sum over the offset
        # phase states and compare with the direct construction.
        config = SpaceConfig.from_dim(dim, 0.4)
        frame = build_generalized_frame(config, eta)
        coeff = np.exp(
            1j * np.outer(np.arange(dim) + eta, config.thetas())
        ) / np.sqrt(dim)
        rebuilt = frame.phase_matrix @ coeff.conj().T
        assert np.max(np.abs(rebuilt - frame.number_matrix)) <= 1e-11 * dim

    def test_rejects_non_finite_eta(self):
        with pytest.raises(ValueError):
            build_generalized_frame(SpaceConfig.from_dim(2), float("nan"))


class TestLadderOperators:
    def test_dim_1_single_level_cycle(self):
        config = SpaceConfig(s=0, theta0=0.9)
        profile = DeformationProfile(np.array([0.5]))
        ladder = build_ladder_operators(config, 0.5, profile)
        assert ladder.a.entries[0, 0] == pytest.approx(
            np.sqrt(0.5) * np.exp(0.9j)
        )

    def test_dim_2_frame_coordinates(self):
        config = SpaceConfig.from_dim(2, 0.0)
        frame = build_generalized_frame(config, 0.5)
        profile = deformation_linear(config, 0.5)
        ladder = build_ladder_operators(config, 0.5, profile, frame)
        in_frame = frame.to_frame(ladder.a)
        assert np.allclose(
            in_frame, [[0.0, np.sqrt(1.5)], [np.sqrt(0.5), 0.0]], atol=1e-14
        )

    @pytest.mark.parametrize("dim", [1, 2, 3, 6])
    @pytest.mark.parametrize("eta", [0.25, 0.5, 1.5])
    def test_ladder_products(self, dim, eta):
        # Oracle: explicit matrix products checked against the weight table.
        config = SpaceConfig.from_dim(dim, 0.3)
        frame = build_generalized_frame(config, eta)
        profile = deformation_linear(config, eta)
        ladder = build_ladder_operators(config, eta, profile, frame)
        lowering_then_raising = frame.to_frame(mat_mul(ladder.a_dag, ladder.a))
        assert np.max(np.abs(lowering_then_raising - np.diag(profile.values))) <= 1e-11 * dim
        raising_then_lowering = frame.to_frame(mat_mul(ladder.a, ladder.a_dag))
        assert (
            np.max(np.abs(raising_then_lowering - np.diag(np.roll(profile.values, -1))))
            <= 1e-11 * dim
        )

    def test_q_number_eigenvalues(self):
        config = SpaceConfig.from_dim(3, 0.0)
        frame = build_generalized_frame(config, 0.5)
        ladder = build_ladder_operators(config, 0.5, deformation_linear(config, 0.5), frame)
        in_frame = frame.to_frame(ladder.q_number)
        expected = np.diag(config.root_power(np.arange(3) + 0.5))
        assert np.max(np.abs(in_frame - expected)) <= 3e-11

    def test_profile_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            build_ladder_operators(
                SpaceConfig.from_dim(3), 0.5, DeformationProfile(np.array([1.0]))
            )


class TestRecoverPhaseOperator:
    def test_dim_2_recovers_swap(self):
        config = SpaceConfig.from_dim(2, 0.0)
        frame = build_generalized_frame(config, 0.5)
        profile = deformation_linear(config, 0.5)
        ladder = build_ladder_operators(config, 0.5, profile, frame)
        recovered = recover_phase_operator(ladder.a, profile, frame)
        assert np.allclose(recovered.entries, [[0, 1], [1, 0]], atol=1e-14)

    def test_dim_3_matches_explicit_realization(self):
        config = SpaceConfig.from_dim(3, 0.4)
        frame = build_generalized_frame(config, 0.5)
        profile = deformation_linear(config, 0.5)
        ladder = build_ladder_operators(config, 0.5, profile, frame)
        recovered = recover_phase_operator(ladder.a, profile, frame)
        expected = unitary_phase_operator(config)
        assert np.max(np.abs(recovered.entries - expected.entries)) <= 3e-11

    def test_dim_1_gives_window_phase(self):
        config = SpaceConfig(s=0, theta0=0.7)
        frame = build_generalized_frame(config, 0.5)
        profile = DeformationProfile(np.array([0.5]))
        ladder = build_ladder_operators(config, 0.5, profile, frame)
        recovered = recover_phase_operator(ladder.a, profile, frame)
        assert recovered.entries[0, 0] == pytest.approx(np.exp(0.7j))

    def test_independent_of_weight_table(self):
        config = SpaceConfig.from_dim(3, 1.1)
        frame = build_generalized_frame(config, 0.25)
        expected = unitary_phase_operator(config)
        for values in ([0.7, 2.2, 1.3], [5.0, 0.1, 9.0]):
            profile = DeformationProfile(np.array(values))
            ladder = build_ladder_operators(config, 0.25, profile, frame)
            recovered = recover_phase_operator(ladder.a, profile, frame)
            assert np.max(np.abs(recovered.entries - expected.entries)) <= 3e-11

    def test_zero_weight_refused(self):
        config = SpaceConfig.from_dim(2, 0.0)
        frame = build_generalized_frame(config, 0.5)
        profile = DeformationProfile(np.array([1.0, 0.0]))
        ladder = build_ladder_operators(config, 0.5, profile, frame)
        with pytest.raises(ProfileError):
            recover_phase_operator(ladder.a, profile, frame)


class TestModifiedNumberShift:
    def test_eta_zero_reduces_to_undeformed_shift(self):
        config = SpaceConfig.from_dim(4, 0.6)
        op = modified_number_shift(config, 0.0)
        assert np.max(
            np.abs(op.entries - number_shift_operator(config, "-").entries)
        ) <= 4e-11

    def test_dim_2_half_eta_in_frame_coordinates(self):
        config = SpaceConfig.from_dim(2, 0.0)
        frame = build_generalized_frame(config, 0.5)
        op = modified_number_shift(config, 0.5, frame)
        in_frame = frame.to_frame(op)
        expected = np.exp(-1j * np.pi / 2) * np.diag([1.0, -1.0])
        assert np.allclose(in_frame, expected, atol=1e-14)

    def test_dim_2_half_eta_standard_coordinates(self):
        # Hand value: the two projector terms evaluate to [[0,-1],[1,0]].
        op = modified_number_shift(SpaceConfig.from_dim(2, 0.0), 0.5)
        assert np.allclose(op.entries, [[0.0, -1.0], [1.0, 0.0]], atol=1e-14)

    @pytest.mark.parametrize("dim", [1, 2, 3, 5])
    @pytest.mark.parametrize("eta", [0.0, 0.25, 0.5, 1.0, 1.5])
    def test_matches_spectral_form(self, dim, eta):
        config = SpaceConfig.from_dim(dim, 0.2)
        frame = build_generalized_frame(config, eta)
        realization = modified_number_shift(config, eta, frame)
        spectral = generalized_number_shift(frame, "-")
        assert np.max(np.abs(realization.entries - spectral.entries)) <= 1e-11 * dim

    def test_wraparound_action(self):
        config = SpaceConfig.from_dim(3, 0.0)
        frame = build_generalized_frame(config, 0.25)
        op = modified_number_shift(config, 0.25, frame)
        out = mat_apply(op, frame.phase_state(0))
        expected = np.exp(-2j * np.pi * 0.25) * frame.phase_state(2).amp
        assert np.max(np.abs(out.amp - expected)) <= 3e-12


class TestCycleOperatorPower:
    @pytest.mark.parametrize("dim", [1, 2, 3, 5, 8, 16, 32])
    @pytest.mark.parametrize("eta", [-1.0, 0.0, 0.25, 0.5, 1.0, 1.5])
    def test_full_cycle_phase(self, dim, eta):
        config = SpaceConfig.from_dim(dim, 0.3)
        cycle = cycle_operator_power(config, eta, dim)
        expected = np.exp(-2j * np.pi * eta) * np.eye(dim)
        assert np.max(np.abs(cycle.entries - expected)) <= 1e-11 * dim

    def test_integer_eta_keeps_sign(self):
        cycle = cycle_operator_power(SpaceConfig.from_dim(4), 1.0, 4)
        assert np.max(np.abs(cycle.entries - np.eye(4))) <= 4e-11

    def test_half_odd_eta_flips_sign(self):
        cycle = cycle_operator_power(SpaceConfig.from_dim(4), 0.5, 4)
        assert np.max(np.abs(cycle.entries + np.eye(4))) <= 4e-11

    def test_partial_cycle_quarter_eta(self):
        cycle = cycle_operator_power(SpaceConfig.from_dim(3), 0.25, 3)
        expected = np.exp(-1j * np.pi / 2) * np.eye(3)
        assert np.max(np.abs(cycle.entries - expected)) <= 3e-11

    @pytest.mark.parametrize("bad", [0, -1, 1.5])
    def test_power_validation(self, bad):
        with pytest.raises(ValueError):
            cycle_operator_power(SpaceConfig.from_dim(2), 0.5, bad)


class TestEtaClass:
    @pytest.mark.parametrize(
        "eta,expected",
        [
            (0.0, "integer"),
            (1.0, "integer"),
            (-2.0, "integer"),
            (1.0 + 5e-10, "integer"),
            (0.5, "half-odd"),
            (1.5, "half-odd"),
            (-0.5, "half-odd"),
            (0.25, "generic"),
            (0.3, "generic"),
        ],
    )
    def test_classification(self, eta, expected):
        assert eta_class(eta) == expected


class TestDualityCheck:
    def test_trivial_window_and_offset(self):
        records = duality_check(SpaceConfig.from_dim(3, 0.0), 0.0)
        assert all(record.status == STATUS_PASS for record in records)

    def test_generic_run_passes(self):
        records = duality_check(SpaceConfig.from_dim(5, 1.1), 0.3)
        assert len(records) == 6
        assert all(record.status == STATUS_PASS for record in records)
        assert max(record.max_deviation for record in records) <= 5e-11

    def test_corner_phases_both_minus_one(self):
        config = SpaceConfig.from_dim(2, np.pi / 2)
        frame = build_generalized_frame(config, 0.5)
        phase_op = unitary_phase_operator(config)
        corner_theta = complex(
            frame.number_matrix[:, 1].conj()
            @ phase_op.entries
            @ frame.number_matrix[:, 0]
        )
        qshift = generalized_number_shift(frame, "-")
        corner_eta = complex(
            frame.phase_matrix[:, 1].conj() @ qshift.entries @ frame.phase_matrix[:, 0]
        )
        assert corner_theta == pytest.approx(-1.0, abs=1e-12)
        assert corner_eta == pytest.approx(-1.0, abs=1e-12)
