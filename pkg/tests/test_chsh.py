import math

import numpy as np
import pytest

from bellchsh import (
    AngleSet,
    ChshQuadruple,
    ClosedFormCorrelator,
    ConsistencyError,
    DenseOperator,
    Ket,
    ShapeError,
    TSIRELSON_BOUND,
    chsh_operator,
    chsh_value,
    expectation,
    optimize_angles,
    singlet,
    spin_quadruple,
    validate_quadruple,
)
from bellchsh import fock, spin
from helpers import power_iteration_norm, random_involution_quadruple, random_state

ROOT2 = math.sqrt(2.0)


class TestAngleSet:
    def test_wraps_to_half_open_interval(self):
        a = AngleSet(3 * math.pi, -math.pi, math.pi, 7.0)
        for theta in a.as_tuple():
            assert -math.pi <= theta < math.pi

    def test_wrapping_preserves_cosine_sums(self):
        a = AngleSet(3 * math.pi + 0.2, 0.1, -9.0, 2.5)
        b = AngleSet(0.2 + math.pi, 0.1, -9.0 + 2 * math.pi, 2.5)
        form = ClosedFormCorrelator(1.0, (1.0, 1.0, 1.0, -1.0))
        assert form.value(a) == pytest.approx(form.value(b), abs=1e-12)


class TestChshOperator:
    def test_identity_quadruple_gives_twice_identity(self):
        eye = DenseOperator.identity(4)
        q = ChshQuadruple(a1=eye, a2=eye, b1=eye, b2=eye)
        assert np.abs(chsh_operator(q).entries - 2 * np.eye(4)).max() == 0.0

    def test_tsirelson_recovery_on_spin_half_singlet(self):
        q = spin_quadruple(spin.SPIN_HALF, spin.TSIRELSON_ANGLES)
        value = expectation(singlet(spin.SPIN_HALF).ket, chsh_operator(q))
        assert abs(abs(value) - 2 * ROOT2) <= 1e-12

    def test_operator_norm_bounded_by_tsirelson(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            q = random_involution_quadruple(rng, 3, 3)
            lam = power_iteration_norm(chsh_operator(q).entries)
            assert lam <= TSIRELSON_BOUND + 1e-9

    def test_mixed_dims_raise(self):
        q = ChshQuadruple(
            a1=DenseOperator.identity(4), a2=DenseOperator.identity(4),
            b1=DenseOperator.identity(4), b2=DenseOperator.identity(9),
        )
        with pytest.raises(ShapeError):
            chsh_operator(q)


class TestChshValue:
    def test_product_states_cannot_violate(self):
        rng = np.random.default_rng(29)
        e0 = np.zeros(2, dtype=complex)
        e0[0] = 1.0
        psi = Ket(np.kron(e0, e0), normalized=True)
        for _ in range(20):
            q = spin_quadruple(spin.SPIN_HALF,
                               AngleSet(*rng.uniform(-math.pi, math.pi, 4)))
            # independent assembly: four pairwise expectations
            pairwise = [
                expectation(psi, q.a1 @ q.b1), expectation(psi, q.a2 @ q.b1),
                expectation(psi, q.a1 @ q.b2), expectation(psi, q.a2 @ q.b2),
            ]
            direct = (pairwise[0] + pairwise[1] + pairwise[2] - pairwise[3]).real
            value = chsh_value(psi, q)
            assert abs(value - direct) <= 1e-12
            assert abs(value) <= 2.0 + 1e-12

    def test_spin_one_violation_value(self):
        q = spin_quadruple(spin.SPIN_ONE, spin.SPIN_ONE_VIOLATION_ANGLES)
        value = chsh_value(singlet(spin.SPIN_ONE).ket, q)
        assert abs(abs(value) - 2 * (2 + ROOT2) / 3) <= 1e-12

    def test_squeezed_window_endpoint(self):
        space = fock.FockSpace(16)
        eta = ROOT2 - 1.0
        psi = fock.squeezed_state(eta, space).ket
        q = fock.fock_quadruple(space, fock.MAX_VIOLATION_ANGLES)
        assert abs(chsh_value(psi, q) - 2.0) <= 1e-12

    def test_matches_full_operator_expectation(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            q = spin_quadruple(spin.SPIN_ONE,
                               AngleSet(*rng.uniform(-math.pi, math.pi, 4)))
            psi = random_state(rng, 9)
            via_operator = expectation(psi, chsh_operator(q)).real
            assert abs(chsh_value(psi, q) - via_operator) <= 1e-12

    def test_imaginary_residue_raises(self):
        rng = np.random.default_rng(37)
        entries = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        bad = ChshQuadruple(
            a1=DenseOperator(entries), a2=DenseOperator.identity(4),
            b1=DenseOperator.identity(4), b2=DenseOperator.identity(4),
        )
        with pytest.raises(ConsistencyError):
            chsh_value(random_state(rng, 4), bad)


class TestValidation:
    def test_identity_quadruple_all_zero(self):
        eye = DenseOperator.identity(4)
        report = validate_quadruple(ChshQuadruple(a1=eye, a2=eye, b1=eye, b2=eye))
        assert report.max_deviation == 0.0
        assert report.passed

    def test_spin_one_random_angles_pass(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            q = spin_quadruple(spin.SPIN_ONE,
                               AngleSet(*rng.uniform(-math.pi, math.pi, 4)))
            report = validate_quadruple(q)
            assert report.passed, report.summary()

    def test_corrupted_phase_fails(self):
        q = spin_quadruple(spin.SPIN_ONE, spin.SPIN_ONE_VIOLATION_ANGLES)
        bad = ChshQuadruple(a1=DenseOperator(q.a1.entries * 1.01),
                            a2=q.a2, b1=q.b1, b2=q.b2)
        report = validate_quadruple(bad)
        assert max(report.involution.values()) > 1e-6
        assert not report.passed
        assert "FAIL" in report.summary()


class TestOptimizer:
    def test_unit_prefactor_reaches_tsirelson(self):
        form = ClosedFormCorrelator(1.0, (1.0, 1.0, 1.0, -1.0))
        _, best = optimize_angles(form)
        assert abs(best - 2 * ROOT2) <= 1e-6

    def test_pattern_maximum_scales_with_prefactor(self):
        rng = np.random.default_rng(43)
        for _ in range(5):
            c = float(rng.uniform(0.05, 2.0))
            _, best = optimize_angles(ClosedFormCorrelator(c, (1.0, 1.0, 1.0, -1.0)))
            assert abs(best - 2 * ROOT2 * c) <= 1e-6

    def test_spin_one_form_beats_quoted_value(self):
        angles, best = optimize_angles(spin.spin_one_closed_form())
        assert best >= 2 * (2 + ROOT2) / 3 - 1e-9
        # the constant shifts the attainable cosine peak: (2/3)(1 + 2 sqrt(2))
        assert abs(best - (2.0 / 3.0) * (1 + 2 * ROOT2)) <= 1e-6
        # the reported angles actually realize the reported value
        assert abs(abs(spin.spin_one_chsh_closed(angles)) - best) <= 1e-12

    def test_optimum_dominates_random_sampling(self):
        rng = np.random.default_rng(47)
        form = spin.spin_one_closed_form()
        _, best = optimize_angles(form)
        samples = rng.uniform(-math.pi, math.pi, size=(20000, 4))
        sampled = max(abs(form.value(AngleSet(*row))) for row in samples)
        assert best >= sampled - 1e-9

    def test_zero_prefactor(self):
        _, best = optimize_angles(ClosedFormCorrelator(0.0, (1.0, 1.0, 1.0, -1.0)))
        assert best == 0.0

    def test_deterministic(self):
        form = fock.squeezed_closed_form(0.37)
        first = optimize_angles(form)
        second = optimize_angles(form)
        assert first[0] == second[0]
        assert first[1] == second[1]


class TestTsirelsonProperty:
    def test_randomized_trials_stay_below_bound(self):
        rng = np.random.default_rng(53)
        for _ in range(30):
            dim_a = int(rng.integers(2, 5))
            dim_b = int(rng.integers(2, 5))
            q = random_involution_quadruple(rng, dim_a, dim_b)
            psi = random_state(rng, dim_a * dim_b)
            assert abs(chsh_value(psi, q)) <= TSIRELSON_BOUND + 1e-9
