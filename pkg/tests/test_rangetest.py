import random
from fractions import Fraction

import numpy as np
import pytest

from radonrange import (
    InvalidParameterError,
    TangentialData,
    TrigPoly,
    disk,
    is_homogeneous_restriction,
    make_ellipse,
    perturb,
    range_check,
    theta_grid,
)
from radonrange.rangetest import allowed_frequencies


def _sample_homogeneous(rng, degree, n):
    """Random degree-homogeneous polynomial in omega, sampled on the grid."""
    thetas = theta_grid(n)
    c, s = np.cos(thetas), np.sin(thetas)
    values = np.zeros(n)
    for i in range(degree + 1):
        values += rng.uniform(-1, 1) * c**i * s ** (degree - i)
    return values


class TestMembership:
    def test_constant_is_degree_four(self):
        report = is_homogeneous_restriction(np.full(64, 7.0), 4)
        assert report.verdict
        assert report.forbidden_energy == pytest.approx(0.0, abs=1e-20)

    def test_cos2_is_degree_two(self):
        thetas = theta_grid(64)
        report = is_homogeneous_restriction(np.cos(2 * thetas), 2)
        assert report.verdict
        # cross-check the underlying identity cos(2t) = w1^2 - w2^2 pointwise
        assert np.allclose(np.cos(2 * thetas), np.cos(thetas) ** 2 - np.sin(thetas) ** 2)

    def test_cos4_fails_degree_two(self):
        thetas = theta_grid(64)
        report = is_homogeneous_restriction(np.cos(4 * thetas), 2)
        assert not report.verdict
        assert report.forbidden_energy == pytest.approx(report.total_energy, rel=1e-12)
        assert 4 in report.residual_spectrum

    def test_insufficient_samples_rejected(self):
        with pytest.raises(InvalidParameterError):
            is_homogeneous_restriction(np.zeros(8), 2)

    def test_allowed_set_has_matching_parity(self):
        assert allowed_frequencies(4) == {0, 2, 4}
        assert allowed_frequencies(5) == {1, 3, 5}
        assert allowed_frequencies(0) == {0}

    def test_exact_polynomials_need_exact_zeros(self):
        clean = TrigPoly.from_terms(cos={0: Fraction(1), 2: Fraction(1, 3)})
        assert is_homogeneous_restriction(clean, 2).verdict
        dirty = TrigPoly.from_terms(cos={0: Fraction(1), 4: Fraction(1, 10**12)})
        assert not is_homogeneous_restriction(dirty, 2).verdict

    def test_parity_soundness_on_random_homogeneous_polynomials(self):
        rng = random.Random(101)
        for degree in range(7):
            for _ in range(5):
                values = _sample_homogeneous(rng, degree, 128)
                report = is_homogeneous_restriction(values, degree)
                assert report.verdict
                assert report.forbidden_energy <= 1e-12 * max(report.total_energy, 1e-30)

    def test_completeness_against_contaminations(self):
        rng = random.Random(55)
        thetas = theta_grid(128)
        for degree, bad_freq in ((2, 3), (2, 4), (4, 6), (3, 2), (5, 8)):
            base = _sample_homogeneous(rng, degree, 128)
            contaminated = base + 0.01 * np.cos(bad_freq * thetas)
            assert not is_homogeneous_restriction(contaminated, degree).verdict

    def test_monotonicity_in_degree(self):
        rng = random.Random(77)
        for degree in range(5):
            values = _sample_homogeneous(rng, degree, 128)
            if is_homogeneous_restriction(values, degree).verdict:
                assert is_homogeneous_restriction(values, degree + 2).verdict

    def test_zero_function_passes(self):
        assert is_homogeneous_restriction(np.zeros(32), 2).verdict


class TestRangeCheck:
    def test_ellipse_data_pass_all_orders(self):
        data = TangentialData(make_ellipse(2, 1, 0), (1,))
        reports = range_check(data, 6)
        assert len(reports) == 7
        assert all(r.verdict for r in reports)

    def test_perturbed_disk_fails_at_first_nontrivial_order(self):
        data = TangentialData(perturb(disk(1), 0.05, 4), (1,))
        reports = range_check(data, 6)
        assert reports[0].verdict  # p_0 = 2 is a constant
        assert not reports[1].verdict  # p_2 = 2 rho^2 carries frequency 4
        assert reports[1].residual_spectrum.get(4, 0.0) > 0.0

    def test_disk_derivative_data_pass(self):
        data = TangentialData(disk(1), (0, -1))
        reports = range_check(data, 6)
        assert all(r.verdict for r in reports)

    def test_report_serialization(self):
        data = TangentialData(disk(1), (1,))
        payload = range_check(data, 2)[1].to_dict()
        assert payload["verdict"] == "pass"
        assert payload["degree"] == 2
        assert isinstance(payload["residual_spectrum"], dict)
