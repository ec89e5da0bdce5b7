import math
from fractions import Fraction

import numpy as np
import pytest

from radonrange import CircleFunction, InvalidParameterError, TrigPoly, theta_grid, trig_from_samples
from radonrange.circle import fourier_energy, grid_index


def test_evaluation_matches_direct_sum():
    poly = TrigPoly((1.0, 0.5, -0.25), (0.0, 2.0, 0.125))
    thetas = np.linspace(0, 2 * math.pi, 17)
    direct = (
        1.0
        + 0.5 * np.cos(thetas)
        - 0.25 * np.cos(2 * thetas)
        + 2.0 * np.sin(thetas)
        + 0.125 * np.sin(2 * thetas)
    )
    assert np.allclose(poly(thetas), direct, atol=1e-14)
    assert poly(0.0) == pytest.approx(1.25)


def test_exact_product_cos_squared():
    # cos(2t)^2 == 1/2 + 1/2 cos(4t)
    c2 = TrigPoly.from_terms(cos={2: 1})
    sq = c2 * c2
    assert sq.cos_coeffs == (Fraction(1, 2), 0, 0, 0, Fraction(1, 2))
    assert all(c == 0 for c in sq.sin_coeffs)
    assert sq.is_exact


def test_product_agrees_with_pointwise_multiplication():
    a = TrigPoly((0.3, 1.2, 0.0, -0.7), (0.0, 0.4, -1.1, 0.2))
    b = TrigPoly((-1.0, 0.5), (0.0, 2.0))
    thetas = theta_grid(32)
    assert np.allclose((a * b)(thetas), a(thetas) * b(thetas), atol=1e-13)
    assert np.allclose((a + b)(thetas), a(thetas) + b(thetas), atol=1e-13)
    assert np.allclose((a - b)(thetas), a(thetas) - b(thetas), atol=1e-13)
    assert np.allclose((a**3)(thetas), a(thetas) ** 3, atol=1e-12)


def test_eval_exact_rational_circle_point():
    # (cos, sin) = ((1-t^2)/(1+t^2), 2t/(1+t^2)) is on the circle for rational t
    t = Fraction(1, 3)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    poly = TrigPoly((Fraction(1, 2), 2, Fraction(-3, 4)), (0, 1, Fraction(5, 7)))
    exact = poly.eval_exact(c, s)
    assert isinstance(exact, Fraction)
    theta = math.atan2(float(s), float(c))
    assert float(exact) == pytest.approx(poly(theta), abs=1e-12)


def test_from_samples_round_trip():
    poly = TrigPoly((0.5, 0.0, 1.5, 0.25), (0.0, -0.5, 0.0, 1.0))
    fitted = trig_from_samples(poly.samples(64))
    for f in range(4):
        assert fitted.coefficient(f)[0] == pytest.approx(poly.coefficient(f)[0], abs=1e-12)
        assert fitted.coefficient(f)[1] == pytest.approx(poly.coefficient(f)[1], abs=1e-12)
    assert fitted._scale() == pytest.approx(1.5, abs=1e-12)


def test_fourier_energy_localizes():
    thetas = theta_grid(64)
    energy = fourier_energy(3.0 * np.cos(5 * thetas))
    assert energy[5] == pytest.approx(9.0, abs=1e-12)
    assert float(energy.sum() - energy[5]) == pytest.approx(0.0, abs=1e-20)


def test_evenness_flags():
    assert TrigPoly.from_terms(cos={0: 1, 2: Fraction(1, 3)}).is_even()
    assert not TrigPoly.from_terms(cos={1: Fraction(1, 3)}).is_even()
    assert not TrigPoly.from_terms(sin={3: 1e-3}).is_even()


def test_trimmed_drops_padding():
    poly = TrigPoly((1, 0, 2, 0, 0), (0, 0, 0, 0, 0))
    assert poly.trimmed().max_frequency == 2
    assert poly.degree() == 2


def test_grid_index_accepts_nodes_and_rejects_off_grid():
    assert grid_index(0.0, 8) == 0
    assert grid_index(2 * math.pi / 8 * 3, 8) == 3
    assert grid_index(-2 * math.pi / 8, 8) == 7
    with pytest.raises(InvalidParameterError):
        grid_index(0.1, 8)


def test_circle_function_evenness_and_lookup():
    thetas = theta_grid(16)
    even = CircleFunction(np.cos(2 * thetas))
    assert even.is_even()
    odd = CircleFunction(np.cos(thetas))
    assert not odd.is_even()
    assert even.value_at(thetas[5]) == even.values[5]


def test_bad_grid_sizes_rejected():
    with pytest.raises(InvalidParameterError):
        theta_grid(7)
    with pytest.raises(InvalidParameterError):
        TrigPoly((1,), (2,))  # nonzero sin at frequency 0
