"""Moments of tangentially supported distributions.

Pairing a derivative of a point mass with a monomial gives

    integral delta^(j)(p - a) p^k dp = (-1)^j * k!/(k-j)! * a^(k-j)   (j <= k),

and 0 for j > k.  Summed over the symmetric pair of tangent lines, the
k-th moment of ``g = sum_j q_j (delta^(j)(p - rho) + (-1)^j delta^(j)(p + rho))``
vanishes for odd k and equals

    2 * sum_j c(k, j) (-1)^j q_j(omega) rho(omega)^(k-j)      (k even)

with the falling factorial c(k, j) = k (k-1) ... (k-j+1).  ``moment``
implements the closed form; ``moment_oracle`` re-derives the same number
by brute-force delta calculus, term by term and without the evenness
shortcut, so the two can be crossed in tests.
"""

from __future__ import annotations

import math

import numpy as np

from .circle import CircleFunction, TrigPoly, zero_circle_function
from .errors import InvalidParameterError
from .geometry import SupportFunction, TangentialData

#: default maximum half-order: moments p_0 .. p_{2*K} are tabulated
DEFAULT_MAX_HALF_ORDER = 12


def falling_factorial(k: int, j: int) -> int:
    """c(k, j) = k (k-1) ... (k-j+1), with c(k, 0) = 1 and 0 for j > k.

    Exact integer arithmetic for all nonnegative k, j.
    """
    if k < 0 or j < 0:
        raise InvalidParameterError("falling factorial needs nonnegative arguments")
    return math.perm(k, j)


def falling_factorial_table(max_half_order: int, m: int) -> list[list[int]]:
    """Rows c(2k, j) for k = 0..max_half_order, j = 0..m-1 (exact integers)."""
    return [[falling_factorial(2 * k, j) for j in range(m)] for k in range(max_half_order + 1)]


def _rho_power_poly(rho: SupportFunction, s: int) -> TrigPoly | None:
    """Exact-form trig polynomial for rho^s when one exists."""
    if s == 0:
        return TrigPoly.constant(1)
    if s % 2 == 0 and rho.rho2_poly is not None:
        return rho.rho2_poly ** (s // 2)
    if rho.rho_poly is not None:
        return rho.rho_poly**s
    return None


def moment(data: TangentialData, k: int, n: int | None = None) -> CircleFunction:
    """The k-th p-moment of the tangential distribution, as a function of theta.

    Odd k gives the zero function.  Samples are exact (Fractions) whenever
    the data are; the closed trigonometric form is attached whenever all
    required powers of rho have one (always for even-only densities, and
    for disks in general).
    """
    if n is None:
        n = data.natural_grid_size
    exact = data.is_exact
    if k % 2 == 1:
        return zero_circle_function(n, exact)

    rho_s = data.rho.rho_samples(n)
    if not exact:
        rho_s = np.asarray(rho_s, dtype=float)
    total = None
    poly_terms = []
    poly_ok = True
    for j in range(data.m):
        c = falling_factorial(k, j)
        if c == 0:
            continue
        sign = -1 if j % 2 else 1
        qs = data.density_samples(j, n)
        if not exact:
            qs = np.asarray(qs, dtype=float)
        term = (2 * c * sign) * qs * rho_s ** (k - j)
        total = term if total is None else total + term
        if poly_ok:
            q_poly = data.density_poly(j)
            rho_pow = _rho_power_poly(data.rho, k - j)
            if q_poly is None or rho_pow is None:
                poly_ok = False
            else:
                poly_terms.append((2 * c * sign) * q_poly * rho_pow)
    if total is None:
        return zero_circle_function(n, exact)
    poly = None
    if poly_ok:
        poly = TrigPoly.zero()
        for t in poly_terms:
            poly = poly + t
    return CircleFunction(total, poly)


def _delta_pairing(j: int, a, k: int):
    """integral delta^(j)(p - a) p^k dp, straight from the definition."""
    if j > k:
        return 0
    coeff = math.factorial(k) // math.factorial(k - j)
    return (-1) ** j * coeff * a ** (k - j)


def moment_oracle(data: TangentialData, k: int, theta: float):
    """Brute-force k-th moment at one angle, independent of :func:`moment`.

    Expands the distribution into its 2m individual delta-derivative terms
    and pairs each against p^k, with no parity shortcut and no shared
    coefficient table.  Intended as a test oracle.
    """
    rho_val, q_vals = data.values_at(theta)
    total = 0
    for j, q in enumerate(q_vals):
        plus = _delta_pairing(j, rho_val, k)
        minus = _delta_pairing(j, -rho_val, k)
        total = total + q * (plus + (-1) ** j * minus)
    return total
