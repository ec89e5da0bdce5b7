"""The exact elimination identities, one by one.

Everything here runs over exact rationals: the falling-factorial columns
are annihilated by finite differences, consecutive moments obey a
binomial recurrence whose companion matrix has a single m-fold eigenvalue
rho^2, and conjugating that matrix into the density basis exposes an
explicit nilpotent part.  Chained together (via the Krylov span
criterion) they certify that the moment Hankel matrix is non-singular
wherever the top density is nonzero.
"""

from fractions import Fraction

import numpy as np

from radonrange import (
    conjugated_shift,
    difference_residual,
    exactla,
    hankel_certificate,
    krylov_spans,
    nilpotent_part,
    recurrence_coeffs,
    shift_matrix,
    tangential_disk_data,
)

print("=== finite differences annihilate the falling-factorial columns ===")
residuals = [difference_residual(m, r, j) for m in range(1, 9) for r in range(21) for j in range(m)]
print(f"  checked {len(residuals)} alternating sums: all zero -> {all(x == 0 for x in residuals)}")

print()
print("=== the moment recurrence and its companion matrix (m = 3, rho^2 = 2) ===")
rho2 = Fraction(2)
print(f"  coefficients r_k: {recurrence_coeffs(3, rho2)}   (p_(2r+6) = r_0 p_(2r) + r_1 p_(2r+2) + r_2 p_(2r+4))")
s = shift_matrix(3, rho2)
print(f"  det S = {exactla.det(s)} = rho^6")
print(f"  char poly coefficients: {exactla.char_poly(s)}  == (lambda - 2)^3")

print()
print("=== conjugation into the density basis (m = 5, rho = 1) ===")
for row in conjugated_shift(5, Fraction(1)):
    print("   ", [int(x) for x in row])
print("  diagonal rho^2, superdiagonals 2 rho k and k(k+1), zeros elsewhere")

print()
print("=== Krylov span criterion on the nilpotent part ===")
a = conjugated_shift(3, Fraction(1))
e1 = np.asarray([Fraction(1), Fraction(0), Fraction(0)], dtype=object)
e3 = np.asarray([Fraction(0), Fraction(0), Fraction(1)], dtype=object)
print(f"  z = e_3 spans (top density alive): {krylov_spans(a, e3, Fraction(1))}")
print(f"  z = e_1 collapses (N e_1 = 0):     {krylov_spans(a, e1, Fraction(1))}")
n = nilpotent_part(3, Fraction(1))
print(f"  N^2 has a single corner entry: {[list(r) for r in exactla.mat_pow(n, 2)]}  (= (2 rho)^2 2!)")

print()
print("=== the Hankel certificate for the disk derivative data ===")
cert = hankel_certificate(tangential_disk_data(), n=16)
print(f"  m = {cert.m}, every determinant = {cert.determinants[0]}, verdict: "
      f"{'pass' if cert.verdict else 'fail'}")
