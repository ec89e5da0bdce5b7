"""Chord integrals of the singular disk density.

The density f0(x) = 1/(pi sqrt(1 - |x|^2)) integrates to exactly 1 over
every chord of the unit disk, so its transform in line coordinates is the
indicator of |p| < 1.  Differentiating twice in p therefore leaves a
distribution supported on the two tangent lines p = +-1, whose even
moments are 0, 4, 8, 12, ...: the simplest example of tangential data.
"""

import numpy as np

from radonrange import (
    LineParam,
    disk_sinogram,
    mollified_moment,
    radon_disk_density,
    second_p_derivative_moments,
    theta_grid,
)

print("=== chord integrals are exactly 1 inside the disk ===")
for p in (0.0, 0.5, 0.9, 0.99):
    value = radon_disk_density(LineParam(0.3, p))
    print(f"  p = {p:5.2f}: integral = {value:.15f}")
print(f"  p =  2.00: integral = {radon_disk_density(LineParam(0.3, 2.0)):.1f}  (misses the disk)")

print()
print("=== the integrand is rotation invariant ===")
values = [radon_disk_density(LineParam(theta, 0.37)) for theta in np.linspace(0, 6, 7)]
print(f"  spread across angles at p = 0.37: {max(values) - min(values):.2e}")

print()
print("=== a 512 x 101 sinogram sweep ===")
grid = disk_sinogram(theta_grid(512), (np.arange(101) - 50) / 32.0)
inner = np.abs((np.arange(101) - 50) / 32.0) <= 0.99
print(f"  max |value - 1| over chords: {np.nanmax(np.abs(grid[:, inner] - 1.0)):.2e}")

print()
print("=== moments of the second p-derivative ===")
print("  k   distributional   mollified (width 0.05)")
for k in (0, 2, 4, 6, 8):
    exact = second_p_derivative_moments(k)
    smeared = mollified_moment(k, 0.05)
    print(f"  {k}   {exact:>5}            {smeared:.6f}")

print()
print("=== the mollified moments converge at second order ===")
for k in (4, 6):
    errors = [abs(mollified_moment(k, h) - 2 * k) for h in (0.1, 0.05, 0.025)]
    ratios = [errors[i] / errors[i + 1] for i in range(2)]
    print(f"  k = {k}: errors {errors[0]:.2e} -> {errors[1]:.2e} -> {errors[2]:.2e}"
          f"  (ratios {ratios[0]:.2f}, {ratios[1]:.2f}; 4 = second order)")
