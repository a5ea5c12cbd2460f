"""Asymmetric cubic well: exact elliptic form, balanced series, separatrix.

U(x) = x^2/2 + lam x^3/3 confines only below the barrier 1/(6 lam^2).  The
factorization Q = (x_plus - x)(x - x_minus)(b0 + b1 x) exposes the third root
x3, giving the exact period through the complete elliptic integral with
k^2 = (x_plus - x_minus)/(x_plus - x3).  The balanced deviation is the pure
harmonic xi cos(theta), so the series converges for every sub-barrier energy;
xi -> 1 and k^2 -> 1 only at the barrier itself, where the period diverges.

CLI equivalent:
    periodlab sweep --preset cubic --lambda 1 --param energy \
        --from 0.01 --to 0.16 --steps 7
"""

import math

import periodlab as pl

U = pl.cubic_potential(1.0)
barrier = pl.barrier_info(U)
print(f"barrier: height {barrier.barrier_energy:.12f} at x = {barrier.barrier_x}")
print()

energy = 0.15
shell = pl.turning_points(U, energy)
b0, b1, x3 = pl.cubic_factorization(shell)
form = pl.cubic_elliptic_form(shell)
print(f"E = {energy}: x- = {shell.x_minus:.10f}, x+ = {shell.x_plus:.10f}, "
      f"x3 = {x3:.10f}")
print(f"residual R(x) = {b0:.10f} + {b1:.10f} x,  k^2 = {form.modulus_m:.10f}")
print()

t_ell = pl.cubic_elliptic(shell).T
t_quad = pl.period_quadrature(pl.balanced_frame(shell)).T
t_oracle = pl.measure_period(U, energy).period
print(f"elliptic form : {t_ell:.15f}")
print(f"quadrature    : {t_quad:.15f}")
print(f"motion oracle : {t_oracle:.15f}")
series = pl.cubic_series_balanced(shell, 20)
print(f"series, 21 terms: {math.sqrt(2) * series.partial_sums[-1]:.15f} "
      f"(xi = {series.xi:.6f})")
print()

print("approach to the separatrix (period grows without bound):")
print(f"{'E':>14}  {'xi':>12}  {'k^2':>12}  {'T':>14}")
for n in range(2, 7):
    e = 1.0 / 6.0 - 10.0 ** (-n)
    sh = pl.turning_points(U, e)
    fr = pl.balanced_frame(sh)
    k2 = pl.cubic_elliptic_form(sh).modulus_m
    t = pl.period_quadrature(fr).T
    print(f"{e:>14.8f}  {fr.xi:>12.9f}  {k2:>12.9f}  {t:>14.8f}")
print("at E = 1/6 every closed-form route rejects (xi = 1, k^2 = 1):")
try:
    pl.turning_points(U, 1.0 / 6.0)
except pl.SeparatrixError as exc:
    print(f"  SeparatrixError: {exc}")
