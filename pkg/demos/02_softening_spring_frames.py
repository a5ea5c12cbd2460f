"""Softening spring: why the reference frequency matters.

For U(x) = x^2/2 + lam x^4/4 with lam < 0 the motion is periodic for
rho = lam A^2 > -1, but the textbook frame omega = sqrt(1 + rho) yields a
series that diverges on (-1, -2/3).  Balancing the deviation extrema
(omega_b^2 = R_max + R_min) restores convergence on the whole oscillatory
band.  The exact quadrature is frame independent either way.

CLI equivalent:
    periodlab converge --preset duffing --lambda -0.8 --amplitude 1 \
        --frame nayfeh --Nmax 10
    periodlab converge --preset duffing --lambda -0.8 --amplitude 1 --Nmax 10
"""

import math

import periodlab as pl

rho = -0.8
U = pl.duffing_potential(rho)      # amplitude 1 realizes this rho
energy = float(U(1.0))
shell = pl.turning_points(U, energy)

t_exact = pl.period_quadrature(pl.balanced_frame(shell)).T
print(f"rho = {rho}: exact period T = {t_exact:.12f}")
print(f"frame-independence check, fixed omega = 1: "
      f"{pl.period_quadrature(pl.fixed_frame(shell, 1.0)).T:.12f}")
print()

nayfeh = pl.duffing_series_nayfeh(rho, 10)
balanced = pl.duffing_series_balanced(rho, 10)
print(f"textbook frame: xi = {nayfeh.xi:+.4f} -> {nayfeh.regime}")
print(f"balanced frame: xi = {balanced.xi:+.4f} -> {balanced.regime}")
print()
print(f"{'N':>3}  {'textbook |T^(N) - T|':>22}  {'balanced |T^(N) - T|':>22}")
for n in range(11):
    dev_n = abs(math.sqrt(2) * nayfeh.partial_sums[n] - t_exact)
    dev_b = abs(math.sqrt(2) * balanced.partial_sums[n] - t_exact)
    print(f"{n:>3}  {dev_n:>22.6e}  {dev_b:>22.6e}")
print()

# The divergence boundary is exactly rho = -2/3.
for r in [-0.95, -0.7, -2.0 / 3.0, -0.6, 0.5]:
    regime = pl.duffing_series_nayfeh(r, 4).regime
    print(f"rho = {r:+.4f}: textbook series regime = {regime}")
