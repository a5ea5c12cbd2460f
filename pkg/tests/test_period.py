"""Period layer: quadrature, binomial series, elliptic closed forms, regimes.

Reference values marked "oracle" were computed with 40-digit mpmath
quadrature/root-finding of the defining integrals, independent of every code
path under test.
"""

import math

import mpmath as mp
import numpy as np
import pytest

from periodlab import (
    BOUNDARY,
    CONVERGENT,
    DIVERGENT,
    ConvergenceError,
    DomainError,
    EnergyShell,
    SeparatrixError,
    balanced_frame,
    best_series,
    binom_minus_half,
    cubic_elliptic,
    cubic_elliptic_form,
    cubic_potential,
    cubic_series_balanced,
    duffing_balanced_large_rho_limit,
    duffing_elliptic,
    duffing_elliptic_form,
    duffing_large_rho_constant,
    duffing_potential,
    duffing_series_balanced,
    duffing_series_nayfeh,
    elliptic_K,
    fixed_frame,
    harmonic_potential,
    nayfeh_frame,
    period_from_series,
    period_quadrature,
    period_series_generic,
    turning_points,
)

# mpmath oracle values (40 significant digits at computation time)
K_HALF = 1.8540746773013719
K_NEAR_ONE = 8.294051463601062         # K(float 0.999999)
LARGE_RHO_CONST = 7.4162987092054877   # 4 * int_0^pi dtheta/sqrt(3 + cos 2theta)
T_DUFFING_RHO_1 = 4.768022029102461
T_DUFFING_RHO_M09 = 12.40871722558533
T_CUBIC_E015 = 8.417251885913373

SQRT2 = math.sqrt(2.0)


def _duffing_shell(rho: float):
    U = duffing_potential(rho)
    return turning_points(U, float(U(1.0)))


def _K_defining_integral(m: float) -> float:
    # independent adaptive (tanh-sinh) quadrature of the defining integral;
    # endpoint-aware, so m close to 1 is handled without special casing
    mp.mp.dps = 30
    return float(mp.quad(lambda a: 1 / mp.sqrt(1 - m * mp.sin(a) ** 2),
                         [0, mp.pi / 2]))


# ---------------------------------------------------------------------------
# elliptic_K
# ---------------------------------------------------------------------------

def test_elliptic_K_zero():
    assert elliptic_K(0.0) == pytest.approx(math.pi / 2.0, rel=1e-15)


def test_elliptic_K_half_against_quadrature():
    k = elliptic_K(0.5)
    assert k == pytest.approx(_K_defining_integral(0.5), rel=1e-13)
    assert k == pytest.approx(K_HALF, rel=1e-15)


def test_elliptic_K_near_one_against_quadrature():
    k = elliptic_K(0.999999)
    assert k == pytest.approx(_K_defining_integral(0.999999), rel=1e-10)
    assert k == pytest.approx(_K_defining_integral(0.999999), rel=1e-13)
    assert k == pytest.approx(K_NEAR_ONE, rel=1e-13)


@pytest.mark.parametrize("m", [-0.1, 1.0, 1.5])
def test_elliptic_K_domain(m):
    with pytest.raises(DomainError):
        elliptic_K(m)


def test_elliptic_forms_match_defining_integral():
    # EllipticForm contract: K(modulus_m) agrees with the defining integral.
    form = cubic_elliptic_form(turning_points(cubic_potential(1.0), 0.15))
    assert 0.0 <= form.modulus_m < 1.0
    assert elliptic_K(form.modulus_m) == pytest.approx(
        _K_defining_integral(form.modulus_m), rel=1e-13)

    # Softening quartic: the negative parameter is folded into [0, 1).
    form = duffing_elliptic_form(-0.9)
    assert 0.0 <= form.modulus_m < 1.0
    mp.mp.dps = 30
    direct = float(mp.quad(lambda a: 1 / mp.sqrt(1 + mp.mpf("4.5") * mp.sin(a) ** 2),
                           [0, mp.pi / 2]))
    assert form.prefactor * elliptic_K(form.modulus_m) == pytest.approx(
        4.0 / math.sqrt(0.1) * direct, rel=1e-13)


# ---------------------------------------------------------------------------
# period_quadrature
# ---------------------------------------------------------------------------

def test_quadrature_harmonic_two_pi():
    fr = balanced_frame(turning_points(harmonic_potential(), 0.5))
    res = period_quadrature(fr)
    assert res.T == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert res.Omega * res.T == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert res.method == "quadrature"


def test_quadrature_duffing_against_oracle():
    res = period_quadrature(balanced_frame(_duffing_shell(1.0)))
    assert res.T == pytest.approx(T_DUFFING_RHO_1, rel=1e-13)
    assert res.err_estimate <= 1e-12 * res.T


def test_quadrature_respects_custom_tolerance():
    fr = balanced_frame(_duffing_shell(1.0))
    loose = period_quadrature(fr, tol=1e-6)
    assert loose.T == pytest.approx(T_DUFFING_RHO_1, rel=1e-6)


def test_quadrature_raises_on_nonpositive_radicand():
    # Hand-built shell whose "residual" goes negative inside the interval.
    bad = EnergyShell(energy=1.0, x_minus=-1.0, x_plus=1.0,
                      residual=np.array([0.5, 0.8]))
    with pytest.raises(SeparatrixError):
        period_quadrature(fixed_frame(bad, 1.0))


def test_large_rho_constant_value():
    c = duffing_large_rho_constant()
    assert c == pytest.approx(LARGE_RHO_CONST, rel=1e-13)
    assert abs(c - 7.4162987) <= 5e-7


# ---------------------------------------------------------------------------
# Balanced quartic series
# ---------------------------------------------------------------------------

def _T0(rho):
    return 4.0 * math.pi / math.sqrt(4.0 + 3.0 * rho)


def _T1(rho):
    return math.pi * (147.0 * rho ** 2 + 384.0 * rho + 256.0) / (
        4.0 * (4.0 + 3.0 * rho) ** 2.5)


@pytest.mark.parametrize("rho", [0.0, 0.5, 1.0, 10.0])
def test_duffing_balanced_truncations_match_closed_formulas(rho):
    s0 = duffing_series_balanced(rho, 0)
    s1 = duffing_series_balanced(rho, 1)
    assert SQRT2 * s0.partial_sums[0] == pytest.approx(_T0(rho), rel=1e-12)
    assert SQRT2 * s1.partial_sums[-1] == pytest.approx(_T1(rho), rel=1e-12)


def test_duffing_balanced_harmonic_is_exact():
    s = duffing_series_balanced(0.0, 12)
    assert all(t == 0.0 for t in s.terms[1:])
    assert SQRT2 * s.partial_sums[-1] == pytest.approx(2.0 * math.pi, rel=1e-14)


def test_duffing_balanced_converges_to_elliptic():
    for rho in [-0.9, -0.5, 0.5, 1.0, 10.0, 1000.0]:
        s = duffing_series_balanced(rho, 60)
        assert s.regime == CONVERGENT
        assert s.converged
        T = SQRT2 * s.partial_sums[-1]
        assert T == pytest.approx(duffing_elliptic(rho).T, rel=1e-11)


def test_duffing_balanced_large_rho_limits():
    lim0 = duffing_balanced_large_rho_limit(0)
    lim1 = duffing_balanced_large_rho_limit(1)
    assert lim0 == pytest.approx(4.0 * math.pi / math.sqrt(3.0), rel=1e-15)
    assert lim1 == pytest.approx(49.0 * math.sqrt(3.0) * math.pi / 36.0, rel=1e-15)
    assert abs(lim0 - 7.26) <= 0.005
    assert abs(lim1 - 7.406) <= 0.0005
    # the truncations actually attain their limits at huge rho
    rho = 1e8
    for n, lim in [(0, lim0), (1, lim1)]:
        s = duffing_series_balanced(rho, n)
        assert math.sqrt(rho) * SQRT2 * s.partial_sums[-1] == pytest.approx(lim, rel=1e-7)


def test_duffing_balanced_rejects_beyond_limit():
    with pytest.raises(SeparatrixError):
        duffing_series_balanced(-1.0, 5)
    with pytest.raises(SeparatrixError):
        duffing_series_balanced(-1.5, 5)


# ---------------------------------------------------------------------------
# Nayfeh-frame series
# ---------------------------------------------------------------------------

def test_duffing_nayfeh_harmonic():
    s = duffing_series_nayfeh(0.0, 8)
    assert SQRT2 * s.partial_sums[-1] == pytest.approx(2.0 * math.pi, rel=1e-14)


def test_duffing_nayfeh_geometric_error_decay():
    # |I^(N) - I| = O((1/4)^N) at rho = 1.
    I_exact = duffing_elliptic(1.0).T / SQRT2
    s = duffing_series_nayfeh(1.0, 12)
    errs = [abs(p - I_exact) for p in s.partial_sums]
    for n in range(2, 8):
        assert 0.1 <= errs[n] / errs[n - 1] <= 0.3
    assert errs[8] <= 0.3 ** 8 * I_exact


def test_duffing_nayfeh_divergence_flagging():
    s = duffing_series_nayfeh(-0.8, 10)
    assert s.regime == DIVERGENT
    assert s.xi == pytest.approx(-2.0, rel=1e-13)
    assert not s.converged
    # growing terms are visible
    assert abs(s.terms[9]) > abs(s.terms[4]) > abs(s.terms[1])

    assert duffing_series_nayfeh(-2.0 / 3.0, 4).regime == BOUNDARY
    assert duffing_series_nayfeh(-0.6, 4).regime == CONVERGENT


def test_regime_partition_matches_convergence_domains():
    # Nayfeh diverges exactly on (-1, -2/3); balanced converges on (-1, inf).
    for rho in [-0.95, -0.8, -0.7]:
        assert duffing_series_nayfeh(rho, 4).regime == DIVERGENT
        assert duffing_series_balanced(rho, 4).regime == CONVERGENT
    for rho in [-0.6, 0.0, 5.0]:
        assert duffing_series_nayfeh(rho, 4).regime == CONVERGENT
        assert duffing_series_balanced(rho, 4).regime == CONVERGENT


# ---------------------------------------------------------------------------
# Elliptic closed forms
# ---------------------------------------------------------------------------

def test_duffing_elliptic_values():
    assert duffing_elliptic(0.0).T == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert duffing_elliptic(1.0).T == pytest.approx(T_DUFFING_RHO_1, rel=1e-14)
    assert duffing_elliptic(-0.9).T == pytest.approx(T_DUFFING_RHO_M09, rel=1e-13)


@pytest.mark.parametrize("rho", [-0.9, -0.3, 0.25, 1.0, 10.0, 1e3])
def test_duffing_elliptic_matches_quadrature(rho):
    t_quad = period_quadrature(balanced_frame(_duffing_shell(rho))).T
    assert duffing_elliptic(rho).T == pytest.approx(t_quad, rel=1e-12)


def test_duffing_elliptic_large_rho_limit():
    rho = 1e10
    assert math.sqrt(rho) * duffing_elliptic(rho).T == pytest.approx(
        LARGE_RHO_CONST, rel=1e-9)


def test_duffing_elliptic_rejects_beyond_limit():
    with pytest.raises(SeparatrixError):
        duffing_elliptic(-1.0)


def test_cubic_elliptic_harmonic_limit():
    shell = turning_points(cubic_potential(1.0), 1e-12)
    assert cubic_elliptic(shell).T == pytest.approx(2.0 * math.pi, abs=1e-9)


def test_cubic_elliptic_at_reference_energy():
    shell = turning_points(cubic_potential(1.0), 0.15)
    res = cubic_elliptic(shell)
    assert res.T == pytest.approx(T_CUBIC_E015, rel=1e-13)
    t_quad = period_quadrature(balanced_frame(shell)).T
    assert res.T == pytest.approx(t_quad, rel=1e-11)


def test_cubic_elliptic_negative_lambda_via_parity():
    t_neg = cubic_elliptic(turning_points(cubic_potential(-1.0), 0.15)).T
    assert t_neg == pytest.approx(T_CUBIC_E015, rel=1e-13)


def test_cubic_separatrix_modulus_reaches_one_and_rejects():
    shell = EnergyShell(
        energy=1.0 / 6.0, x_minus=-1.0, x_plus=0.5,
        residual=np.array([1.0 / 3.0, 1.0 / 3.0]), extra_roots=(-1.0,),
    )
    # k^2 = (x_plus - x_minus)/(x_plus - x3) = 1 exactly at the barrier
    with pytest.raises(SeparatrixError):
        cubic_elliptic_form(shell)
    with pytest.raises(SeparatrixError):
        cubic_series_balanced(shell, 8)


# ---------------------------------------------------------------------------
# Balanced cubic series
# ---------------------------------------------------------------------------

def test_cubic_series_harmonic_limit():
    shell = turning_points(cubic_potential(1.0), 1e-10)
    s = cubic_series_balanced(shell, 6)
    assert SQRT2 * s.partial_sums[-1] == pytest.approx(2.0 * math.pi, abs=1e-8)
    assert abs(s.xi) < 1e-4


def test_cubic_series_matches_elliptic():
    # xi = 0.6347 here, so nine terms leave a truncation of ~8e-5; the
    # sub-1e-6 regime is reached from N = 13 on (verified in extended
    # precision), with the geometric tail estimate tracking the true error.
    shell = turning_points(cubic_potential(1.0), 0.15)
    s8 = cubic_series_balanced(shell, 8)
    err8 = abs(SQRT2 * s8.partial_sums[-1] - T_CUBIC_E015)
    assert err8 <= 1e-4
    assert err8 <= 2.0 * SQRT2 * s8.truncation_error
    s13 = cubic_series_balanced(shell, 13)
    assert abs(SQRT2 * s13.partial_sums[-1] - T_CUBIC_E015) <= 1e-6
    s = cubic_series_balanced(shell, 40)
    assert s.converged
    assert SQRT2 * s.partial_sums[-1] == pytest.approx(T_CUBIC_E015, rel=1e-11)


def test_cubic_series_monotone_near_separatrix():
    # Slowly convergent but monotone: all terms are positive.
    shell = turning_points(cubic_potential(1.0), 1.0 / 6.0 - 1e-3)
    s = cubic_series_balanced(shell, 30)
    assert s.regime == CONVERGENT
    t_quad = period_quadrature(balanced_frame(shell)).T
    gaps = [t_quad - SQRT2 * p for p in s.partial_sums]
    assert all(g > 0 for g in gaps)
    assert all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))


# ---------------------------------------------------------------------------
# Generic series vs closed forms
# ---------------------------------------------------------------------------

def _nonzero(terms, floor):
    return [t for t in terms if abs(t) > floor]


@pytest.mark.parametrize("rho", [1.0, -0.5, 4.0])
def test_generic_matches_balanced_duffing_termwise(rho):
    shell = _duffing_shell(rho)
    generic = period_series_generic(balanced_frame(shell), 24)
    closed = duffing_series_balanced(rho, 12)
    g = _nonzero(generic.terms, 1e-13 * abs(generic.terms[0]))
    for a, b in list(zip(g, closed.terms))[:10]:
        assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("energy", [0.05, 0.15])
def test_generic_matches_balanced_cubic_termwise(energy):
    shell = turning_points(cubic_potential(1.0), energy)
    generic = period_series_generic(balanced_frame(shell), 24)
    closed = cubic_series_balanced(shell, 12)
    g = _nonzero(generic.terms, 1e-13 * abs(generic.terms[0]))
    for a, b in list(zip(g, closed.terms))[:10]:
        assert a == pytest.approx(b, rel=1e-12)


def test_generic_matches_nayfeh_termwise():
    shell = _duffing_shell(1.0)
    generic = period_series_generic(nayfeh_frame(shell), 12)
    closed = duffing_series_nayfeh(1.0, 12)
    for a, b in list(zip(generic.terms, closed.terms))[:10]:
        assert a == pytest.approx(b, rel=1e-12)


def test_generic_on_harmonic_all_higher_terms_vanish():
    fr = balanced_frame(turning_points(harmonic_potential(), 0.5))
    s = period_series_generic(fr, 10)
    assert s.partial_sums[-1] == pytest.approx(SQRT2 * math.pi, rel=1e-14)
    assert all(abs(t) <= 1e-15 for t in s.terms[1:])


def test_generic_divergent_regime_flagged():
    shell = _duffing_shell(-0.8)
    s = period_series_generic(nayfeh_frame(shell), 10)
    assert s.regime == DIVERGENT


def test_generic_handles_general_polynomial():
    from periodlab import from_physical

    U = from_physical([0.0, 0.0, 0.4, -0.3, 0.2, 0.05, 0.01])
    shell = turning_points(U, 0.35)
    fr = balanced_frame(shell)
    assert fr.xi is None
    s = period_series_generic(fr, 40)
    assert s.converged
    t_series = SQRT2 * s.partial_sums[-1]
    t_quad = period_quadrature(fr).T
    assert t_series == pytest.approx(t_quad, rel=1e-10)


# ---------------------------------------------------------------------------
# Series bookkeeping
# ---------------------------------------------------------------------------

def test_partial_sums_are_cumulative():
    s = duffing_series_balanced(0.7, 20)
    assert np.allclose(np.cumsum(s.terms), s.partial_sums, rtol=0, atol=0)


def test_early_stopping_caps_work():
    s = duffing_series_balanced(0.001, 40)
    assert len(s.terms) < 12
    assert s.converged
    assert s.truncation_error <= 1e-14


def test_binomial_recurrence_values():
    b = binom_minus_half(4)
    assert b[0] == 1.0
    assert b[1] == -0.5
    assert b[2] == pytest.approx(3.0 / 8.0, rel=1e-15)
    assert b[3] == pytest.approx(-5.0 / 16.0, rel=1e-15)
    assert b[4] == pytest.approx(35.0 / 128.0, rel=1e-15)


def test_period_from_series_scaling():
    s = duffing_series_balanced(1.0, 30)
    res = period_from_series(s, omega0=2.0)
    assert res.T == pytest.approx(T_DUFFING_RHO_1 / 2.0, rel=1e-12)
    assert res.Omega * res.T == pytest.approx(2.0 * math.pi, rel=1e-15)


def test_best_series_dispatch():
    duff = _duffing_shell(1.0)
    cub = turning_points(cubic_potential(1.0), 0.1)
    assert best_series(duff, balanced_frame(duff), 8).terms == \
        duffing_series_balanced(1.0, 8).terms
    assert best_series(duff, nayfeh_frame(duff), 8).terms == \
        duffing_series_nayfeh(1.0, 8).terms
    assert best_series(cub, balanced_frame(cub), 8).terms == \
        cubic_series_balanced(cub, 8).terms
    fixed = fixed_frame(duff, 1.0)
    generic = best_series(duff, fixed, 8)
    assert generic.terms == period_series_generic(fixed, 8).terms


# ---------------------------------------------------------------------------
# Cross-method agreement grid (module invariant)
# ---------------------------------------------------------------------------

def test_cross_method_agreement_grid():
    eps_floor = 8.0 * np.finfo(float).eps
    for rho in [-0.9, -0.5, 0.0, 0.5, 1.0, 10.0, 1e3]:
        fr = balanced_frame(_duffing_shell(rho))
        t_quad = period_quadrature(fr).T
        res_ell = duffing_elliptic(rho)
        assert abs(t_quad - res_ell.T) <= 1e-10 * t_quad
        s = duffing_series_balanced(rho, 80)
        assert s.converged
        t_series = SQRT2 * s.partial_sums[-1]
        budget = max(10.0 * SQRT2 * s.truncation_error, eps_floor * t_quad)
        assert abs(t_series - t_quad) <= budget

    for energy in [0.01, 0.1, 0.15, 1.0 / 6.0 - 1e-4]:
        shell = turning_points(cubic_potential(1.0), energy)
        t_quad = period_quadrature(balanced_frame(shell)).T
        assert abs(t_quad - cubic_elliptic(shell).T) <= 1e-10 * t_quad
        s = cubic_series_balanced(shell, 600)
        t_series = SQRT2 * s.partial_sums[-1]
        budget = max(10.0 * SQRT2 * s.truncation_error, eps_floor * t_quad)
        assert abs(t_series - t_quad) <= budget


# ---------------------------------------------------------------------------
# Geometric error decay of the balanced series (extended precision)
# ---------------------------------------------------------------------------

def _mp_balanced_partial_sums(rho, n_max):
    mp.mp.dps = 60
    rho = mp.mpf(rho)
    xi = rho / (4 + 3 * rho)
    pref = 2 * mp.sqrt(2) * mp.pi / mp.sqrt(4 + 3 * rho)
    b = [mp.mpf(1)]
    for j in range(2 * n_max + 1):
        b.append(b[-1] * (mp.mpf(-1) / 2 - j) / (j + 1))
    sums, s = [], mp.mpf(0)
    for j in range(n_max + 1):
        s += pref * (-1) ** j * b[j] * b[2 * j] * xi ** (2 * j)
        sums.append(s)
    return sums


def test_balanced_series_geometric_decay_rho_one():
    # True error ratios approach xi^2 = 1/49 from below; double precision
    # saturates near N = 8, so the per-N ratios are checked in 60-digit
    # arithmetic after verifying the float partial sums against it.
    xi2 = (1.0 / 7.0) ** 2
    sums_mp = _mp_balanced_partial_sums(1.0, 12)
    s = duffing_series_balanced(1.0, 12)
    for ps_float, ps_mp in zip(s.partial_sums, sums_mp):
        assert ps_float == pytest.approx(float(ps_mp), rel=1e-13)

    mp.mp.dps = 60
    I = 4 * mp.ellipk(mp.mpf(1) / 4) / mp.sqrt(2) / mp.sqrt(2)
    errs = [abs(p - I) for p in sums_mp]
    ratios = [float(errs[n] / errs[n - 1]) for n in range(1, 11)]
    # per-step ratio inside the 20% band from N = 4 on, approaching xi^2
    for n in range(4, 11):
        assert abs(ratios[n - 1] - xi2) <= 0.2 * xi2
    assert all(r1 < r2 for r1, r2 in zip(ratios[2:], ratios[3:]))
    # window-average decay rate over N = 3..10 also inside the band
    mean_ratio = float((errs[10] / errs[2]) ** (mp.mpf(1) / 8))
    assert abs(mean_ratio - xi2) <= 0.2 * xi2

    # float-level spot check where double precision is still clean
    I_f = duffing_elliptic(1.0).T / SQRT2
    errs_f = [abs(p - I_f) for p in s.partial_sums]
    for n in (4, 5):
        assert abs(errs_f[n] / errs_f[n - 1] - xi2) <= 0.2 * xi2
