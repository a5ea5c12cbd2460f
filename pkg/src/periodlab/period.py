"""Period evaluation by four routes: quadrature, series, and elliptic closed forms.

Every route evaluates the same integral
``I = (sqrt(2)/omega) * int_0^pi dtheta / sqrt(1 + Delta(theta))`` and converts
it to a period through ``T = (sqrt(2)/omega0) * I``.  The exact route uses
Gauss-Legendre with node doubling; the series routes expand the integrand
binomially in the deviation; the canonical quartic and cubic wells also admit
complete-elliptic-integral closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, SeparatrixError
from .frame import BALANCED, NAYFEH, BalancedFrame, delta_at
from .potential import EnergyShell, cubic_factorization

DEFAULT_QUAD_TOL = 1e-13
_QUAD_N0 = 32
_QUAD_NMAX = 4096

# Series regimes.
CONVERGENT = "convergent"
DIVERGENT = "divergent"
BOUNDARY = "boundary"

_SQRT2 = math.sqrt(2.0)
_EARLY_STOP_RTOL = 1e-16
_CONVERGED_RTOL = 1e-10
_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class PeriodResult:
    """A computed period. ``Omega = 2 pi / T`` is fixed by construction."""

    T: float
    Omega: float
    method: str
    err_estimate: float


@dataclass(frozen=True)
class SeriesResult:
    """Binomial-series evaluation of the period integral I.

    ``terms[j]`` is the j-th series contribution and ``partial_sums[j]`` their
    running sum.  ``truncation_error`` is a geometric tail estimate built from
    the last two nonzero terms; ``regime`` classifies the governing ratio.
    """

    terms: tuple
    partial_sums: tuple
    xi: float | None
    converged: bool
    truncation_error: float
    regime: str

    @property
    def value(self) -> float:
        return self.partial_sums[-1]


@dataclass(frozen=True)
class EllipticForm:
    """T = prefactor * K(modulus_m) with the complete elliptic integral K."""

    modulus_m: float
    prefactor: float


def _period_result(T: float, method: str, err: float) -> PeriodResult:
    if not T > 0.0:
        raise DomainError(f"non-positive period {T}")
    return PeriodResult(T=T, Omega=2.0 * math.pi / T, method=method, err_estimate=err)


# ---------------------------------------------------------------------------
# Elliptic integrals
# ---------------------------------------------------------------------------

def elliptic_K(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter m = k^2 in [0, 1).

    Evaluated by the arithmetic-geometric mean; relative error below 1e-15.
    """
    if not 0.0 <= m < 1.0:
        raise DomainError(f"elliptic parameter m must lie in [0, 1), got {m}")
    a = 1.0
    b = math.sqrt(1.0 - m)
    # quadratic convergence: a handful of sweeps reach one ulp, where the
    # iterates may alternate forever; stop at 2 eps.
    for _ in range(60):
        if abs(a - b) <= 4.4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    else:
        raise ConvergenceError(f"AGM did not converge for m = {m}")
    return math.pi / (2.0 * a)


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature with node doubling
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _gl_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    theta = 0.5 * math.pi * (x + 1.0)
    weights = 0.5 * math.pi * w
    return theta, weights


def _integrate_theta(f, tol: float) -> tuple[float, float]:
    """``int_0^pi f(theta) dtheta`` by Gauss-Legendre, doubling nodes until the
    successive estimates agree to ``tol`` relative."""
    prev = None
    n = _QUAD_N0
    while n <= _QUAD_NMAX:
        theta, w = _gl_rule(n)
        val = float(w @ f(theta))
        if prev is not None and abs(val - prev) <= tol * max(1e-300, abs(val)):
            return val, abs(val - prev)
        prev = val
        n *= 2
    raise ConvergenceError(
        f"theta quadrature did not converge to {tol} within {_QUAD_NMAX} nodes"
    )


def period_quadrature(frame: BalancedFrame, omega0: float = 1.0,
                      tol: float | None = None) -> PeriodResult:
    """The exact period by quadrature of the angle integral.

    The result is independent of the frame strategy: the reference split is an
    identity.  A non-positive radicand at any node means the shell is at or
    beyond a separatrix.
    """
    tol = DEFAULT_QUAD_TOL if tol is None else float(tol)

    def integrand(theta):
        radicand = 1.0 + delta_at(frame, theta)
        if np.any(radicand <= 0.0):
            raise SeparatrixError(
                "non-positive radicand in the period integrand: separatrix shell"
            )
        return 1.0 / np.sqrt(radicand)

    val, err = _integrate_theta(integrand, tol)
    scale = 2.0 / (omega0 * frame.omega)  # sqrt2/omega0 * sqrt2/omega
    return _period_result(scale * val, "quadrature", scale * err)


def duffing_large_rho_constant(tol: float | None = None) -> float:
    """The scaled-period limit of the hardening quartic:
    ``4 * int_0^pi dtheta / sqrt(3 + cos 2 theta)`` (about 7.4162987)."""
    tol = DEFAULT_QUAD_TOL if tol is None else float(tol)
    val, _ = _integrate_theta(lambda t: 1.0 / np.sqrt(3.0 + np.cos(2.0 * t)), tol)
    return 4.0 * val


# ---------------------------------------------------------------------------
# Binomial series machinery
# ---------------------------------------------------------------------------

def binom_minus_half(n: int) -> np.ndarray:
    """``C(-1/2, j)`` for j = 0..n by the stable recurrence (no factorials)."""
    b = np.empty(n + 1)
    b[0] = 1.0
    for j in range(n):
        b[j + 1] = b[j] * (-0.5 - j) / (j + 1.0)
    return b


def _regime_from_ratio(s: float) -> str:
    if s < 1.0 - _BOUNDARY_TOL:
        return CONVERGENT
    if s <= 1.0 + _BOUNDARY_TOL:
        return BOUNDARY
    return DIVERGENT


def _truncation_estimate(terms, governing_ratio: float) -> float:
    if governing_ratio == 0.0:
        return 0.0  # the expansion variable vanishes: the tail is identically zero
    nz = [abs(t) for t in terms if t != 0.0]
    if not nz:
        return 0.0
    if len(nz) >= 2 and 0.0 < nz[-1] < nz[-2]:
        r = nz[-1] / nz[-2]
        return nz[-1] * r / (1.0 - r)
    return nz[-1]


def _series_result(terms, xi, regime, governing_ratio: float) -> SeriesResult:
    sums = np.cumsum(terms)
    trunc = _truncation_estimate(terms, governing_ratio)
    converged = regime == CONVERGENT and trunc <= _CONVERGED_RTOL * abs(sums[-1])
    return SeriesResult(
        terms=tuple(float(t) for t in terms),
        partial_sums=tuple(float(s) for s in sums),
        xi=xi,
        converged=bool(converged),
        truncation_error=float(trunc),
        regime=regime,
    )


def _stop_early(terms, total) -> bool:
    if len(terms) < 2:
        return False
    return max(abs(terms[-1]), abs(terms[-2])) < _EARLY_STOP_RTOL * abs(total)


def period_series_generic(frame: BalancedFrame, N: int) -> SeriesResult:
    """The binomial series for any polynomial shell, by exact angle moments.

    Each moment ``int_0^pi Delta^j dtheta`` is a polynomial in cos(theta), so
    the Gauss-Chebyshev rule with enough nodes integrates it exactly.
    Divergent regimes (sup |Delta| >= 1) still produce terms, flagged.
    """
    if N < 0:
        raise DomainError(f"series cap N must be >= 0, got {N}")
    shell = frame.shell
    deg = max(shell.residual.size - 1, 1)
    n_nodes = max(16, (N * deg) // 2 + 2)
    i = np.arange(1, n_nodes + 1)
    u = np.cos((2.0 * i - 1.0) * math.pi / (2.0 * n_nodes))
    x = 0.5 * (shell.x_plus + shell.x_minus) + 0.5 * (shell.x_plus - shell.x_minus) * u
    w2 = frame.omega * frame.omega
    delta_u = (2.0 * np.polynomial.polynomial.polyval(x, shell.residual) - w2) / w2
    weight = math.pi / n_nodes

    b = binom_minus_half(N)
    pref = _SQRT2 / frame.omega
    powers = np.ones_like(delta_u)
    terms = []
    total = 0.0
    for j in range(N + 1):
        moment = weight * float(powers.sum())
        term = pref * b[j] * moment
        terms.append(term)
        total += term
        if _stop_early(terms, total):
            break
        powers = powers * delta_u
    sup = frame.sup_abs_delta
    return _series_result(terms, frame.xi, _regime_from_ratio(sup), sup)


def _alternating_pair_coeffs(N: int) -> np.ndarray:
    """``(-1)^j C(-1/2, j) C(-1/2, 2j)`` for j = 0..N."""
    b = binom_minus_half(2 * N)
    j = np.arange(N + 1)
    return (-1.0) ** j * b[j] * b[2 * j]


def _closed_form_series(pref: float, xi2: float, xi_report, N: int) -> SeriesResult:
    coeffs = _alternating_pair_coeffs(N)
    terms = []
    total = 0.0
    power = 1.0
    for j in range(N + 1):
        term = pref * coeffs[j] * power
        terms.append(term)
        total += term
        if _stop_early(terms, total):
            break
        power *= xi2
    ratio = math.sqrt(abs(xi2))
    return _series_result(terms, xi_report, _regime_from_ratio(ratio), ratio)


def _require_oscillatory_rho(rho: float) -> None:
    if rho <= -1.0 + _BOUNDARY_TOL:
        raise SeparatrixError(
            f"rho = {rho} is at or beyond the amplitude limit (rho = -1): no periodic motion"
        )


def duffing_series_balanced(rho: float, N: int) -> SeriesResult:
    """The balanced series for the canonical quartic, ``xi = rho/(4 + 3 rho)``.

    Converges for every rho > -1, i.e. for every energy with periodic motion.
    """
    if N < 0:
        raise DomainError(f"series cap N must be >= 0, got {N}")
    _require_oscillatory_rho(rho)
    xi = rho / (4.0 + 3.0 * rho)
    pref = 2.0 * _SQRT2 * math.pi / math.sqrt(4.0 + 3.0 * rho)
    return _closed_form_series(pref, xi * xi, xi, N)


def duffing_series_nayfeh(rho: float, N: int) -> SeriesResult:
    """The textbook-frame series, ``xi = rho/(2 rho + 2)``; diverges on (-1, -2/3).

    Terms are returned for every rho > -1 so divergence is observable; the
    regime flag carries the verdict.
    """
    if N < 0:
        raise DomainError(f"series cap N must be >= 0, got {N}")
    _require_oscillatory_rho(rho)
    xi = rho / (2.0 * rho + 2.0)
    pref = _SQRT2 * math.pi / math.sqrt(1.0 + rho)
    b = binom_minus_half(N)
    terms = []
    total = 0.0
    power = 1.0
    converging = abs(xi) < 1.0
    for j in range(N + 1):
        term = pref * b[j] * b[j] * power
        terms.append(term)
        total += term
        if converging and _stop_early(terms, total):
            break
        power *= xi
    return _series_result(terms, xi, _regime_from_ratio(abs(xi)), abs(xi))


def cubic_series_balanced(shell: EnergyShell, N: int) -> SeriesResult:
    """The balanced series for a quadratic-cubic shell; ``Delta = xi cos theta``.

    Converges for every sub-barrier energy; at the barrier ``|xi| = 1`` and the
    shell is rejected.
    """
    if N < 0:
        raise DomainError(f"series cap N must be >= 0, got {N}")
    cubic_factorization(shell)  # validates the shell family
    s = shell if shell.residual[1] > 0.0 else shell.reflect()
    xp, xm = s.x_plus, s.x_minus
    sum_sq = xp ** 2 + xp * xm + xm ** 2
    cross = xp ** 2 + 4.0 * xp * xm + xm ** 2
    omega_b = math.sqrt(-cross / (2.0 * sum_sq))
    xi = (xp ** 2 - xm ** 2) / cross
    if abs(xi) >= 1.0 - _BOUNDARY_TOL:
        raise SeparatrixError(f"|xi| = {abs(xi)} at or above 1: separatrix shell")
    pref = _SQRT2 * math.pi / omega_b
    return _closed_form_series(pref, xi * xi, xi, N)


def period_from_series(series: SeriesResult, omega0: float = 1.0,
                       method: str = "series") -> PeriodResult:
    """Convert a series value of I into a period ``T = (sqrt 2 / omega0) I``."""
    scale = _SQRT2 / omega0
    return _period_result(scale * series.value, method, scale * series.truncation_error)


def duffing_balanced_large_rho_limit(N: int) -> float:
    """``lim sqrt(rho) T^(N)`` of the balanced quartic truncation (xi -> 1/3)."""
    coeffs = _alternating_pair_coeffs(N)
    powers = (1.0 / 9.0) ** np.arange(N + 1)
    return 4.0 * math.pi / math.sqrt(3.0) * float(coeffs @ powers)


# ---------------------------------------------------------------------------
# Elliptic closed forms
# ---------------------------------------------------------------------------

def duffing_elliptic_form(rho: float, omega0: float = 1.0) -> EllipticForm:
    """The canonical quartic period as ``prefactor * K(m)`` with m in [0, 1)."""
    _require_oscillatory_rho(rho)
    m = rho / (2.0 * rho + 2.0)
    pref = 4.0 / (omega0 * math.sqrt(1.0 + rho))
    if m < 0.0:
        pref /= math.sqrt(1.0 - m)
        m = m / (m - 1.0)
    return EllipticForm(modulus_m=float(m), prefactor=float(pref))


def duffing_elliptic(rho: float, omega0: float = 1.0) -> PeriodResult:
    """Exact canonical-quartic period ``T = 4 K(rho/(2 rho + 2)) / sqrt(1 + rho)``."""
    form = duffing_elliptic_form(rho, omega0)
    T = form.prefactor * elliptic_K(form.modulus_m)
    return _period_result(T, "elliptic-duffing", 8.0 * np.finfo(float).eps * T)


def cubic_elliptic_form(shell: EnergyShell, omega0: float = 1.0) -> EllipticForm:
    """The quadratic-cubic period as ``prefactor * K(k^2)``,
    ``k^2 = (x_plus - x_minus)/(x_plus - x3)``."""
    _, b1, x3 = cubic_factorization(shell)
    s = shell if shell.residual[1] > 0.0 else shell.reflect()
    lam = 3.0 * b1
    k2 = (s.x_plus - s.x_minus) / (s.x_plus - x3)
    if k2 >= 1.0 - _BOUNDARY_TOL:
        raise SeparatrixError(f"k^2 = {k2} at or above 1: separatrix shell")
    pref = math.sqrt(3.0 / (2.0 * lam)) * 4.0 / (omega0 * math.sqrt(s.x_plus - x3))
    return EllipticForm(modulus_m=float(k2), prefactor=float(pref))


def cubic_elliptic(shell: EnergyShell, omega0: float = 1.0) -> PeriodResult:
    """Exact quadratic-cubic period through the complete elliptic integral."""
    form = cubic_elliptic_form(shell, omega0)
    T = form.prefactor * elliptic_K(form.modulus_m)
    return _period_result(T, "elliptic-cubic", 8.0 * np.finfo(float).eps * T)


# ---------------------------------------------------------------------------
# Convenience dispatch used by the CLI and demos
# ---------------------------------------------------------------------------

def best_series(shell: EnergyShell, frame: BalancedFrame, N: int) -> SeriesResult:
    """The closed-form series when the frame admits one, else the generic series."""
    if frame.strategy == BALANCED and shell.rho is not None:
        return duffing_series_balanced(shell.rho, N)
    if frame.strategy == NAYFEH:
        if shell.rho is None:
            raise DomainError("nayfeh series requires a canonical quartic shell")
        return duffing_series_nayfeh(shell.rho, N)
    if frame.strategy == BALANCED and shell.residual.size == 2:
        return cubic_series_balanced(shell, N)
    return period_series_generic(frame, N)
