"""Polynomial potential wells and their energy shells.

A well is described by a dimensionless potential ``U(x) = sum_k c_k x**k``
(units of length squared) whose reference minimum sits at ``U = 0``.  For a
given energy this module locates the turning points, peels the two simple
zeros off ``Q(x) = E - U(x)`` to expose the positive residual ``R(x)``, and
reports barrier/limit metadata for wells that are only locally confining.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from ._poly import as_coeffs, deflate, real_roots
from .errors import ConvergenceError, DomainError, NoMinimumError, SeparatrixError

# Energies this close (relative) to a barrier are treated as the separatrix.
SEPARATRIX_RTOL = 1e-12

_PATTERN_RTOL = 1e-12
_MIN_ENERGY = 1e-30


@dataclass(frozen=True)
class PolynomialPotential:
    """Dimensionless polynomial potential with provenance scaling.

    ``coeffs[k]`` multiplies ``x**k`` directly, so the canonical hardening
    quartic stores ``[0, 0, 1/2, 0, lam/4]``.  ``mass`` and ``omega0`` record
    the physical scaling used to build the dimensionless form; they do not
    enter any evaluation except the final conversion of periods to time.
    """

    coeffs: np.ndarray
    mass: float = 1.0
    omega0: float = 1.0
    minimum_x: float = 0.0

    def __post_init__(self):
        c = as_coeffs(self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if self.mass <= 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.omega0 <= 0.0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if c.size - 1 < 2:
            raise DomainError("potential must have degree >= 2")
        scale = max(1.0, float(np.max(np.abs(c))))
        if abs(self(self.minimum_x)) > 1e-8 * scale:
            raise DomainError(
                f"U(minimum_x) = {self(self.minimum_x)!r} is not zero; "
                "shift the coefficients so the reference minimum has zero potential"
            )
        if abs(self.slope(self.minimum_x)) > 1e-8 * scale:
            raise DomainError(f"minimum_x={self.minimum_x} is not a critical point")
        if self.curvature(self.minimum_x) <= 0.0:
            raise NoMinimumError(
                f"U''({self.minimum_x}) = {self.curvature(self.minimum_x)} <= 0: "
                "reference point is not a local minimum"
            )

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)

    def slope(self, x):
        """First derivative U'(x)."""
        return npoly.polyval(x, npoly.polyder(self.coeffs))

    def curvature(self, x):
        """Second derivative U''(x)."""
        return npoly.polyval(x, npoly.polyder(self.coeffs, 2))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_symmetric(self) -> bool:
        """True when U(-x) = U(x) about x = 0 and the minimum sits at 0."""
        if abs(self.minimum_x) > 1e-14:
            return False
        tol = _PATTERN_RTOL * max(1.0, float(np.max(np.abs(self.coeffs))))
        return bool(np.all(np.abs(self.coeffs[1::2]) <= tol))

    @property
    def duffing_lambda(self) -> float | None:
        """Anharmonicity of the canonical quartic ``x^2/2 + lam x^4/4``; None otherwise.

        The harmonic well counts as ``lam = 0``.
        """
        c = self.coeffs
        if self.degree not in (2, 4) or abs(self.minimum_x) > 1e-14:
            return None
        tol = _PATTERN_RTOL * max(1.0, float(np.max(np.abs(c))))
        if abs(c[0]) > tol or abs(c[1]) > tol or abs(c[2] - 0.5) > tol:
            return None
        if self.degree == 2:
            return 0.0
        if abs(c[3]) > tol:
            return None
        return 4.0 * float(c[4])

    @property
    def cubic_lambda(self) -> float | None:
        """Anharmonicity of the canonical cubic ``x^2/2 + lam x^3/3``; None otherwise."""
        c = self.coeffs
        if self.degree != 3 or abs(self.minimum_x) > 1e-14:
            return None
        tol = _PATTERN_RTOL * max(1.0, float(np.max(np.abs(c))))
        if abs(c[0]) > tol or abs(c[1]) > tol or abs(c[2] - 0.5) > tol:
            return None
        return 3.0 * float(c[3])

    def reflect(self) -> "PolynomialPotential":
        """The parity image U(-x), with the reference minimum mapped along."""
        c = self.coeffs.copy()
        c[1::2] *= -1.0
        return PolynomialPotential(c, self.mass, self.omega0, -self.minimum_x)


@dataclass(frozen=True)
class EnergyShell:
    """One energy level of a well: turning points and the deflated residual.

    ``Q(x) = energy - U(x) = (x_plus - x)(x - x_minus) R(x)`` with ``R > 0``
    on the closed interval between the turning points.  ``extra_roots`` holds
    any remaining real zeros of Q outside that interval.  ``reflected`` marks
    shells produced by the parity map from a lam < 0 cubic.
    """

    energy: float
    x_minus: float
    x_plus: float
    residual: np.ndarray
    extra_roots: tuple = ()
    amplitude: float | None = None
    rho: float | None = None
    reflected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "residual", as_coeffs(self.residual))
        object.__setattr__(self, "extra_roots", tuple(float(r) for r in self.extra_roots))
        if not self.x_minus < self.x_plus:
            raise DomainError(f"turning points out of order: {self.x_minus} >= {self.x_plus}")

    def residual_at(self, x):
        return npoly.polyval(x, self.residual)

    def q_at(self, x):
        """Reconstructed Q(x) = (x_plus - x)(x - x_minus) R(x)."""
        return (self.x_plus - x) * (x - self.x_minus) * self.residual_at(x)

    def reflect(self) -> "EnergyShell":
        """The shell of the parity-image potential: x -> -x."""
        res = self.residual.copy()
        res[1::2] *= -1.0
        return EnergyShell(
            energy=self.energy,
            x_minus=-self.x_plus,
            x_plus=-self.x_minus,
            residual=res,
            extra_roots=tuple(-r for r in self.extra_roots),
            amplitude=self.amplitude,
            rho=self.rho,
            reflected=not self.reflected,
        )


@dataclass(frozen=True)
class BarrierInfo:
    """Barriers adjacent to the reference minimum, if any.

    ``barrier_energy`` is the lowest adjacent barrier height (``inf`` when the
    well confines in both directions).  ``amplitude_limit`` is only set for
    parity-symmetric wells, where it equals the barrier position.
    """

    has_barrier: bool
    barrier_energy: float = math.inf
    barrier_x: float | None = None
    amplitude_limit: float | None = None


def from_physical(v_coeffs, mass: float = 1.0, omega0: float = 1.0,
                  reference_x: float = 0.0) -> PolynomialPotential:
    """Build the dimensionless well ``U = V/(m omega0^2)`` from physical coefficients.

    The reference minimum is the critical point of U with positive curvature
    nearest ``reference_x``; the constant coefficient is shifted so that
    ``U(minimum) = 0`` exactly.
    """
    if mass <= 0.0:
        raise DomainError(f"mass must be positive, got {mass}")
    if omega0 <= 0.0:
        raise DomainError(f"omega0 must be positive, got {omega0}")
    u = np.atleast_1d(np.asarray(v_coeffs, dtype=float)) / (mass * omega0 ** 2)
    u = npoly.polytrim(u, tol=0.0)
    if u.size - 1 < 2:
        raise DomainError("potential must have degree >= 2")
    du = npoly.polyder(u)
    d2u = npoly.polyder(u, 2)
    crits = real_roots(du)
    minima = [c for c in crits if npoly.polyval(c, d2u) > 0.0]
    if not minima:
        raise NoMinimumError(
            f"no local minimum with positive curvature; critical points: {list(crits)}"
        )
    m = min(minima, key=lambda c: abs(c - reference_x))
    u = u.copy()
    u[0] -= npoly.polyval(m, u)
    return PolynomialPotential(u, mass=mass, omega0=omega0, minimum_x=float(m))


def harmonic_potential(mass: float = 1.0, omega0: float = 1.0) -> PolynomialPotential:
    """The reference well U(x) = x^2/2."""
    return PolynomialPotential(np.array([0.0, 0.0, 0.5]), mass, omega0)


def duffing_potential(lam: float, mass: float = 1.0, omega0: float = 1.0) -> PolynomialPotential:
    """The canonical quartic well U(x) = x^2/2 + lam x^4/4 (lam = 0 is harmonic)."""
    if lam == 0.0:
        return harmonic_potential(mass, omega0)
    return PolynomialPotential(np.array([0.0, 0.0, 0.5, 0.0, lam / 4.0]), mass, omega0)


def cubic_potential(lam: float, mass: float = 1.0, omega0: float = 1.0) -> PolynomialPotential:
    """The canonical asymmetric well U(x) = x^2/2 + lam x^3/3, lam != 0."""
    if lam == 0.0:
        raise DomainError("cubic potential requires lam != 0; use harmonic_potential")
    return PolynomialPotential(np.array([0.0, 0.0, 0.5, lam / 3.0]), mass, omega0)


def barrier_info(U: PolynomialPotential) -> BarrierInfo:
    """Locate the finite barriers bounding the reference well, if any."""
    crits = real_roots(npoly.polyder(U.coeffs))
    below = [c for c in crits if c < U.minimum_x - 1e-14]
    above = [c for c in crits if c > U.minimum_x + 1e-14]
    candidates = []
    for side in (max(below) if below else None, min(above) if above else None):
        if side is None:
            continue
        if U.curvature(side) <= 0.0 and U(side) > 0.0:
            candidates.append((float(U(side)), float(side)))
    if not candidates:
        return BarrierInfo(has_barrier=False)
    energy, x = min(candidates)
    limit = abs(x) if U.is_symmetric else None
    return BarrierInfo(True, barrier_energy=energy, barrier_x=x, amplitude_limit=limit)


def turning_points(U: PolynomialPotential, energy: float) -> EnergyShell:
    """The energy shell at ``energy``: adjacent turning points and residual.

    Raises :class:`DomainError` for non-positive energies and
    :class:`SeparatrixError` for energies at or beyond an adjacent barrier
    (within ``SEPARATRIX_RTOL`` relative).
    """
    energy = float(energy)
    if not energy > 0.0:
        raise DomainError(f"energy must be positive, got {energy}")
    if energy < _MIN_ENERGY:
        raise DomainError(f"energy {energy} below the supported floor {_MIN_ENERGY}")
    barrier = barrier_info(U)
    if barrier.has_barrier and energy >= barrier.barrier_energy * (1.0 - SEPARATRIX_RTOL):
        raise SeparatrixError(
            f"energy {energy} at or above the barrier {barrier.barrier_energy}: "
            "the motion is unbounded/separatrix there"
        )

    q = -U.coeffs.copy()
    q[0] += energy
    roots = real_roots(q)
    left = roots[roots < U.minimum_x]
    right = roots[roots > U.minimum_x]
    if left.size == 0 or right.size == 0:
        raise DomainError(
            f"no turning points bracket the minimum at energy {energy}; "
            f"real roots found: {list(roots)}"
        )
    x_minus = float(left.max())
    x_plus = float(right.min())

    symmetric = U.is_symmetric
    if symmetric:
        # Companion roots of an even polynomial are symmetric to rounding;
        # averaging pins the parity invariant exactly.
        half = 0.5 * (x_plus - x_minus)
        x_minus, x_plus = -half, half

    quot, rem_plus = deflate(q, x_plus)
    quot, rem_minus = deflate(quot, x_minus)
    residual = -quot
    tol = 1e-10 * max(1.0, energy)
    if abs(rem_plus) > tol or abs(rem_minus) > tol:
        raise ConvergenceError(
            f"turning-point deflation left remainders ({rem_plus}, {rem_minus}) above {tol}"
        )

    shell_extra = tuple(
        float(r) for r in roots if r < x_minus - 1e-14 or r > x_plus + 1e-14
    )

    amplitude = x_plus if symmetric else None
    lam = U.duffing_lambda
    rho = lam * amplitude ** 2 if (lam is not None and amplitude is not None) else None

    shell = EnergyShell(
        energy=energy,
        x_minus=x_minus,
        x_plus=x_plus,
        residual=residual,
        extra_roots=shell_extra,
        amplitude=amplitude,
        rho=rho,
    )
    _check_residual_positive(shell)
    return shell


def _check_residual_positive(shell: EnergyShell) -> None:
    r = shell.residual
    values = [shell.residual_at(shell.x_minus), shell.residual_at(shell.x_plus)]
    if r.size > 1:
        for c in real_roots(npoly.polyder(r)):
            if shell.x_minus < c < shell.x_plus:
                values.append(shell.residual_at(c))
    if min(values) <= 0.0:
        raise DomainError(
            f"residual R(x) is not positive on the shell (min {min(values)}); "
            "the energy does not select a simple oscillatory band"
        )


def cubic_factorization(shell: EnergyShell) -> tuple[float, float, float]:
    """Linear-residual parameters ``(b0, b1, x3)`` of a quadratic-cubic shell.

    ``R(x) = b0 + b1 x`` with ``b1 = lam/3 > 0`` after canonicalization, and
    ``x3 = -x_plus x_minus / (x_plus + x_minus)`` is the third real zero of Q,
    below ``x_minus``.  Shells from a lam < 0 well are reflected internally
    (the parity map leaves the period unchanged); the returned values refer to
    the canonical orientation.
    """
    if shell.residual.size != 2:
        raise DomainError(
            "cubic factorization requires a quadratic-cubic shell with a linear residual"
        )
    s = shell if shell.residual[1] > 0.0 else shell.reflect()
    b0, b1 = float(s.residual[0]), float(s.residual[1])
    x3 = -s.x_plus * s.x_minus / (s.x_plus + s.x_minus)
    return b0, b1, float(x3)
