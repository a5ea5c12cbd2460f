"""Small polynomial helpers: real-root isolation, Newton polish, deflation.

Coefficient arrays are stored low-to-high: ``coeffs[k]`` multiplies ``x**k``.
"""

from __future__ import annotations

import numpy as np
import numpy.polynomial.polynomial as npoly


def as_coeffs(c) -> np.ndarray:
    """Coerce to a trimmed, read-only float coefficient array."""
    arr = np.atleast_1d(np.asarray(c, dtype=float)).copy()
    arr = npoly.polytrim(arr, tol=0.0)
    arr.flags.writeable = False
    return arr


def newton_polish(coeffs, dcoeffs, x0: float, rtol: float = 1e-15, max_iter: int = 50) -> float:
    """Refine a simple real root estimate to ~1e-15 relative accuracy."""
    x = float(x0)
    for _ in range(max_iter):
        f = npoly.polyval(x, coeffs)
        if f == 0.0:
            return x
        df = npoly.polyval(x, dcoeffs)
        if df == 0.0:
            return x
        step = f / df
        x_new = x - step
        if abs(step) <= rtol * max(1.0, abs(x_new)):
            return x_new
        x = x_new
    return x


def real_roots(coeffs, imag_tol: float = 1e-8) -> np.ndarray:
    """All real roots of a polynomial, isolated by the companion matrix and polished.

    Roots whose companion-matrix imaginary part exceeds ``imag_tol`` (relative
    to their magnitude) are treated as genuinely complex and dropped.
    """
    c = npoly.polytrim(np.atleast_1d(np.asarray(coeffs, dtype=float)), tol=0.0)
    if c.size <= 1:
        return np.empty(0)
    rts = npoly.polyroots(c)
    keep = np.abs(rts.imag) <= imag_tol * np.maximum(1.0, np.abs(rts))
    xs = rts.real[keep]
    if xs.size == 0:
        return np.empty(0)
    dc = npoly.polyder(c)
    polished = np.array([newton_polish(c, dc, x) for x in xs])
    return np.sort(polished)


def deflate(coeffs, root: float) -> tuple[np.ndarray, float]:
    """Synthetic division of ``p(x)`` by ``(x - root)``.

    Returns ``(quotient, remainder)`` with the quotient low-to-high; the
    remainder equals ``p(root)``.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    acc = 0.0
    out = np.empty(c.size, dtype=float)
    for i, a in enumerate(c[::-1]):
        acc = acc * root + a
        out[i] = acc
    return out[:-1][::-1].copy(), float(out[-1])
