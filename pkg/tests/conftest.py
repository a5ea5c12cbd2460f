"""Shared helpers: random sub-separatrix wells for property tests."""

import numpy as np
import pytest

from periodlab import (
    barrier_info,
    cubic_potential,
    duffing_potential,
    from_physical,
    turning_points,
)


def random_wells(rng: np.random.Generator, n: int):
    """Yield ``(U, energy, shell)`` over random quartic and cubic wells.

    The energy is drawn strictly inside the oscillatory band: below the
    adjacent barrier for locally confining wells, on an O(1) scale otherwise.
    """
    out = []
    while len(out) < n:
        kind = int(rng.integers(0, 3))
        if kind == 0:
            U = duffing_potential(float(rng.uniform(-0.9, 3.0)))
        elif kind == 1:
            sign = -1.0 if rng.random() < 0.5 else 1.0
            U = cubic_potential(sign * float(rng.uniform(0.3, 2.0)))
        else:
            c2 = float(rng.uniform(0.2, 1.0))
            c3 = float(rng.uniform(-0.8, 0.8))
            c4 = float(rng.uniform(-0.4, 0.9))
            if abs(c4) < 1e-3:
                c4 = 0.3
            U = from_physical([0.0, 0.0, c2, c3, c4])
        b = barrier_info(U)
        cap = b.barrier_energy if b.has_barrier else 4.0
        energy = float(rng.uniform(0.02, 0.9)) * cap
        try:
            shell = turning_points(U, energy)
        except Exception:
            continue
        out.append((U, energy, shell))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
