"""Seeded random elements for property suites and tests.

All generators are pure functions of a numpy Generator, so per-trial streams
derived from (seed, index) make every suite reproducible and independent of
execution order.
"""

from __future__ import annotations

import numpy as np

from .diffeo import CircleDiffeo, IntervalArc, make_bump
from .loops import LoopAlgebraElement
from .periodic import PeriodicFunction, grid

__all__ = [
    "rng_for",
    "random_diffeo",
    "random_vect_field",
    "random_loop_algebra",
    "random_supported_diffeo",
    "random_rotation",
]


def rng_for(seed: int, *index: int) -> np.random.Generator:
    return np.random.default_rng([seed, *index])


def _band_limited(rng: np.random.Generator, n: int, modes: int) -> np.ndarray:
    t = grid(n)
    k = np.arange(1, modes + 1)
    a = rng.normal(size=modes) / k**2
    b = rng.normal(size=modes) / k**2
    return np.cos(np.outer(t, k)) @ a + np.sin(np.outer(t, k)) @ b


def random_diffeo(
    rng: np.random.Generator, eps: float, n: int = 1024, modes: int = 8, fill: float = 0.9
) -> CircleDiffeo:
    """Element of the eps-neighbourhood at about fill * eps in C^1 norm."""
    p = _band_limited(rng, n, modes)
    pf = PeriodicFunction(p)
    scale = fill * eps / max(
        np.abs(p).max(), np.abs(pf.derivative().samples).max(), 1e-300
    )
    return CircleDiffeo(PeriodicFunction(scale * p))


def random_rotation(rng: np.random.Generator, n: int = 1024) -> CircleDiffeo:
    return CircleDiffeo.rotation(rng.uniform(-np.pi, np.pi), n)


def random_vect_field(
    rng: np.random.Generator, n: int = 1024, modes: int = 6, amplitude: float = 1.0
) -> PeriodicFunction:
    return PeriodicFunction(amplitude * _band_limited(rng, n, modes))


def random_loop_algebra(
    rng: np.random.Generator, norm: float, n: int = 1024, modes: int = 6, fill: float = 0.9
) -> LoopAlgebraElement:
    """su(2)-valued loop with sup operator norm about fill * norm."""
    comps = np.stack([_band_limited(rng, n, modes) for _ in range(3)])
    point = np.sqrt((comps**2).sum(axis=0)).max()
    comps *= fill * norm / max(point, 1e-300)
    return LoopAlgebraElement.from_components(*comps)


def random_supported_diffeo(
    rng: np.random.Generator, arc: IntervalArc, eps: float, n: int = 1024, fill: float = 0.9
) -> CircleDiffeo:
    """Element of the eps-neighbourhood supported strictly inside the arc.

    Transitions take at least a fifth of the arc, keeping the cutoff resolved
    on the default grid.
    """
    inset = rng.uniform(0.22, 0.35, size=2) * arc.length
    plateau = IntervalArc(arc.a + inset[0], arc.b - inset[1])
    bump = make_bump(arc, plateau)
    t = grid(n)
    wobble = 1.0 + 0.3 * np.sin(rng.integers(1, 4) * t + rng.uniform(0, 2 * np.pi))
    p = bump.values(t) * wobble * rng.choice([-1.0, 1.0])
    pf = PeriodicFunction(p)
    scale = fill * eps / max(
        np.abs(p).max(), np.abs(pf.derivative().samples).max(), 1e-300
    )
    return CircleDiffeo(PeriodicFunction(scale * p))
