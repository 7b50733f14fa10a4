"""Circle diffeomorphisms at finite resolution, interval covers and cutoffs.

Elements of the universal cover of the orientation-preserving diffeomorphism
group are stored as gamma(t) = t + p(t) with p a real PeriodicFunction and
gamma' > 0; the representation is 2pi-equivariant by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    AliasingError,
    ConvergenceError,
    DerivativeError,
    GeometryError,
    MassError,
)
from .periodic import TWO_PI, PeriodicFunction, grid

__all__ = [
    "IntervalArc",
    "CircleDiffeo",
    "BumpFunction",
    "CoverConfig",
    "compose",
    "inverse",
    "support",
    "make_bump",
    "make_normalized_bump",
    "DEFAULT_TAIL_TOL",
]

# Composition and localization results must stay spectrally resolved.  The
# smooth-step cutoffs carry slow Gevrey tails, so localized elements on the
# default 1024-point grid legitimately sit in the 1e-9 .. 1e-8 band; the
# operational gate is therefore 1e-7 while the band-limited property suite
# monitors the stricter 1e-9 level.
DEFAULT_TAIL_TOL = 1e-7


@dataclass(frozen=True)
class IntervalArc:
    """Proper open arc of the circle, stored lifted with a < b < a + 2*pi."""

    a: float
    b: float

    def __post_init__(self):
        length = self.b - self.a
        if not 0.0 < length < TWO_PI:
            raise GeometryError(f"arc must be proper and non-empty, got ({self.a}, {self.b})")
        a = float(np.mod(self.a, TWO_PI))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", a + length)

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, t) -> np.ndarray:
        """Pointwise membership, circularly."""
        x = np.mod(np.asarray(t, dtype=float) - self.a, TWO_PI)
        return (x > 0) & (x < self.length)

    def contains_arc(self, other: "IntervalArc") -> bool:
        x = np.mod(other.a - self.a, TWO_PI)
        return x < self.length and x + other.length <= self.length

    def dilate(self, delta: float) -> "IntervalArc":
        if self.length + 2 * delta >= TWO_PI:
            raise GeometryError("dilated arc would cover the circle")
        return IntervalArc(self.a - delta, self.b + delta)

    def as_tuple(self) -> tuple[float, float]:
        return (self.a, self.b)


class CircleDiffeo:
    """Lift gamma(t) = t + p(t) of an orientation-preserving circle diffeomorphism."""

    __slots__ = ("periodic_part", "n", "_deriv")

    def __init__(self, periodic_part: PeriodicFunction) -> None:
        if not periodic_part.is_real or periodic_part.samples.ndim != 1:
            raise ValueError("periodic part must be a real scalar function")
        self.periodic_part = periodic_part
        self.n = periodic_part.n
        self._deriv = None
        if np.any(self.deriv_samples <= 0.0):
            raise DerivativeError("gamma' must be positive at every grid point")

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n: int = 1024) -> "CircleDiffeo":
        return cls(PeriodicFunction.zero(n))

    @classmethod
    def rotation(cls, angle: float, n: int = 1024) -> "CircleDiffeo":
        return cls(PeriodicFunction.constant(angle, n))

    @classmethod
    def from_fourier(cls, terms, n: int = 1024) -> "CircleDiffeo":
        """Build gamma(t) = t + sum a_k cos(k t) + b_k sin(k t) from (k, a_k, b_k) triples."""
        t = grid(n)
        p = np.zeros(n)
        for k, a, b in terms:
            p += a * np.cos(k * t) + b * np.sin(k * t)
        return cls(PeriodicFunction(p))

    # -- basic data -----------------------------------------------------

    @property
    def deriv(self) -> PeriodicFunction:
        """gamma' - 1 as a periodic function."""
        if self._deriv is None:
            self._deriv = self.periodic_part.derivative()
        return self._deriv

    @property
    def deriv_samples(self) -> np.ndarray:
        return 1.0 + self.deriv.samples

    @property
    def samples(self) -> np.ndarray:
        """gamma at the grid points."""
        return grid(self.n) + self.periodic_part.samples

    def eval(self, t):
        return np.asarray(t, dtype=float) + self.periodic_part.eval(t)

    __call__ = eval

    def deriv_eval(self, t):
        return 1.0 + self.deriv.eval(t)

    def displacement(self) -> float:
        """Sup-norm distance from the identity at the grid points."""
        return float(np.abs(self.periodic_part.samples).max())

    def distance(self, other: "CircleDiffeo") -> float:
        return float(np.abs(self.periodic_part.samples - other.periodic_part.samples).max())

    def __repr__(self) -> str:
        return f"CircleDiffeo(n={self.n}, |gamma-id|={self.displacement():.3e})"


def compose(g1: CircleDiffeo, g2: CircleDiffeo, tail_tol: float = DEFAULT_TAIL_TOL) -> CircleDiffeo:
    """Composition gamma1 o gamma2, resampled onto the grid of gamma2."""
    p2 = g2.periodic_part.samples
    p = p2 + g1.periodic_part.eval(grid(g2.n) + p2)
    out = PeriodicFunction(p)
    if tail_tol is not None and out.tail > tail_tol:
        raise AliasingError(
            f"composition tail {out.tail:.3e} exceeds {tail_tol:.1e}; raise the grid size"
        )
    return CircleDiffeo(out)


def solve_monotone(g: CircleDiffeo, targets: np.ndarray, tol: float = 1e-12, max_iter: int = 60) -> np.ndarray:
    """Solve gamma(u) = y per entry by safeguarded Newton iteration.

    Monotonicity of gamma makes u - y a bounded periodic quantity; the
    initial guess u = y - p(y) already has O(|p|^2) residual, so a couple of
    Newton steps reach the 1e-12 residual target.  Steps are clamped to a
    bracket that the displacement bound provides, which cannot fail while
    gamma' > 0.
    """
    from .periodic import _lagrange_eval_two

    p = g.periodic_part
    fine_p = p._fine_values()
    fine_dp = g.deriv._fine_values()
    y = np.asarray(targets, dtype=float)
    bound = min(g.displacement() * 1.5 + 1e-9, 1.5)
    lo, hi = y - bound, y + bound
    u = y - p.eval(y)
    residual = None
    for _ in range(max_iter):
        pu, dpu = _lagrange_eval_two(fine_p, fine_dp, u)
        r = u + pu - y
        residual = np.abs(r).max()
        if residual < tol:
            return u
        u = np.clip(u - r / (1.0 + dpu), lo, hi)
    raise ConvergenceError(f"Newton inversion stalled at residual {residual:.3e}")


def inverse(g: CircleDiffeo, tol: float = 1e-12) -> CircleDiffeo:
    """Group inverse, sampled by solving gamma(u) = t_k at every grid point."""
    t = grid(g.n)
    u = solve_monotone(g, t, tol=tol)
    return CircleDiffeo(PeriodicFunction(u - t))


def arc_of_moved_points(moved: np.ndarray, n: int):
    """Smallest arc containing the flagged grid points, dilated by one cell.

    Returns "empty" when nothing is flagged and "full" when everything is
    (or when the dilation would wrap the circle).
    """
    if not moved.any():
        return "empty"
    if moved.all():
        return "full"
    idx = np.nonzero(moved)[0]
    h = TWO_PI / n
    # largest circular gap between consecutive moved points; the support is
    # its complement
    gaps = np.diff(np.concatenate([idx, [idx[0] + n]]))
    j = int(np.argmax(gaps))
    start = idx[(j + 1) % len(idx)]
    end = idx[j]
    if end < start:
        end += n
    if end - start + 2 >= n:
        return "full"
    return IntervalArc(start * h - h, (end + 1) * h)


def support(g: CircleDiffeo, tol: float = 1e-10):
    """Smallest arc containing the grid points moved by more than tol."""
    return arc_of_moved_points(np.abs(g.periodic_part.samples) > tol, g.n)


# ---------------------------------------------------------------------------
# Smooth cutoffs
# ---------------------------------------------------------------------------


def _sigma(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def _smoothstep(x: np.ndarray) -> np.ndarray:
    """s(x) = sigma(x) / (sigma(x) + sigma(1-x)); 0 below 0, 1 above 1."""
    x = np.clip(x, 0.0, 1.0)
    a = _sigma(x)
    b = _sigma(1.0 - x)
    return a / (a + b)


@dataclass(frozen=True)
class BumpFunction:
    """Smooth cutoff: 'scale' on the plateau, 0 outside the support arc."""

    support: IntervalArc
    plateau: IntervalArc
    scale: float = 1.0

    def values(self, t) -> np.ndarray:
        """Exact closed-form samples at angles t."""
        a, b = self.support.a, self.support.b
        p = self.support.a + np.mod(self.plateau.a - self.support.a, TWO_PI)
        q = p + self.plateau.length
        x = np.mod(np.asarray(t, dtype=float) - a, TWO_PI) + a
        out = np.zeros_like(x)
        rise = (x > a) & (x < p)
        out[rise] = _smoothstep((x[rise] - a) / (p - a))
        out[(x >= p) & (x <= q)] = 1.0
        fall = (x > q) & (x < b)
        out[fall] = _smoothstep((b - x[fall]) / (b - q))
        return self.scale * out

    def periodic(self, n: int = 1024) -> PeriodicFunction:
        return PeriodicFunction(self.values(grid(n)))

    def integral(self, resolution: int = 1 << 16) -> float:
        """Full-period integral by high-resolution midpoint quadrature.

        The integrand is flat to all orders at the support endpoints, so the
        midpoint rule converges faster than any power of the step.
        """
        a, b = self.support.a, self.support.b
        x = a + (np.arange(resolution) + 0.5) * ((b - a) / resolution)
        return float(self.values(x).sum() * (b - a) / resolution)

    @property
    def max_value(self) -> float:
        return self.scale


def make_bump(support: IntervalArc, plateau: IntervalArc) -> BumpFunction:
    """Cutoff equal to 1 on the plateau, supported in the open support arc."""
    rel = np.mod(plateau.a - support.a, TWO_PI)
    if not (0.0 < rel and rel + plateau.length < support.length):
        raise GeometryError("plateau closure must lie strictly inside the support")
    return BumpFunction(support, plateau)


def make_normalized_bump(support: IntervalArc, target_integral: float) -> BumpFunction:
    """Cutoff with values in [0, 1] and prescribed full-period integral.

    Widens the plateau of a base bump until its integral exceeds the target,
    then scales the whole profile down.  Small plateaus are tried first so
    the transitions stay as wide (and as spectrally tame) as possible.
    """
    width = support.length
    if not 0.0 < target_integral < width:
        raise MassError(
            f"target integral {target_integral} not achievable on an arc of length {width}"
        )
    for fraction in np.linspace(0.02, 0.95, 48):
        half_gap = (1.0 - fraction) * width / 2.0
        plateau = IntervalArc(support.a + half_gap, support.b - half_gap)
        bump = BumpFunction(support, plateau)
        integral = bump.integral()
        if integral >= target_integral:
            return BumpFunction(support, plateau, scale=target_integral / integral)
    raise MassError(
        f"target integral {target_integral} needs a plateau above 95% of the support"
    )


# ---------------------------------------------------------------------------
# Three-interval covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverConfig:
    """Three-interval cover {I_j} with inner intervals {Ihat_j}.

    The canonical configuration has 0 inside I3 only, I3 wrapping through 0,
    and the lifted endpoints forming the strictly increasing chain
    0 < a1 < ahat1 < bhat3 < b3 < a2 < ahat2 < bhat1 < b1 < a3 < ahat3
      < bhat2 < b2 < 2*pi
    (endpoints of I3 and Ihat3 taken modulo 2*pi).  The chain encodes all
    cover invariants at once: each point lies in at most two of the I_j and
    the inner intervals still cover the circle.
    """

    i1: IntervalArc
    i2: IntervalArc
    i3: IntervalArc
    ihat1: IntervalArc
    ihat2: IntervalArc
    ihat3: IntervalArc
    margin: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.margin < 0.5:
            raise GeometryError("margin must lie in (0, 1/2)")
        self.chain()  # validates

    def chain(self) -> list[float]:
        """The lifted endpoint chain; raises GeometryError if out of order."""
        if self.i3.b <= TWO_PI or self.ihat3.b <= TWO_PI:
            raise GeometryError("I3 and Ihat3 must wrap through 0")
        values = [
            0.0,
            self.i1.a,
            self.ihat1.a,
            self.ihat3.b - TWO_PI,
            self.i3.b - TWO_PI,
            self.i2.a,
            self.ihat2.a,
            self.ihat1.b,
            self.i1.b,
            self.i3.a,
            self.ihat3.a,
            self.ihat2.b,
            self.i2.b,
            TWO_PI,
        ]
        if any(x >= y for x, y in zip(values, values[1:])):
            raise GeometryError("cover endpoints violate the ordering chain")
        return values

    @classmethod
    def default(cls, margin: float = 0.1) -> "CoverConfig":
        inset = 0.15
        i1 = IntervalArc(0.3, 2.6)
        i2 = IntervalArc(2.2, 4.7)
        i3 = IntervalArc(4.3, TWO_PI + 0.7)
        return cls(
            i1,
            i2,
            i3,
            IntervalArc(i1.a + inset, i1.b - inset),
            IntervalArc(i2.a + inset, i2.b - inset),
            IntervalArc(i3.a + inset, i3.b - inset),
            margin,
        )

    @property
    def intervals(self) -> tuple[IntervalArc, IntervalArc, IntervalArc]:
        return (self.i1, self.i2, self.i3)

    @property
    def inner_intervals(self) -> tuple[IntervalArc, IntervalArc, IntervalArc]:
        return (self.ihat1, self.ihat2, self.ihat3)

    # -- JSON configuration ---------------------------------------------

    def to_json(self) -> str:
        data = {
            "I": [list(i.as_tuple()) for i in self.intervals],
            "Ihat": [list(i.as_tuple()) for i in self.inner_intervals],
            "margin": self.margin,
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "CoverConfig":
        try:
            data = json.loads(text)
            arcs = [IntervalArc(*pair) for pair in data["I"]]
            hats = [IntervalArc(*pair) for pair in data["Ihat"]]
            margin = float(data.get("margin", 0.1))
        except GeometryError:
            raise
        except Exception as exc:
            raise GeometryError(f"malformed cover configuration: {exc}") from exc
        if len(arcs) != 3 or len(hats) != 3:
            raise GeometryError("cover configuration needs three intervals and three inner intervals")
        return cls(*arcs, *hats, margin)
