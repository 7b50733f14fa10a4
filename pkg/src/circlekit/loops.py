"""Loops into SU(n) (default SU(2)): pointwise group and algebra arithmetic.

Loops are grids of matrices; the group operations act sample by sample and
the exponential/logarithm use the closed axis-angle form for SU(2) and a
dense linear-algebra fallback for larger n.  The invariant bilinear form is
tr(XY) in the defining representation, normalized so the standard coroot
diag(1, -1, 0, ...) has square length 2.
"""

from __future__ import annotations

import numpy as np

from .diffeo import CircleDiffeo, CoverConfig, IntervalArc, arc_of_moved_points, make_bump
from .errors import AliasingError, BranchError
from .periodic import PeriodicFunction, grid

__all__ = [
    "LoopElement",
    "LoopAlgebraElement",
    "su2_generators",
    "multiply",
    "inverse_loop",
    "exp_loop",
    "log_loop",
    "killing_form",
    "omega",
    "bracket",
    "precompose",
    "loop_support",
    "loop_cutoffs",
    "fragment_loop",
    "fragment_loop_sequential",
    "loop_to_csv",
    "loop_from_csv",
]

LOOP_TAIL_TOL = 1e-7


def su2_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Anti-hermitian basis i*sigma_1, i*sigma_2, i*sigma_3 of su(2)."""
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return 1j * s1, 1j * s2, 1j * s3


def _as_matrix_pf(samples) -> PeriodicFunction:
    arr = np.asarray(samples, dtype=complex)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("loop samples must have shape (N, n, n)")
    return PeriodicFunction(arr)


class LoopAlgebraElement:
    """Grid-sampled map from the circle into su(n)."""

    __slots__ = ("pf",)

    def __init__(self, samples, check: bool = True) -> None:
        self.pf = samples if isinstance(samples, PeriodicFunction) else _as_matrix_pf(samples)
        if check:
            x = self.pf.samples
            herm = np.abs(x + np.conj(np.swapaxes(x, 1, 2))).max()
            tr = np.abs(np.trace(x, axis1=1, axis2=2)).max()
            if herm > 1e-12 or tr > 1e-12:
                raise ValueError(
                    f"samples not in su(n): anti-hermiticity {herm:.2e}, trace {tr:.2e}"
                )

    @property
    def samples(self) -> np.ndarray:
        return self.pf.samples

    @property
    def n(self) -> int:
        return self.pf.n

    @property
    def dim(self) -> int:
        return self.pf.samples.shape[1]

    @classmethod
    def zero(cls, n: int = 1024, dim: int = 2) -> "LoopAlgebraElement":
        return cls(np.zeros((n, dim, dim), dtype=complex), check=False)

    @classmethod
    def from_components(cls, cx, cy, cz) -> "LoopAlgebraElement":
        """su(2) element c_x * i sigma_1 + c_y * i sigma_2 + c_z * i sigma_3."""
        g1, g2, g3 = su2_generators()
        comps = [np.asarray(c, dtype=float) for c in (cx, cy, cz)]
        x = (
            comps[0][:, None, None] * g1
            + comps[1][:, None, None] * g2
            + comps[2][:, None, None] * g3
        )
        return cls(x, check=False)

    def scaled(self, factors) -> "LoopAlgebraElement":
        """Pointwise multiplication by a real scalar function (cutoff)."""
        f = np.asarray(factors, dtype=float)
        return LoopAlgebraElement(self.samples * f[:, None, None], check=False)

    def norm(self) -> float:
        """Sup over the grid of the operator norm."""
        return float(np.linalg.norm(self.samples, ord=2, axis=(1, 2)).max())

    def __add__(self, other):
        return LoopAlgebraElement(self.samples + other.samples, check=False)

    def __sub__(self, other):
        return LoopAlgebraElement(self.samples - other.samples, check=False)

    def __repr__(self) -> str:
        return f"LoopAlgebraElement(n={self.n}, su({self.dim}), norm={self.norm():.3e})"


class LoopElement:
    """Grid-sampled map from the circle into SU(n)."""

    __slots__ = ("pf",)

    def __init__(self, samples, check: bool = True) -> None:
        self.pf = samples if isinstance(samples, PeriodicFunction) else _as_matrix_pf(samples)
        if check:
            u = self.pf.samples
            eye = np.eye(u.shape[1])
            unit = np.abs(np.conj(np.swapaxes(u, 1, 2)) @ u - eye).max()
            det = np.abs(np.linalg.det(u) - 1.0).max()
            if unit > 1e-10 or det > 1e-10:
                raise ValueError(
                    f"samples not in SU(n): unitarity {unit:.2e}, determinant {det:.2e}"
                )

    @property
    def samples(self) -> np.ndarray:
        return self.pf.samples

    @property
    def n(self) -> int:
        return self.pf.n

    @property
    def dim(self) -> int:
        return self.pf.samples.shape[1]

    @classmethod
    def identity(cls, n: int = 1024, dim: int = 2) -> "LoopElement":
        return cls(np.broadcast_to(np.eye(dim, dtype=complex), (n, dim, dim)).copy(), check=False)

    def distance_to_identity(self) -> np.ndarray:
        """Per-sample operator norm of U - I."""
        eye = np.eye(self.dim)
        return np.linalg.norm(self.samples - eye, ord=2, axis=(1, 2))

    def __repr__(self) -> str:
        return (
            f"LoopElement(n={self.n}, SU({self.dim}), "
            f"dist={self.distance_to_identity().max():.3e})"
        )


# ---------------------------------------------------------------------------
# Group and algebra operations
# ---------------------------------------------------------------------------


def multiply(g1: LoopElement, g2: LoopElement, tail_tol: float = LOOP_TAIL_TOL) -> LoopElement:
    """Pointwise matrix product."""
    if g1.n != g2.n:
        raise ValueError("grid size mismatch")
    out = LoopElement(g1.samples @ g2.samples, check=False)
    if tail_tol is not None and out.pf.tail > tail_tol:
        raise AliasingError(f"loop product tail {out.pf.tail:.3e} exceeds {tail_tol:.1e}")
    return out


def inverse_loop(g: LoopElement) -> LoopElement:
    """Pointwise inverse (conjugate transpose)."""
    return LoopElement(np.conj(np.swapaxes(g.samples, 1, 2)), check=False)


def exp_loop(xi: LoopAlgebraElement) -> LoopElement:
    """Pointwise exponential.  SU(2) uses the closed axis-angle form."""
    x = xi.samples
    if xi.dim == 2:
        theta = np.sqrt(np.clip(-np.einsum("tij,tji->t", x, x).real / 2.0, 0.0, None))
        eye = np.eye(2, dtype=complex)
        u = np.cos(theta)[:, None, None] * eye + np.sinc(theta / np.pi)[:, None, None] * x
        return LoopElement(u, check=False)
    from scipy.linalg import expm

    return LoopElement(expm(x), check=False)


def log_loop(g: LoopElement, branch_tol: float = 1e-6) -> LoopAlgebraElement:
    """Pointwise principal logarithm.

    Raises BranchError when any sample has an eigenvalue within branch_tol of
    -1, where the principal branch breaks down.
    """
    u = g.samples
    if g.dim == 2:
        w = np.clip(np.trace(u, axis1=1, axis2=2).real / 2.0, -1.0, 1.0)
        theta = np.arccos(w)
        if theta.max() >= np.pi - branch_tol:
            raise BranchError(
                f"sample with rotation angle {theta.max():.6f} is at the branch cut"
            )
        eye = np.eye(2, dtype=complex)
        factor = 1.0 / np.sinc(theta / np.pi)
        x = factor[:, None, None] * (u - w[:, None, None] * eye)
    else:
        phases = np.angle(np.linalg.eigvals(u))
        if np.abs(phases).max() >= np.pi - branch_tol:
            raise BranchError("sample with an eigenvalue at the branch cut")
        from scipy.linalg import logm

        x = np.stack([logm(m) for m in u])
    # project exactly onto su(n) to absorb roundoff
    x = 0.5 * (x - np.conj(np.swapaxes(x, 1, 2)))
    tr = np.trace(x, axis1=1, axis2=2) / g.dim
    x = x - tr[:, None, None] * np.eye(g.dim)
    return LoopAlgebraElement(x, check=False)


def killing_form(x: np.ndarray, y: np.ndarray):
    """Invariant form tr(XY), normalized so diag(1,-1,0,..) has square length 2.

    Real for su(n) arguments; complex values pass through for inputs in the
    complexification.
    """
    t = complex(np.trace(np.asarray(x) @ np.asarray(y)))
    if abs(t.imag) < 1e-12 * (1.0 + abs(t)):
        return t.real
    return t


def bracket(xi: LoopAlgebraElement, eta: LoopAlgebraElement) -> LoopAlgebraElement:
    """Pointwise commutator [xi, eta](t) = xi(t) eta(t) - eta(t) xi(t)."""
    if xi.n != eta.n:
        raise ValueError("grid size mismatch")
    a, b = xi.samples, eta.samples
    return LoopAlgebraElement(a @ b - b @ a, check=False)


def omega(xi: LoopAlgebraElement, eta: LoopAlgebraElement):
    """Central-extension cocycle (1/2pi) * int tr(xi(t) eta'(t)) dt."""
    if xi.n != eta.n:
        raise ValueError("grid size mismatch")
    deta = eta.pf.derivative()
    integrand = np.einsum("tij,tji->t", xi.samples, deta.samples)
    val = complex(integrand.mean())
    if abs(val.imag) < 1e-12 * (1.0 + abs(val)):
        return val.real
    return val


def precompose(el, diffeo: CircleDiffeo):
    """Reparametrize a loop (group or algebra element) by a diffeomorphism."""
    targets = diffeo.samples
    vals = el.pf.eval(targets)
    return type(el)(vals, check=False)


def loop_support(g: LoopElement, tol: float = 1e-10):
    """Smallest arc containing the samples away from the identity, as in diffeo.support."""
    return arc_of_moved_points(g.distance_to_identity() > tol, g.n)


# ---------------------------------------------------------------------------
# Fragmentation over a three-interval cover
# ---------------------------------------------------------------------------


def loop_cutoffs(cover: CoverConfig):
    """The two cutoff functions used to split a loop across the cover.

    chi1 is supported in I1 and equals 1 slightly beyond the part of I1 that
    meets neither I2 nor I3; chi2 is supported in (I1 minus I3) union I2 and
    equals 1 slightly beyond I2 minus I3.  "Slightly" is the cover margin
    times the width of the adjacent overlap.
    """
    m = cover.margin
    chain = cover.chain()
    a1, b3r, a2, b1, a3, b2 = chain[1], chain[4], chain[5], chain[8], chain[9], chain[12]
    left_ov = b3r - a1  # width of I1 and I3 overlap
    right_ov = b1 - a2  # width of I1 and I2 overlap
    far_ov = b2 - a3  # width of I2 and I3 overlap
    chi1 = make_bump(cover.i1, IntervalArc(b3r - m * left_ov, a2 + m * right_ov))
    chi2 = make_bump(
        IntervalArc(b3r, b2), IntervalArc(a2 - m * right_ov, a3 + m * far_ov)
    )
    return chi1, chi2


def fragment_loop(
    g: LoopElement, cover: CoverConfig | None = None
) -> tuple[LoopElement, LoopElement, LoopElement]:
    """Split a loop near the identity into three factors supported in the cover.

    Uses the commuting closed form: all three exponents are pointwise
    multiples of the same logarithm, so the product telescopes exactly.
    """
    cover = cover or CoverConfig.default()
    chi1, chi2 = loop_cutoffs(cover)
    eta = log_loop(g)
    t = grid(g.n)
    c1 = chi1.values(t)
    c2 = chi2.values(t)
    xi1 = exp_loop(eta.scaled(c1))
    xi2 = exp_loop(eta.scaled(c2 * (1.0 - c1)))
    xi3 = exp_loop(eta.scaled((1.0 - c1) * (1.0 - c2)))
    return xi1, xi2, xi3


def fragment_loop_sequential(
    g: LoopElement, cover: CoverConfig | None = None
) -> tuple[LoopElement, LoopElement, LoopElement]:
    """Stage-by-stage variant: peel the first factor, localize the remainder.

    Agrees with fragment_loop because the exponents commute pointwise.
    """
    cover = cover or CoverConfig.default()
    chi1, chi2 = loop_cutoffs(cover)
    eta = log_loop(g)
    t = grid(g.n)
    c1 = chi1.values(t)
    c2 = chi2.values(t)
    xi1 = exp_loop(eta.scaled(c1))
    remainder = multiply(inverse_loop(xi1), g, tail_tol=None)
    xi2 = exp_loop(log_loop(remainder).scaled(c2))
    xi3 = multiply(inverse_loop(xi2), remainder, tail_tol=None)
    return xi1, xi2, xi3


# ---------------------------------------------------------------------------
# CSV export of sampled matrix entries
# ---------------------------------------------------------------------------


def loop_to_csv(el, path) -> None:
    """Rows: t then real/imag interleaved matrix entries, row-major."""
    samples = el.samples
    n, d = samples.shape[0], samples.shape[1]
    t = grid(n)
    with open(path, "w") as fh:
        for k in range(n):
            row = [f"{t[k]:.17g}"]
            for i in range(d):
                for j in range(d):
                    z = samples[k, i, j]
                    row.append(f"{z.real:.17g}")
                    row.append(f"{z.imag:.17g}")
            fh.write(",".join(row) + "\n")


def loop_from_csv(path, kind="group"):
    """Read a loop written by loop_to_csv; kind is "group" or "algebra"."""
    data = np.loadtxt(path, delimiter=",")
    n, cols = data.shape
    d = int(round(np.sqrt((cols - 1) // 2)))
    vals = data[:, 1:].reshape(n, d, d, 2)
    samples = vals[..., 0] + 1j * vals[..., 1]
    return LoopElement(samples) if kind == "group" else LoopAlgebraElement(samples)
