"""Exact level-truncated lowest-weight modules for the Virasoro algebra.

Generators L_m with m in Z and a central element acting as the scalar c obey

    [L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 * delta_{m,-n} * c.

The module M(c, h) is spanned by ordered words L_{-n1} ... L_{-nk} |h> with
n1 >= ... >= nk >= 1 (partitions), where L_0 |h> = h |h> and L_m |h> = 0 for
m > 0.  All coefficients are exact rationals; states above the truncation
level are rejected rather than silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import TruncationError

__all__ = [
    "Partition",
    "VermaState",
    "VermaModule",
    "partitions",
    "act",
    "commutator_check",
    "gram_matrix",
    "exact_determinant",
]

Partition = tuple  # weakly decreasing tuple of positive ints

DEFAULT_MAX_LEVEL = 8


def partition_level(part: Partition) -> int:
    return sum(part)


def partitions(level: int, max_part: int | None = None) -> Iterator[Partition]:
    """Weakly decreasing partitions of level, in lexicographically decreasing order."""
    if level == 0:
        yield ()
        return
    if max_part is None or max_part > level:
        max_part = level
    for head in range(max_part, 0, -1):
        for rest in partitions(level - head, head):
            yield (head,) + rest


def _clean(coeffs: dict) -> dict:
    return {p: c for p, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class VermaState:
    """Finitely supported rational combination of partition basis vectors."""

    coeffs: Mapping[Partition, Fraction]
    c: Fraction
    h: Fraction

    def __post_init__(self):
        cleaned = _clean({p: Fraction(v) for p, v in self.coeffs.items()})
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def level(self) -> int:
        return max((partition_level(p) for p in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, part: Partition) -> Fraction:
        return self.coeffs.get(tuple(part), Fraction(0))

    def __add__(self, other: "VermaState") -> "VermaState":
        out = dict(self.coeffs)
        for p, v in other.coeffs.items():
            out[p] = out.get(p, Fraction(0)) + v
        return VermaState(out, self.c, self.h)

    def __sub__(self, other: "VermaState") -> "VermaState":
        out = dict(self.coeffs)
        for p, v in other.coeffs.items():
            out[p] = out.get(p, Fraction(0)) - v
        return VermaState(out, self.c, self.h)

    def scaled(self, factor) -> "VermaState":
        f = Fraction(factor)
        return VermaState({p: f * v for p, v in self.coeffs.items()}, self.c, self.h)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VermaState)
            and (self.c, self.h) == (other.c, other.h)
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "VermaState(0)"
        terms = " + ".join(f"{v}*{list(p)}" for p, v in sorted(self.coeffs.items()))
        return f"VermaState({terms})"


class VermaModule:
    """M(c, h) truncated at a maximal level, with memoized normal ordering."""

    def __init__(self, c, h, max_level: int = DEFAULT_MAX_LEVEL):
        self.c = Fraction(c)
        self.h = Fraction(h)
        self.max_level = int(max_level)
        self._memo: dict = {}

    def lowest_weight_state(self) -> VermaState:
        return VermaState({(): Fraction(1)}, self.c, self.h)

    def basis(self, level: int) -> list[Partition]:
        if level > self.max_level:
            raise TruncationError(f"level {level} exceeds truncation {self.max_level}")
        return list(partitions(level))

    # -- normal ordering -------------------------------------------------

    def _act_basis(self, m: int, part: Partition) -> dict:
        """L_m applied to a basis word, as a partition -> Fraction dict.

        Words are reordered by commutator moves; each move either shortens
        the word or prepends a legal head, so the recursion terminates.
        """
        key = (m, part)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not part:
            if m > 0:
                out = {}
            elif m == 0:
                out = {(): self.h}
            else:
                out = {(-m,): Fraction(1)}
        elif m < 0 and -m >= part[0]:
            out = {(-m,) + part: Fraction(1)}
        else:
            n1, rest = part[0], part[1:]
            out = {}
            # L_m L_{-n1} = L_{-n1} L_m + (m + n1) L_{m-n1} + central
            for mu, co in self._act_basis(m, rest).items():
                for nu, co2 in self._act_basis(-n1, mu).items():
                    out[nu] = out.get(nu, Fraction(0)) + co * co2
            shift = m + n1
            for mu, co in self._act_basis(m - n1, rest).items():
                out[mu] = out.get(mu, Fraction(0)) + shift * co
            if m == n1:
                central = Fraction(m**3 - m, 12) * self.c
                if central:
                    out[rest] = out.get(rest, Fraction(0)) + central
            out = _clean(out)
        self._memo[key] = out
        return out

    # -- public operations -------------------------------------------------

    def act(self, m: int, state: VermaState) -> VermaState:
        """Apply the generator L_m; exact, rejecting levels above truncation."""
        if abs(m) > self.max_level:
            raise TruncationError(f"generator index {m} exceeds truncation {self.max_level}")
        if m < 0 and state.level - m > self.max_level:
            raise TruncationError(
                f"L_{m} pushes a level-{state.level} state above truncation {self.max_level}"
            )
        out: dict = {}
        for part, co in state.coeffs.items():
            for nu, co2 in self._act_basis(m, part).items():
                out[nu] = out.get(nu, Fraction(0)) + co * co2
        return VermaState(out, self.c, self.h)

    def commutator_check(self, m: int, n: int, state: VermaState) -> bool:
        """Exact test of [L_m, L_n] = (m - n) L_{m+n} + central on the state."""
        if state.level + abs(m) + abs(n) > self.max_level:
            raise TruncationError("commutator check would exceed the truncation level")
        lhs = self.act(m, self.act(n, state)) - self.act(n, self.act(m, state))
        rhs = self.act(m + n, state).scaled(m - n)
        if m == -n:
            central = Fraction(m**3 - m, 12) * self.c
            rhs = rhs + state.scaled(central)
        return lhs == rhs

    def gram_matrix(self, level: int) -> list[list[Fraction]]:
        """Pairings <L_{-mu} h, L_{-nu} h> under the adjoint L_m* = L_{-m}."""
        basis = self.basis(level)
        rows = []
        for mu in basis:
            row = []
            for nu in basis:
                state = VermaState({nu: Fraction(1)}, self.c, self.h)
                for mi in mu:  # adjoint word applies largest index first
                    state = self.act(mi, state)
                row.append(state.coefficient(()))
            rows.append(row)
        return rows


# -- convenience wrappers with a per-(c, h, level) module cache --------------

_MODULES: dict = {}


def _module(c, h, max_level: int = DEFAULT_MAX_LEVEL) -> VermaModule:
    key = (Fraction(c), Fraction(h), max_level)
    if key not in _MODULES:
        _MODULES[key] = VermaModule(*key)
    return _MODULES[key]


def act(m: int, state: VermaState, max_level: int = DEFAULT_MAX_LEVEL) -> VermaState:
    return _module(state.c, state.h, max_level).act(m, state)


def commutator_check(m: int, n: int, state: VermaState, max_level: int = DEFAULT_MAX_LEVEL) -> bool:
    return _module(state.c, state.h, max_level).commutator_check(m, n, state)


def gram_matrix(level: int, c, h, max_level: int = DEFAULT_MAX_LEVEL) -> list[list[Fraction]]:
    return _module(c, h, max(max_level, level)).gram_matrix(level)


def exact_determinant(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [row[:] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det
