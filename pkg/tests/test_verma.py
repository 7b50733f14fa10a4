from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlekit.errors import TruncationError
from circlekit.verma import (
    VermaModule,
    VermaState,
    exact_determinant,
    gram_matrix,
    partitions,
)

HALF = Fraction(1, 2)
SIXTEENTH = Fraction(1, 16)


def basis_state(part, c, h):
    return VermaState({tuple(part): Fraction(1)}, Fraction(c), Fraction(h))


def test_partitions_enumeration():
    assert list(partitions(0)) == [()]
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(list(partitions(8))) == 22


def test_lowest_weight_relations():
    m = VermaModule(HALF, SIXTEENTH)
    v = m.lowest_weight_state()
    assert m.act(0, v) == v.scaled(SIXTEENTH)
    assert m.act(1, v).is_zero()
    assert m.act(3, v).is_zero()


def test_level_grading():
    m = VermaModule(1, 2)
    v = m.act(-3, m.act(-1, m.lowest_weight_state()))
    assert v.level == 4
    assert m.act(0, v) == v.scaled(Fraction(2 + 4))


def test_bracket_on_lowest_weight():
    c, h = HALF, SIXTEENTH
    m = VermaModule(c, h)
    v = m.lowest_weight_state()
    got = m.act(2, m.act(-2, v)) - m.act(-2, m.act(2, v))
    assert got == v.scaled(4 * h + c / 2)
    # central coefficient vanishes for the unit shift
    assert m.act(1, m.act(-1, v)) == v.scaled(2 * h)
    # (3, -3): (m - n) L_0 + (27 - 3)/12 c = 6 L_0 + 2c
    got = m.act(3, m.act(-3, v)) - m.act(-3, m.act(3, v))
    assert got == v.scaled(6 * h + 2 * c)


def test_commutator_check_examples():
    m = VermaModule(HALF, SIXTEENTH)
    v = m.lowest_weight_state()
    assert m.commutator_check(3, -3, v)
    assert m.commutator_check(1, 2, v)
    assert m.commutator_check(-1, -2, v)
    # hand-reduced: [L_{-1}, L_{-2}] |h> = L_{-3} |h>
    lhs = m.act(-1, m.act(-2, v)) - m.act(-2, m.act(-1, v))
    assert lhs == basis_state((3,), HALF, SIXTEENTH)


@given(
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
    st.sampled_from([(), (1,), (2,), (1, 1), (2, 1)]),
)
def test_commutator_randomized(m_idx, n_idx, part):
    module = VermaModule(Fraction(7, 10), Fraction(3, 8), max_level=10)
    state = VermaState({part: Fraction(1)}, Fraction(7, 10), Fraction(3, 8))
    assert module.commutator_check(m_idx, n_idx, state)


def test_generator_index_cap():
    m = VermaModule(1, 0, max_level=4)
    with pytest.raises(TruncationError):
        m.act(-5, m.lowest_weight_state())


def test_truncation_errors():
    m = VermaModule(1, 0, max_level=4)
    v = m.act(-4, m.lowest_weight_state())
    with pytest.raises(TruncationError):
        m.act(-1, v)
    with pytest.raises(TruncationError):
        m.commutator_check(4, -4, v)


def test_gram_level_one():
    for c, h in [(HALF, Fraction(0)), (HALF, SIXTEENTH), (Fraction(26), Fraction(3, 2))]:
        g = gram_matrix(1, c, h)
        assert g == [[2 * h]]


def test_gram_level_two_frozen_values():
    # hand-computed: [[4h + c/2, 6h], [6h, 8h^2 + 4h]]
    g = gram_matrix(2, HALF, SIXTEENTH)
    assert g == [
        [HALF, Fraction(3, 8)],
        [Fraction(3, 8), Fraction(9, 32)],
    ]
    # the (1/2, 1/16) module is degenerate at level 2; a generic point is not
    assert exact_determinant(g) == 0
    assert exact_determinant(gram_matrix(2, HALF, Fraction(1))) == 15


def test_gram_symmetric_exactly():
    g = gram_matrix(3, Fraction(7, 10), Fraction(3, 8))
    size = len(g)
    assert size == len(list(partitions(3)))
    assert all(g[i][j] == g[j][i] for i in range(size) for j in range(size))


def test_exact_determinant():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]
    assert exact_determinant(m) == 3
    assert exact_determinant([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == -1


def test_full_sweep_small_truncation():
    """Every bracket relation holds exactly on every admissible basis state."""
    module = VermaModule(Fraction(1), Fraction(1), max_level=6)
    for m in range(-3, 4):
        for n in range(-3, 4):
            top = 6 - abs(m) - abs(n)
            for level in range(top + 1):
                for part in partitions(level):
                    state = VermaState({part: Fraction(1)}, Fraction(1), Fraction(1))
                    assert module.commutator_check(m, n, state)
