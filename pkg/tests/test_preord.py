import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafilt.errors import CapExceeded, PreconditionViolated
from deltafilt.preord import (
    Preorder,
    close_transitive,
    count_linearizations_brute_force,
    divisibility,
    enumerate_linearizations,
    inverter_linearization,
    inverter_map,
    linearize,
    q_length,
    q_lex_linearization,
    quotient,
)


def relations(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                                 max_size=2 * n)))


def extends_exhaustively(lin) -> bool:
    q = lin.poset
    return all(lin.rank(u) <= lin.rank(v) for u in range(len(q)) for v in range(len(q)) if q.le(u, v))


def test_preorder_rejects_non_transitive():
    leq = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(PreconditionViolated):
        Preorder((0, 1, 2), leq)


def test_quotient_collapses_cycles():
    p = close_transitive("abcd", [("a", "b"), ("b", "a"), ("b", "c")])
    q = quotient(p)
    assert len(q) == 3
    assert q.class_of("a") == q.class_of("b") != q.class_of("c")
    assert q.le(q.class_of("a"), q.class_of("c")) and not q.le(q.class_of("c"), q.class_of("a"))


@settings(max_examples=60, deadline=None)
@given(relations())
def test_linearize_extends(data):
    n, pairs = data
    q = quotient(close_transitive(range(n), pairs))
    lin = linearize(q)
    assert lin.extends() and extends_exhaustively(lin)
    assert sorted(lin.order) == list(range(len(q)))


@settings(max_examples=60, deadline=None)
@given(relations(6))
def test_enumeration_matches_brute_force(data):
    n, pairs = data
    q = quotient(close_transitive(range(n), pairs))
    lins = enumerate_linearizations(q)
    assert len(lins) == count_linearizations_brute_force(q)
    assert len({l.order for l in lins}) == len(lins)
    assert all(extends_exhaustively(l) for l in lins)


def test_enumeration_cap():
    q = quotient(close_transitive(range(7), []))
    with pytest.raises(CapExceeded):
        enumerate_linearizations(q, cap=720)
    assert len(enumerate_linearizations(quotient(close_transitive(range(6), [])))) == 720


def test_chain_has_one_extension():
    q = quotient(close_transitive(range(5), [(i, i + 1) for i in range(4)]))
    assert [l.order for l in enumerate_linearizations(q)] == [linearize(q).order]


def test_q_length():
    assert [q_length(a) for a in (1, 2, 4, 6, 8, 12, 24, 17)] == [0, 1, 2, 2, 3, 3, 4, 1]


def test_q_lex_small():
    lin = q_lex_linearization(6)
    assert [lin.poset.classes[u][0] for u in lin.order] == [1, 2, 3, 5, 4, 6]


def test_q_lex_24_extends_divisibility():
    lin = q_lex_linearization(24)
    assert extends_exhaustively(lin)
    labels = [lin.poset.classes[u][0] for u in lin.order]
    assert all(labels.index(a) < labels.index(b) for a in range(1, 25) for b in range(1, 25)
               if a != b and b % a == 0)


def test_q_lex_level_orders():
    lin = q_lex_linearization(6, {1: [5, 3, 2]})
    assert [lin.poset.classes[u][0] for u in lin.order] == [1, 5, 3, 2, 4, 6]
    with pytest.raises(PreconditionViolated):
        q_lex_linearization(6, {1: [5, 3]})


def test_inverter_places_n_before_m():
    lin, data = inverter_linearization(8, 6, 24)
    assert lin.precedes(8, 6) and extends_exhaustively(lin)
    assert (data.d, data.n_prime, data.m_prime) == (2, 4, 3)
    assert len(set(data.image.values())) == 24


def test_inverter_preconditions():
    with pytest.raises(PreconditionViolated):
        inverter_linearization(4, 8, 24)   # comparable
    with pytest.raises(PreconditionViolated):
        inverter_linearization(6, 8, 24)   # q(8) > q(6)


@pytest.mark.parametrize("n,m", [(8, 6), (8, 10), (12, 10), (16, 6)])
def test_inverter_other_pairs(n, m):
    lin, _ = inverter_linearization(n, m, 24)
    assert lin.precedes(n, m) and lin.extends()


def test_divisibility_preorder():
    d = divisibility(12)
    assert d.le(3, 12) and not d.le(12, 3) and not d.le(5, 7)
    assert inverter_map(8, 6, 24).image[3] == 12
