import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import linear_tournaments, sparse_tournaments
from tripack.core import Arc, LinearTournament, covered, is_valid_packing, maxspan, remove_vertices
from tripack.exact import (
    BudgetExceeded,
    SolverBudget,
    WindowTooWide,
    has_perfect_packing,
    max_packing_dp_bounded_maxspan,
    max_packing_exact,
)
from tripack.gadgets import gen_sparse


def LT(n, *arcs):
    return LinearTournament(n, [Arc(*a) for a in arcs])


def test_exact_examples():
    assert len(max_packing_exact(LT(3, (2, 0)))) == 1
    assert len(max_packing_exact(LT(6, (3, 0), (5, 2)))) == 2
    assert len(max_packing_exact(LT(6, (5, 0), (2, 1), (4, 3)))) == 1


def test_perfect_examples():
    ok, w = has_perfect_packing(LT(3, (2, 0)))
    assert ok and [t.vertices for t in w] == [(0, 1, 2)]
    assert has_perfect_packing(LT(4, (3, 0))) == (False, None)
    ok, w = has_perfect_packing(LT(6, (3, 0), (5, 2)))
    assert ok and [t[:3] for t in w] == [(0, 1, 3), (2, 4, 5)]
    assert has_perfect_packing(LT(0)) == (True, [])


def test_dp_examples():
    assert len(max_packing_dp_bounded_maxspan(LT(5, (4, 0)))) == 1
    assert len(max_packing_dp_bounded_maxspan(LT(9, (2, 0), (5, 3), (8, 6)))) == 3
    assert max_packing_dp_bounded_maxspan(LT(7)) == []


def test_dp_random_sparse_n24():
    L = gen_sparse(24, 8, 1, 2024)
    assert maxspan(L) <= 22
    L = LinearTournament(24, [a for a in L.arcs if a.tail - a.head - 1 <= 6])
    assert max_packing_dp_bounded_maxspan(L) == max_packing_exact(L)


def test_dp_refuses_wide_window():
    with pytest.raises(WindowTooWide):
        max_packing_dp_bounded_maxspan(LT(30, (29, 0)), cap=20)
    assert len(max_packing_dp_bounded_maxspan(LT(30, (29, 0)), cap=28)) == 1


def test_budget():
    with pytest.raises(ValueError):
        SolverBudget(node_limit=0)
    with pytest.raises(ValueError):
        SolverBudget(time_limit=-1)
    L = gen_sparse(30, 12, 2, 3)
    with pytest.raises(BudgetExceeded) as ei:
        max_packing_exact(L, SolverBudget(node_limit=3))
    assert is_valid_packing(L, ei.value.best)
    assert ei.value.nodes > 3


@given(linear_tournaments(max_n=10))
def test_exact_equals_bruteforce(L):
    P = max_packing_exact(L)
    assert is_valid_packing(L, P)
    assert len(P) == oracles.max_packing_size(L.n, L.arcs)
    assert len(P) <= L.n // 3
    inside = set()
    for a in L.arcs:
        inside.update(range(a.head, a.tail + 1))
    assert 3 * len(P) <= len(inside)


@given(linear_tournaments(max_n=9))
def test_perfect_equals_bruteforce(L):
    ok, w = has_perfect_packing(L)
    assert ok == oracles.has_perfect(L.n, L.arcs)
    if ok:
        assert is_valid_packing(L, w) and len(covered(w)) == L.n


@given(linear_tournaments(max_n=11))
def test_dp_equals_exact_general(L):
    P = max_packing_dp_bounded_maxspan(L, cap=30)
    assert is_valid_packing(L, P)
    assert P == max_packing_exact(L)


@given(sparse_tournaments(max_n=18))
def test_dp_equals_exact_sparse(L):
    assert max_packing_dp_bounded_maxspan(L, cap=30) == max_packing_exact(L)


@given(linear_tournaments(max_n=10), st.data())
def test_removing_a_vertex_never_helps(L, data):
    if L.n == 0:
        return
    v = data.draw(st.integers(0, L.n - 1))
    R, _ = remove_vertices(L, {v})
    assert len(max_packing_exact(R)) <= len(max_packing_exact(L))
