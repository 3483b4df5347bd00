import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from strategies import sparse_tournaments
from tripack.approx import (
    NotSparse,
    Phase1Graph,
    arc_fraction_bound,
    build_phase1_graph,
    can_pack_triplet,
    maximum_matching,
    phi,
    ratio_bound,
)
from tripack.core import Arc, LinearTournament, covered, is_valid_packing, minspan
from tripack.exact import max_packing_exact
from tripack.gadgets import gen_sparse


def LT(n, *arcs):
    return LinearTournament(n, [Arc(*a) for a in arcs])


def test_phase1_graph_examples():
    G = build_phase1_graph(LT(5, (4, 0)))
    assert G.left == (Arc(4, 0),) and G.right == (1, 2, 3) and len(G.edges()) == 3
    G = build_phase1_graph(LT(6, (3, 0), (5, 2)))
    assert set(G.edges()) == {(Arc(3, 0), 1), (Arc(5, 2), 4)}
    assert build_phase1_graph(LT(3, (2, 0))).edges() == [(Arc(2, 0), 1)]


def test_matching_examples():
    a = Arc(4, 0)
    assert maximum_matching(Phase1Graph((a,), (1, 2, 3), ((1, 2, 3),))) == {(a, 1)}
    assert maximum_matching(Phase1Graph((a,), (1,), ((),))) == set()
    b = Arc(9, 5)
    # a reaches 1 and 2, b only 1: the unique perfect matching is a-2, b-1
    assert maximum_matching(Phase1Graph((a, b), (1, 2), ((1, 2), (1,)))) == {(a, 2), (b, 1)}


def test_triplet_examples():
    a1, a2, a3 = Arc(2, 0), Arc(4, 1), Arc(5, 3)
    pair = can_pack_triplet(a1, a2, a3)
    assert [t.vertices for t in pair] == [(0, 1, 2), (3, 4, 5)]
    assert can_pack_triplet(Arc(5, 0), Arc(2, 1), Arc(4, 3)) is None
    with pytest.raises(ValueError):
        can_pack_triplet(Arc(2, 0), Arc(3, 2), Arc(5, 4))


def test_triplet_all_interleavings():
    seen = set()
    for p in itertools.permutations(range(6)):
        arcs = sorted((Arc(max(p[i], p[i + 1]), min(p[i], p[i + 1])) for i in (0, 2, 4)), key=lambda a: a.head)
        if tuple(arcs) in seen:
            continue
        seen.add(tuple(arcs))
        got = can_pack_triplet(*arcs)
        assert (got is not None) == oracles.two_disjoint_triangles(6, arcs, range(6)), arcs
        if got is not None:
            assert is_valid_packing(LinearTournament(6, arcs), got) and len(covered(got)) == 6
    assert len(seen) == 15


def test_phi_examples():
    r = phi(LT(5, (4, 0)), c=3)
    assert (r.size, r.m0, r.m1, r.m2) == (1, 0, 1, 0)
    r = phi(LT(6, (3, 0), (5, 2)))
    assert r.size == 2 and r.m1 == 2
    with pytest.raises(NotSparse, match="D_M"):
        phi(LT(4, (2, 0), (3, 2)))


def test_bounds_agree():
    for c in range(2, 40):
        assert Fraction(1) / (1 - Fraction(6, c + 5)) == 1 + Fraction(6, c - 1)
        assert ratio_bound(c) == pytest.approx(1 + 6 / (c - 1))
        assert arc_fraction_bound(c) == pytest.approx(1 - 6 / (c + 5))


@given(sparse_tournaments(max_n=30))
def test_phi_invariants(L):
    r = phi(L)
    P = r.packing
    assert is_valid_packing(L, P)
    assert r.m == L.m and min(r.m0, r.m1, r.m2) >= 0
    assert r.m2 % 3 == 0 and r.size == r.m1 + 2 * r.m2 // 3
    V = covered(P)
    for a in L.arcs:
        assert (a.tail in V) == (a.head in V)
    G = build_phase1_graph(L)
    assert r.m1 == oracles.matching_size(G.edges()) == len(maximum_matching(G))


@given(st.integers(2, 8), st.integers(0, 10**6), st.data())
def test_phi_bounds_hold(c, seed, data):
    n = data.draw(st.integers(c + 2, 24))
    a = data.draw(st.integers(1, max(1, min(n // 2, n - c - 1))))
    L = gen_sparse(n, a, c, seed)
    assume(L.m and minspan(L) >= c)
    r = phi(L, c)
    assert r.m1 + r.m2 >= arc_fraction_bound(c) * r.m - 1e-9
    opt = len(max_packing_exact(L))
    assert opt <= ratio_bound(c) * r.size + 1e-9


def test_phi_deterministic():
    L = gen_sparse(26, 9, 2, 11)
    assert phi(L) == phi(L)
