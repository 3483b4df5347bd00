import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import linear_tournaments, sparse_tournaments
from tripack.approx import NotSparse, Phase1Graph, build_phase1_graph
from tripack.core import Arc, LinearTournament, is_valid_packing, remove_vertices, to_adjacency, zero_degree_vertices
from tripack.exact import max_packing_exact
from tripack.gadgets import gen_sparse
from tripack.kernel import (
    Reduced,
    Yes,
    crown_decomposition,
    eliminate_consecutive_backward,
    greedy_packing_5k,
    kernel_by_fas,
    sparse_kernel,
)


def LT(n, *arcs):
    return LinearTournament(n, [Arc(*a) for a in arcs])


def check_crown(G: Phase1Graph, cd):
    adj = dict(zip(G.left, G.adj))
    assert cd.A1 | cd.A2 == set(G.left) and not cd.A1 & cd.A2
    assert cd.B0 | cd.B1 | cd.B2 == set(G.right)
    assert len(cd.B0) + len(cd.B1) + len(cd.B2) == len(G.right)
    for a in cd.A2:
        assert set(adj[a]) <= cd.B2
    assert len(cd.B2) <= len(cd.A2)
    assert set(cd.mu) == cd.A1 and set(cd.mu.values()) == cd.B1 and len(cd.B1) == len(cd.A1)
    for a, v in cd.mu.items():
        assert v in adj[a]


def test_crown_examples():
    a = Arc(4, 0)
    cd = crown_decomposition(Phase1Graph((a,), (1, 2, 3), ((1, 2, 3),)))
    assert (cd.A1, cd.B1, cd.A2, cd.B2, cd.B0) == ({a}, {1}, set(), set(), {2, 3})
    cd = crown_decomposition(Phase1Graph((a,), (1,), ((),)))
    assert (cd.A2, cd.B2, cd.B0) == ({a}, set(), {1})
    b = Arc(9, 5)
    cd = crown_decomposition(Phase1Graph((a, b), (1, 6), ((1,), (6,))))
    assert cd.A1 == {a, b} and not cd.B0 and not cd.B2


@st.composite
def bipartite(draw):
    nl = draw(st.integers(0, 7))
    right = tuple(range(100, 100 + draw(st.integers(0, 8))))
    left = tuple(Arc(2 * i + 1, 2 * i) for i in range(nl))
    adj = tuple(tuple(sorted(draw(st.sets(st.sampled_from(right), max_size=len(right))))) if right else () for _ in left)
    return Phase1Graph(left, right, adj)


@given(bipartite())
def test_crown_invariants_random_bipartite(G):
    cd = crown_decomposition(G)
    check_crown(G, cd)
    # B2 vertices are all matched into A2, so the matching splits as A1-B1 plus A2-B2
    assert len(cd.A1) + len(cd.B2) == oracles.matching_size(G.edges())


@given(linear_tournaments(max_n=11))
def test_crown_invariants_on_tournaments(L):
    G = build_phase1_graph(L)
    check_crown(G, crown_decomposition(G))


def test_kernel_by_fas_examples():
    red = kernel_by_fas(LT(5, (4, 0)), 1)
    assert isinstance(red, Reduced) and red.L == LT(3, (2, 0)) and red.k == 1
    L = LT(4, (2, 0), (3, 1))
    assert zero_degree_vertices(L) == []
    assert kernel_by_fas(L, 1).L == L


@given(linear_tournaments(max_n=11))
def test_kernel_by_fas_sound(L):
    red = kernel_by_fas(L, 0)
    assert red.L.n <= 3 * L.m
    R, remap = remove_vertices(L, set(range(L.n)) - set(red.remap))
    assert R == red.L and remap == red.remap
    assert oracles.max_packing_size(red.L.n, red.L.arcs) == oracles.max_packing_size(L.n, L.arcs)


def test_eliminate_examples():
    assert eliminate_consecutive_backward(LT(2, (1, 0))) == LT(2)
    assert eliminate_consecutive_backward(LT(4, (1, 0), (3, 2))) == LT(4)
    assert eliminate_consecutive_backward(LT(5, (4, 0))) == LT(5, (4, 0))
    with pytest.raises(NotSparse):
        eliminate_consecutive_backward(LT(3, (1, 0), (2, 1)))


@given(sparse_tournaments(max_n=13))
def test_eliminate_preserves_packing_number(L):
    E = eliminate_consecutive_backward(L)
    assert E.is_matching() and all(a.tail > a.head + 1 for a in E.arcs)
    assert oracles.max_packing_size(E.n, E.arcs) == oracles.max_packing_size(L.n, L.arcs)


def test_eliminate_is_a_relabeling():
    # the swapped order represents the same tournament: compare triangle counts per vertex multiset
    L = LT(7, (1, 0), (5, 2), (4, 3))
    E = eliminate_consecutive_backward(L)
    assert E == LT(7, (5, 2))
    A, B = to_adjacency(L), to_adjacency(E)
    swap = {0: 1, 1: 0, 3: 4, 4: 3}
    for a in range(7):
        for b in range(7):
            if a != b:
                assert A.beats(a, b) == B.beats(swap.get(a, a), swap.get(b, b))


def test_greedy_examples():
    L = LT(15, *[(3 * i + 2, 3 * i) for i in range(5)])
    P = greedy_packing_5k(L, 1)
    assert len(P) == 1 and is_valid_packing(L, P)
    assert greedy_packing_5k(L, 0) == []
    L = eliminate_consecutive_backward(gen_sparse(30, 10, 1, 4))
    if L.m >= 10:
        P = greedy_packing_5k(L, 2)
        assert len(P) == 2 and is_valid_packing(L, P)
    with pytest.raises(ValueError):
        greedy_packing_5k(LT(2, (1, 0)), 0)
    with pytest.raises(ValueError):
        greedy_packing_5k(LT(5, (4, 0)), 1)


@given(sparse_tournaments(max_n=40), st.integers(0, 8))
def test_greedy_returns_k(L, k):
    E = eliminate_consecutive_backward(L)
    if E.m < 5 * k:
        return
    P = greedy_packing_5k(E, k)
    assert len(P) == k and is_valid_packing(E, P)


def test_sparse_kernel_examples():
    L = LT(15, *[(3 * i + 2, 3 * i) for i in range(5)])
    out = sparse_kernel(L, 1)
    assert isinstance(out, Yes) and len(out.witness) == 1 and is_valid_packing(L, out.witness)
    L = LT(12, (2, 0), (5, 3), (8, 6), (11, 9))
    out = sparse_kernel(L, 3)
    assert isinstance(out, Reduced) and out.L.n <= 12


@given(sparse_tournaments(max_n=13), st.integers(0, 4))
def test_sparse_kernel_equivalent(L, k):
    out = sparse_kernel(L, k)
    opt = oracles.max_packing_size(L.n, L.arcs)
    if isinstance(out, Yes):
        assert len(out.witness) == k and is_valid_packing(L, out.witness)
        assert opt >= k
    else:
        assert out.L.n < 15 * k or (k == 0 and out.L.n == 0)
        assert (oracles.max_packing_size(out.L.n, out.L.arcs) >= k) == (opt >= k)
        assert sorted(out.remap.values()) == list(range(out.L.n))
