"""Kernels: O(m) vertices from a given feedback arc set, O(k) for sparse tournaments."""

from __future__ import annotations

from dataclasses import dataclass

from tripack.approx import NotSparse, Phase1Graph, _kuhn, build_phase1_graph
from tripack.core import Arc, LinearTournament, Triangle, remove_vertices, triangle_of


@dataclass(frozen=True)
class CrownDecomposition:
    A1: frozenset[Arc]
    A2: frozenset[Arc]
    B0: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]
    mu: dict  # Arc -> int, bijection A1 -> B1


@dataclass(frozen=True)
class Yes:
    witness: list[Triangle]


@dataclass(frozen=True)
class Reduced:
    L: LinearTournament
    k: int
    remap: dict[int, int]  # original position -> position in L


KernelOutcome = Yes | Reduced


def crown_decomposition(G: Phase1Graph) -> CrownDecomposition:
    match = _kuhn(G)
    owner = {v: i for i, v in match.items()}
    # alternating search from unmatched arcs: any edge out, matched edge back
    reach = set(i for i in range(len(G.left)) if i not in match)
    stack = sorted(reach)
    B2 = set()
    while stack:
        i = stack.pop()
        for v in G.adj[i]:
            if v not in B2:
                B2.add(v)
                j = owner.get(v)
                if j is not None and j not in reach:
                    reach.add(j)
                    stack.append(j)
    A2 = {G.left[i] for i in reach}
    A1 = {G.left[i] for i in range(len(G.left)) if i not in reach}
    mu = {G.left[i]: match[i] for i in range(len(G.left)) if i not in reach}
    B1 = set(mu.values())
    B0 = set(G.right) - B1 - B2
    return CrownDecomposition(frozenset(A1), frozenset(A2), frozenset(B0), frozenset(B1), frozenset(B2), mu)


def kernel_by_fas(L: LinearTournament, k: int) -> Reduced:
    """Drop the V_(0,0) vertices that no maximum phase-1 matching needs.

    A triangle through a V_(0,0) vertex uses it as the middle of a single
    backward arc, so any packing can swap those middles for B1 partners.
    """
    cd = crown_decomposition(build_phase1_graph(L))
    L2, remap = remove_vertices(L, cd.B0)
    return Reduced(L2, k, remap)


def _eliminate(L: LinearTournament) -> tuple[LinearTournament, list[int]]:
    """Normalized tournament plus ``ids`` where ``ids[p]`` is the input position now at p."""
    if not L.is_matching():
        raise NotSparse("backward arcs must form a matching")
    ids = list(range(L.n))
    # swapping the two ends of a span-0 arc reverses only that arc
    for t, h in L.arcs:
        if t == h + 1:
            ids[h], ids[t] = ids[t], ids[h]
    return LinearTournament(L.n, [a for a in L.arcs if a.tail != a.head + 1]), ids


def eliminate_consecutive_backward(L: LinearTournament) -> LinearTournament:
    return _eliminate(L)[0]


def greedy_packing_5k(L: LinearTournament, k: int) -> list[Triangle]:
    """k disjoint triangles, given a matching FAS with >= 5k arcs and none of span 0.

    Each round takes the arc with the lowest head and the first vertex of its
    span, deletes the three vertices and re-normalizes. A round destroys at
    most five arcs, so k rounds always succeed.
    """
    if not L.is_matching():
        raise NotSparse("backward arcs must form a matching")
    if any(a.tail == a.head + 1 for a in L.arcs):
        raise ValueError("consecutive backward arc present; normalize first")
    if L.m < 5 * k:
        raise ValueError(f"need at least {5 * k} backward arcs, have {L.m}")
    cur, ids = L, list(range(L.n))
    out = []
    for _ in range(k):
        t, h = min(cur.arcs, key=lambda a: (a.head, a.tail))
        picked = (h, h + 1, t)
        out.append(tuple(sorted(ids[p] for p in picked)))
        cur, remap = remove_vertices(cur, picked)
        ids = [ids[old] for old in sorted(remap, key=remap.get)]
        cur, perm = _eliminate(cur)
        ids = [ids[p] for p in perm]
    packing = []
    for vs in out:
        tri = triangle_of(L, vs)
        assert tri is not None, vs
        packing.append(tri)
    return sorted(packing)


def sparse_kernel(L: LinearTournament, k: int) -> KernelOutcome:
    L1, ids = _eliminate(L)
    if L1.m >= 5 * k:
        witness = greedy_packing_5k(L1, k)
        return Yes(sorted(triangle_of(L, [ids[x] for x in t.vertices]) for t in witness))
    red = kernel_by_fas(L1, k)
    # kernel positions refer to vertices of the normalized order; map back to input positions
    remap = {ids[p]: q for p, q in red.remap.items()}
    return Reduced(red.L, k, dict(sorted(remap.items())))
