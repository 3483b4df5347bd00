"""Two-phase approximation for sparse tournaments with large minspan.

Phase 1 matches backward arcs to untouched vertices inside their spans (one
triangle per matched arc). Phase 2 greedily packs triplets of leftover arcs into
two triangles that use exactly their six endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from tripack.core import Arc, Kind, LinearTournament, Triangle, zero_degree_vertices


class NotSparse(ValueError):
    pass


@dataclass(frozen=True)
class Phase1Graph:
    """Bipartite graph: backward arcs on the left, V_(0,0) vertices on the right.

    Left vertices are indexed in (head, tail) order; ``adj[i]`` lists the right
    vertices (positions) adjacent to ``left[i]`` in ascending order.
    """

    left: tuple[Arc, ...]
    right: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    def edges(self) -> list[tuple[Arc, int]]:
        return [(a, v) for a, vs in zip(self.left, self.adj) for v in vs]


def build_phase1_graph(L: LinearTournament) -> Phase1Graph:
    left = tuple(sorted(L.arcs, key=lambda a: (a.head, a.tail)))
    right = tuple(zero_degree_vertices(L))
    rset = set(right)
    # a V_(0,0) vertex strictly inside the span always closes a triangle with the arc
    adj = tuple(tuple(v for v in range(a.head + 1, a.tail) if v in rset) for a in left)
    return Phase1Graph(left, right, adj)


def _kuhn(G: Phase1Graph) -> dict[int, int]:
    """Left index -> right position, by augmenting paths in ascending order."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for v in G.adj[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = i
                return True
        return False

    for i in range(len(G.left)):
        augment(i, set())
    return {i: v for v, i in owner.items()}


def maximum_matching(G: Phase1Graph) -> set[tuple[Arc, int]]:
    return {(G.left[i], v) for i, v in _kuhn(G).items()}


def can_pack_triplet(a1: Arc, a2: Arc, a3: Arc) -> tuple[Triangle, Triangle] | None:
    """Two disjoint triangles on exactly the six endpoints of three disjoint arcs.

    Only the three given arcs are backward among those endpoints, so each
    triangle carries one of them and the third arc supplies both middle vertices:
    its head inside one span and its tail inside the other.
    """
    arcs = [Arc(*a1), Arc(*a2), Arc(*a3)]
    ends = [x for a in arcs for x in a]
    if len(set(ends)) != 6:
        raise ValueError(f"arcs {arcs} share an endpoint")
    found = []
    for ai, aj, ak in permutations(arcs):
        if ai.head < ak.head < ai.tail and aj.head < ak.tail < aj.tail:
            found.append(tuple(sorted([Triangle(ai.head, ak.head, ai.tail), Triangle(aj.head, ak.tail, aj.tail)])))
    if not found:
        return None
    return min(found)


@dataclass(frozen=True)
class PhiReport:
    packing: list[Triangle]
    m0: int
    m1: int
    m2: int
    c: int | None = None

    @property
    def m(self) -> int:
        return self.m0 + self.m1 + self.m2

    @property
    def size(self) -> int:
        return len(self.packing)


def phi(L: LinearTournament, c: int | None = None) -> PhiReport:
    """Run both phases; ``c`` is only recorded (the guarantee needs minspan >= c)."""
    if not L.is_matching():
        raise NotSparse("degrees outside D_M")
    G = build_phase1_graph(L)
    match = _kuhn(G)
    packing = [Triangle(G.left[i].head, v, G.left[i].tail, Kind.ONE_BACKWARD) for i, v in match.items()]
    m1 = len(match)

    rest = [a for i, a in enumerate(G.left) if i not in match]  # already in head order
    gone = [False] * len(rest)
    m2 = 0
    # a failed triplet stays unpackable, so continuing the scan equals restarting it
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            if gone[i]:
                break
            if gone[j]:
                continue
            for k in range(j + 1, len(rest)):
                if gone[k] or gone[j] or gone[i]:
                    continue
                pair = can_pack_triplet(rest[i], rest[j], rest[k])
                if pair is not None:
                    packing.extend(pair)
                    gone[i] = gone[j] = gone[k] = True
                    m2 += 3
    return PhiReport(sorted(packing), m0=L.m - m1 - m2, m1=m1, m2=m2, c=c)


def ratio_bound(c: int) -> float:
    """Worst-case opt / |Phi| when minspan >= c (c >= 2)."""
    return 1 + 6 / (c - 1)


def arc_fraction_bound(c: int) -> float:
    """Guaranteed fraction of arcs consumed by the two phases when minspan >= c."""
    return 1 - 6 / (c + 5)
