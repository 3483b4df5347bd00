"""Tournaments given by a vertex ordering plus a set of backward arcs.

Positions are 0-based. A backward arc is stored tail-first as ``Arc(tail, head)``
with ``head < tail``; every pair not covered by a backward arc is oriented
forward (from the smaller position to the larger one).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence


class AcyclicError(ValueError):
    """minspan/maxspan asked of a representation with no backward arc."""


class Arc(NamedTuple):
    tail: int
    head: int


class DegreePair(NamedTuple):
    left: int
    right: int


#: Degrees allowed in a sparse representation (backward arcs form a matching).
D_M = frozenset({DegreePair(0, 1), DegreePair(1, 0), DegreePair(0, 0)})


class Kind(enum.Enum):
    ONE_BACKWARD = 1
    TWO_BACKWARD = 2


class Triangle(NamedTuple):
    u: int
    v: int
    w: int
    kind: Kind = Kind.ONE_BACKWARD

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.w)


Packing = Sequence[Triangle]


@dataclass(frozen=True)
class LinearTournament:
    """A linear representation: ``n`` ordered vertices and the backward arcs.

    Construction never raises; use :func:`validate` to list violated invariants.
    Arcs are kept sorted, duplicates included, so that ``validate`` can report them.
    """

    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(Arc(*a) for a in self.arcs)))

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def _partner(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for t, h in self.arcs:
            out.setdefault(t, []).append(h)
            out.setdefault(h, []).append(t)
        return out

    @property
    def m(self) -> int:
        return len(self.arcs)

    def is_backward(self, tail: int, head: int) -> bool:
        return (tail, head) in self.arc_set

    def beats(self, a: int, b: int) -> bool:
        """True iff the arc between positions ``a`` and ``b`` goes ``a -> b``."""
        if a < b:
            return (b, a) not in self.arc_set
        return (a, b) in self.arc_set

    def partners(self, v: int) -> list[int]:
        """Other endpoints of the backward arcs touching ``v``."""
        return self._partner.get(v, [])

    def is_matching(self) -> bool:
        return all(len(p) == 1 for p in self._partner.values())


def validate(L: LinearTournament) -> list[str]:
    problems = []
    if L.n < 0:
        problems.append(f"negative vertex count {L.n}")
    for (t, h), count in Counter(L.arcs).items():
        if not (0 <= h < L.n and 0 <= t < L.n):
            problems.append(f"arc ({t}, {h}) out of range [0, {L.n})")
        if h >= t:
            problems.append(f"arc ({t}, {h}) has head >= tail")
        if count > 1:
            problems.append(f"duplicate arc ({t}, {h})")
    return problems


def _check_position(L: LinearTournament, v: int) -> None:
    if not 0 <= v < L.n:
        raise IndexError(f"position {v} out of range [0, {L.n})")


def degree(L: LinearTournament, v: int) -> DegreePair:
    _check_position(L, v)
    left = sum(1 for p in L.partners(v) if p < v)
    return DegreePair(left, len(L.partners(v)) - left)


def degrees(L: LinearTournament) -> list[DegreePair]:
    return [degree(L, v) for v in range(L.n)]


def is_sparse_representation(L: LinearTournament) -> bool:
    """All degrees in D_M, i.e. the backward arcs form a matching."""
    return L.is_matching()


def zero_degree_vertices(L: LinearTournament) -> list[int]:
    """V_(0,0): positions touched by no backward arc."""
    return [v for v in range(L.n) if not L.partners(v)]


def span_value(a: Arc) -> int:
    return a.tail - a.head - 1


def minspan(L: LinearTournament) -> int:
    if not L.arcs:
        raise AcyclicError("minspan undefined (acyclic)")
    return min(span_value(a) for a in L.arcs)


def maxspan(L: LinearTournament) -> int:
    if not L.arcs:
        raise AcyclicError("maxspan undefined (acyclic)")
    return max(span_value(a) for a in L.arcs)


def classify_triangle(L: LinearTournament, u: int, v: int, w: int) -> Triangle | None:
    """Return the triangle on positions u < v < w, or None if they induce no 3-cycle."""
    if not u < v < w:
        raise ValueError(f"positions must be strictly increasing, got ({u}, {v}, {w})")
    _check_position(L, w)
    _check_position(L, u)
    wu, wv, vu = L.is_backward(w, u), L.is_backward(w, v), L.is_backward(v, u)
    if wu and not wv and not vu:
        return Triangle(u, v, w, Kind.ONE_BACKWARD)
    if not wu and wv and vu:
        return Triangle(u, v, w, Kind.TWO_BACKWARD)
    return None


def triangle_of(L: LinearTournament, vertices: Iterable[int]) -> Triangle | None:
    """classify_triangle on an unordered vertex triple."""
    u, v, w = sorted(vertices)
    if u == v or v == w:
        return None
    return classify_triangle(L, u, v, w)


def enumerate_triangles(L: LinearTournament) -> Iterator[Triangle]:
    """Every triangle exactly once, in lexicographic (u, v, w) order."""
    found = set()
    for t, h in L.arc_set:
        # one backward arc t -> h with a middle vertex not linked backward to either end
        for v in range(h + 1, t):
            if not L.is_backward(t, v) and not L.is_backward(v, h):
                found.add(Triangle(h, v, t, Kind.ONE_BACKWARD))
        # t -> h is the upper arc w -> v of a two-backward triangle
        for u in L.partners(h):
            if u < h and not L.is_backward(t, u):
                found.add(Triangle(u, h, t, Kind.TWO_BACKWARD))
    yield from sorted(found)


def concatenate(L1: LinearTournament, L2: LinearTournament) -> LinearTournament:
    shifted = [Arc(t + L1.n, h + L1.n) for t, h in L2.arcs]
    return LinearTournament(L1.n + L2.n, L1.arcs + tuple(shifted))


def remove_vertices(L: LinearTournament, X: Iterable[int]) -> tuple[LinearTournament, dict[int, int]]:
    """Induced subtournament on the kept positions, plus the old -> new position map."""
    drop = set(X)
    remap = {}
    for v in range(L.n):
        if v not in drop:
            remap[v] = len(remap)
    arcs = [Arc(remap[t], remap[h]) for t, h in L.arcs if t in remap and h in remap]
    return LinearTournament(len(remap), arcs), remap


def is_valid_packing(L: LinearTournament, packing: Iterable[Sequence[int]]) -> bool:
    used: set[int] = set()
    for tri in packing:
        vs = tuple(tri)[:3]
        if len(set(vs)) != 3 or any(not 0 <= x < L.n for x in vs):
            return False
        if triangle_of(L, vs) is None:
            return False
        if used.intersection(vs):
            return False
        used.update(vs)
    return True


def covered(packing: Iterable[Sequence[int]]) -> set[int]:
    out: set[int] = set()
    for tri in packing:
        out.update(tuple(tri)[:3])
    return out


def normalize_packing(L: LinearTournament, triples: Iterable[Iterable[int]]) -> list[Triangle]:
    """Sort each triple, attach its kind, sort the list. Raises on a non-triangle."""
    out = []
    for vs in triples:
        t = triangle_of(L, vs)
        if t is None:
            raise ValueError(f"{tuple(vs)} is not a triangle")
        out.append(t)
    return sorted(out)


@dataclass(frozen=True)
class AdjacencyTournament:
    """Tournament as an orientation matrix: ``rows[i][j] == 1`` iff arc i -> j."""

    n: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"adjacency matrix must be {self.n}x{self.n}")
        for i in range(self.n):
            if rows[i][i]:
                raise ValueError(f"loop at vertex {i}")
            for j in range(i + 1, self.n):
                if rows[i][j] + rows[j][i] != 1:
                    raise ValueError(f"pair ({i}, {j}) is not oriented exactly once")

    def beats(self, i: int, j: int) -> bool:
        return bool(self.rows[i][j])

    def indegree(self, v: int, among: Iterable[int] | None = None) -> int:
        among = range(self.n) if among is None else among
        return sum(self.rows[u][v] for u in among if u != v)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "AdjacencyTournament":
        rows = [[0] * n for _ in range(n)]
        for a, b in arcs:
            rows[a][b] = 1
        return cls(n, tuple(map(tuple, rows)))


def to_adjacency(L: LinearTournament) -> AdjacencyTournament:
    rows = [[0] * L.n for _ in range(L.n)]
    for i, j in combinations(range(L.n), 2):
        if L.is_backward(j, i):
            rows[j][i] = 1
        else:
            rows[i][j] = 1
    return AdjacencyTournament(L.n, tuple(map(tuple, rows)))


def from_adjacency(A: AdjacencyTournament, order: Sequence[int]) -> LinearTournament:
    """Linear representation of ``A`` where ``order[p]`` is the vertex at position p."""
    if sorted(order) != list(range(A.n)):
        raise ValueError(f"order is not a permutation of range({A.n})")
    arcs = [Arc(q, p) for p, q in combinations(range(A.n), 2) if A.beats(order[q], order[p])]
    return LinearTournament(A.n, arcs)


def detect_sparse(A: AdjacencyTournament) -> tuple[LinearTournament, tuple[int, ...]] | None:
    """Find an ordering of ``A`` whose backward arcs form a matching.

    Returns ``(L, order)`` with ``order[p]`` the vertex placed at position p, or
    None when no such ordering exists.

    Vertices are peeled from the front. A vertex of indegree 0 in the remaining
    tournament is always placed next (moving it forward only deletes backward
    arcs). Otherwise the next vertex must have remaining indegree 1; the set Z
    of such vertices has at most three members. Candidates are tried in the
    preferred order (for Z = {x, y} with x -> y, x first; for a 3-cycle, the
    rotation starting at its smallest label), and a placement is rejected when
    it would put a vertex into a second backward arc. The search backtracks over
    Z and is memoized on (remaining, already-matched), so it is exhaustive.
    """
    n = A.n
    memo: dict[tuple[frozenset, frozenset], tuple[int, ...] | None] = {}

    def solve(rest: frozenset, used: frozenset) -> tuple[int, ...] | None:
        if not rest:
            return ()
        key = (rest, used)
        if key in memo:
            return memo[key]
        ins = {v: [u for u in rest if u != v and A.beats(u, v)] for v in rest}
        result = None
        zero = [v for v in rest if not ins[v]]
        if zero:
            x = min(zero)
            tail = solve(rest - {x}, used - {x})
            result = None if tail is None else (x,) + tail
        else:
            for x in _peel_candidates(A, [v for v in rest if len(ins[v]) == 1]):
                u = ins[x][0]
                if x in used or u in used:
                    continue
                tail = solve(rest - {x}, (used | {u}) - {x})
                if tail is not None:
                    result = (x,) + tail
                    break
        memo[key] = result
        return result

    order = solve(frozenset(range(n)), frozenset())
    if order is None:
        return None
    L = from_adjacency(A, order)
    assert L.is_matching()
    return L, order


def _peel_candidates(A: AdjacencyTournament, Z: list[int]) -> list[int]:
    Z = sorted(Z)
    if len(Z) == 2:
        x, y = Z if A.beats(Z[0], Z[1]) else Z[::-1]
        return [x, y]
    if len(Z) == 3:
        a = Z[0]
        b = next(v for v in Z if v != a and A.beats(a, v))
        c = next(v for v in Z if v not in (a, b))
        if A.beats(b, c) and A.beats(c, a):
            return [a, b, c]
    return Z
