"""Exact maximum triangle packing.

Both solvers return the lexicographically smallest maximum packing (triangles
sorted by position triple), so their outputs coincide and can be golden-tested.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from tripack.core import LinearTournament, Triangle, enumerate_triangles, maxspan


@dataclass(frozen=True)
class SolverBudget:
    node_limit: int | None = 2_000_000
    time_limit: float | None = None

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


class BudgetExceeded(RuntimeError):
    """Search stopped early. ``best`` holds the best packing found so far."""

    def __init__(self, best: list[Triangle], nodes: int):
        super().__init__(f"budget exceeded after {nodes} nodes (best so far: {len(best)})")
        self.best = best
        self.nodes = nodes


class WindowTooWide(ValueError):
    pass


def _bit(*vs: int) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


class _Search:
    def __init__(self, L: LinearTournament, budget: SolverBudget | None):
        self.L = L
        self.budget = budget or SolverBudget()
        self.tris = list(enumerate_triangles(L))
        self.by_low: list[list[tuple[int, Triangle]]] = [[] for _ in range(L.n)]
        for t in self.tris:
            self.by_low[t.u].append((_bit(t.u, t.v, t.w), t))
        self.arc_masks = [(_bit(t, h)) for t, h in L.arcs]
        # (third vertex, triangle mask) per backward arc lying inside a triangle
        index = {a: i for i, a in enumerate(L.arcs)}
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in L.arcs]
        for t in self.tris:
            m = _bit(t.u, t.v, t.w)
            for a, x in (((t.w, t.u), t.v), ((t.w, t.v), t.u), ((t.v, t.u), t.w)):
                if a in index:
                    self.pairs[index[a]].append((x, m))
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self, best):
        self.nodes += 1
        b = self.budget
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise BudgetExceeded(sorted(best), self.nodes)
        if b.time_limit is not None and self.nodes % 1024 == 0:
            if time.monotonic() - self.start > b.time_limit:
                raise BudgetExceeded(sorted(best), self.nodes)

    def live(self, v: int, free: int) -> list[tuple[int, Triangle]]:
        return [(m, t) for m, t in self.by_low[v] if m & free == m]

    def upper_bound(self, free: int) -> int:
        # vertex-disjoint triangles each hold a distinct backward arc inside them,
        # and those arcs are pairwise disjoint; a maximal matching is at least half
        # a maximum one
        taken = 0
        greedy = 0
        for am in self.arc_masks:
            if am & free == am and not am & taken:
                taken |= am
                greedy += 1
        return min(bin(free).count("1") // 3, 2 * greedy)

    def matching_bound(self, free: int) -> int:
        # each triangle of a packing gives a distinct pair (backward arc inside it,
        # third vertex), and the third vertices are distinct too
        adj = []
        for ps in self.pairs:
            xs = [x for x, m in ps if m & free == m]
            if xs:
                adj.append(xs)
        owner: dict[int, int] = {}

        def augment(i: int, seen: set[int]) -> bool:
            for x in adj[i]:
                if x not in seen:
                    seen.add(x)
                    if x not in owner or augment(owner[x], seen):
                        owner[x] = i
                        return True
            return False

        return sum(augment(i, set()) for i in range(len(adj)))


def max_packing_exact(L: LinearTournament, budget: SolverBudget | None = None) -> list[Triangle]:
    """Maximum packing by branch-and-bound; raises BudgetExceeded when out of budget.

    State is the set of undecided vertices. The lowest undecided vertex either
    becomes the lowest vertex of a triangle (tried in lex order) or is dropped.
    """
    S = _Search(L, budget)
    best: list[Triangle] = []
    chosen: list[Triangle] = []

    def rec(free: int) -> None:
        nonlocal best
        S.tick(best)
        # drop vertices that cannot be the lowest vertex of a live triangle
        while free:
            v = (free & -free).bit_length() - 1
            if S.live(v, free):
                break
            free &= ~(1 << v)
        if len(chosen) > len(best):
            best = list(chosen)
        if not free or len(chosen) + S.upper_bound(free) <= len(best):
            return
        if len(chosen) + S.matching_bound(free) <= len(best):
            return
        v = (free & -free).bit_length() - 1
        for m, t in S.live(v, free):
            chosen.append(t)
            rec(free & ~m)
            chosen.pop()
        rec(free & ~(1 << v))

    rec((1 << L.n) - 1)
    return best


def has_perfect_packing(L: LinearTournament, budget: SolverBudget | None = None) -> tuple[bool, list[Triangle] | None]:
    """(True, witness) when a packing covering every vertex exists, else (False, None)."""
    if L.n % 3:
        return False, None
    if L.n == 0:
        return True, []
    S = _Search(L, budget)
    dead: set[int] = set()
    chosen: list[Triangle] = []

    def rec(free: int) -> bool:
        S.tick([])
        if not free:
            return True
        if free in dead:
            return False
        v = (free & -free).bit_length() - 1
        for m, t in S.live(v, free):
            chosen.append(t)
            if rec(free & ~m):
                return True
            chosen.pop()
        dead.add(free)
        return False

    if rec((1 << L.n) - 1):
        return True, list(chosen)
    return False, None


def max_packing_dp_bounded_maxspan(L: LinearTournament, cap: int = 20) -> list[Triangle]:
    """Maximum packing by a left-to-right sweep with a sliding window of consumed flags.

    The window width is the widest triangle, max(w - u). That is at most B + 1
    when every triangle has one backward arc and at most 2B + 3 in general,
    with B the maxspan. Refuses (WindowTooWide) when B exceeds ``cap``.
    """
    if not L.arcs:
        return []
    B = maxspan(L)
    if B > cap:
        raise WindowTooWide(f"maxspan {B} exceeds cap {cap}")
    by_low: list[list[tuple[int, Triangle]]] = [[] for _ in range(L.n + 1)]
    for t in enumerate_triangles(L):
        by_low[t.u].append((_bit(t.v - t.u, t.w - t.u), t))
    n = L.n

    # forward pass: reachable masks per position; mask bit j = position i+j consumed
    levels: list[set[int]] = [set() for _ in range(n + 1)]
    levels[0].add(0)
    for i in range(n):
        for mask in levels[i]:
            levels[i + 1].add(mask >> 1)
            if not mask & 1:
                for m, _ in by_low[i]:
                    if not m & mask:
                        levels[i + 1].add((mask | m) >> 1)

    # backward pass
    value: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    value[n] = {mask: 0 for mask in levels[n]}
    for i in range(n - 1, -1, -1):
        nxt = value[i + 1]
        cur = value[i]
        for mask in levels[i]:
            best = nxt[mask >> 1]
            if not mask & 1:
                for m, _ in by_low[i]:
                    if not m & mask:
                        best = max(best, 1 + nxt[(mask | m) >> 1])
            cur[mask] = best

    # lex-smallest reconstruction: prefer taking a triangle, in lex order, over skipping
    out = []
    mask = 0
    for i in range(n):
        target = value[i][mask]
        nxt = value[i + 1]
        step = None
        if not mask & 1:
            for m, t in by_low[i]:
                if not m & mask and 1 + nxt[(mask | m) >> 1] == target:
                    step = (m, t)
                    break
        if step is None:
            mask >>= 1
        else:
            out.append(step[1])
            mask = (mask | step[0]) >> 1
    return out
