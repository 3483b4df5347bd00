"""Seeded random instances."""

from __future__ import annotations

import random
from itertools import combinations

from tripack.core import AdjacencyTournament, Arc, LinearTournament
from tripack.gadgets.cnf import CnfFormula

RETRY_CAP = 1000


def gen_random_tournament(n: int, seed: int) -> AdjacencyTournament:
    rng = random.Random(seed)
    arcs = [(i, j) if rng.random() < 0.5 else (j, i) for i, j in combinations(range(n), 2)]
    return AdjacencyTournament.from_arcs(n, arcs)


def gen_linear(n: int, p: float, seed: int) -> LinearTournament:
    """Each pair independently backward with probability p (general, not sparse)."""
    rng = random.Random(seed)
    return LinearTournament(n, [Arc(j, i) for i, j in combinations(range(n), 2) if rng.random() < p])


def sparse_feasible(n: int, num_arcs: int, min_span: int) -> bool:
    # the endpoint of rank num_arcs sits at position <= n - num_arcs, and two of the
    # num_arcs + 1 lowest endpoints share an arc, so some span is <= n - num_arcs - 1
    if num_arcs == 0:
        return n >= 0
    return 2 * num_arcs <= n and n - num_arcs - 1 >= min_span


def gen_sparse(n: int, num_arcs: int, min_span: int, seed: int) -> LinearTournament:
    """Matching of ``num_arcs`` backward arcs, each of span >= min_span.

    Rejection-samples random matchings on random endpoints; after RETRY_CAP
    misses it falls back to a randomly shifted nested layout, which always fits
    when the parameters are feasible.
    """
    if not sparse_feasible(n, num_arcs, min_span):
        raise ValueError(f"cannot place {num_arcs} disjoint arcs of span >= {min_span} on {n} vertices")
    rng = random.Random(seed)
    for _ in range(RETRY_CAP):
        ends = sorted(rng.sample(range(n), 2 * num_arcs))
        rng.shuffle(ends)
        arcs = [Arc(max(a, b), min(a, b)) for a, b in zip(ends[::2], ends[1::2])]
        if all(a.tail - a.head - 1 >= min_span for a in arcs):
            return LinearTournament(n, arcs)
    # heads h..h+a-1 and tails h+s..h+s+a-1 with s >= min_span + 1
    s = rng.randint(max(num_arcs, min_span + 1), n - num_arcs)
    h = rng.randint(0, n - num_arcs - s)
    return LinearTournament(n, [Arc(h + s + i, h + i) for i in range(num_arcs)])


def ratio_instance(seed: int, max_n: int = 30) -> tuple[LinearTournament, int]:
    """Seed-fixed sparse instance for the ratio experiments: c in 2..8, n <= max_n."""
    rng = random.Random(seed)
    c = 2 + seed % 7
    n = rng.randint(min(c + 2, max_n), max_n)
    top = max(1, min(n // 2, n - c - 1))
    a = rng.randint(1, top)
    return gen_sparse(n, a, c, rng.randrange(2**31)), c


def kernel_instance(seed: int, max_n: int = 21) -> LinearTournament:
    """Seed-fixed general linear tournament with a modest number of backward arcs."""
    rng = random.Random(seed)
    n = rng.randint(3, max_n)
    p = rng.choice([0.03, 0.06, 0.1, 0.2, 0.35])
    return gen_linear(n, p, rng.randrange(2**31))


def gen_sat3(num_vars: int, arity: int, seed: int, satisfiable: bool | None = None, tautologies: bool = False) -> CnfFormula:
    """Random formula with clauses of exactly ``arity`` literals where each variable
    occurs positively once or twice and negatively once, no literal twice in a clause.

    ``satisfiable`` filters by brute force (num_vars <= 20).
    """
    rng = random.Random(seed)
    for _ in range(RETRY_CAP):
        pos = [1 + rng.randrange(2) for _ in range(num_vars)]
        lits = [v + 1 for v in range(num_vars) for _ in range(pos[v])] + [-(v + 1) for v in range(num_vars)]
        if len(lits) % arity:
            continue
        rng.shuffle(lits)
        clauses = [lits[i : i + arity] for i in range(0, len(lits), arity)]
        if any(len(set(c)) < arity for c in clauses):
            continue
        if not tautologies and any(-x in c for c in clauses for x in c):
            continue
        F = CnfFormula.from_ints(num_vars, clauses)
        if satisfiable is not None and (F.max_sat()[0] == F.m) != satisfiable:
            continue
        return F
    raise RuntimeError(f"no formula found for num_vars={num_vars}, arity={arity}")
