"""Perfect-packing variants of the reduction: dummy arc pairs soak up the slack."""

from __future__ import annotations

from tripack.core import Kind, LinearTournament, Triangle, covered, is_valid_packing
from tripack.gadgets.cnf import CnfFormula
from tripack.gadgets.reduction import (
    GadgetLayout,
    build_tournament,
    canonical_variable_triangles,
    packing_from_assignment,
)


def build_perfect_2sat3(F: CnfFormula, k: int) -> tuple[LinearTournament, GadgetLayout]:
    """R1 f(F) R2 with n' = 2n + 2m - 3k dummy arcs r2^l -> r1^l.

    Has a perfect packing iff some assignment satisfies k clauses of F.
    """
    return build_tournament(F, "perfect2sat3", k)


def build_perfect_3sat3(F: CnfFormula) -> tuple[LinearTournament, GadgetLayout]:
    """R1 L_1..L_n R2 K_1..K_m with two-vertex clause blocks (theta_j, c_j).

    c_j sends an arc to each of its three occurrence vertices, and n' = 2n - m.
    Has a perfect packing iff F is satisfiable.
    """
    return build_tournament(F, "perfect3sat3")


def _fill_dummies(T: LinearTournament, layout: GadgetLayout, packing: list[Triangle], region) -> list[Triangle]:
    left = sorted(set(region) - covered(packing))
    if len(left) != len(layout.r1):
        raise ValueError(f"{len(left)} vertices left for {len(layout.r1)} dummy arcs")
    out = packing + [Triangle(a, v, b, Kind.ONE_BACKWARD) for a, v, b in zip(layout.r1, left, layout.r2)]
    out.sort()
    assert is_valid_packing(T, out) and len(covered(out)) == T.n, "forward packing is not perfect"
    return out


def perfect_packing_2sat3(T: LinearTournament, layout: GadgetLayout, assignment) -> list[Triangle]:
    """Perfect packing of the 2-SAT(3) variant from an assignment satisfying >= k clauses."""
    F = layout.formula
    w = F.witnesses(assignment)
    if len(w) < layout.k:
        raise ValueError(f"assignment satisfies {len(w)} < k={layout.k} clauses")
    chosen = {j: w[j] for j in sorted(w)[: layout.k]}
    base = packing_from_assignment(T, layout, assignment, chosen)
    lo = len(layout.r1)
    return _fill_dummies(T, layout, base, range(lo, lo + 35 * F.num_vars + 5 * F.m))


def perfect_packing_3sat3(T: LinearTournament, layout: GadgetLayout, assignment) -> list[Triangle]:
    """Perfect packing of the 3-SAT(3) variant from a satisfying assignment."""
    F = layout.formula
    w = F.witnesses(assignment)
    if len(w) < F.m:
        raise ValueError("assignment does not satisfy every clause")
    out: list[Triangle] = []
    for i in range(F.num_vars):
        out += canonical_variable_triangles(layout, i, bool(assignment[i]))
    for j, x in sorted(w.items()):
        out.append(layout.outer(j, x))
    lo = len(layout.r1)
    return _fill_dummies(T, layout, out, range(lo, lo + 35 * F.num_vars))
