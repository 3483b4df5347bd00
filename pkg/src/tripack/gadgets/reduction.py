"""Variable and clause gadgets for Max 2-SAT(3), canonical packings, restructuring.

Variable block L_i (35 positions, offsets relative to its first vertex)::

    X 0-3 | X' 4-7 | Xb 8-11 | Xb' 12-15 | beta 16 | beta' 17 |
    A 18-21 | B 22-25 | alpha 26 | A' 27-30 | B' 31-34

Clause block K_j (5 positions): theta, d1, c1, c2, d2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tripack.core import Arc, Kind, LinearTournament, Triangle, covered, is_valid_packing, triangle_of
from tripack.gadgets.cnf import CnfFormula

VAR_SIZE = 35
SET_OFFSETS = {"X": 0, "Xp": 4, "Xb": 8, "Xbp": 12, "A": 18, "B": 22, "Ap": 27, "Bp": 31}
SINGLE_OFFSETS = {"beta": 16, "betap": 17, "alpha": 26}
CLAUSE_NAMES = ("theta", "d1", "c1", "c2", "d2")
# slot of the occurrence vertices, as offsets: x^2, x'^2, xb^2
OCC_POS1, OCC_POS2, OCC_NEG = 1, 5, 9


def _el(name: str, k: int) -> int:
    return SET_OFFSETS[name] + k - 1


# backward arcs of a variable block, relative offsets (tail, head)
E_ARCS = {
    "e1": (_el("A", 3), _el("X", 3)),
    "e2": (_el("Ap", 3), _el("Xp", 3)),
    "e3": (_el("B", 3), _el("Xb", 3)),
    "e4": (_el("Bp", 3), _el("Xbp", 3)),
}
M_ARCS = {"m1": (_el("Ap", 2), _el("A", 2)), "m2": (_el("Bp", 2), _el("B", 2))}

LFT = frozenset(range(0, 16))
RGT = frozenset(range(18, 35))


def _t(name: str, which: int) -> tuple[int, int, int]:
    """t^2_Y = (y1, y2, y4), t^3_Y = (y1, y3, y4)."""
    return (_el(name, 1), _el(name, which), _el(name, 4))


def _through(arc: tuple[int, int], mid: str) -> tuple[int, int, int]:
    t, h = arc
    return (h, SINGLE_OFFSETS[mid], t)


P_TRUE = tuple(sorted([
    _t("X", 3), _t("Xp", 3), _t("Xb", 2), _t("Xbp", 2),
    _t("A", 3), _t("B", 2), _t("Ap", 3), _t("Bp", 2),
    _through(E_ARCS["e3"], "beta"), _through(E_ARCS["e4"], "betap"), _through(M_ARCS["m1"], "alpha"),
]))
P_FALSE = tuple(sorted([
    _t("X", 2), _t("Xp", 2), _t("Xb", 3), _t("Xbp", 3),
    _t("A", 2), _t("B", 3), _t("Ap", 2), _t("Bp", 3),
    _through(E_ARCS["e1"], "beta"), _through(E_ARCS["e2"], "betap"), _through(M_ARCS["m2"], "alpha"),
]))


@dataclass(frozen=True)
class GadgetLayout:
    """Position bookkeeping for the reduction tournaments.

    ``occ[j][x]`` is the L-vertex hit by the arc of the x-th literal of clause j.
    For the 3-SAT(3) variant clause blocks are (theta, c) and every literal of
    clause j hangs off the same c vertex.
    """

    variant: str
    formula: CnfFormula
    n: int
    var_base: tuple[int, ...]
    clause_base: tuple[int, ...]
    occ: tuple[tuple[int, ...], ...]
    r1: tuple[int, ...] = ()
    r2: tuple[int, ...] = ()
    left_size: int = 0
    k: int | None = None
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def clause_width(self) -> int:
        return 2 if self.variant == "perfect3sat3" else 5

    def var(self, i: int, name: str, k: int | None = None) -> int:
        if name in SINGLE_OFFSETS:
            return self.var_base[i] + SINGLE_OFFSETS[name]
        return self.var_base[i] + _el(name, k)

    def block(self, i: int) -> range:
        return range(self.var_base[i], self.var_base[i] + VAR_SIZE)

    def theta(self, j: int) -> int:
        return self.clause_base[j]

    def c(self, j: int, x: int = 0) -> int:
        """c vertex of literal x (0-based) of clause j."""
        if self.clause_width == 2:
            return self.clause_base[j] + 1
        return self.clause_base[j] + 2 + x

    def d1(self, j: int) -> int:
        return self.clause_base[j] + 1

    def d2(self, j: int) -> int:
        return self.clause_base[j] + 4

    def clause_block(self, j: int) -> range:
        return range(self.clause_base[j], self.clause_base[j] + self.clause_width)

    def q(self, j: int, x: int) -> Triangle:
        """Clause-inner triangle (d1, c^x, d2), x in {0, 1}."""
        return Triangle(self.d1(j), self.c(j, x), self.d2(j), Kind.ONE_BACKWARD)

    def outer(self, j: int, x: int) -> Triangle:
        return Triangle(self.occ[j][x], self.theta(j), self.c(j, x), Kind.ONE_BACKWARD)

    def slots(self) -> list[tuple[str, int]]:
        out = []
        for l, p in enumerate(self.r1):
            out.append((f"R1.{l + 1}", p))
        for i, base in enumerate(self.var_base):
            for name in SET_OFFSETS:
                for k in range(1, 5):
                    out.append((f"L{i + 1}.{name}{k}", base + _el(name, k)))
            for name, off in SINGLE_OFFSETS.items():
                out.append((f"L{i + 1}.{name}", base + off))
        for l, p in enumerate(self.r2):
            out.append((f"R2.{l + 1}", p))
        names = ("theta", "c") if self.clause_width == 2 else CLAUSE_NAMES
        for j, base in enumerate(self.clause_base):
            for off, name in enumerate(names):
                out.append((f"K{j + 1}.{name}", base + off))
        return sorted(out, key=lambda s: s[1])


def _variable_arcs(base: int) -> list[Arc]:
    arcs = [Arc(base + off + 3, base + off) for off in SET_OFFSETS.values()]
    arcs += [Arc(base + t, base + h) for t, h in list(E_ARCS.values()) + list(M_ARCS.values())]
    return arcs


def _occurrence_slots(F: CnfFormula) -> list[list[int]]:
    """Block-relative offset of the occurrence vertex for each literal."""
    seen_pos = [0] * F.num_vars
    out = []
    for c in F.clauses:
        row = []
        for lit in c:
            if lit.positive:
                row.append(OCC_POS1 if seen_pos[lit.var] == 0 else OCC_POS2)
                seen_pos[lit.var] += 1
            else:
                row.append(OCC_NEG)
        out.append(row)
    return out


def build_tournament(F: CnfFormula, variant: str, k: int | None = None) -> tuple[LinearTournament, GadgetLayout]:
    """Shared builder for the three reduction variants."""
    arity = 3 if variant == "perfect3sat3" else 2
    F.check_sat3(arity)
    n, m = F.num_vars, F.m
    N = VAR_SIZE * n + 5 * m
    if variant == "max2sat3":
        n_dummy = 0
    elif variant == "perfect2sat3":
        if k is None or not 0 <= k <= m:
            raise ValueError(f"k must lie in [0, {m}]")
        n_dummy = N - (33 * n + 3 * m + 3 * k)
        if n_dummy < 0:
            raise ValueError(f"k={k} too large: 33n+3m+3k exceeds {N}")
    elif variant == "perfect3sat3":
        n_dummy = 2 * n - m
        if n_dummy < 0:
            raise ValueError(f"need 2n >= m, got n={n}, m={m}")
    else:
        raise ValueError(f"unknown variant {variant!r}")

    pos = 0
    r1 = tuple(range(pos, pos + n_dummy))
    pos += n_dummy
    var_base = tuple(pos + VAR_SIZE * i for i in range(n))
    pos += VAR_SIZE * n
    r2: tuple[int, ...] = ()
    if variant == "perfect3sat3":
        r2 = tuple(range(pos, pos + n_dummy))
        pos += n_dummy
    left_size = pos
    width = 2 if variant == "perfect3sat3" else 5
    clause_base = tuple(pos + width * j for j in range(m))
    pos += width * m
    if variant == "perfect2sat3":
        r2 = tuple(range(pos, pos + n_dummy))
        pos += n_dummy

    slots = _occurrence_slots(F)
    occ = tuple(tuple(var_base[lit.var] + off for lit, off in zip(c, row)) for c, row in zip(F.clauses, slots))
    layout = GadgetLayout(variant, F, pos, var_base, clause_base, occ, r1, r2, left_size, k)

    arcs: list[Arc] = []
    for base in var_base:
        arcs += _variable_arcs(base)
    for j in range(m):
        if width == 5:
            arcs.append(Arc(layout.d2(j), layout.d1(j)))
        for x in range(arity):
            arcs.append(Arc(layout.c(j, x), occ[j][x]))
    arcs += [Arc(b, a) for a, b in zip(r1, r2)]
    T = LinearTournament(pos, arcs)
    _check_structure(T, layout)
    return T, layout


def _check_structure(T: LinearTournament, layout: GadgetLayout) -> None:
    F = layout.formula
    assert len(set(T.arcs)) == T.m
    heads = [h for _, h in T.arcs]
    # every occurrence vertex is the head of exactly one arc
    for row in layout.occ:
        for v in row:
            assert heads.count(v) == 1, v
    if layout.variant == "perfect3sat3":
        K = set(range(layout.left_size, T.n))
        for t, h in T.arcs:
            if t in K or h in K:
                assert t in K and h < layout.left_size, (t, h)
        for j in range(F.m):
            assert not T.partners(layout.theta(j))
        assert T.n == VAR_SIZE * F.num_vars + 2 * (2 * F.num_vars - F.m) + 2 * F.m
    else:
        assert T.is_matching(), "degrees outside D_M"
        assert T.n == VAR_SIZE * F.num_vars + 5 * F.m + len(layout.r1) + len(layout.r2)


def build_2sat3_gadget(F: CnfFormula) -> tuple[LinearTournament, GadgetLayout]:
    return build_tournament(F, "max2sat3")


def canonical_variable_triangles(layout: GadgetLayout, i: int, value: bool) -> list[Triangle]:
    """P_i (value true, leaves x^2 and x'^2) or its mirror (leaves xb^2 and xb'^2)."""
    if not 0 <= i < len(layout.var_base):
        raise IndexError(f"variable {i} out of range")
    base = layout.var_base[i]
    return [Triangle(base + a, base + b, base + c, Kind.ONE_BACKWARD) for a, b, c in (P_TRUE if value else P_FALSE)]


def packing_from_assignment(T: LinearTournament, layout: GadgetLayout, assignment, witnesses: dict[int, int]) -> list[Triangle]:
    """11n + m + |witnesses| triangles: canonical variable triangles, one Q per
    clause, and an outer triangle for each clause in ``witnesses`` (clause ->
    index of a true literal)."""
    F = layout.formula
    if layout.clause_width != 5:
        raise ValueError("packing_from_assignment needs 5-vertex clause blocks")
    out: list[Triangle] = []
    for i in range(F.num_vars):
        out += canonical_variable_triangles(layout, i, bool(assignment[i]))
    for j in range(F.m):
        if j in witnesses:
            x = witnesses[j]
            if not F.clauses[j][x].value(assignment):
                raise ValueError(f"literal {x + 1} of clause {j + 1} is false under the assignment")
            out.append(layout.q(j, 1 - x))
            out.append(layout.outer(j, x))
        else:
            out.append(layout.q(j, 0))
    out.sort()
    assert is_valid_packing(T, out), "constructed packing is not valid"
    return out


# ---------------------------------------------------------------- restructuring


def _key(t) -> tuple[int, int, int]:
    return tuple(sorted(tuple(t)[:3]))


class _Work:
    """Mutable packing with a vertex -> triangle index."""

    def __init__(self, T: LinearTournament, P):
        self.T = T
        self.tris: set[tuple[int, int, int]] = set()
        self.owner: dict[int, tuple[int, int, int]] = {}
        for t in P:
            self.add(t)

    def add(self, t) -> None:
        t = _key(t)
        assert triangle_of(self.T, t) is not None, f"{t} is not a triangle"
        for v in t:
            assert v not in self.owner, f"vertex {v} used twice"
            self.owner[v] = t
        self.tris.add(t)

    def remove(self, t) -> None:
        t = _key(t)
        self.tris.remove(t)
        for v in t:
            del self.owner[v]

    def replace(self, old, new) -> None:
        self.remove(old)
        self.add(new)

    def used(self, v: int) -> bool:
        return v in self.owner

    def result(self) -> list[Triangle]:
        return sorted(triangle_of(self.T, t) for t in self.tris)


def clause_block_ok(layout: GadgetLayout, P, j: int) -> bool:
    """The clause property: one clause-inner triangle Q^x_j, and the rest of K_j
    either untouched or taken by the outer triangle through theta_j and the
    other c vertex."""
    S = {_key(t) for t in P}
    used = covered(S)
    K = set(layout.clause_block(j))
    inner = [t for t in S if set(t) <= K]
    if len(inner) != 1:
        return False
    for x in (0, 1):
        if inner[0] == _key(layout.q(j, x)):
            rest = (K & used) - set(inner[0])
            return not rest or _key(layout.outer(j, 1 - x)) in S
    return False


def restructure_clause_blocks(T: LinearTournament, layout: GadgetLayout, P) -> list[Triangle]:
    """Rewrite ``P`` so every clause block satisfies :func:`clause_block_ok`,
    never losing a triangle. Blocks are fixed from the last clause down."""
    if layout.variant != "max2sat3":
        raise ValueError("restructuring is defined on the Max 2-SAT(3) tournament")
    if not is_valid_packing(T, P):
        raise ValueError("input is not a valid packing")
    W = _Work(T, P)
    m = layout.formula.m
    size0 = len(W.tris)
    for _ in range(2 * m + 1):
        bad = [j for j in range(m) if not clause_block_ok(layout, W.tris, j)]
        if not bad:
            break
        j = bad[-1]
        _fix_clause(W, layout, j)
        assert clause_block_ok(layout, W.tris, j), f"clause block {j} still violates the property"
        assert len(W.tris) >= size0
    else:
        raise RuntimeError("clause restructuring did not converge")
    return W.result()


def _fix_clause(W: _Work, L: GadgetLayout, j: int) -> None:
    theta, d1, d2 = L.theta(j), L.d1(j), L.d2(j)
    c = (L.c(j, 0), L.c(j, 1))
    K = set(L.clause_block(j))
    inner = [t for t in W.tris if set(t) <= K]

    if inner:
        t = inner[0]
        x = 0 if c[0] in t else 1
        v0 = c[1 - x]
        assert W.used(v0), "clause block already satisfies the property"
        t2 = W.owner[v0]
        assert t2[2] == v0, f"{v0} should close {t2}"
        assert not W.used(theta) or theta in t2
        W.replace(t2, (t2[0], theta, v0))
        return

    assert not W.used(d2), "d2 can only serve a clause-inner triangle here"
    Z = [x for x in (0, 1) if W.used(c[x])]
    if not Z:
        assert not W.used(d1) and not W.used(theta)
        W.add((d1, c[0], d2))
        return
    if len(Z) == 1:
        x = Z[0]
        t = W.owner[c[x]]
        assert t[2] == c[x]
        if t[1] != theta:
            assert not W.used(theta)
            W.replace(t, (t[0], theta, c[x]))
        assert not W.used(d1)
        W.add((d1, c[1 - x], d2))
        return
    t1, t2 = W.owner[c[0]], W.owner[c[1]]
    if t1 == t2:
        # (u, c1, c2): c1 moves out for theta
        assert not W.used(theta) and not W.used(d1)
        W.replace(t1, (t1[0], theta, c[1]))
        W.add((d1, c[0], d2))
        return
    ts = [t1, t2]
    if theta not in t1 and theta not in t2:
        assert not W.used(theta)
        W.replace(t1, (t1[0], theta, c[0]))
        ts[0] = W.owner[c[0]]
    x = 0 if theta in ts[0] else 1
    other = ts[1 - x]
    if d1 not in other:
        assert not W.used(d1)
        W.replace(other, (other[0], d1, c[1 - x]))
        other = W.owner[c[1 - x]]
    W.remove(other)
    W.add((d1, c[1 - x], d2))


def variable_block_ok(layout: GadgetLayout, P, i: int) -> bool:
    block = set(layout.block(i))
    inner = sorted(_key(t) for t in P if set(_key(t)) <= block)
    return inner in (
        [_key(t) for t in canonical_variable_triangles(layout, i, True)],
        [_key(t) for t in canonical_variable_triangles(layout, i, False)],
    )


def block_profile(layout: GadgetLayout, P, i: int) -> tuple[int, int, int, int]:
    """g_i = (|Lft|, |Lft-Rgt|, |Rgt|, |outer|) for variable block i."""
    groups = _variable_groups(layout, {_key(t) for t in P}, i)
    return tuple(len(groups[k]) for k in ("lft", "lr", "rgt", "outer"))


def _is_outer(layout: GadgetLayout, t) -> bool:
    u, v, w = _key(t)
    for j in range(layout.formula.m):
        if v == layout.theta(j) and w in (layout.c(j, 0), layout.c(j, 1)):
            return True
    return False


def _variable_groups(layout: GadgetLayout, S, i: int) -> dict[str, list]:
    base = layout.var_base[i]
    block = set(layout.block(i))
    lft = {base + o for o in LFT}
    rgt = {base + o for o in RGT}
    g: dict[str, list] = {"lft": [], "lr": [], "rgt": [], "outer": []}
    for t in S:
        vs = set(t)
        if not vs & block:
            continue
        if vs <= block:
            if vs <= lft:
                g["lft"].append(t)
            elif vs <= rgt:
                g["rgt"].append(t)
            elif vs & lft and vs & rgt:
                g["lr"].append(t)
            else:
                raise ValueError(f"inner triangle {t} misses both sides of block {i}")
        elif _is_outer(layout, t):
            g["outer"].append(t)
        else:
            raise ValueError(f"triangle {t} crosses block {i} without being outer; restructure clause blocks first")
    return g


def restructure_variable_blocks(T: LinearTournament, layout: GadgetLayout, P) -> list[Triangle]:
    """Make every variable block hold exactly P_i or its mirror, never losing size.

    Needs the clause property on every clause block. Outer triangles on the
    block are kept when the chosen canonical set leaves their vertex free.
    """
    if layout.variant != "max2sat3":
        raise ValueError("restructuring is defined on the Max 2-SAT(3) tournament")
    m = layout.formula.m
    if not all(clause_block_ok(layout, P, j) for j in range(m)):
        raise ValueError("clause blocks must be restructured first")
    W = _Work(T, P)
    for i in range(layout.formula.num_vars):
        if variable_block_ok(layout, W.tris, i):
            continue
        g = _variable_groups(layout, W.tris, i)
        x, y = len(g["lft"]), len(g["lr"])
        base = layout.var_base[i]
        xx = {base + o for o in range(0, 8)}  # X and X'

        def arcs_in(t):
            return {name for name, (a, b) in E_ARCS.items() if base + a in t and base + b in t}

        value = True
        if y == 2 and x == 4:
            es = set().union(*(arcs_in(t) for t in g["lr"]))
            if es == {"e1", "e2"}:
                value = False
        elif (y == 3 and x == 4) or (y == 4 and x == 3):
            value = any(set(t) & xx for t in g["outer"])
        new_inner = [_key(t) for t in canonical_variable_triangles(layout, i, value)]
        taken = covered(new_inner)
        new_outer = [t for t in g["outer"] if not set(t) & taken]
        old = g["lft"] + g["lr"] + g["rgt"] + g["outer"]
        if len(new_inner) + len(new_outer) < len(old):
            raise RuntimeError(f"variable block {i}: replacement loses triangles (profile {block_profile(layout, W.tris, i)})")
        for t in old:
            W.remove(t)
        for t in new_inner + new_outer:
            W.add(t)
    out = W.result()
    assert all(variable_block_ok(layout, out, i) for i in range(layout.formula.num_vars))
    assert all(clause_block_ok(layout, out, j) for j in range(m))
    return out


def extract_assignment(T: LinearTournament, layout: GadgetLayout, P) -> tuple[tuple[bool, ...], int]:
    """Assignment read off the restructured packing (true iff the block holds P_i),
    and the number of clauses it satisfies (at least |P| - 11n - m)."""
    S = restructure_clause_blocks(T, layout, P)
    S = restructure_variable_blocks(T, layout, S)
    F = layout.formula
    assignment = tuple(
        [_key(t) for t in canonical_variable_triangles(layout, i, True)]
        == sorted(_key(t) for t in S if set(t.vertices) <= set(layout.block(i)))
        for i in range(F.num_vars)
    )
    return assignment, F.count_satisfied(assignment)
