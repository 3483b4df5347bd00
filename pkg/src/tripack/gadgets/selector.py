"""Instance selector P(m, g): maximum packings leave exactly one X^i uncovered."""

from __future__ import annotations

from dataclasses import dataclass

from tripack.core import Arc, Kind, LinearTournament, Triangle, covered, is_valid_packing


@dataclass(frozen=True)
class SelectorLayout:
    m: int
    g: int
    x: tuple[tuple[int, ...], ...]  # x[i][j] = position of x^i_j (both 0-based)
    v: tuple[tuple[int, ...], ...]  # v[l][k] = position of v^l_{k+1}
    alpha: tuple[int, ...]
    z: tuple[tuple[tuple[Arc, ...], tuple[Arc, ...]], ...]  # z[l][b] = Z^{l,b}
    n: int

    @property
    def levels(self) -> int:
        return len(self.v)

    def slots(self) -> list[tuple[str, int]]:
        out = [(f"X{i}.{j + 1}", p) for i, row in enumerate(self.x) for j, p in enumerate(row)]
        out += [(f"V{l}.{k + 1}", p) for l, row in enumerate(self.v) for k, p in enumerate(row)]
        out += [(f"alpha{l}", p) for l, p in enumerate(self.alpha)]
        return sorted(out, key=lambda s: s[1])


def _level_arcs(vs: tuple[int, ...]) -> list[Arc]:
    """Circuit on a level, in circuit order: chain v_{k+1} -> v_k, then the two closing arcs."""
    s = len(vs)
    arcs = [Arc(vs[k + 1], vs[k]) for k in range(s - 2)]
    arcs.append(Arc(vs[s - 1], vs[s - 2]))
    arcs.append(Arc(vs[s - 1], vs[0]))
    return arcs


def build_selector(m: int, g: int) -> tuple[LinearTournament, SelectorLayout]:
    if m < 1:
        raise ValueError("m must be at least 1")
    if g < 2 or g & (g - 1):
        raise ValueError(f"g must be a power of two >= 2, got {g}")
    levels = g.bit_length() - 1

    # level 0 order, as labels
    order: list[tuple] = []
    for j in range(m):
        for i in range(g):
            order.append(("v", 0, j * g + i))
            order.append(("x", i, j))
    order += [("v", 0, m * g), ("a", 0), ("v", 0, m * g + 1)]
    for l in range(levels - 1):
        size = m * g // 2 ** (l + 1) + 2
        for k in range(size - 2):
            order.insert(order.index(("v", l, 2 * k)) + 1, ("v", l + 1, k))
        prev = m * g // 2**l + 2
        order.insert(order.index(("v", l, prev - 2)) + 1, ("v", l + 1, size - 2))
        order.insert(order.index(("v", l, prev - 1)) + 1, ("v", l + 1, size - 1))
        order.insert(order.index(("a", l)) + 1, ("a", l + 1))
    pos = {lab: p for p, lab in enumerate(order)}

    x = tuple(tuple(pos[("x", i, j)] for j in range(m)) for i in range(g))
    v = tuple(tuple(pos[("v", l, k)] for k in range(m * g // 2**l + 2)) for l in range(levels))
    alpha = tuple(pos[("a", l)] for l in range(levels))
    arcs: list[Arc] = []
    z = []
    for l in range(levels):
        circ = _level_arcs(v[l])
        arcs += circ
        # odd-numbered arcs of the circuit (1-based) have the columns with bit l = 0 in their spans
        z.append((tuple(circ[0::2]), tuple(circ[1::2])))
    T = LinearTournament(len(order), arcs)
    layout = SelectorLayout(m, g, x, v, alpha, tuple(z), len(order))
    _check_selector(T, layout)
    return T, layout


def _check_selector(T: LinearTournament, lay: SelectorLayout) -> None:
    assert T.n == lay.m * lay.g + sum(len(vs) + 1 for vs in lay.v)
    xs = {p: (i, j) for i, row in enumerate(lay.x) for j, p in enumerate(row)}
    for p in xs:
        assert not T.partners(p), "X vertices must have degree (0,0)"
    for l, vs in enumerate(lay.v):
        z0, z1 = lay.z[l]
        assert len(z0) == len(z1) == len(vs) // 2
        for part in (z0, z1):
            ends = [e for a in part for e in a]
            assert sorted(ends) == sorted(vs), "each parity class must be a perfect matching of the level"
        closing = {Arc(vs[-1], vs[-2]), Arc(vs[-1], vs[0])}
        for b, part in enumerate((z0, z1)):
            cols = set()
            for a in part:
                if a in closing:
                    continue
                inside = [xs[p] for p in range(a.head + 1, a.tail) if p in xs]
                # spans of level-l chain arcs hold 2^l consecutive columns of one row
                assert len(inside) == 2**l, (l, a, inside)
                assert len({j for _, j in inside}) == 1
                assert all(i >> l & 1 == b for i, _ in inside), (l, b, a, inside)
                cols.update(inside)
            assert cols == {(i, j) for i in range(lay.g) for j in range(lay.m) if i >> l & 1 == b}


def selector_select(T: LinearTournament, layout: SelectorLayout, i: int) -> list[Triangle]:
    """Packing that covers everything except X^i."""
    if not 0 <= i < layout.g:
        raise IndexError(f"index {i} out of range [0, {layout.g})")
    xs = {p for row in layout.x for p in row}
    remaining = set(xs)
    out = []
    for l, vs in enumerate(layout.v):
        bit = i >> l & 1
        closing = {Arc(vs[-1], vs[-2]), Arc(vs[-1], vs[0])}
        for a in layout.z[l][1 - bit]:
            if a in closing:
                continue
            inside = [p for p in range(a.head + 1, a.tail) if p in remaining]
            assert len(inside) == 1, (l, a, inside)
            remaining.discard(inside[0])
            out.append(Triangle(a.head, inside[0], a.tail, Kind.ONE_BACKWARD))
        if bit:
            out.append(Triangle(vs[-2], layout.alpha[l], vs[-1], Kind.ONE_BACKWARD))
        else:
            out.append(Triangle(vs[0], layout.alpha[l], vs[-1], Kind.ONE_BACKWARD))
    out.sort()
    assert is_valid_packing(T, out)
    assert set(range(T.n)) - covered(out) == set(layout.x[i])
    return out


def selector_leftover_check(T: LinearTournament, layout: SelectorLayout, packing) -> int | None:
    """Index i with uncovered vertices inside X^i, or None when no such i exists.

    Only coverage is inspected. Raises ValueError unless exactly m vertices are uncovered.
    """
    cov = covered(packing)
    if len(cov) != T.n - layout.m:
        raise ValueError(f"packing covers {len(cov)} vertices, expected {T.n - layout.m}")
    left = set(range(T.n)) - cov
    for i, row in enumerate(layout.x):
        if left <= set(row):
            return i
    return None
