"""Weak composition of t perfect-packing instances into one tournament.

T = G D with G = L M_G Lt Mt_G P(nL, g) and D = K M_D Kt Mt_D P'(mK, g), where
instance (p, q) lives on L_p K_q.
"""

from __future__ import annotations

from dataclasses import dataclass

from tripack.core import Arc, Kind, LinearTournament, Triangle, covered, is_valid_packing, triangle_of
from tripack.gadgets.reduction import GadgetLayout
from tripack.gadgets.selector import SelectorLayout, build_selector, selector_select


@dataclass(frozen=True)
class CompositionLayout:
    g: int
    nL: int  # size of each left part
    mK: int  # size of each right part
    L: tuple[int, ...]  # start of L_p
    M_G: int
    Lt: tuple[int, ...]
    Mt_G: int
    P: int  # offset of the left selector
    sel_G: SelectorLayout
    K: tuple[int, ...]
    M_D: int
    Kt: tuple[int, ...]
    Mt_D: int
    Pp: int
    sel_D: SelectorLayout
    n: int
    instance_of: tuple[tuple[int, ...], ...]  # instance_of[p][q] = index into the input list

    def x_G(self, p: int) -> list[int]:
        return [self.P + v for v in self.sel_G.x[p]]

    def x_D(self, q: int) -> list[int]:
        return [self.Pp + v for v in self.sel_D.x[q]]

    def slots(self) -> list[tuple[str, int]]:
        out = []
        for name, starts, width in (("L", self.L, self.nL), ("Lt", self.Lt, self.nL), ("K", self.K, self.mK), ("Kt", self.Kt, self.mK)):
            for p, s in enumerate(starts):
                out += [(f"{name}{p}.{r + 1}", s + r) for r in range(width)]
        for name, s, width in (("M_G", self.M_G, (self.g - 1) * self.nL), ("Mt_G", self.Mt_G, self.nL),
                               ("M_D", self.M_D, (self.g - 1) * self.mK), ("Mt_D", self.Mt_D, self.mK)):
            out += [(f"{name}.{r + 1}", s + r) for r in range(width)]
        out += [(f"P.{name}", self.P + p) for name, p in self.sel_G.slots()]
        out += [(f"Pp.{name}", self.Pp + p) for name, p in self.sel_D.slots()]
        return sorted(out, key=lambda s: s[1])


def _grid_size(t: int) -> int:
    g = 2
    while g * g < t:
        g *= 2
    return g


def compose(instances: list[tuple[LinearTournament, GadgetLayout]]) -> tuple[LinearTournament, CompositionLayout]:
    """Compose 3-SAT(3) perfect-packing instances sharing their left/right sizes.

    The list is padded cyclically to g*g entries, g the least power of two >= 2
    with g*g >= t; instance l goes to cell (l // g, l % g).
    """
    if not instances:
        raise ValueError("need at least one instance")
    shapes = {(T.n, lay.left_size) for T, lay in instances}
    if len(shapes) != 1:
        raise ValueError(f"instances differ in shape: {sorted(shapes)}")
    for T, lay in instances:
        if lay.variant != "perfect3sat3":
            raise ValueError("compose expects instances from build_perfect_3sat3")
    n_tot, nL = shapes.pop()
    mK = n_tot - nL
    t = len(instances)
    g = _grid_size(t)
    cells = [l % t for l in range(g * g)]
    instance_of = tuple(tuple(cells[p * g + q] for q in range(g)) for p in range(g))

    PG, selG = build_selector(nL, g)
    PD, selD = build_selector(mK, g)
    pos = 0
    L = tuple(pos + p * nL for p in range(g))
    pos += g * nL
    M_G = pos
    pos += (g - 1) * nL
    Lt = tuple(pos + p * nL for p in range(g))
    pos += g * nL
    Mt_G = pos
    pos += nL
    P = pos
    pos += PG.n
    K = tuple(pos + q * mK for q in range(g))
    pos += g * mK
    M_D = pos
    pos += (g - 1) * mK
    Kt = tuple(pos + q * mK for q in range(g))
    pos += g * mK
    Mt_D = pos
    pos += mK
    Pp = pos
    pos += PD.n
    lay = CompositionLayout(g, nL, mK, L, M_G, Lt, Mt_G, P, selG, K, M_D, Kt, Mt_D, Pp, selD, pos, instance_of)

    arcs: list[Arc] = []
    arcs += [Arc(t + P, h + P) for t, h in PG.arcs]
    arcs += [Arc(t + Pp, h + Pp) for t, h in PD.arcs]
    for p in range(g):
        Lp = range(L[p], L[p] + nL)
        Ltp = range(Lt[p], Lt[p] + nL)
        arcs += [Arc(b, a) for a in Lp for b in Ltp]
        arcs += [Arc(x, b) for b in Ltp for x in lay.x_G(p)]
    for q in range(g):
        Kq = range(K[q], K[q] + mK)
        Ktq = range(Kt[q], Kt[q] + mK)
        arcs += [Arc(b, a) for a in Kq for b in Ktq]
        arcs += [Arc(x, b) for b in Ktq for x in lay.x_D(q)]
    # left parts are identical across instances; add their internal arcs once per L_p
    T0 = instances[0][0]
    for p in range(g):
        arcs += [Arc(t + L[p], h + L[p]) for t, h in T0.arcs if t < nL]
    for q in range(g):
        arcs += [Arc(t - nL + K[q], h - nL + K[q]) for t, h in T0.arcs if h >= nL]
    for p in range(g):
        for q in range(g):
            Ti = instances[instance_of[p][q]][0]
            arcs += [Arc(t - nL + K[q], h + L[p]) for t, h in Ti.arcs if t >= nL > h]
    for Ti, _ in instances:
        if {a for a in Ti.arcs if a.tail < nL} != {a for a in T0.arcs if a.tail < nL}:
            raise ValueError("instances must share the left part")
        if {a for a in Ti.arcs if a.head >= nL} != {a for a in T0.arcs if a.head >= nL}:
            raise ValueError("instances must share the right part")
    T = LinearTournament(pos, arcs)

    expected = PD.n + mK + (g - 1) * mK + 2 * mK * g + PG.n + nL + (g - 1) * nL + 2 * nL * g
    assert T.n == expected, (T.n, expected)
    for start, width in ((M_G, (g - 1) * nL), (Mt_G, nL), (M_D, (g - 1) * mK), (Mt_D, mK)):
        assert all(not T.partners(v) for v in range(start, start + width))
    return T, lay


def compose_forward_packing(T: LinearTournament, lay: CompositionLayout, p0: int, q0: int, inner) -> tuple[list[Triangle], dict[str, int]]:
    """Perfect packing of the composition from a perfect packing of instance (p0, q0).

    Returns the packing and the sizes of the bridge-triangle families.
    """
    nL, mK, g = lay.nL, lay.mK, lay.g
    inner = list(inner)
    if len(covered(inner)) != nL + mK or len(inner) * 3 != nL + mK:
        raise ValueError("inner packing is not perfect")

    def embed(v: int) -> int:
        return lay.L[p0] + v if v < nL else lay.K[q0] + v - nL

    out: list[Triangle] = []
    counts = {}
    out += [triangle_of(T, [embed(v) for v in tuple(t)[:3]]) for t in inner]
    if None in out:
        raise ValueError("inner packing does not embed into the composition")
    PG, _ = build_selector(nL, g)
    PD, _ = build_selector(mK, g)
    out += [Triangle(u + lay.P, v + lay.P, w + lay.P, Kind.ONE_BACKWARD) for u, v, w, _ in selector_select(PG, lay.sel_G, p0)]
    out += [Triangle(u + lay.Pp, v + lay.Pp, w + lay.Pp, Kind.ONE_BACKWARD) for u, v, w, _ in selector_select(PD, lay.sel_D, q0)]

    bridge = {
        "Mt_D": [(lay.Kt[q0] + r, lay.Mt_D + r, x) for r, x in enumerate(lay.x_D(q0))],
        "M_D": [(lay.K[q] + r, lay.M_D + idx * mK + r, lay.Kt[q] + r)
                for idx, q in enumerate(q for q in range(g) if q != q0) for r in range(mK)],
        "Mt_G": [(lay.Lt[p0] + r, lay.Mt_G + r, x) for r, x in enumerate(lay.x_G(p0))],
        "M_G": [(lay.L[p] + r, lay.M_G + idx * nL + r, lay.Lt[p] + r)
                for idx, p in enumerate(p for p in range(g) if p != p0) for r in range(nL)],
    }
    for name, tris in bridge.items():
        counts[name] = len(tris)
        out += [Triangle(*t, Kind.ONE_BACKWARD) for t in tris]
    assert counts == {"Mt_D": mK, "M_D": (g - 1) * mK, "Mt_G": nL, "M_G": (g - 1) * nL}
    out.sort()
    assert is_valid_packing(T, out), "composed packing is not valid"
    assert len(covered(out)) == T.n, "composed packing is not perfect"
    return out, counts
