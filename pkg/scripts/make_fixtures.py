"""Regenerate tests/fixtures. Deterministic: rerunning reproduces the same bytes.

    python3 scripts/make_fixtures.py [--out tests/fixtures]
"""

from __future__ import annotations

import argparse
import itertools
import random
from pathlib import Path

from tripack import io
from tripack.core import AdjacencyTournament, detect_sparse, enumerate_triangles, from_adjacency, is_sparse_representation
from tripack.gadgets import (
    build_2sat3_gadget,
    gen_random_tournament,
    gen_sat3,
    gen_sparse,
    packing_from_assignment,
)
from tripack.gadgets.reduction import LFT, RGT

PERTURBED = 60


def exhaustive_sparse(A: AdjacencyTournament) -> bool:
    for order in itertools.permutations(range(A.n)):
        if is_sparse_representation(from_adjacency(A, order)):
            return True
    return False


def find_g6() -> tuple[int, AdjacencyTournament]:
    for seed in itertools.count():
        A = gen_random_tournament(6, seed)
        if detect_sparse(A) is None and not exhaustive_sparse(A):
            return seed, A
    raise AssertionError("unreachable")


def greedy(T, rng, start=()):
    tris = list(enumerate_triangles(T))
    rng.shuffle(tris)
    P = list(start)
    used = {v for t in P for v in t[:3]}
    for t in tris:
        if not used & set(t.vertices):
            P.append(t)
            used |= set(t.vertices)
    return P


def perturbed(seed: int):
    rng = random.Random(seed)
    F = gen_sat3(rng.choice([2, 3]), 2, seed)
    T, lay = build_2sat3_gadget(F)
    style = seed % 3
    if style == 0:
        P = greedy(T, rng)
    else:
        a = tuple(rng.random() < 0.5 for _ in range(F.num_vars))
        P = packing_from_assignment(T, lay, a, F.witnesses(a))
    # mutations: drop a random handful, then refill greedily (style 2 leaves the holes)
    rng.shuffle(P)
    P = P[rng.randint(1, max(1, len(P) // 3)):]
    if style != 2:
        P = greedy(T, rng, P)
    return F, sorted(P)


def mirror_profile():
    """Block 0 holds g = (3, 4, 4, 1) with LR on e1..e4 and an outer triangle on
    the negative occurrence of x1; the restructured block must be the mirror set."""
    F = io.parse_cnf("p cnf 2 3\n-1 2 0\n1 2 0\n1 -2 0\n")
    T, lay = build_2sat3_gadget(F)
    b = lay.var_base[0]
    rel = [(2, 16, 20), (6, 17, 29), (10, 11, 24), (14, 26, 33),
           (0, 1, 3), (4, 5, 7), (12, 13, 15),
           (18, 19, 21), (22, 23, 25), (27, 28, 30), (31, 32, 34)]
    assert all(set(t) <= set(LFT) | set(RGT) | {16, 17, 26} for t in rel)
    P = [tuple(b + o for o in t) for t in rel]
    P.append(tuple(lay.outer(0, 0))[:3])
    assert lay.outer(0, 0)[0] == b + 9
    return F, P


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    out = Path(ap.parse_args(argv).out)
    (out / "perturbed").mkdir(parents=True, exist_ok=True)
    manifest = []

    (out / "cyc3.tour").write_text(io.serialize_tour(AdjacencyTournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])))
    seed, A = find_g6()
    (out / "g6_not_sparse.tour").write_text(io.serialize_tour(A))
    manifest.append(f"g6_not_sparse.tour  gen_random_tournament(6, {seed}); no ordering has a matching FAS (all 720 checked)")

    L = gen_sparse(14, 4, 3, 7)
    (out / "sparse14.ltour").write_text(io.serialize_ltour(L))
    manifest.append("sparse14.ltour  gen_sparse(14, 4, 3, 7)")

    for n, seeds in ((1, [0]), (2, range(3)), (3, range(8))):
        for s in seeds:
            F = gen_sat3(n, 2, s, tautologies=(n == 1))
            name = f"sat2_n{n}_s{s}.cnf"
            (out / name).write_text(io.serialize_cnf(F))
            manifest.append(f"{name}  gen_sat3({n}, 2, {s})  max-sat {F.max_sat()[0]}/{F.m}")
    for s in range(4):
        F = gen_sat3(3, 3, s, satisfiable=True)
        name = f"sat3_n3_s{s}.cnf"
        (out / name).write_text(io.serialize_cnf(F))
        manifest.append(f"{name}  gen_sat3(3, 3, {s}, satisfiable=True)")

    F, P = mirror_profile()
    (out / "mirror_profile.cnf").write_text(io.serialize_cnf(F))
    (out / "mirror_profile.packing").write_text(io.serialize_packing(P))
    manifest.append("mirror_profile.cnf/.packing  variable block 0 with profile (3,4,4,1) and an outer triangle on slot 9")

    for s in range(PERTURBED):
        F, P = perturbed(s)
        (out / "perturbed" / f"p{s:02d}.cnf").write_text(io.serialize_cnf(F))
        (out / "perturbed" / f"p{s:02d}.packing").write_text(io.serialize_packing(P))
    manifest.append(f"perturbed/pNN.cnf/.packing  {PERTURBED} packings on max2sat3 gadgets: greedy maximal or canonical, then random drops and refills")

    (out / "MANIFEST.txt").write_text("\n".join(manifest) + "\n")
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
