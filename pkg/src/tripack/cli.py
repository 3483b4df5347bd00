"""Command-line front end.

Exit codes: 0 success or YES, 1 a valid NO answer (not sparse, invalid
packing, budget exceeded, refusal), 2 usage or format error. Documents go to
--out (default stdout); reports and RESULT lines go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from tripack import io
from tripack.approx import NotSparse, phi, ratio_bound
from tripack.core import AcyclicError, covered, is_valid_packing, maxspan, minspan, normalize_packing
from tripack.exact import BudgetExceeded, SolverBudget, WindowTooWide, max_packing_dp_bounded_maxspan, max_packing_exact
from tripack.gadgets import (
    build_2sat3_gadget,
    build_perfect_2sat3,
    build_perfect_3sat3,
    build_selector,
    compose,
    gen_random_tournament,
    gen_sparse,
    selector_select,
)
from tripack.gadgets.generators import kernel_instance, ratio_instance
from tripack.kernel import Yes, kernel_by_fas, sparse_kernel

DEFAULT_NODES = 2_000_000


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _say(*parts) -> None:
    print(*parts, file=sys.stderr)


def _result(**kv) -> None:
    _say("RESULT " + " ".join(f"{k}={v}" for k, v in kv.items()))


def _stats(L) -> dict:
    try:
        lo, hi = minspan(L), maxspan(L)
    except AcyclicError:
        lo = hi = "na"
    return {"n": L.n, "m": L.m, "minspan": lo, "maxspan": hi, "sparse": int(L.is_matching())}


def _budget(args) -> SolverBudget:
    nodes = args.budget or int(os.environ.get("TRIPACK_BUDGET_NODES", DEFAULT_NODES))
    return SolverBudget(node_limit=nodes)


def cmd_gen(args) -> int:
    if args.kind == "tour":
        _write(args.out, io.serialize_tour(gen_random_tournament(args.n, args.seed)))
        _result(cmd="gen", kind="tour", n=args.n, seed=args.seed)
        return 0
    L = gen_sparse(args.n, args.arcs, args.minspan, args.seed)
    _write(args.out, io.serialize_ltour(L))
    _result(cmd="gen", kind="sparse", seed=args.seed, **_stats(L))
    return 0


def cmd_detect(args) -> int:
    from tripack.core import detect_sparse

    A = io.parse_tour(_read(args.inp))
    res = detect_sparse(A)
    if res is None:
        _say("not sparse")
        _result(cmd="detect", n=A.n, sparse=0)
        return 1
    L, order = res
    _write(args.out, io.serialize_ltour(L))
    _say("order: " + " ".join(str(v + 1) for v in order))
    _result(cmd="detect", n=A.n, sparse=1, m=L.m)
    return 0


def cmd_solve(args) -> int:
    L = io.parse_ltour(_read(args.inp))
    t0 = time.perf_counter()
    extra = {}
    if args.algo == "exact":
        try:
            P = max_packing_exact(L, _budget(args))
        except BudgetExceeded as e:
            _say(f"budget exceeded after {e.nodes} nodes; best found {len(e.best)}")
            _write(args.out, io.serialize_packing(e.best))
            _result(cmd="solve", algo="exact", status="budget", size=len(e.best), **_stats(L))
            return 1
    elif args.algo == "dp":
        try:
            P = max_packing_dp_bounded_maxspan(L, cap=args.cap)
        except WindowTooWide as e:
            _say(f"window too wide: {e}")
            _result(cmd="solve", algo="dp", status="refused", **_stats(L))
            return 1
    else:
        try:
            rep = phi(L, args.c)
        except NotSparse as e:
            _say(f"not sparse: {e}")
            _result(cmd="solve", algo="phi", status="not_sparse", **_stats(L))
            return 1
        P = rep.packing
        _say(f"phi m0={rep.m0} m1={rep.m1} m2={rep.m2} size={rep.size}")
        extra = {"m0": rep.m0, "m1": rep.m1, "m2": rep.m2}
    dt = time.perf_counter() - t0
    _write(args.out, io.serialize_packing(P))
    _say(f"solve/{args.algo}: {len(P)} triangles in {dt:.3f}s")
    _result(cmd="solve", algo=args.algo, status="ok", size=len(P), **extra, **_stats(L))
    return 0


def cmd_kernel(args) -> int:
    L = io.parse_ltour(_read(args.inp))
    if args.mode == "fas":
        out = kernel_by_fas(L, args.k)
    else:
        try:
            out = sparse_kernel(L, args.k)
        except NotSparse as e:
            _say(f"not sparse: {e}")
            return 1
    if isinstance(out, Yes):
        _say("YES")
        _write(args.out, io.serialize_packing(out.witness))
        _result(cmd="kernel", mode=args.mode, k=args.k, outcome="yes", size=len(out.witness))
        return 0
    _write(args.out, io.serialize_ltour(out.L))
    remap_path = args.remap or (args.out + ".remap" if args.out not in (None, "-") else None)
    if remap_path:
        _write(remap_path, io.serialize_remap(out.remap))
    _result(cmd="kernel", mode=args.mode, k=out.k, outcome="reduced", n_before=L.n, n_after=out.L.n, m=out.L.m)
    return 0


def cmd_gadget(args) -> int:
    mode = "3sat3" if args.variant == "perfect3sat3" else "2sat3"
    F = io.parse_cnf(_read(args.cnf), mode=mode)
    if args.variant == "max2sat3":
        T, lay = build_2sat3_gadget(F)
    elif args.variant == "perfect2sat3":
        if args.k is None:
            raise ValueError("--k is required for perfect2sat3")
        T, lay = build_perfect_2sat3(F, args.k)
    else:
        T, lay = build_perfect_3sat3(F)
    _write(args.out, io.serialize_ltour(T))
    if args.layout:
        _write(args.layout, io.serialize_layout(lay.slots()))
    _result(cmd="gadget", variant=args.variant, vars=F.num_vars, clauses=F.m, n=T.n, m=T.m)
    return 0


def cmd_selector(args) -> int:
    T, lay = build_selector(args.m, args.g)
    _write(args.out, io.serialize_ltour(T))
    if args.layout:
        _write(args.layout, io.serialize_layout(lay.slots()))
    extra = {}
    if args.select is not None:
        P = selector_select(T, lay, args.select)
        _write(args.packing or "-", io.serialize_packing(P))
        extra = {"select": args.select, "size": len(P)}
    _result(cmd="selector", m=args.m, g=args.g, n=T.n, **extra)
    return 0


def cmd_compose(args) -> int:
    formulas = [io.parse_cnf(_read(p), mode="3sat3") for p in args.cnf]
    built = [build_perfect_3sat3(F) for F in formulas]
    instances = [built[i % len(built)] for i in range(args.t)]
    T, lay = compose(instances)
    _write(args.out, io.serialize_ltour(T))
    if args.layout:
        _write(args.layout, io.serialize_layout(lay.slots()))
    _result(cmd="compose", t=args.t, g=lay.g, n=T.n, m=T.m)
    return 0


def cmd_verify(args) -> int:
    L = io.parse_ltour(_read(args.inp))
    P = io.parse_packing(_read(args.packing))
    ok = is_valid_packing(L, P)
    perfect = ok and len(covered(P)) == L.n
    _say(f"{'valid' if ok else 'INVALID'} packing of {len(P)} triangles{' (perfect)' if perfect else ''}")
    _result(cmd="verify", valid=int(ok), size=len(P), perfect=int(perfect))
    if ok:
        normalize_packing(L, P)
    return 0 if ok else 1


def _ratio_row(seed: int) -> list:
    L, c = ratio_instance(seed)
    opt = len(max_packing_exact(L))
    got = phi(L, c).size
    ratio = 1.0 if opt == 0 else opt / got
    return [seed, L.n, c, opt, got, f"{ratio:.6f}"]


def _kernel_row(seed: int) -> list:
    L = kernel_instance(seed)
    opt = len(max_packing_exact(L))
    k = min(opt + (seed % 2), L.n // 3)
    red = kernel_by_fas(L, k)
    after = len(max_packing_exact(red.L))
    return [seed, L.n, L.m, k, red.L.n, int((opt >= k) == (after >= k))]


def cmd_bench(args) -> int:
    fn, header = {
        "ratio": (_ratio_row, ["seed", "n", "c", "opt", "phi", "ratio"]),
        "kernel": (_kernel_row, ["seed", "n", "m", "k", "kernel_n", "agree"]),
    }[args.suite]
    seeds = range(args.seed0, args.seed0 + args.seeds)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(fn, seeds))
    else:
        rows = [fn(s) for s in seeds]
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.suite == "ratio":
        bad = sum(1 for r in rows if float(r[5]) > ratio_bound(r[2]) + 1e-9)
        _result(cmd="bench", suite="ratio", rows=len(rows), violations=bad)
        return 0 if bad == 0 else 1
    bad = sum(1 for r in rows if not r[5])
    _result(cmd="bench", suite="kernel", rows=len(rows), violations=bad)
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tripack",
        description="Triangle packing in tournaments.",
        epilog="exit status: 0 success/YES, 1 valid NO answer, 2 usage or format error. '-' means stdin/stdout.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("gen", help="random sparse linear tournament (or random tournament matrix)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--arcs", type=int, default=0)
    s.add_argument("--minspan", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kind", choices=["sparse", "tour"], default="sparse")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("detect", help="find an ordering whose backward arcs form a matching")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("solve", help="maximum (exact, dp) or approximate (phi) packing")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--algo", choices=["exact", "dp", "phi"], required=True)
    s.add_argument("--c", type=int)
    s.add_argument("--budget", type=int, help="node limit for the exact solver")
    s.add_argument("--cap", type=int, default=20, help="largest maxspan the dp accepts")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernel", help="kernelize an instance at parameter k")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--mode", choices=["fas", "sparse"], required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--remap")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("gadget", help="reduction tournament from a CNF formula")
    s.add_argument("--cnf", required=True)
    s.add_argument("--variant", choices=["max2sat3", "perfect2sat3", "perfect3sat3"], required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--out")
    s.add_argument("--layout")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("selector", help="instance selector P(m, g)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--select", type=int)
    s.add_argument("--packing", help="where to write the --select packing (default stdout)")
    s.add_argument("--out")
    s.add_argument("--layout")
    s.set_defaults(func=cmd_selector)

    s = sub.add_parser("compose", help="weak composition of 3-SAT(3) perfect-packing instances")
    s.add_argument("--cnf", nargs="+", required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--layout")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("verify", help="check a packing against a linear tournament")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--packing", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="seeded experiment suites, CSV output")
    s.add_argument("--suite", choices=["ratio", "kernel"], required=True)
    s.add_argument("--seeds", type=int, default=50)
    s.add_argument("--seed0", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.FormatError, ValueError, OSError) as e:
        _say(f"error: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
