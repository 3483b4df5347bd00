"""Line-oriented text formats. Files are 1-based; everything in memory is 0-based.

ltour    ``ltour <n> <m>`` then m lines ``<tail> <head>`` with tail > head
packing  ``packing <k>`` then k lines ``<u> <v> <w>`` strictly increasing
tour     ``tour <n>`` then n rows of n characters in {0,1}
cnf      DIMACS ``p cnf <vars> <clauses>``, clause lines ending in 0, ``c`` comments
layout   ``layout <k>`` then k lines ``slot <name> <position>``
remap    ``remap <k>`` then k lines ``<old> <new>``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from tripack.core import AdjacencyTournament, Arc, LinearTournament, validate
from tripack.gadgets.cnf import CnfFormula


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any


def _lines(text: str) -> list[tuple[int, list[str]]]:
    """Non-blank lines as (1-based line number, tokens)."""
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if toks:
            out.append((no, toks))
    return out


def _ints(toks: Sequence[str], no: int, count: int) -> list[int]:
    if len(toks) != count:
        raise FormatError(f"expected {count} fields, got {len(toks)}", no)
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise FormatError(f"non-integer field in {' '.join(toks)!r}", no) from None


def _header(lines, kind: str, nargs: int) -> list[int]:
    if not lines:
        raise FormatError(f"empty document, expected '{kind}' header")
    no, toks = lines[0]
    if toks[0] != kind:
        raise FormatError(f"expected '{kind}' header, got {toks[0]!r}", no)
    vals = _ints(toks[1:], no, nargs)
    if any(v < 0 for v in vals):
        raise FormatError("negative count in header", no)
    return vals


def _body(lines, count: int, kind: str):
    body = lines[1:]
    if len(body) < count:
        raise FormatError(f"{kind}: expected {count} records, found {len(body)} (truncated?)")
    if len(body) > count:
        raise FormatError(f"{kind}: trailing content after {count} records", body[count][0])
    return body


def parse_ltour(text: str) -> LinearTournament:
    lines = _lines(text)
    n, m = _header(lines, "ltour", 2)
    arcs = []
    for no, toks in _body(lines, m, "ltour"):
        t, h = _ints(toks, no, 2)
        if not (1 <= h <= n and 1 <= t <= n):
            raise FormatError(f"position out of range 1..{n}", no)
        if h >= t:
            raise FormatError(f"head {h} >= tail {t}", no)
        arcs.append(Arc(t - 1, h - 1))
    L = LinearTournament(n, arcs)
    problems = validate(L)
    if problems:
        raise FormatError("; ".join(problems))
    return L


def serialize_ltour(L: LinearTournament) -> str:
    rows = [f"ltour {L.n} {L.m}"] + [f"{t + 1} {h + 1}" for t, h in L.arcs]
    return "\n".join(rows) + "\n"


def parse_packing(text: str) -> list[tuple[int, int, int]]:
    lines = _lines(text)
    (k,) = _header(lines, "packing", 1)
    out = []
    for no, toks in _body(lines, k, "packing"):
        u, v, w = _ints(toks, no, 3)
        if not 1 <= u < v < w:
            raise FormatError("triangle positions must be positive and strictly increasing", no)
        out.append((u - 1, v - 1, w - 1))
    return out


def serialize_packing(P: Iterable[Sequence[int]]) -> str:
    tris = sorted(tuple(sorted(tuple(t)[:3])) for t in P)
    rows = [f"packing {len(tris)}"] + [f"{u + 1} {v + 1} {w + 1}" for u, v, w in tris]
    return "\n".join(rows) + "\n"


def parse_tour(text: str) -> AdjacencyTournament:
    lines = _lines(text)
    (n,) = _header(lines, "tour", 1)
    rows = []
    for no, toks in _body(lines, n, "tour"):
        row = "".join(toks)
        if len(row) != n or set(row) - {"0", "1"}:
            raise FormatError(f"row must have {n} characters in {{0,1}}", no)
        rows.append(tuple(int(c) for c in row))
    try:
        return AdjacencyTournament(n, tuple(rows))
    except ValueError as e:
        raise FormatError(str(e)) from None


def serialize_tour(A: AdjacencyTournament) -> str:
    return "\n".join([f"tour {A.n}"] + ["".join(map(str, r)) for r in A.rows]) + "\n"


def parse_cnf(text: str, mode: str | None = None) -> CnfFormula:
    """DIMACS CNF. ``mode`` '2sat3' or '3sat3' also enforces arity and occurrence limits."""
    lines = [(no, toks) for no, toks in _lines(text) if toks[0] != "c"]
    if not lines or lines[0][1][:2] != ["p", "cnf"]:
        raise FormatError("expected 'p cnf <vars> <clauses>' header", lines[0][0] if lines else None)
    no, toks = lines[0]
    nv, nc = _ints(toks[2:], no, 2)
    clauses = []
    for no, toks in _body(lines, nc, "cnf"):
        try:
            lits = [int(t) for t in toks]
        except ValueError:
            raise FormatError("non-integer literal", no) from None
        if not lits or lits[-1] != 0 or 0 in lits[:-1]:
            raise FormatError("clause must be nonzero literals terminated by a single 0", no)
        if any(abs(x) > nv for x in lits):
            raise FormatError(f"literal outside 1..{nv}", no)
        clauses.append(lits[:-1])
    F = CnfFormula.from_ints(nv, clauses)
    if mode is not None:
        arity = {"2sat3": 2, "3sat3": 3}.get(mode)
        if arity is None:
            raise ValueError(f"unknown cnf mode {mode!r}")
        try:
            F.check_sat3(arity)
        except ValueError as e:
            raise FormatError(str(e)) from None
    return F


def serialize_cnf(F: CnfFormula) -> str:
    rows = [f"p cnf {F.num_vars} {F.m}"] + [" ".join(map(str, c + [0])) for c in F.to_ints()]
    return "\n".join(rows) + "\n"


def parse_layout(text: str) -> list[tuple[str, int]]:
    lines = _lines(text)
    (k,) = _header(lines, "layout", 1)
    out = []
    for no, toks in _body(lines, k, "layout"):
        if len(toks) != 3 or toks[0] != "slot":
            raise FormatError("expected 'slot <name> <position>'", no)
        (p,) = _ints(toks[2:], no, 1)
        if p < 1:
            raise FormatError("position must be >= 1", no)
        out.append((toks[1], p - 1))
    return out


def serialize_layout(slots: Iterable[tuple[str, int]]) -> str:
    slots = list(slots)
    return "\n".join([f"layout {len(slots)}"] + [f"slot {name} {p + 1}" for name, p in slots]) + "\n"


def parse_remap(text: str) -> dict[int, int]:
    lines = _lines(text)
    (k,) = _header(lines, "remap", 1)
    out = {}
    for no, toks in _body(lines, k, "remap"):
        a, b = _ints(toks, no, 2)
        if a < 1 or b < 1:
            raise FormatError("positions must be >= 1", no)
        if a - 1 in out:
            raise FormatError(f"position {a} mapped twice", no)
        out[a - 1] = b - 1
    return out


def serialize_remap(remap: dict[int, int]) -> str:
    return "\n".join([f"remap {len(remap)}"] + [f"{a + 1} {b + 1}" for a, b in sorted(remap.items())]) + "\n"


_PARSERS = {
    "ltour": parse_ltour,
    "packing": parse_packing,
    "tour": parse_tour,
    "layout": parse_layout,
    "remap": parse_remap,
}


def parse_document(text: str) -> Document:
    """Dispatch on the header keyword."""
    lines = [toks for _, toks in _lines(text) if toks[0] != "c"]
    if not lines:
        raise FormatError("empty document")
    head = lines[0][0]
    if head == "p":
        return Document("cnf", parse_cnf(text))
    if head not in _PARSERS:
        raise FormatError(f"unknown document kind {head!r}")
    return Document(head, _PARSERS[head](text))
