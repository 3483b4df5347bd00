from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from strategies import linear_tournaments
from tripack import io
from tripack.core import Arc, LinearTournament, to_adjacency
from tripack.gadgets import gen_sat3

FIX = Path(__file__).parent / "fixtures"
CORPUS = sorted(p for p in FIX.rglob("*") if p.is_file() and p.suffix in {".ltour", ".tour", ".cnf", ".packing", ".layout", ".remap"})


def test_ltour_examples():
    assert io.parse_ltour("ltour 3 1\n3 1\n") == LinearTournament(3, [Arc(2, 0)])
    assert io.serialize_ltour(LinearTournament(3, [Arc(2, 0)])) == "ltour 3 1\n3 1\n"
    assert io.parse_ltour("ltour 2 0\n") == LinearTournament(2)
    with pytest.raises(io.FormatError, match="head"):
        io.parse_ltour("ltour 3 1\n1 3\n")


def test_packing_cnf_examples():
    assert io.parse_packing("packing 1\n1 2 3\n") == [(0, 1, 2)]
    assert io.serialize_packing([(0, 1, 2)]) == "packing 1\n1 2 3\n"
    F = io.parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert F.to_ints() == [[1, -2]]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "ltour 3\n",
        "ltour 3 1\n",
        "ltour 3 1\n3 1\n2 1\n",
        "ltour 3 1\n4 1\n",
        "ltour 3 1\n3 x\n",
        "ltour 5 2\n5 1\n5 1\n",
        "ltour -1 0\n",
        "ltour 3 1\n3 1 2\n",
    ],
)
def test_ltour_rejects(text):
    with pytest.raises(io.FormatError):
        io.parse_ltour(text)


def test_error_carries_line_number():
    with pytest.raises(io.FormatError) as ei:
        io.parse_ltour("ltour 4 2\n4 1\n2 3\n")
    assert ei.value.line == 3


@pytest.mark.parametrize(
    "text",
    [
        "tour 2\n11\n00\n",
        "tour 2\n01\n01\n",
        "tour 2\n00\n00\n",
        "tour 3\n011\n001\n",
        "tour 2\n0a\n00\n",
    ],
)
def test_tour_rejects(text):
    with pytest.raises(io.FormatError):
        io.parse_tour(text)


@pytest.mark.parametrize(
    "text",
    ["packing 1\n2 1 3\n", "packing 2\n1 2 3\n", "packing 1\n0 1 2\n", "packing 1\n1 2\n"],
)
def test_packing_rejects(text):
    with pytest.raises(io.FormatError):
        io.parse_packing(text)


def test_cnf_modes():
    text = "c comment\np cnf 2 2\n1 2 0\n-1 -2 0\n"
    assert io.parse_cnf(text).m == 2
    assert io.parse_cnf(text, mode="2sat3").m == 2
    with pytest.raises(io.FormatError):
        io.parse_cnf(text, mode="3sat3")
    with pytest.raises(io.FormatError):
        io.parse_cnf("p cnf 1 2\n1 0\n1 0\n1 0\n")
    with pytest.raises(io.FormatError):
        io.parse_cnf("p cnf 1 1\n2 0\n")
    with pytest.raises(io.FormatError):
        io.parse_cnf("p cnf 1 1\n1\n")
    with pytest.raises(io.FormatError):
        io.parse_cnf("p cnf 2 3\n1 2 0\n1 -2 0\n1 2 0\n", mode="2sat3")  # x1 positive three times
    with pytest.raises(ValueError):
        io.parse_cnf(text, mode="4sat")


def test_layout_remap():
    slots = [("a", 0), ("b.1", 4)]
    assert io.parse_layout(io.serialize_layout(slots)) == slots
    remap = {0: 0, 3: 1, 7: 2}
    assert io.parse_remap(io.serialize_remap(remap)) == remap
    with pytest.raises(io.FormatError):
        io.parse_remap("remap 2\n1 1\n1 2\n")
    with pytest.raises(io.FormatError):
        io.parse_layout("layout 1\nspot a 1\n")


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: str(p.relative_to(FIX)))
def test_fixture_round_trip(path):
    text = path.read_text()
    doc = io.parse_document(text)
    ser = {
        "ltour": io.serialize_ltour,
        "tour": io.serialize_tour,
        "packing": io.serialize_packing,
        "cnf": io.serialize_cnf,
        "layout": io.serialize_layout,
        "remap": io.serialize_remap,
    }[doc.kind]
    assert ser(doc.payload) == text
    assert io.parse_document(ser(doc.payload)) == doc


@given(linear_tournaments(max_n=12))
def test_ltour_tour_round_trip(L):
    assert io.parse_ltour(io.serialize_ltour(L)) == L
    A = to_adjacency(L)
    assert io.parse_tour(io.serialize_tour(A)) == A


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30)), max_size=8))
def test_packing_round_trip(raw):
    P = sorted({tuple(sorted(t)) for t in raw if len(set(t)) == 3})
    assert io.parse_packing(io.serialize_packing(P)) == P


@given(st.integers(2, 6), st.integers(0, 1000))
def test_cnf_round_trip(n, seed):
    F = gen_sat3(n, 2, seed, tautologies=True)
    assert io.parse_cnf(io.serialize_cnf(F), mode="2sat3") == F
