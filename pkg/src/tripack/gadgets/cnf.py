"""CNF formulas restricted to the occurrence pattern the gadgets need."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Sequence


class Literal(NamedTuple):
    var: int  # 0-based
    positive: bool = True

    def value(self, assignment: Sequence[bool]) -> bool:
        return bool(assignment[self.var]) == self.positive

    def __str__(self):
        return f"{'' if self.positive else '-'}{self.var + 1}"


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        cl = tuple(tuple(Literal(*lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", cl)
        for c in cl:
            for lit in c:
                if not 0 <= lit.var < self.num_vars:
                    raise ValueError(f"literal {lit} refers to a variable outside 1..{self.num_vars}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        """DIMACS-style signed 1-based literals, e.g. ``[[1, -2], [2, 3]]``."""
        lits = []
        for c in clauses:
            if any(x == 0 for x in c):
                raise ValueError("literal 0 is not allowed")
            lits.append(tuple(Literal(abs(x) - 1, x > 0) for x in c))
        return cls(num_vars, tuple(lits))

    def to_ints(self) -> list[list[int]]:
        return [[(l.var + 1) * (1 if l.positive else -1) for l in c] for c in self.clauses]

    def occurrences(self, var: int) -> tuple[int, int]:
        """(positive, negative) occurrence counts."""
        pos = sum(1 for c in self.clauses for l in c if l.var == var and l.positive)
        neg = sum(1 for c in self.clauses for l in c if l.var == var and not l.positive)
        return pos, neg

    def check_sat3(self, arity: int) -> None:
        """Raise ValueError unless every clause has ``arity`` literals and every
        variable occurs once or twice positively and exactly once negatively."""
        for j, c in enumerate(self.clauses):
            if len(c) != arity:
                raise ValueError(f"clause {j + 1} has {len(c)} literals, expected {arity}")
        for v in range(self.num_vars):
            pos, neg = self.occurrences(v)
            if pos > 2 or neg > 1:
                raise ValueError(f"variable {v + 1} occurs {pos} times positively and {neg} negatively (max 2 and 1)")
            if pos < 1 or neg < 1:
                raise ValueError(f"variable {v + 1} needs at least one positive and one negative occurrence")

    def satisfied(self, assignment: Sequence[bool]) -> list[int]:
        return [j for j, c in enumerate(self.clauses) if any(l.value(assignment) for l in c)]

    def count_satisfied(self, assignment: Sequence[bool]) -> int:
        return len(self.satisfied(assignment))

    def max_sat(self) -> tuple[int, tuple[bool, ...]]:
        """Brute force: best count and the first assignment reaching it."""
        if self.num_vars > 20:
            raise ValueError("brute force limited to 20 variables")
        best = (-1, ())
        for a in product((False, True), repeat=self.num_vars):
            k = self.count_satisfied(a)
            if k > best[0]:
                best = (k, a)
        return best

    def witnesses(self, assignment: Sequence[bool]) -> dict[int, int]:
        """Clause index -> index of its first true literal, for satisfied clauses."""
        out = {}
        for j, c in enumerate(self.clauses):
            for x, l in enumerate(c):
                if l.value(assignment):
                    out[j] = x
                    break
        return out
