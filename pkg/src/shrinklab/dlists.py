"""Clauses, DNF formulas, decision lists, and the useful-index machinery.

A decision list is an ordered sequence of (conjunctive clause, output) pairs
whose clauses jointly cover the cube; the first satisfied clause decides the
output.  Restricting a list keeps exactly its useful indices: the positions
reachable as the first satisfied clause by some input consistent with the
restriction.  The mu density classifies restrictions by their maximum useful
index and whether the clause there is forced to 1, which is the distribution
driving the shrinkage bound for list size.

Variable indices are 1-based throughout, matching the x1..xn convention of
:mod:`shrinklab.core`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .caps import CAPS, BudgetError
from .core import STAR, HypercubeFunction, Restriction

Prob = Union[float, Fraction]


class CoverageError(Exception):
    """An input satisfied no clause: the tautology invariant is broken."""


@dataclass(frozen=True)
class Literal:
    var: int
    positive: bool

    def __post_init__(self) -> None:
        if self.var < 1:
            raise ValueError("variable indices are 1-based")

    def evaluate(self, x: int) -> bool:
        return bool((x >> (self.var - 1)) & 1) == self.positive

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"!x{self.var}"


@dataclass(frozen=True)
class Clause:
    """Conjunction of literals on pairwise-distinct variables.

    Literals are kept sorted by variable index, so equality is structural.
    The empty clause is the always-true clause.
    """

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        lits = tuple(sorted(self.literals, key=lambda lit: lit.var))
        if len({lit.var for lit in lits}) != len(lits):
            raise ValueError("clause literals must be on distinct variables")
        object.__setattr__(self, "literals", lits)

    @property
    def width(self) -> int:
        return len(self.literals)

    def variables(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.literals)

    def max_var(self) -> int:
        return self.literals[-1].var if self.literals else 0

    def evaluate(self, x: int) -> int:
        return 1 if all(lit.evaluate(x) for lit in self.literals) else 0

    def __str__(self) -> str:
        return format_clause(self)


#: The width-0, always-true clause.
TOP = Clause(())


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctive clauses; the empty formula is constant 0."""

    clauses: tuple[Clause, ...] = ()

    @property
    def size(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((c.width for c in self.clauses), default=0)

    def max_var(self) -> int:
        return max((c.max_var() for c in self.clauses), default=0)

    def evaluate(self, x: int) -> int:
        return 1 if any(c.evaluate(x) for c in self.clauses) else 0

    def tabulate(self, n: int) -> HypercubeFunction:
        if n < self.max_var():
            raise ValueError(f"formula mentions x{self.max_var()}, n={n}")
        return HypercubeFunction(n, tuple(self.evaluate(x) for x in range(1 << n)))

    def __str__(self) -> str:
        return format_dnf(self)


#: The size-0, constant-0 formula.
BOTTOM = DnfFormula(())


@dataclass(frozen=True)
class DecisionList:
    """Ordered (clause, output) pairs over n variables."""

    n: int
    entries: tuple[tuple[Clause, int], ...]

    def __post_init__(self) -> None:
        entries = tuple((clause, int(out)) for clause, out in self.entries)
        if len(entries) < 1:
            raise ValueError("a decision list has at least one entry")
        for clause, _ in entries:
            if clause.max_var() > self.n:
                raise ValueError(
                    f"clause {clause} mentions x{clause.max_var()}, n={self.n}"
                )
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def width(self) -> int:
        return max(clause.width for clause, _ in self.entries)

    def clause(self, index: int) -> Clause:
        """Clause at 1-based position index."""
        return self.entries[index - 1][0]

    def output(self, index: int) -> int:
        return self.entries[index - 1][1]

    def first_fired(self, x: int) -> int:
        """1-based position of the first satisfied clause on input x."""
        for i, (clause, _) in enumerate(self.entries, start=1):
            if clause.evaluate(x):
                return i
        raise CoverageError(f"no clause fires on input {x:#0{self.n + 2}b}")

    def evaluate(self, x: int) -> int:
        return self.entries[self.first_fired(x) - 1][1]

    def tabulate(self) -> HypercubeFunction:
        return HypercubeFunction(
            self.n, tuple(self.evaluate(x) for x in range(1 << self.n))
        )

    def __str__(self) -> str:
        return format_decision_list(self)


@dataclass(frozen=True)
class MuDensity:
    """Probability vector over list positions; sums to 1."""

    values: tuple[Prob, ...]

    def __len__(self) -> int:
        return len(self.values)

    def total(self) -> Prob:
        return sum(self.values)


def clause_eval(clause: Clause, x: int) -> int:
    return clause.evaluate(x)


def dl_eval(dlist: DecisionList, x: int) -> int:
    return dlist.evaluate(x)


def validate_dl(dlist: DecisionList) -> Optional[int]:
    """None if every input fires some clause, else a non-covered witness."""
    for x in range(1 << dlist.n):
        if not any(clause.evaluate(x) for clause, _ in dlist.entries):
            return x
    return None


def useful_indices(dlist: DecisionList, rho: Restriction) -> tuple[int, ...]:
    """Positions reachable as the first fired clause on the star subcube.

    Computed by enumerating the 2^stars consistent inputs; equals the set of
    positions whose clause can fire with all earlier clauses off.
    """
    if rho.n != dlist.n:
        raise ValueError(f"restriction length {rho.n} != n={dlist.n}")
    seen: set[int] = set()
    for x in rho.consistent_points():
        seen.add(dlist.first_fired(x))
    return tuple(sorted(seen))


def _restrict_clause(clause: Clause, rho: Restriction, renumber: dict[int, int]) -> Clause:
    """Sub-clause on the free variables, renumbered to the subcube.

    Only valid when no literal contradicts a fixed coordinate, which holds
    for every useful index.
    """
    kept = []
    for lit in clause.literals:
        a = rho.assignments[lit.var - 1]
        if a == STAR:
            kept.append(Literal(renumber[lit.var], lit.positive))
        elif bool(a) != lit.positive:
            raise ValueError(f"literal {lit} contradicts the restriction")
    return Clause(tuple(kept))


def restrict_dl(dlist: DecisionList, rho: Restriction) -> DecisionList:
    """The restricted list: useful entries with clauses cut to the subcube.

    Computes f|rho for the function f computed by the input list, over the
    free variables renumbered in increasing original index order.
    """
    useful = useful_indices(dlist, rho)
    renumber = {var: j for j, var in enumerate(rho.stars(), start=1)}
    entries = tuple(
        (_restrict_clause(dlist.clause(i), rho, renumber), dlist.output(i))
        for i in useful
    )
    return DecisionList(rho.star_count(), entries)


def augment_restriction(rho: Restriction, clause: Clause) -> Restriction:
    """Extend rho by the unique satisfying assignment of the clause.

    Fixed coordinates of rho are unchanged; stars on the clause variables
    become fixed, so the star count drops by |Stars(rho) & Vars(clause)|.
    """
    digits = list(rho.assignments)
    for lit in clause.literals:
        want = 1 if lit.positive else 0
        have = digits[lit.var - 1]
        if have == STAR:
            digits[lit.var - 1] = want
        elif have != want:
            raise ValueError(
                f"clause {clause} is inconsistent with the restriction at x{lit.var}"
            )
    return Restriction(tuple(digits))


def clause_identically_one(clause: Clause, rho: Restriction) -> bool:
    """True iff the restricted clause has no literals left and none falsified."""
    for lit in clause.literals:
        a = rho.assignments[lit.var - 1]
        if a == STAR or bool(a) != lit.positive:
            return False
    return True


def classify_mu(dlist: DecisionList, rho: Restriction) -> tuple[int, str]:
    """Mu-density position a restriction contributes to, with the reason.

    Position max(U) when the clause there restricts to the constant 1,
    otherwise the final position m (either because max(U) = m or because the
    clause at max(U) keeps free literals).
    """
    useful = useful_indices(dlist, rho)
    top = useful[-1]
    m = dlist.size
    if top == m:
        return m, "max-useful-is-final"
    if clause_identically_one(dlist.clause(top), rho):
        return top, "clause-identically-one"
    return m, "clause-not-identically-one"


def mu_density(dlist: DecisionList, p: Prob, cap: int | None = None) -> MuDensity:
    """Exact mu vector by weighted enumeration of all 3^n restrictions."""
    from .restrictions import enumerate_rp

    limit = CAPS.mu if cap is None else cap
    if dlist.n > limit:
        raise BudgetError(f"mu enumeration at n={dlist.n} exceeds cap {limit}")
    zero = Fraction(0) if isinstance(p, Fraction) else 0.0
    values = [zero] * dlist.size
    for weighted in enumerate_rp(dlist.n, p, cap=limit):
        position, _ = classify_mu(dlist, weighted.restriction)
        values[position - 1] += weighted.mass
    return MuDensity(tuple(values))


def dnf_to_dl(formula: DnfFormula, n: int) -> DecisionList:
    """The standard list form: each clause outputs 1, then a final (T, 0)."""
    entries = tuple((clause, 1) for clause in formula.clauses) + ((TOP, 0),)
    return DecisionList(n, entries)


def is_orthogonal(dlist: DecisionList) -> bool:
    """Every input satisfies exactly one clause."""
    for x in range(1 << dlist.n):
        fired = sum(clause.evaluate(x) for clause, _ in dlist.entries)
        if fired != 1:
            return False
    return True


def is_weakly_orthogonal(dlist: DecisionList) -> bool:
    """Every input satisfies at most one clause among the first m-1."""
    head = dlist.entries[:-1]
    for x in range(1 << dlist.n):
        fired = sum(clause.evaluate(x) for clause, _ in head)
        if fired > 1:
            return False
    return True


# Text formats.  Clause: "x1 & !x3", "T" for the empty clause.
# DNF: "clause | clause", "F" for the empty formula.
# Decision list: one "clause -> output" line per entry, order significant.

def parse_literal(text: str) -> Literal:
    tok = text.strip()
    positive = True
    if tok.startswith("!"):
        positive = False
        tok = tok[1:].strip()
    if not tok.startswith("x"):
        raise ValueError(f"bad literal {text!r}")
    return Literal(int(tok[1:]), positive)


def parse_clause(text: str) -> Clause:
    tok = text.strip()
    if tok == "T":
        return TOP
    return Clause(tuple(parse_literal(part) for part in tok.split("&")))


def format_clause(clause: Clause, names: Optional[dict[int, str]] = None) -> str:
    if not clause.literals:
        return "T"
    parts = []
    for lit in clause.literals:
        name = names[lit.var] if names else f"x{lit.var}"
        parts.append(name if lit.positive else f"!{name}")
    return " & ".join(parts)


def parse_dnf(text: str) -> DnfFormula:
    tok = text.strip()
    if tok == "F":
        return BOTTOM
    return DnfFormula(tuple(parse_clause(part) for part in tok.split("|")))


def format_dnf(formula: DnfFormula) -> str:
    if not formula.clauses:
        return "F"
    return " | ".join(format_clause(c) for c in formula.clauses)


def parse_decision_list(text: str, n: Optional[int] = None) -> DecisionList:
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        clause_text, sep, out_text = line.rpartition("->")
        if not sep:
            raise ValueError(f"expected 'clause -> output', got {line!r}")
        entries.append((parse_clause(clause_text), int(out_text)))
    if not entries:
        raise ValueError("empty decision list")
    if n is None:
        n = max(clause.max_var() for clause, _ in entries)
    return DecisionList(n, tuple(entries))


def format_decision_list(dlist: DecisionList) -> str:
    return "\n".join(
        f"{format_clause(clause)} -> {out}" for clause, out in dlist.entries
    )
