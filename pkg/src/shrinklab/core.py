"""Truth-table functions on the hypercube and partial assignments.

Inputs are encoded as integers: variable x1 is the least-significant bit, so
the input x = (x1, ..., xn) maps to table index sum_i x_i * 2**(i-1).  All
variable indices in this package are 1-based to match the usual x1..xn
notation.  Dimension 0 is allowed and denotes a fully restricted constant,
which keeps restriction application total.

Output symbols are nonnegative integers; a function is Boolean exactly when
every symbol is 0 or 1.  Booleanness is a derived predicate rather than a
separate type because tree and list measures apply to arbitrary alphabets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .caps import CAPS, BudgetError

#: Assignment digit marking a coordinate left free by a restriction.
STAR = 2


@dataclass(frozen=True)
class HypercubeFunction:
    """An explicit function {0,1}^n -> N stored as a truth table."""

    n: int
    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"dimension must be >= 0, got {self.n}")
        if len(self.outputs) != 1 << self.n:
            raise ValueError(
                f"need {1 << self.n} outputs for dimension {self.n}, "
                f"got {len(self.outputs)}"
            )
        if any(v < 0 for v in self.outputs):
            raise ValueError("output symbols must be nonnegative integers")

    @property
    def is_boolean(self) -> bool:
        return all(v in (0, 1) for v in self.outputs)

    def value(self, x: int) -> int:
        """Output at input point x (encoded integer, x1 = lowest bit)."""
        return self.outputs[x]

    def restrict(self, rho: "Restriction") -> "HypercubeFunction":
        return apply_restriction(self, rho)

    def __str__(self) -> str:
        return format_function(self)


@dataclass(frozen=True)
class Restriction:
    """A partial assignment: one digit in {0, 1, STAR} per variable."""

    assignments: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a not in (0, 1, STAR) for a in self.assignments):
            raise ValueError("restriction digits must be 0, 1, or STAR")

    @property
    def n(self) -> int:
        return len(self.assignments)

    def stars(self) -> tuple[int, ...]:
        """1-based indices of the free variables, ascending."""
        return tuple(i + 1 for i, a in enumerate(self.assignments) if a == STAR)

    def star_count(self) -> int:
        return sum(1 for a in self.assignments if a == STAR)

    def base_point(self) -> int:
        """Encoded input with every fixed coordinate set and stars at 0."""
        x = 0
        for i, a in enumerate(self.assignments):
            if a == 1:
                x |= 1 << i
        return x

    def embed(self, y: int) -> int:
        """Map a point of the star subcube (encoded over the free variables,
        in increasing original index order) to the full-cube point."""
        x = self.base_point()
        j = 0
        for i, a in enumerate(self.assignments):
            if a == STAR:
                if (y >> j) & 1:
                    x |= 1 << i
                j += 1
        return x

    def consistent_points(self) -> Iterator[int]:
        """All full-cube points that agree with the fixed coordinates."""
        for y in range(1 << self.star_count()):
            yield self.embed(y)

    def is_consistent(self, x: int) -> bool:
        return all(
            a == STAR or ((x >> i) & 1) == a
            for i, a in enumerate(self.assignments)
        )

    @classmethod
    def fixing(cls, n: int, fixed: Mapping[int, int]) -> "Restriction":
        """Restriction that fixes the given {variable: bit} pairs (1-based)
        and leaves everything else free."""
        digits = [STAR] * n
        for var, bit in fixed.items():
            if not 1 <= var <= n:
                raise ValueError(f"variable x{var} out of range for n={n}")
            if bit not in (0, 1):
                raise ValueError(f"fixed value for x{var} must be 0 or 1")
            digits[var - 1] = bit
        return cls(tuple(digits))

    @classmethod
    def all_star(cls, n: int) -> "Restriction":
        return cls((STAR,) * n)

    def __str__(self) -> str:
        return "".join("*" if a == STAR else str(a) for a in self.assignments)


def make_function(n: int, outputs: Sequence[int], cap: int | None = None) -> HypercubeFunction:
    """Build a function from its truth table, guarding the dimension cap."""
    limit = CAPS.dimension if cap is None else cap
    if n > limit:
        raise BudgetError(f"dimension {n} exceeds cap {limit}")
    return HypercubeFunction(n, tuple(outputs))


def apply_restriction(f: HypercubeFunction, rho: Restriction) -> HypercubeFunction:
    """The induced function on the star subcube.

    Free variables are renumbered in increasing original index order, so the
    result has dimension equal to the number of stars.
    """
    if rho.n != f.n:
        raise ValueError(f"restriction length {rho.n} != dimension {f.n}")
    k = rho.star_count()
    if k == f.n:
        return f
    outputs = tuple(f.outputs[rho.embed(y)] for y in range(1 << k))
    return HypercubeFunction(k, outputs)


def is_constant(f: HypercubeFunction) -> Optional[int]:
    """The single output symbol if f is constant, else None."""
    first = f.outputs[0]
    return first if all(v == first for v in f.outputs) else None


def complement(f: HypercubeFunction) -> HypercubeFunction:
    """Pointwise negation of a Boolean function."""
    if not f.is_boolean:
        raise ValueError("complement requires a Boolean function")
    return HypercubeFunction(f.n, tuple(1 - v for v in f.outputs))


def parse_function(text: str) -> HypercubeFunction:
    """Parse the one-record text form ``n=<int> outputs=<symbols>``.

    Symbols are a digit string for alphabets up to 10, or comma-separated
    integers for larger alphabets.  Outputs are listed in ascending index
    order.
    """
    fields = dict(
        item.split("=", 1) for item in text.split() if "=" in item
    )
    if "n" not in fields or "outputs" not in fields:
        raise ValueError(f"expected 'n=<int> outputs=<symbols>', got {text!r}")
    n = int(fields["n"])
    raw = fields["outputs"]
    if "," in raw:
        outputs = [int(tok) for tok in raw.split(",")]
    else:
        outputs = [int(ch) for ch in raw]
    return make_function(n, outputs)


def format_function(f: HypercubeFunction) -> str:
    """Inverse of :func:`parse_function`."""
    if max(f.outputs, default=0) <= 9:
        body = "".join(str(v) for v in f.outputs)
    else:
        body = ",".join(str(v) for v in f.outputs)
    return f"n={f.n} outputs={body}"
