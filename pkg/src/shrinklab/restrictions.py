"""The p-random restriction R_p: mass, enumeration, sampling, composition.

R_p leaves each coordinate free with probability p and otherwise fixes it to
0 or 1 with equal probability, so a particular restriction rho has mass
p^stars * ((1-p)/2)^fixed.  Masses accept floats or fractions.Fraction; with
a Fraction the arithmetic is exact, which the proof-chain checks rely on.

Sampling is counter-based: the restriction at (seed, index) is a pure
function of those two integers, so serial and partitioned runs produce
identical sample sets regardless of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .caps import CAPS, BudgetError
from .core import STAR, Restriction

Prob = Union[float, Fraction]


@dataclass(frozen=True)
class WeightedRestriction:
    restriction: Restriction
    mass: Prob


def _check_prob(p: Prob) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")


def rp_mass(rho: Restriction, p: Prob) -> Prob:
    """Probability that R_p equals rho exactly (0**0 == 1 at the endpoints)."""
    _check_prob(p)
    s = rho.star_count()
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    half = Fraction(1, 2) if isinstance(p, Fraction) else 0.5
    return p**s * ((one - p) * half) ** (rho.n - s)


def enumerate_rp(n: int, p: Prob, cap: int | None = None) -> Iterator[WeightedRestriction]:
    """All 3^n restrictions exactly once with their masses.

    Deterministic order: a ternary counter with coordinate 1 cycling fastest
    and digits ordered 0, 1, star.
    """
    _check_prob(p)
    limit = CAPS.enumeration if cap is None else cap
    if n > limit:
        raise BudgetError(f"3^{n} enumeration exceeds cap {limit}")
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    half = Fraction(1, 2) if isinstance(p, Fraction) else 0.5
    fixed_mass = (one - p) * half
    weights = [p**s * fixed_mass ** (n - s) for s in range(n + 1)]
    for code in range(3**n):
        digits = []
        c = code
        for _ in range(n):
            digits.append(c % 3)
            c //= 3
        rho = Restriction(tuple(digits))
        yield WeightedRestriction(rho, weights[rho.star_count()])


def compose(rho: Restriction, sigma: Restriction) -> Restriction:
    """Apply sigma on the stars of rho (in increasing original index order).

    Coordinates fixed by rho keep their value; the i-th star of rho receives
    sigma's i-th digit.  Matches sequential restriction of a function:
    f|rho|sigma == f|compose(rho, sigma).
    """
    if sigma.n != rho.star_count():
        raise ValueError(
            f"sigma has length {sigma.n}, expected {rho.star_count()} "
            "(one digit per star of rho)"
        )
    digits = list(rho.assignments)
    j = 0
    for i, a in enumerate(rho.assignments):
        if a == STAR:
            digits[i] = sigma.assignments[j]
            j += 1
    return Restriction(tuple(digits))


# Counter-based uniform values: the j-th coordinate of sample `index` reads
# position index*n + j of a splitmix64 stream, so any chunking of the index
# range reproduces the same restrictions.

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _u01(seed: int, pos: int) -> float:
    z = (seed * _MIX2 + (pos + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z ^= z >> 31
    return (z >> 11) * 2.0**-53


def _u01_block(seed: int, start_pos: int, count: int) -> np.ndarray:
    pos = np.arange(start_pos + 1, start_pos + count + 1, dtype=np.uint64)
    z = (np.uint64(seed * _MIX2 & _MASK64) + pos * np.uint64(_GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _digit(u: float, p: float) -> int:
    if u < p:
        return STAR
    if u < p + (1.0 - p) / 2.0:
        return 0
    return 1


def sample_rp(n: int, p: Prob, seed: int, index: int) -> Restriction:
    """The index-th R_p sample of the stream identified by seed."""
    _check_prob(p)
    pf = float(p)
    base = index * n
    return Restriction(
        tuple(_digit(_u01(seed, base + j), pf) for j in range(n))
    )


def sample_rp_codes(n: int, p: Prob, seed: int, start: int, count: int) -> np.ndarray:
    """Ternary codes of samples start..start+count-1, vectorized.

    Code digits follow the enumerate_rp convention (coordinate 1 is the
    lowest ternary digit; digit 2 means star).  Row i equals
    sample_rp(n, p, seed, start + i).
    """
    _check_prob(p)
    pf = float(p)
    u = _u01_block(seed, start * n, count * n).reshape(count, n)
    digits = np.ones((count, n), dtype=np.int64)
    digits[u < pf + (1.0 - pf) / 2.0] = 0
    digits[u < pf] = STAR
    pow3 = 3 ** np.arange(n, dtype=np.int64)
    return digits @ pow3


def restriction_from_code(n: int, code: int) -> Restriction:
    """Inverse of the ternary-code convention used by enumerate_rp."""
    digits = []
    for _ in range(n):
        digits.append(code % 3)
        code //= 3
    return Restriction(tuple(digits))
