"""Expected measures under R_p, closed-form bounds, and the verifiers.

Exact expectations enumerate all 3^n restrictions once per (function,
measure) pair, recording the integer measure of every restricted function
grouped by star count; the expectation at any p is then the polynomial
sum_s W_s p^s ((1-p)/2)^(n-s), accumulated with compensated summation (or
exactly, when p is a Fraction).  Monte Carlo estimation uses counter-based
per-sample seeds and integer accumulators, so results are bit-identical for
any worker partition.

The central exponent is gamma(p) = log_{2/(1-p)}((1+p)/(1-p)), the
decision-list shrinkage exponent; decision trees shrink with the smaller
exponent log2(1+p), and width-w lists obey the cruder (4/(1-p))^w bound.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .caps import CAPS, BudgetError
from .core import HypercubeFunction, apply_restriction
from .dlists import (
    TOP,
    Clause,
    DecisionList,
    Literal,
    augment_restriction,
    clause_identically_one,
    mu_density,
    useful_indices,
)
from .measures import measure_value
from .restrictions import (
    enumerate_rp,
    restriction_from_code,
    rp_mass,
    sample_rp_codes,
)

Prob = Union[float, Fraction]

#: Default slack for floating-point inequality checks.
TOL = 1e-9


def gamma(p: Prob) -> float:
    """The decision-list shrinkage exponent log_{2/(1-p)}((1+p)/(1-p)).

    Continuous extension at the endpoints: gamma(0) = 0, gamma(1) = 1.
    Strictly increasing on [0, 1].
    """
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    pf = float(p)
    if pf == 0.0:
        return 0.0
    if pf == 1.0:
        return 1.0
    return math.log((1 + pf) / (1 - pf)) / math.log(2 / (1 - pf))


@dataclass(frozen=True)
class BoundSpec:
    """A closed-form shrinkage bound evaluable over p in [0, 1].

    Families: "pow_gamma" is base**gamma(p); "pow_log2_1p" is
    base**log2(1+p); "pow_gamma_2p" is base**gamma(2p) for p <= 1/2;
    "lwz_width" is (4/(1-p))**base for p < 1 (base is the list width).
    """

    name: str
    base: float
    family: str

    def value(self, p: Prob) -> float:
        pf = float(p)
        if self.family == "pow_gamma":
            return self.base ** gamma(pf)
        if self.family == "pow_log2_1p":
            return self.base ** math.log2(1 + pf)
        if self.family == "pow_gamma_2p":
            if pf > 0.5:
                raise ValueError(f"{self.name} needs p <= 1/2, got {pf}")
            return self.base ** gamma(2 * pf)
        if self.family == "lwz_width":
            if pf >= 1:
                raise ValueError(f"{self.name} is undefined at p = 1")
            return (4 / (1 - pf)) ** self.base
        raise ValueError(f"unknown bound family {self.family!r}")


@dataclass(frozen=True)
class ShrinkageReport:
    """One verified (function, measure, p) data point."""

    function: str
    measure: str
    p: float
    method: str  # "exact" | "monte-carlo"
    expectation: float
    stderr: float
    bound_name: str
    bound: Optional[float]
    satisfied: Optional[bool]
    samples: int
    seed: Optional[int]


REPORT_FIELDS = (
    "function", "measure", "p", "method", "expectation", "stderr",
    "bound_name", "bound", "satisfied", "samples", "seed",
)


def report_row(r: ShrinkageReport) -> list[str]:
    def num(v: Optional[float]) -> str:
        return "" if v is None else format(v, ".12g")

    return [
        r.function, r.measure, format(r.p, ".12g"), r.method,
        num(r.expectation), num(r.stderr), r.bound_name, num(r.bound),
        "" if r.satisfied is None else str(r.satisfied).lower(),
        str(r.samples), "" if r.seed is None else str(r.seed),
    ]


# -- exact expectations --------------------------------------------------------

_PROFILE_CACHE: dict[tuple, tuple[int, ...]] = {}


def _measure_star_sums(f: HypercubeFunction, measure: str) -> tuple[int, ...]:
    """star_sums[s] = sum of the measure over all restrictions with s stars."""
    key = (f.n, f.outputs, measure)
    cached = _PROFILE_CACHE.get(key)
    if cached is not None:
        return cached
    if f.n > CAPS.enumeration:
        raise BudgetError(f"3^{f.n} enumeration exceeds cap {CAPS.enumeration}")
    sums = [0] * (f.n + 1)
    for code in range(3**f.n):
        rho = restriction_from_code(f.n, code)
        g = apply_restriction(f, rho)
        sums[g.n] += measure_value(measure, g)
    result = tuple(sums)
    _PROFILE_CACHE[key] = result
    return result


def _poly_expectation(star_sums: Sequence[int], n: int, p: Prob) -> Prob:
    if isinstance(p, Fraction):
        q = (1 - p) / 2
        return sum(star_sums[s] * p**s * q ** (n - s) for s in range(n + 1))
    q = (1.0 - p) / 2.0
    return math.fsum(star_sums[s] * p**s * q ** (n - s) for s in range(n + 1))


def exact_expectation(
    f: HypercubeFunction,
    p: Prob,
    measure: str,
    function_id: str | None = None,
) -> ShrinkageReport:
    """E[measure(f restricted by R_p)] by full weighted enumeration."""
    sums = _measure_star_sums(f, measure)
    value = _poly_expectation(sums, f.n, p)
    return ShrinkageReport(
        function=function_id or str(f), measure=measure, p=float(p),
        method="exact", expectation=float(value), stderr=0.0,
        bound_name="", bound=None, satisfied=None, samples=0, seed=None,
    )


def expectation_value(f: HypercubeFunction, p: Prob, measure: str) -> Prob:
    """Expectation as a number; exact Fraction when p is a Fraction."""
    return _poly_expectation(_measure_star_sums(f, measure), f.n, p)


# -- Monte Carlo ---------------------------------------------------------------

_CHUNK = 1 << 14


def _mc_chunk_sums(
    n: int,
    outputs: tuple[int, ...],
    measure: str,
    p: float,
    seed: int,
    start: int,
    count: int,
    value_cache: dict[int, int],
) -> tuple[int, int]:
    f = HypercubeFunction(n, outputs)
    codes = sample_rp_codes(n, p, seed, start, count)
    s_total = 0
    q_total = 0
    values, counts = _unique_counts(codes)
    for code, c in zip(values, counts):
        v = value_cache.get(code)
        if v is None:
            g = apply_restriction(f, restriction_from_code(n, code))
            v = measure_value(measure, g)
            value_cache[code] = v
        s_total += v * c
        q_total += v * v * c
    return s_total, q_total


def _unique_counts(codes) -> tuple[list[int], list[int]]:
    values, counts = np.unique(codes, return_counts=True)
    return [int(v) for v in values], [int(c) for c in counts]


def _mc_worker(args: tuple) -> tuple[int, int]:
    n, outputs, measure, p, seed, chunk_lo, chunk_hi, samples = args
    cache: dict[int, int] = {}
    s_total = 0
    q_total = 0
    for chunk in range(chunk_lo, chunk_hi):
        start = chunk * _CHUNK
        count = min(_CHUNK, samples - start)
        if count <= 0:
            break
        s, q = _mc_chunk_sums(n, outputs, measure, p, seed, start, count, cache)
        s_total += s
        q_total += q
    return s_total, q_total


def mc_expectation(
    f: HypercubeFunction,
    p: Prob,
    measure: str,
    samples: int,
    seed: int,
    workers: int = 1,
    function_id: str | None = None,
) -> ShrinkageReport:
    """Seeded Monte Carlo estimate of E[measure(f restricted by R_p)].

    Sample i is a pure function of (seed, i); sums are integers, so the
    result is identical for any worker count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    pf = float(p)
    nchunks = -(-samples // _CHUNK)
    if workers <= 1 or nchunks == 1:
        s_total, q_total = _mc_worker(
            (f.n, f.outputs, measure, pf, seed, 0, nchunks, samples)
        )
    else:
        workers = min(workers, nchunks)
        bounds = [round(i * nchunks / workers) for i in range(workers + 1)]
        jobs = [
            (f.n, f.outputs, measure, pf, seed, bounds[i], bounds[i + 1], samples)
            for i in range(workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mc_worker, jobs))
        s_total = sum(s for s, _ in parts)
        q_total = sum(q for _, q in parts)
    mean = s_total / samples
    if samples > 1:
        variance = (q_total - s_total * s_total / samples) / (samples - 1)
        stderr = math.sqrt(max(variance, 0.0) / samples)
    else:
        stderr = 0.0
    return ShrinkageReport(
        function=function_id or str(f), measure=measure, p=pf,
        method="monte-carlo", expectation=mean, stderr=stderr,
        bound_name="", bound=None, satisfied=None, samples=samples, seed=seed,
    )


# -- single-theorem verifiers ---------------------------------------------------

def _with_bound(report: ShrinkageReport, spec: BoundSpec, tol: float = TOL) -> ShrinkageReport:
    bound = spec.value(report.p)
    return ShrinkageReport(
        function=report.function, measure=report.measure, p=report.p,
        method=report.method, expectation=report.expectation,
        stderr=report.stderr, bound_name=spec.name, bound=bound,
        satisfied=report.expectation <= bound + tol,
        samples=report.samples, seed=report.seed,
    )


def _shifted(report: ShrinkageReport, measure: str, shift: int) -> ShrinkageReport:
    return ShrinkageReport(
        function=report.function, measure=measure, p=report.p,
        method=report.method, expectation=report.expectation + shift,
        stderr=report.stderr, bound_name=report.bound_name, bound=report.bound,
        satisfied=report.satisfied, samples=report.samples, seed=report.seed,
    )


def check_dt_shrinkage(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[DT(f|R_p)] <= DT(f)^log2(1+p)."""
    m = measure_value("dt", f)
    spec = BoundSpec(f"dt({m})^log2(1+p)", m, "pow_log2_1p")
    return _with_bound(exact_expectation(f, p, "dt", function_id), spec)


def check_parity_equality(k: int, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """For parity on k variables the tree bound is an equality: (1+p)^k."""
    from .families import parity

    f = parity(k)
    report = exact_expectation(f, p, "dt", function_id or f"parity:{k}")
    bound = (1 + float(p)) ** k
    return ShrinkageReport(
        function=report.function, measure="dt", p=report.p, method="exact",
        expectation=report.expectation, stderr=0.0,
        bound_name=f"(1+p)^{k}", bound=bound,
        satisfied=abs(report.expectation - bound) <= TOL,
        samples=0, seed=None,
    )


def check_dl_shrinkage(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[DL(f|R_p)] <= DL(f)^gamma(p)."""
    m = measure_value("dl", f)
    spec = BoundSpec(f"dl({m})^gamma(p)", m, "pow_gamma")
    return _with_bound(exact_expectation(f, p, "dl", function_id), spec)


def check_dnf_shrinkage(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[DNF(f|R_p) + 1] <= (DNF(f) + 1)^gamma(p)."""
    m = measure_value("dnf", f)
    spec = BoundSpec(f"(dnf({m})+1)^gamma(p)", m + 1, "pow_gamma")
    raw = exact_expectation(f, p, "dnf", function_id)
    return _with_bound(_shifted(raw, "dnf+1", 1), spec)


def check_cnf_shrinkage(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[CNF(f|R_p) + 1] <= (CNF(f) + 1)^gamma(p)."""
    m = measure_value("cnf", f)
    spec = BoundSpec(f"(cnf({m})+1)^gamma(p)", m + 1, "pow_gamma")
    raw = exact_expectation(f, p, "cnf", function_id)
    return _with_bound(_shifted(raw, "cnf+1", 1), spec)


def check_odl(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[ODL(f|R_p)] <= ODL(f)^gamma(p)."""
    m = measure_value("odl", f)
    spec = BoundSpec(f"odl({m})^gamma(p)", m, "pow_gamma")
    return _with_bound(exact_expectation(f, p, "odl", function_id), spec)


def check_wodl(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[wODL(f|R_p)] <= wODL(f)^gamma(p)."""
    m = measure_value("wodl", f)
    spec = BoundSpec(f"wodl({m})^gamma(p)", m, "pow_gamma")
    return _with_bound(exact_expectation(f, p, "wodl", function_id), spec)


def check_f2(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[F2(f|R_p) + 1] <= (F2(f) + 1)^gamma(p), where F2 = min(DNF, CNF)."""
    m = measure_value("f2", f)
    spec = BoundSpec(f"(f2({m})+1)^gamma(p)", m + 1, "pow_gamma")
    raw = exact_expectation(f, p, "f2", function_id)
    return _with_bound(_shifted(raw, "f2+1", 1), spec)


def check_l2(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[L2(f|R_p) + 1] <= (L2(f) + 1)^gamma(2p), valid for p <= 1/2.

    The doubled exponent comes from factoring R_p through a half-density
    restriction, which trades leaf-size for gate count.
    """
    if float(p) > 0.5:
        raise ValueError(f"the leaf-size bound needs p <= 1/2, got {p}")
    m = measure_value("l2", f)
    spec = BoundSpec(f"(l2({m})+1)^gamma(2p)", m + 1, "pow_gamma_2p")
    raw = exact_expectation(f, p, "l2", function_id)
    return _with_bound(_shifted(raw, "l2+1", 1), spec)


def check_lwz_width_bound(f: HypercubeFunction, p: Prob, function_id: str | None = None) -> ShrinkageReport:
    """E[DL(f|R_p)] <= (4/(1-p))^DLwidth(f); undefined at p = 1."""
    if float(p) >= 1:
        raise ValueError("the width bound is undefined at p = 1")
    w = measure_value("dl_width", f)
    spec = BoundSpec(f"(4/(1-p))^{w}", w, "lwz_width")
    return _with_bound(exact_expectation(f, p, "dl", function_id), spec)


# -- useful-index machinery over whole lists ------------------------------------

_USEFUL_CACHE: dict[DecisionList, tuple[int, ...]] = {}


def _useful_star_sums(dlist: DecisionList) -> tuple[int, ...]:
    cached = _USEFUL_CACHE.get(dlist)
    if cached is not None:
        return cached
    if dlist.n > CAPS.enumeration:
        raise BudgetError(f"3^{dlist.n} enumeration exceeds cap {CAPS.enumeration}")
    sums = [0] * (dlist.n + 1)
    for code in range(3**dlist.n):
        rho = restriction_from_code(dlist.n, code)
        sums[rho.star_count()] += len(useful_indices(dlist, rho))
    result = tuple(sums)
    _USEFUL_CACHE[dlist] = result
    return result


def expected_useful_count(dlist: DecisionList, p: Prob) -> Prob:
    """E over R_p of the number of useful indices of the list."""
    return _poly_expectation(_useful_star_sums(dlist), dlist.n, p)


def check_useful_expectation(dlist: DecisionList, p: Prob, list_id: str | None = None) -> ShrinkageReport:
    """E[#useful indices] <= m^gamma(p); checkable beyond the exact-DL caps."""
    m = dlist.size
    value = float(expected_useful_count(dlist, p))
    spec = BoundSpec(f"m({m})^gamma(p)", m, "pow_gamma")
    bound = spec.value(p)
    return ShrinkageReport(
        function=list_id or f"list(m={m},n={dlist.n})", measure="useful",
        p=float(p), method="exact", expectation=value, stderr=0.0,
        bound_name=spec.name, bound=bound, satisfied=value <= bound + TOL,
        samples=0, seed=None,
    )


# -- the step-by-step shrinkage argument on one list ----------------------------

@dataclass(frozen=True)
class ChainItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ProofChainLedger:
    list_id: str
    p: float
    items: tuple[ChainItem, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)


def check_proof_chain(dlist: DecisionList, p: Prob, list_id: str | None = None) -> ProofChainLedger:
    """Audit every step of the list-shrinkage argument on one decision list.

    Checks, by full enumeration of restrictions (exactly, in rationals, when
    p is a Fraction):

    * restricted-size:           DL(f|rho) <= #useful(rho) for every rho
    * mu-upper-bound:            mu_l <= ((1-p)/2)^width(C_l) for l < m
    * mass-ratio:                mass(rho)/mass(rho aug C_l) = (2p/(1-p))^overlap
    * useful-prefix-identity:    useful(rho aug C_l) = useful(rho) cut at l
    * useful-prefix-consequence: useful(rho aug C_l) is contained in that cut,
                                 its max lands on l, and C_l restricts to the
                                 constant 1
    * membership-vs-mu:          Pr[l useful] <= mu_l ((1+p)/(1-p))^width(C_l)
    * mu-normalization:          the mu vector sums to 1
    * expected-useful:           E[#useful] <= m^gamma(p)

    The full prefix set identity fails for lists whose clauses conflict on a
    shared variable (augmenting by a later clause can starve an earlier
    useful index of witnesses); only the consequence item is what the
    membership bound actually consumes, and it holds unconditionally.
    """
    if not 0 < float(p) < 1:
        raise ValueError("the chain audit needs p strictly inside (0, 1)")
    exact = isinstance(p, Fraction)
    name = list_id or f"list(m={dlist.size},n={dlist.n})"
    n, m = dlist.n, dlist.size
    one = Fraction(1) if exact else 1.0
    ratio_up = (one + p) / (one - p)
    ratio_star = (2 * p) / (one - p)
    half_fix = (one - p) / 2

    mu = mu_density(dlist, p)
    member_mass = [Fraction(0) if exact else 0.0] * m

    items: list[ChainItem] = []
    size_ok, size_bad = True, ""
    identity_ok, identity_bad = True, ""
    conseq_ok, conseq_bad = True, ""
    mass_ok, mass_bad = True, ""

    from .measures import dl_min_size

    tabulated = dlist.tabulate()
    for weighted in enumerate_rp(n, p):
        rho = weighted.restriction
        useful = useful_indices(dlist, rho)
        for ell in useful:
            member_mass[ell - 1] += weighted.mass
        restricted = apply_restriction(tabulated, rho)
        if size_ok and dl_min_size(restricted).value > len(useful):
            size_ok, size_bad = False, f"rho={rho} has DL > {len(useful)}"
        for ell in useful:
            clause = dlist.clause(ell)
            overlap = len(set(rho.stars()) & set(clause.variables()))
            aug = augment_restriction(rho, clause)
            got = useful_indices(dlist, aug)
            prefix = tuple(i for i in useful if i <= ell)
            if identity_ok and got != prefix:
                identity_ok, identity_bad = False, f"rho={rho}, position {ell}"
            if conseq_ok and (
                not set(got) <= set(prefix)
                or got[-1] != ell
                or not clause_identically_one(clause, aug)
            ):
                conseq_ok, conseq_bad = False, f"rho={rho}, position {ell}"
            if mass_ok:
                lhs = rp_mass(rho, p)
                rhs = rp_mass(aug, p) * ratio_star**overlap
                drop = rho.star_count() - aug.star_count()
                bad_ratio = (lhs != rhs) if exact else (abs(lhs - rhs) > 1e-12)
                if bad_ratio or drop != overlap:
                    mass_ok, mass_bad = False, f"rho={rho}, position {ell}"
    items.append(ChainItem("restricted-size", size_ok, size_bad))

    bound_ok, bound_bad = True, ""
    for ell in range(1, m):
        width = dlist.clause(ell).width
        cap_val = half_fix**width
        over = (mu.values[ell - 1] > cap_val) if exact else (
            mu.values[ell - 1] > cap_val + 1e-12
        )
        if over:
            bound_ok, bound_bad = False, f"mu_{ell} exceeds ((1-p)/2)^{width}"
            break
        if mu.values[ell - 1] > 0:
            log_bound = math.log(1 / float(mu.values[ell - 1])) / math.log(2 / (1 - float(p)))
            if width > log_bound + TOL:
                bound_ok, bound_bad = False, f"width at {ell} exceeds its log bound"
                break
    items.append(ChainItem("mu-upper-bound", bound_ok, bound_bad))
    items.append(ChainItem("mass-ratio", mass_ok, mass_bad))
    items.append(ChainItem("useful-prefix-identity", identity_ok, identity_bad))
    items.append(ChainItem("useful-prefix-consequence", conseq_ok, conseq_bad))

    member_ok, member_bad = True, ""
    for ell in range(1, m + 1):
        width = dlist.clause(ell).width
        rhs = mu.values[ell - 1] * ratio_up**width
        over = (member_mass[ell - 1] > rhs) if exact else (
            member_mass[ell - 1] > rhs + 1e-12
        )
        if over:
            member_ok, member_bad = False, f"position {ell}"
            break
    items.append(ChainItem("membership-vs-mu", member_ok, member_bad))

    total = mu.total()
    norm_ok = (total == 1) if exact else (abs(total - 1) <= 1e-12)
    items.append(ChainItem("mu-normalization", norm_ok, "" if norm_ok else f"sum={total}"))

    expected = sum(member_mass)
    bound = m ** gamma(p)
    eu_ok = float(expected) <= bound + TOL
    items.append(
        ChainItem(
            "expected-useful", eu_ok,
            "" if eu_ok else f"E={float(expected)} > {bound}",
        )
    )
    return ProofChainLedger(name, float(p), tuple(items))


# -- leaf-size of a single clause under R_p --------------------------------------

@dataclass(frozen=True)
class ClauseLeafExpectation:
    """Exact expected leaf-count of a width-k conjunction under R_p.

    `expectation` is the defining sum  sum_j j C(k,j) p^j ((1-p)/2)^(k-j).
    `closed_form` is k p ((1+p)/2)^(k-1), which equals the sum by the
    binomial identity.  `closed_form_variant` replaces (1+p)/2 with
    (1-p)/2; the two variants agree only at k = 1, and at p = 1/2 the
    defining sum matches (k/2)(3/4)^(k-1).
    """

    k: int
    p: float
    expectation: float
    closed_form: float
    closed_form_variant: float
    exact: Optional[Fraction] = None


def andor_leafsize(k: int, p: Prob) -> ClauseLeafExpectation:
    """E[leaf-size of a k-ary AND (equivalently OR) under R_p]."""
    if not 1 <= k <= 64:
        raise ValueError("k must be in 1..64")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    pf = float(p)
    if isinstance(p, Fraction):
        q = (1 - p) / 2
        exact = sum(j * math.comb(k, j) * p**j * q ** (k - j) for j in range(k + 1))
        expectation = float(exact)
    else:
        q = (1.0 - pf) / 2.0
        exact = None
        expectation = math.fsum(
            j * math.comb(k, j) * pf**j * q ** (k - j) for j in range(k + 1)
        )
    return ClauseLeafExpectation(
        k=k,
        p=pf,
        expectation=expectation,
        closed_form=k * pf * ((1 + pf) / 2) ** (k - 1),
        closed_form_variant=k * pf * ((1 - pf) / 2) ** (k - 1),
        exact=exact,
    )


# -- tail probabilities and measurement curves ----------------------------------

_DEPTH_HIST_CACHE: dict[tuple, tuple[tuple[int, int, int], ...]] = {}


def _depth_histogram(f: HypercubeFunction) -> tuple[tuple[int, int, int], ...]:
    """(stars, depth, count) triples over all restrictions of f."""
    key = (f.n, f.outputs)
    cached = _DEPTH_HIST_CACHE.get(key)
    if cached is not None:
        return cached
    if f.n > CAPS.enumeration:
        raise BudgetError(f"3^{f.n} enumeration exceeds cap {CAPS.enumeration}")
    counts: dict[tuple[int, int], int] = {}
    for code in range(3**f.n):
        rho = restriction_from_code(f.n, code)
        g = apply_restriction(f, rho)
        pair = (g.n, measure_value("dt_depth", g))
        counts[pair] = counts.get(pair, 0) + 1
    result = tuple(sorted((s, d, c) for (s, d), c in counts.items()))
    _DEPTH_HIST_CACHE[key] = result
    return result


def tail_dt_depth(f: HypercubeFunction, p: Prob, t: int) -> float:
    """Pr[DT-depth(f|R_p) >= t], exactly, by restriction enumeration.

    Measurement only: the switching-lemma style bounds carry unspecified
    constants, so this emits data rather than a pass/fail verdict.
    """
    pf = float(p)
    q = (1.0 - pf) / 2.0
    return math.fsum(
        c * pf**s * q ** (f.n - s)
        for s, d, c in _depth_histogram(f)
        if d >= t
    )


def curve_table(grid: Iterable[Prob]) -> list[tuple[float, float, float]]:
    """(p, gamma(p), log2(1+p)) rows; the first column dominates the second."""
    return [(float(p), gamma(p), math.log2(1 + float(p))) for p in grid]


# -- random corpus -------------------------------------------------------------

def random_decision_list(
    n: int, max_width: int, max_size: int, seed: int
) -> DecisionList:
    """Seeded random list: random head clauses, catch-all final clause.

    Head clauses have width 1..max_width on distinct variables; the final
    clause is the empty one, so the tautology invariant holds by
    construction.
    """
    if n < 1 or max_width < 1 or max_size < 1:
        raise ValueError("need n >= 1, max_width >= 1, max_size >= 1")
    rng = random.Random(seed)
    m = rng.randint(1, max_size)
    entries = []
    for _ in range(m - 1):
        width = rng.randint(1, min(max_width, n))
        variables = rng.sample(range(1, n + 1), width)
        lits = tuple(Literal(v, rng.random() < 0.5) for v in sorted(variables))
        entries.append((Clause(lits), rng.randrange(4)))
    entries.append((TOP, rng.randrange(4)))
    return DecisionList(n, tuple(entries))
