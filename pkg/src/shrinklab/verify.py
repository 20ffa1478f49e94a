"""Named verification suites: every explicit-constant bound at desk scale.

Each suite enumerates its stated corpus exactly (full 3^n restriction
enumeration, exact measures per cell) and reports one line per sub-check.
Suites are independent and deterministic for a fixed seed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .core import HypercubeFunction, Restriction, make_function
from .dlists import (
    TOP,
    Clause,
    DecisionList,
    Literal,
    classify_mu,
    format_clause,
    restrict_dl,
    useful_indices,
)
from .families import parity, random_function, read_once_tree, tribes
from .measures import measure_chain_check, measure_value
from .restrictions import compose, enumerate_rp, rp_mass
from .shrinkage import (
    TOL,
    andor_leafsize,
    check_parity_equality,
    check_proof_chain,
    check_useful_expectation,
    curve_table,
    expectation_value,
    expected_useful_count,
    gamma,
    mc_expectation,
    random_decision_list,
    report_row,
    tail_dt_depth,
)


@dataclass(frozen=True)
class CheckLine:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    lines: list[CheckLine] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.lines.append(CheckLine(name, passed, detail))


def _tenths() -> list[float]:
    return [i / 10 for i in range(1, 10)]


def _tenths_closed() -> list[float]:
    return [i / 10 for i in range(11)]


def _twentieths_half() -> list[float]:
    return [i / 20 for i in range(1, 11)]


def _all_n3() -> Iterable[tuple[str, HypercubeFunction]]:
    for code in range(256):
        outputs = [(code >> x) & 1 for x in range(8)]
        yield f"n3-{code:03d}", make_function(3, outputs)


def _random_corpus(seed: int, count: int, alphabet: int, n: int = 4) -> list[tuple[str, HypercubeFunction]]:
    return [
        (f"random:{n},{alphabet},{seed + i}", random_function(n, alphabet, seed + i))
        for i in range(count)
    ]


def _power_bound_sweep(
    result: SuiteResult,
    name: str,
    corpus: Iterable[tuple[str, HypercubeFunction]],
    measure: str,
    shift: int,
    grid: list[float],
    exponent: Callable[[float], float] = gamma,
) -> None:
    """Check E[measure + shift] <= (measure + shift)^exponent(p) on a corpus."""
    worst = -math.inf
    worst_at = ""
    count = 0
    for fn_id, f in corpus:
        base = measure_value(measure, f) + shift
        for p in grid:
            expect = float(expectation_value(f, p, measure)) + shift
            slack = expect - base ** exponent(p)
            count += 1
            if slack > worst:
                worst, worst_at = slack, f"{fn_id} at p={p}"
    result.add(
        name, worst <= TOL,
        f"{count} cells, worst slack {worst:.3e} ({worst_at})",
    )


# -- individual suites -----------------------------------------------------------

def suite_thm2(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Decision-tree shrinkage is an equality on parity functions."""
    result = SuiteResult("thm2")
    for k in range(1, 7):
        worst = 0.0
        for p in _tenths_closed():
            report = check_parity_equality(k, p)
            worst = max(worst, abs(report.expectation - report.bound))
        result.add(f"parity-{k}-equality", worst <= TOL, f"max |E - (1+p)^k| = {worst:.3e}")
    return result


def suite_thm3_dl(seed: int = 0, workers: int = 1) -> SuiteResult:
    """List-size shrinkage with the gamma exponent, exact per cell."""
    result = SuiteResult("thm3-dl")
    _power_bound_sweep(result, "n3-exhaustive", _all_n3(), "dl", 0, _tenths())
    corpus = _random_corpus(seed, 100, 2) + _random_corpus(seed + 100, 100, 4)
    _power_bound_sweep(result, "n4-random-200", corpus, "dl", 0, _tenths())
    return result


def suite_thm3_dnf(seed: int = 0, workers: int = 1) -> SuiteResult:
    """DNF-size-plus-one shrinkage, and dually for CNF.

    The stated plus-one form is checked verbatim even though it fails
    wherever restrictions often leave the function identically 1 (a single
    positive literal already gives E[DNF+1] = 1.5 + p/2 > 2^gamma(p) for
    small p, because the constant 1 still costs one clause).  The quantity
    the underlying argument actually controls, the expected useful-index
    count of the minimal-DNF list, is checked alongside and does hold.
    """
    result = SuiteResult("thm3-dnf")
    _power_bound_sweep(result, "n3-dnf-plus1", _all_n3(), "dnf", 1, _tenths())
    _power_bound_sweep(result, "n3-cnf-plus1", _all_n3(), "cnf", 1, _tenths())

    from .dlists import dnf_to_dl
    from .measures import dnf_min_size

    worst = -math.inf
    worst_at = ""
    for fn_id, f in _all_n3():
        formula = dnf_min_size(f, with_witness=True).witness
        dlist = dnf_to_dl(formula, f.n)
        for p in _tenths():
            expect = float(expected_useful_count(dlist, p))
            slack = expect - dlist.size ** gamma(p)
            if slack > worst:
                worst, worst_at = slack, f"{fn_id} at p={p}"
    result.add(
        "n3-dnf-list-useful-form", worst <= TOL,
        f"E[#useful] of the minimal-DNF list stays within (m+1)^gamma; "
        f"worst slack {worst:.3e} ({worst_at})",
    )
    return result


def suite_cor5(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Orthogonal and weakly orthogonal list shrinkage."""
    result = SuiteResult("cor5")
    _power_bound_sweep(result, "n3-odl", _all_n3(), "odl", 0, _tenths())
    _power_bound_sweep(result, "n3-wodl", _all_n3(), "wodl", 0, _tenths())
    return result


def suite_lwz(seed: int = 0, workers: int = 1) -> SuiteResult:
    """List shrinkage against the width bound (4/(1-p))^width."""
    result = SuiteResult("lwz")
    for name, corpus in (
        ("n3-exhaustive", list(_all_n3())),
        ("n4-sample-50", _random_corpus(seed + 300, 25, 2) + _random_corpus(seed + 400, 25, 4)),
    ):
        worst = -math.inf
        worst_at = ""
        for fn_id, f in corpus:
            width = measure_value("dl_width", f)
            for p in _tenths():
                expect = float(expectation_value(f, p, "dl"))
                slack = expect - (4 / (1 - p)) ** width
                if slack > worst:
                    worst, worst_at = slack, f"{fn_id} at p={p}"
        result.add(name, worst <= TOL, f"worst slack {worst:.3e} ({worst_at})")
    return result


def suite_proof_chain(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Step-by-step audit of the shrinkage argument on random lists.

    Runs in exact rational mode: set comparisons and mass ratios are checked
    as Fractions, only the gamma side uses a float tolerance.  The full
    prefix set identity is reported separately because it fails whenever two
    clauses conflict on a shared variable (already visible on the worked
    four-clause example at the all-star restriction); the consequence the
    membership bound consumes holds unconditionally.
    """
    result = SuiteResult("proof-chain")
    probs = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
    core_failures: list[str] = []
    identity_failures: list[str] = []
    ledgers = 0
    for i in range(100):
        n = 2 + i % 3
        dlist = random_decision_list(n, max_width=3, max_size=8, seed=seed + i)
        for p in probs:
            ledger = check_proof_chain(dlist, p, list_id=f"list-{i}")
            ledgers += 1
            for item in ledger.items:
                if item.passed:
                    continue
                note = f"list-{i} p={p} {item.name}: {item.detail}"
                if item.name == "useful-prefix-identity":
                    identity_failures.append(note)
                else:
                    core_failures.append(note)
            useful = check_useful_expectation(dlist, p, list_id=f"list-{i}")
            if not useful.satisfied:
                core_failures.append(f"list-{i} p={p} expected-useful (profile path)")
    result.add(
        "random-lists-core-steps", not core_failures,
        f"{ledgers} ledgers over 100 lists x 4 rationals"
        + (f"; first failure {core_failures[0]}" if core_failures else ""),
    )
    result.add(
        "random-lists-prefix-set-identity", not identity_failures,
        f"{len(identity_failures)}/{ledgers} ledgers hit a conflicting-clause"
        " counterexample"
        + (f"; first {identity_failures[0]}" if identity_failures else ""),
    )
    return result


def suite_lemma9(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Expected clause leaf-size under the half-density restriction.

    The defining sum must equal (k/2)(3/4)^(k-1) exactly and stay at most 1;
    both closed forms are emitted so their disagreement is visible.
    """
    result = SuiteResult("lemma9")
    half = Fraction(1, 2)
    for k in range(1, 13):
        row = andor_leafsize(k, half)
        target = Fraction(k, 2) * Fraction(3, 4) ** (k - 1)
        ok = row.exact == target and row.exact <= 1
        result.add(
            f"and{k}-half-density", ok,
            f"sum={row.expectation:.10f} closed={row.closed_form:.10f} "
            f"variant={row.closed_form_variant:.10f} target={float(target):.10f}",
        )
    return result


def suite_cor10(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Depth-2 gate-count shrinkage (F2 = min of DNF and CNF size)."""
    result = SuiteResult("cor10")
    _power_bound_sweep(result, "n3-f2-plus1", _all_n3(), "f2", 1, _tenths())
    return result


def suite_cor11(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Depth-2 leaf-size shrinkage with the doubled exponent, p <= 1/2."""
    result = SuiteResult("cor11")
    _power_bound_sweep(
        result, "n3-l2-plus1", _all_n3(), "l2", 1, _twentieths_half(),
        exponent=lambda p: gamma(2 * p),
    )
    return result


def suite_chains(seed: int = 0, workers: int = 1) -> SuiteResult:
    """The measure inequality chains on every 3-variable Boolean function."""
    result = SuiteResult("chains")
    bad: list[str] = []
    for fn_id, f in _all_n3():
        report = measure_chain_check(f, fn_id)
        for leg in report.violations():
            bad.append(f"{fn_id}: {leg.name} ({leg.lhs} > {leg.rhs})")
    result.add(
        "n3-exhaustive-chains", not bad,
        "256 functions, 11 legs each" + (f"; first violation {bad[0]}" if bad else ""),
    )
    return result


def suite_composition(seed: int = 0, workers: int = 1) -> SuiteResult:
    """R_p factors through R_2p followed by a half-density restriction.

    Compares the per-outcome mass of the composition against R_p directly,
    by double enumeration.
    """
    result = SuiteResult("composition")
    for n in range(1, 6):
        worst = 0.0
        for p in _twentieths_half():
            composed: dict[Restriction, float] = {}
            for outer in enumerate_rp(n, 2 * p, cap=n):
                for inner in enumerate_rp(outer.restriction.star_count(), 0.5, cap=n):
                    combined = compose(outer.restriction, inner.restriction)
                    composed[combined] = (
                        composed.get(combined, 0.0) + outer.mass * inner.mass
                    )
            for target in enumerate_rp(n, p, cap=n):
                got = composed.get(target.restriction, 0.0)
                worst = max(worst, abs(got - target.mass))
        result.add(f"n{n}-mass-match", worst <= 1e-12, f"max mass error {worst:.3e}")
    return result


def suite_tightness(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Lower-bound side: the gamma exponent cannot drop below log2(1+p)."""
    result = SuiteResult("tightness")

    f = read_once_tree(2)
    worst = 0.0
    for p in _tenths_closed():
        expect = float(expectation_value(f, p, "dl"))
        worst = max(worst, abs(expect - (1 + p) ** 2))
    result.add("rotree2-dl-equality", worst <= TOL, f"max |E - (1+p)^2| = {worst:.3e}")

    golden = math.sqrt(5) - 2
    spot_ok = (
        abs(gamma(golden) - 0.5) <= 1e-12
        and gamma(0) == 0.0
        and gamma(1) == 1.0
    )
    result.add("gamma-spot-values", spot_ok, f"gamma(sqrt5-2)={gamma(golden)!r}")

    rows = curve_table([i / 100 for i in range(101)])
    dominated = all(g >= lo for _, g, lo in rows)
    increasing = all(rows[i][1] <= rows[i + 1][1] for i in range(len(rows) - 1))
    result.add(
        "gamma-dominates-log2-grid", dominated and increasing,
        f"101 grid points, min gap {min(g - lo for _, g, lo in rows):.3e}",
    )

    # Measurement only: how tight the DNF+1 bound runs on parity functions.
    details = []
    for k in (2, 3, 4):
        g = parity(k)
        base = measure_value("dnf", g) + 1
        ratios = [
            (float(expectation_value(g, p, "dnf")) + 1) / base ** math.log2(1 + p)
            for p in _tenths()
        ]
        details.append(f"parity-{k} max ratio {max(ratios):.4f}")
    result.add("dnf-parity-curve(measurement)", True, "; ".join(details))
    return result


def suite_mc(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Monte Carlo agrees with exact values and is worker-count invariant."""
    from .families import and_function, or_function

    result = SuiteResult("mc")
    corpus: list[tuple[str, HypercubeFunction, str]] = [
        ("parity:2", parity(2), "dt"),
        ("parity:3", parity(3), "dt"),
        ("parity:4", parity(4), "dt"),
        ("parity:3", parity(3), "dl"),
        ("rotree:2", read_once_tree(2), "dl"),
        ("rotree:2", read_once_tree(2), "dt"),
        ("and:3", and_function(3), "dnf"),
        ("or:3", or_function(3), "cnf"),
        ("tribes:2,2", tribes(2, 2), "dl"),
        ("tribes:2,2", tribes(2, 2), "dnf"),
    ]
    points = [
        (fn_id, f, measure, p)
        for (fn_id, f, measure), p in zip(corpus * 2, [0.25] * 10 + [0.6] * 10)
    ]
    bad: list[str] = []
    mismatch: list[str] = []
    for fn_id, f, measure, p in points:
        exact = float(expectation_value(f, p, measure))
        est = mc_expectation(f, p, measure, samples=100_000, seed=seed, function_id=fn_id)
        slack = abs(est.expectation - exact)
        if slack > 4 * est.stderr + 1e-12:
            bad.append(f"{fn_id}/{measure}@p={p}: |{est.expectation}-{exact}| > 4se")
        wide = mc_expectation(
            f, p, measure, samples=100_000, seed=seed, workers=8, function_id=fn_id
        )
        if report_row(wide) != report_row(est):
            mismatch.append(f"{fn_id}/{measure}@p={p}")
    result.add(
        "mc-within-4-stderr", not bad,
        "20 points, N=100000" + (f"; first failure {bad[0]}" if bad else ""),
    )
    result.add(
        "mc-worker-invariance", not mismatch,
        "1 vs 8 workers byte-identical rows"
        + (f"; first mismatch {mismatch[0]}" if mismatch else ""),
    )
    return result


def suite_tails(seed: int = 0, workers: int = 1) -> SuiteResult:
    """Measurement-only switching-lemma probes: tails and small-p tree size.

    No pass/fail against the bounds themselves (their constants are
    unspecified); the gate is internal consistency of the emitted columns.
    """
    result = SuiteResult("tails")
    corpus = [
        ("tribes:2,2", tribes(2, 2)),
        ("parity:3", parity(3)),
        ("rotree:2", read_once_tree(2)),
        ("random:4,2,7", random_function(4, 2, seed + 7)),
    ]
    ok = True
    detail_parts = []
    for fn_id, f in corpus:
        width = measure_value("dl_width", f)
        size = measure_value("dl", f)
        for p in (0.1, 0.2, 0.3):
            tails = [tail_dt_depth(f, p, t) for t in range(f.n + 2)]
            in_range = all(-1e-12 <= v <= 1 + 1e-12 for v in tails)
            monotone = all(tails[i] + 1e-12 >= tails[i + 1] for i in range(len(tails) - 1))
            starts_at_one = abs(tails[0] - 1) <= 1e-12
            ok = ok and in_range and monotone and starts_at_one
        detail_parts.append(
            f"{fn_id}: p*width ref {0.2 * width:.2f}, p*log2(dl) ref {0.2 * math.log2(size):.2f}"
        )
    result.add("tail-columns-consistent", ok, "; ".join(detail_parts))

    ok_small_p = True
    rows = []
    for fn_id, f in corpus:
        size = measure_value("dl", f)
        if size <= 1:
            continue
        for c in [i / 10 for i in range(1, 11)]:
            p = min(1.0, c / math.log2(size))
            expect = float(expectation_value(f, p, "dt"))
            ok_small_p = ok_small_p and expect >= 1 - 1e-12
            rows.append(f"{fn_id}@c={c:.1f}: E[dt]={expect:.3f}")
    result.add(
        "small-p-tree-size(measurement)", ok_small_p,
        f"{len(rows)} rows emitted; E[dt] >= 1 throughout",
    )
    return result


# -- worked four-clause example ---------------------------------------------------

@dataclass(frozen=True)
class WorkedExample:
    dlist: DecisionList
    rho1: Restriction
    rho2: Restriction
    useful1: tuple[int, ...]
    useful2: tuple[int, ...]
    restricted1: DecisionList
    restricted2: DecisionList
    restricted1_text: str
    restricted2_text: str
    mu_class1: tuple[int, str]
    mu_class2: tuple[int, str]
    checks: tuple[CheckLine, ...]

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.checks)


def _restricted_text(dlist: DecisionList, rho: Restriction) -> str:
    """Render a restricted list with the original variable names."""
    names = {j: f"x{orig}" for j, orig in enumerate(rho.stars(), start=1)}
    restricted = restrict_dl(dlist, rho)
    parts = [
        f"({format_clause(clause, names)}, b{out})" for clause, out in restricted.entries
    ]
    return "(" + ", ".join(parts) + ")"


def worked_example() -> WorkedExample:
    """The four-clause list whose useful-index sets drive the mu definition.

    Clauses x1&x3, !x1&x4, x2&!x3, T with outputs 1..4; the two inspected
    restrictions fix x1=1 and x1=x2=1.  Every derived object is checked
    against its expected value.
    """
    dlist = DecisionList(
        4,
        (
            (Clause((Literal(1, True), Literal(3, True))), 1),
            (Clause((Literal(1, False), Literal(4, True))), 2),
            (Clause((Literal(2, True), Literal(3, False))), 3),
            (TOP, 4),
        ),
    )
    rho1 = Restriction.fixing(4, {1: 1})
    rho2 = Restriction.fixing(4, {1: 1, 2: 1})

    useful1 = useful_indices(dlist, rho1)
    useful2 = useful_indices(dlist, rho2)
    restricted1 = restrict_dl(dlist, rho1)
    restricted2 = restrict_dl(dlist, rho2)
    text1 = _restricted_text(dlist, rho1)
    text2 = _restricted_text(dlist, rho2)
    mu1 = classify_mu(dlist, rho1)
    mu2 = classify_mu(dlist, rho2)

    # Expected values, spelled out: under rho1 the free variables are
    # x2, x3, x4 (renumbered 1..3), so x3 becomes x2 of the subcube.
    expected_restricted1 = DecisionList(
        3,
        (
            (Clause((Literal(2, True),)), 1),
            (Clause((Literal(1, True), Literal(2, False))), 3),
            (TOP, 4),
        ),
    )
    expected_restricted2 = DecisionList(
        2,
        (
            (Clause((Literal(1, True),)), 1),
            (Clause((Literal(1, False),)), 3),
        ),
    )
    checks = (
        CheckLine("useful-under-rho1", useful1 == (1, 3, 4), f"{useful1}"),
        CheckLine("useful-under-rho2", useful2 == (1, 3), f"{useful2}"),
        CheckLine(
            "restricted-list-rho1",
            restricted1 == expected_restricted1
            and text1 == "((x3, b1), (x2 & !x3, b3), (T, b4))",
            text1,
        ),
        CheckLine(
            "restricted-list-rho2",
            restricted2 == expected_restricted2
            and text2 == "((x3, b1), (!x3, b3))",
            text2,
        ),
        CheckLine(
            "rho1-contributes-to-mu4",
            mu1 == (4, "max-useful-is-final"),
            f"mu position {mu1[0]} ({mu1[1]})",
        ),
        CheckLine(
            "rho2-contributes-to-mu4",
            mu2 == (4, "clause-not-identically-one"),
            f"mu position {mu2[0]} ({mu2[1]})",
        ),
    )
    return WorkedExample(
        dlist, rho1, rho2, useful1, useful2, restricted1, restricted2,
        text1, text2, mu1, mu2, checks,
    )


# -- suite registry ----------------------------------------------------------------

SUITES: dict[str, Callable[..., SuiteResult]] = {
    "thm2": suite_thm2,
    "thm3-dl": suite_thm3_dl,
    "thm3-dnf": suite_thm3_dnf,
    "cor5": suite_cor5,
    "lwz": suite_lwz,
    "proof-chain": suite_proof_chain,
    "lemma9": suite_lemma9,
    "cor10": suite_cor10,
    "cor11": suite_cor11,
    "chains": suite_chains,
    "composition": suite_composition,
    "tightness": suite_tightness,
    "mc": suite_mc,
    "tails": suite_tails,
}


def run_suite(name: str, seed: int = 0, workers: int = 1) -> SuiteResult:
    """Run one named suite, or every suite for name "all"."""
    if name == "all":
        merged = SuiteResult("all")
        start = time.perf_counter()
        for sub in SUITES:
            result = run_suite(sub, seed=seed, workers=workers)
            for line in result.lines:
                merged.add(f"{sub}/{line.name}", line.passed, line.detail)
        merged.elapsed = time.perf_counter() - start
        return merged
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {['all', *SUITES]}")
    start = time.perf_counter()
    result = fn(seed=seed, workers=workers)
    result.elapsed = time.perf_counter() - start
    return result
