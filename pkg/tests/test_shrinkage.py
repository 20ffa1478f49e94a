"""Expectations, bounds, Monte Carlo, and the proof-chain audit."""

import math
from fractions import Fraction

import pytest

from shrinklab.core import make_function
from shrinklab.dlists import (
    TOP,
    DecisionList,
    dnf_to_dl,
    parse_clause,
    useful_indices,
    validate_dl,
)
from shrinklab.families import and_function, parity, random_function, read_once_tree, tribes
from shrinklab.measures import dnf_min_size, measure_value
from shrinklab.restrictions import enumerate_rp
from shrinklab.shrinkage import (
    BoundSpec,
    andor_leafsize,
    check_dl_shrinkage,
    check_dnf_shrinkage,
    check_dt_shrinkage,
    check_f2,
    check_l2,
    check_lwz_width_bound,
    check_odl,
    check_parity_equality,
    check_proof_chain,
    check_useful_expectation,
    check_wodl,
    curve_table,
    exact_expectation,
    expectation_value,
    expected_useful_count,
    gamma,
    mc_expectation,
    random_decision_list,
    report_row,
    tail_dt_depth,
)


def test_gamma_spot_values():
    assert gamma(0) == 0.0
    assert gamma(1) == 1.0
    assert abs(gamma(math.sqrt(5) - 2) - 0.5) <= 1e-12
    assert gamma(0.5) == pytest.approx(math.log(3) / math.log(4), abs=1e-12)
    with pytest.raises(ValueError):
        gamma(1.5)


def test_gamma_monotone_and_dominates_tree_exponent():
    grid = [i / 100 for i in range(101)]
    values = [gamma(p) for p in grid]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert all(gamma(p) >= math.log2(1 + p) - 1e-15 for p in grid)


def test_bound_spec_families():
    assert BoundSpec("b", 4, "pow_log2_1p").value(1.0) == pytest.approx(4.0)
    assert BoundSpec("b", 3, "pow_gamma").value(0.5) == pytest.approx(3 ** gamma(0.5))
    assert BoundSpec("b", 5, "pow_gamma_2p").value(0.25) == pytest.approx(5 ** gamma(0.5))
    assert BoundSpec("b", 2, "lwz_width").value(0.5) == pytest.approx(64.0)
    with pytest.raises(ValueError):
        BoundSpec("b", 5, "pow_gamma_2p").value(0.6)
    with pytest.raises(ValueError):
        BoundSpec("b", 2, "lwz_width").value(1.0)
    with pytest.raises(ValueError):
        BoundSpec("b", 2, "warp").value(0.5)


def test_exact_expectation_matches_direct_sum():
    # the star-profile evaluation must equal the plain weighted sum
    from shrinklab.core import apply_restriction

    for seed in (0, 1):
        f = random_function(3, 2, seed + 130)
        for measure in ("dt", "dl", "dnf"):
            for p in (0.0, 0.3, 0.7, 1.0):
                direct = math.fsum(
                    w.mass * measure_value(measure, apply_restriction(f, w.restriction))
                    for w in enumerate_rp(3, p)
                )
                assert float(expectation_value(f, p, measure)) == pytest.approx(
                    direct, abs=1e-12
                )


def test_exact_expectation_parity_and_rotree():
    for p in (0.0, 0.25, 0.5, 1.0):
        assert float(expectation_value(parity(3), p, "dt")) == pytest.approx(
            (1 + p) ** 3, abs=1e-9
        )
        assert float(expectation_value(read_once_tree(2), p, "dl")) == pytest.approx(
            (1 + p) ** 2, abs=1e-9
        )


def test_exact_expectation_constant_and_rational():
    const = make_function(2, [3, 3, 3, 3])
    for measure in ("dt", "dl"):
        assert float(expectation_value(const, 0.37, measure)) == pytest.approx(1.0)
    exact = expectation_value(parity(2), Fraction(1, 2), "dt")
    assert exact == Fraction(9, 4)


def test_exact_expectation_report_shape():
    report = exact_expectation(parity(2), 0.5, "dt", function_id="parity:2")
    assert report.method == "exact" and report.stderr == 0.0
    assert report.samples == 0 and report.seed is None
    assert report.bound is None and report.satisfied is None
    assert report.function == "parity:2"


def test_mc_expectation_matches_exact_within_stderr():
    f = parity(4)
    exact = float(expectation_value(f, 0.3, "dt"))
    est = mc_expectation(f, 0.3, "dt", samples=100_000, seed=7)
    assert est.stderr > 0
    assert abs(est.expectation - exact) <= 4 * est.stderr
    assert est.samples == 100_000 and est.seed == 7


def test_mc_expectation_deterministic_and_worker_invariant():
    f = tribes(2, 2)
    a = mc_expectation(f, 0.4, "dl", samples=30_000, seed=11)
    b = mc_expectation(f, 0.4, "dl", samples=30_000, seed=11)
    assert report_row(a) == report_row(b)
    c = mc_expectation(f, 0.4, "dl", samples=30_000, seed=11, workers=4)
    assert report_row(a) == report_row(c)


def test_mc_expectation_edge_cases():
    one = mc_expectation(parity(2), 0.5, "dt", samples=1, seed=3)
    assert one.stderr == 0.0
    zero_p = mc_expectation(parity(3), 0.0, "dt", samples=2000, seed=5)
    assert zero_p.expectation == pytest.approx(1.0)


def test_check_dt_shrinkage_and_parity_equality():
    report = check_dt_shrinkage(make_function(2, [0, 1, 1, 0]), 0.3)
    assert report.satisfied
    assert report.expectation == pytest.approx(1.3**2, abs=1e-9)
    assert report.bound == pytest.approx(4 ** math.log2(1.3), abs=1e-12)
    eq = check_parity_equality(3, 0.5)
    assert eq.satisfied and eq.expectation == pytest.approx(3.375)
    assert check_parity_equality(1, 0.0).expectation == pytest.approx(1.0)


def test_check_dl_and_orthogonal_variants():
    xor = make_function(2, [0, 1, 1, 0])
    r = check_dl_shrinkage(xor, 0.5)
    assert r.satisfied and r.bound == pytest.approx(3 ** gamma(0.5), abs=1e-12)
    assert check_odl(xor, 0.5).satisfied
    assert check_wodl(xor, 0.5).satisfied
    const = make_function(1, [1, 1])
    assert check_dl_shrinkage(const, 0.9).satisfied


def test_check_dnf_form_fails_on_narrow_clauses():
    # the plus-one form is implemented verbatim; a single positive literal
    # violates it at small p because the constant 1 still costs one clause
    literal = make_function(1, [0, 1])
    r = check_dnf_shrinkage(literal, 0.1)
    assert r.measure == "dnf+1"
    assert r.expectation == pytest.approx(1.55, abs=1e-12)
    assert r.bound == pytest.approx(2 ** gamma(0.1), abs=1e-12)
    assert not r.satisfied
    # while the useful-count of the minimal-DNF list obeys the same bound
    formula = dnf_min_size(literal, with_witness=True).witness
    assert check_useful_expectation(dnf_to_dl(formula, 1), 0.1).satisfied
    # constant 0 is the trivial passing case
    assert check_dnf_shrinkage(make_function(1, [0, 0]), 0.5).satisfied


def test_check_f2_and_l2():
    xor = make_function(2, [0, 1, 1, 0])
    f2r = check_f2(xor, 0.3)
    assert f2r.satisfied and f2r.measure == "f2+1"
    l2r = check_l2(xor, 0.25)
    assert l2r.satisfied and l2r.bound == pytest.approx(5 ** gamma(0.5), abs=1e-12)
    assert check_f2(make_function(1, [1, 1]), 0.4).satisfied
    with pytest.raises(ValueError):
        check_l2(xor, 0.6)


def test_check_lwz_width_bound():
    const = make_function(2, [1, 1, 1, 1])
    r = check_lwz_width_bound(const, 0.5)
    assert r.satisfied and r.bound == pytest.approx(1.0)
    xor = make_function(2, [0, 1, 1, 0])
    r2 = check_lwz_width_bound(xor, 0.5)
    assert r2.satisfied and r2.bound == pytest.approx(64.0)
    with pytest.raises(ValueError):
        check_lwz_width_bound(xor, 1.0)


def test_check_useful_expectation_values():
    trivial = DecisionList(2, ((TOP, 1),))
    r = check_useful_expectation(trivial, 0.5)
    assert r.satisfied and r.expectation == pytest.approx(1.0)
    box = DecisionList(
        4,
        (
            (parse_clause("x1 & x3"), 1),
            (parse_clause("!x1 & x4"), 2),
            (parse_clause("x2 & !x3"), 3),
            (TOP, 4),
        ),
    )
    r2 = check_useful_expectation(box, 0.5)
    assert r2.satisfied
    assert r2.bound == pytest.approx(4 ** gamma(0.5), abs=1e-12)
    assert float(expected_useful_count(box, Fraction(1, 2))) == pytest.approx(
        r2.expectation
    )


def test_proof_chain_two_entry_list_equality_case():
    # ((x1, a), (T, b)) at p = 1/2: membership mass for position 1 equals
    # mu_1 times the width factor exactly
    dlist = DecisionList(1, ((parse_clause("x1"), 0), (TOP, 1)))
    ledger = check_proof_chain(dlist, Fraction(1, 2))
    assert ledger.passed
    by_name = {item.name: item for item in ledger.items}
    assert by_name["membership-vs-mu"].passed
    assert by_name["mu-normalization"].passed
    # hand check: Pr[1 useful] = (1+p)/2 = mu_1 * (1+p)/(1-p) = 1/4 * 3
    masses = [
        w.mass
        for w in enumerate_rp(1, Fraction(1, 2))
        if 1 in useful_indices(dlist, w.restriction)
    ]
    assert sum(masses) == Fraction(3, 4)


def test_proof_chain_box_list_rational():
    box = DecisionList(
        4,
        (
            (parse_clause("x1 & x3"), 1),
            (parse_clause("!x1 & x4"), 2),
            (parse_clause("x2 & !x3"), 3),
            (TOP, 4),
        ),
    )
    ledger = check_proof_chain(box, Fraction(1, 3))
    by_name = {item.name: item for item in ledger.items}
    for name in (
        "restricted-size",
        "mu-upper-bound",
        "mass-ratio",
        "useful-prefix-consequence",
        "membership-vs-mu",
        "mu-normalization",
        "expected-useful",
    ):
        assert by_name[name].passed, name
    # the full prefix set identity fails on this very list: augmenting the
    # all-star restriction by clause 2 starves clause 1 of witnesses
    assert not by_name["useful-prefix-identity"].passed


def test_proof_chain_rejects_endpoint_p():
    dlist = DecisionList(1, ((TOP, 0),))
    with pytest.raises(ValueError):
        check_proof_chain(dlist, 0.0)


def test_andor_leafsize_values():
    half = Fraction(1, 2)
    row = andor_leafsize(1, half)
    assert row.expectation == pytest.approx(0.5)
    assert row.exact == Fraction(1, 2)
    row2 = andor_leafsize(2, half)
    assert row2.exact == Fraction(3, 4)
    row4 = andor_leafsize(4, half)
    assert row4.exact == Fraction(4, 2) * Fraction(3, 4) ** 3
    assert row4.expectation <= 1
    # the two closed forms split at k >= 2; the identity form tracks the sum
    assert row2.closed_form == pytest.approx(row2.expectation, abs=1e-12)
    assert row2.closed_form_variant != pytest.approx(row2.expectation)
    # float path agrees with the exact path
    assert andor_leafsize(3, 0.5).expectation == pytest.approx(
        float(andor_leafsize(3, half).exact), abs=1e-12
    )


def test_andor_leafsize_brute_force_small_k():
    # full 3^k enumeration of restrictions of AND_k as the oracle
    from shrinklab.core import apply_restriction, is_constant

    for k in (1, 2, 3):
        f = and_function(k)
        for p in (0.3, 0.5):
            total = 0.0
            for w in enumerate_rp(k, p):
                g = apply_restriction(f, w.restriction)
                leaves = 0 if is_constant(g) is not None else g.n
                total += w.mass * leaves
            assert andor_leafsize(k, p).expectation == pytest.approx(total, abs=1e-12)


def test_tail_dt_depth():
    f = tribes(2, 2)
    assert tail_dt_depth(f, 0.2, 0) == pytest.approx(1.0)
    assert tail_dt_depth(make_function(1, [1, 1]), 0.5, 1) == 0.0
    tails = [tail_dt_depth(f, 0.2, t) for t in range(6)]
    assert all(-1e-12 <= v <= 1 + 1e-12 for v in tails)
    assert all(a >= b - 1e-12 for a, b in zip(tails, tails[1:]))
    # exact oracle at t=2: direct enumeration
    from shrinklab.core import apply_restriction
    from shrinklab.measures import dt_depth

    direct = math.fsum(
        w.mass
        for w in enumerate_rp(4, 0.2)
        if dt_depth(apply_restriction(f, w.restriction)).value >= 2
    )
    assert tail_dt_depth(f, 0.2, 2) == pytest.approx(direct, abs=1e-12)


def test_curve_table():
    rows = curve_table([0.0, math.sqrt(5) - 2, 1.0])
    assert rows[0] == (0.0, 0.0, 0.0)
    assert rows[1][1] == pytest.approx(0.5, abs=1e-12)
    assert rows[1][2] == pytest.approx(math.log2(math.sqrt(5) - 1), abs=1e-12)
    assert rows[2] == (1.0, 1.0, 1.0)


def test_random_decision_list_shape():
    for i in range(30):
        dlist = random_decision_list(3, max_width=3, max_size=8, seed=i)
        assert 1 <= dlist.size <= 8
        assert dlist.width <= 3
        assert dlist.entries[-1][0] == TOP
        assert validate_dl(dlist) is None
        assert all(clause.width >= 1 for clause, _ in dlist.entries[:-1])
