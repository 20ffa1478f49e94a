"""Exact minimizers against brute-force oracles and frozen spec values."""

import itertools

import pytest

from shrinklab.caps import BudgetError
from shrinklab.core import (
    HypercubeFunction,
    Restriction,
    apply_restriction,
    complement,
    make_function,
)
from shrinklab.dlists import TOP, DecisionList, DnfFormula, parse_clause, validate_dl
from shrinklab.families import and_function, or_function, parity, random_function, read_once_tree, tribes
from shrinklab.measures import (
    CnfWitness,
    cnf_min_size,
    cnf_width,
    dl_min_size,
    dl_width,
    dnf_min_size,
    dnf_width,
    dt_depth,
    dt_size,
    dt_tree_depth,
    dt_tree_eval,
    dt_tree_leaves,
    f2_size,
    l2_leafsize,
    measure_chain_check,
    measure_value,
    odl_min_size,
    prime_implicants,
    wodl_min_size,
)
from shrinklab.restrictions import restriction_from_code


def brute_dt_size(f: HypercubeFunction) -> int:
    """Plain recursion, no memo, no relabeling: independent of the fast path."""
    if all(v == f.outputs[0] for v in f.outputs):
        return 1
    best = 1 << f.n
    for var in range(1, f.n + 1):
        lo = apply_restriction(f, Restriction.fixing(f.n, {var: 0}))
        hi = apply_restriction(f, Restriction.fixing(f.n, {var: 1}))
        best = min(best, brute_dt_size(lo) + brute_dt_size(hi))
    return best


def all_clauses(n: int):
    out = []
    for code in range(3**n):
        lits = []
        c = code
        for j in range(1, n + 1):
            d = c % 3
            c //= 3
            if d != 2:
                from shrinklab.dlists import Literal

                lits.append(Literal(j, d == 1))
        from shrinklab.dlists import Clause

        out.append(Clause(tuple(lits)))
    return out


def brute_dl_size(f: HypercubeFunction, limit: int = 5) -> int:
    """Enumerate every clause sequence up to the limit; n <= 2 only."""
    clauses = all_clauses(f.n)
    points = list(range(1 << f.n))
    for size in range(1, limit + 1):
        for combo in itertools.product(clauses, repeat=size):
            outputs = []
            ok = True
            for clause in combo:
                region = [x for x in points if clause.evaluate(x)]
                outputs.append(None if not region else f.outputs[region[0]])
            entries = tuple(
                (clause, out if out is not None else 0)
                for clause, out in zip(combo, outputs)
            )
            candidate = DecisionList(f.n, entries)
            if validate_dl(candidate) is not None:
                continue
            if candidate.tabulate() == f:
                return size
            # outputs above used the first covered point; also try the
            # correct first-fire assignment before giving up on this combo
            entries2 = []
            covered: set[int] = set()
            feasible = True
            for clause in combo:
                fresh = [x for x in points if clause.evaluate(x) and x not in covered]
                if fresh:
                    values = {f.outputs[x] for x in fresh}
                    if len(values) > 1:
                        feasible = False
                        break
                    entries2.append((clause, values.pop()))
                    covered.update(fresh)
                else:
                    entries2.append((clause, 0))
            if feasible and len(covered) == len(points):
                return size
    raise AssertionError("limit too small")


def test_dt_size_spec_values():
    assert dt_size(make_function(0, [7])).value == 1
    assert dt_depth(make_function(0, [7])).value == 0
    for k in (1, 2, 3):
        assert dt_size(parity(k)).value == 2**k
        assert dt_depth(parity(k)).value == k
    assert dt_size(read_once_tree(2)).value == 4
    assert dt_depth(read_once_tree(2)).value == 2


def test_dt_size_against_brute_force():
    for code in range(256):
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        assert dt_size(f).value == brute_dt_size(f)
    for seed in range(5):
        f = random_function(3, 4, seed)
        assert dt_size(f).value == brute_dt_size(f)


def test_dt_witness_evaluates_and_attains():
    for seed in range(6):
        f = random_function(3, 3, seed + 50)
        result = dt_size(f, with_witness=True)
        tree = result.witness
        assert dt_tree_leaves(tree) == result.value
        assert all(dt_tree_eval(tree, x) == f.value(x) for x in range(8))
        depth_result = dt_depth(f, with_witness=True)
        assert dt_tree_depth(depth_result.witness) == depth_result.value
        assert all(dt_tree_eval(depth_result.witness, x) == f.value(x) for x in range(8))


def test_dt_restriction_monotone():
    for seed in range(4):
        f = random_function(4, 2, seed + 60)
        base = dt_size(f).value
        for code in range(3**4):
            rho = restriction_from_code(4, code)
            assert dt_size(apply_restriction(f, rho)).value <= base


def test_prime_implicants_spec_values():
    assert prime_implicants(and_function(2)) == {parse_clause("x1 & x2")}
    assert prime_implicants(or_function(2)) == {parse_clause("x1"), parse_clause("x2")}
    assert prime_implicants(make_function(2, [0, 1, 1, 0])) == {
        parse_clause("x1 & !x2"),
        parse_clause("!x1 & x2"),
    }
    assert prime_implicants(make_function(1, [0, 0])) == set()
    assert prime_implicants(make_function(0, [1])) == {TOP}
    with pytest.raises(ValueError):
        prime_implicants(make_function(1, [0, 2]))


def test_prime_implicants_are_maximal_on_implicants():
    for seed in range(6):
        f = random_function(3, 2, seed + 70)
        pis = prime_implicants(f)
        for clause in pis:
            sat = [x for x in range(8) if clause.evaluate(x)]
            assert all(f.value(x) == 1 for x in sat)
            # dropping any literal must leak a zero point
            for lit in clause.literals:
                from shrinklab.dlists import Clause

                shrunk = Clause(tuple(l for l in clause.literals if l != lit))
                leaked = [x for x in range(8) if shrunk.evaluate(x)]
                assert any(f.value(x) == 0 for x in leaked)


def brute_min_cover(f: HypercubeFunction) -> int:
    """Exhaustive subset search over prime implicants."""
    pis = sorted(prime_implicants(f), key=str)
    on = [x for x in range(1 << f.n) if f.value(x) == 1]
    if not on:
        return 0
    for size in range(1, len(pis) + 1):
        for combo in itertools.combinations(pis, size):
            if all(any(c.evaluate(x) for c in combo) for x in on):
                return size
    raise AssertionError("prime implicants fail to cover the ON-set")


def test_dnf_min_size_spec_values():
    assert dnf_min_size(make_function(1, [0, 0])).value == 0
    assert dnf_min_size(make_function(1, [1, 1])).value == 1
    assert dnf_min_size(make_function(0, [1])).value == 1
    assert dnf_min_size(make_function(2, [0, 1, 1, 0])).value == 2
    assert cnf_min_size(make_function(2, [0, 1, 1, 0])).value == 2
    assert dnf_min_size(tribes(2, 2)).value == 2


def test_dnf_min_size_against_brute_cover():
    for code in range(256):
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        assert dnf_min_size(f).value == brute_min_cover(f)


def test_cnf_equals_dnf_of_complement():
    for code in range(0, 256, 7):
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        assert cnf_min_size(f).value == dnf_min_size(complement(f)).value


def test_dnf_witnesses_evaluate():
    for seed in range(6):
        f = random_function(3, 2, seed + 80)
        res = dnf_min_size(f, with_witness=True)
        assert res.witness.size == res.value
        assert all(res.witness.evaluate(x) == f.value(x) for x in range(8))
        cres = cnf_min_size(f, with_witness=True)
        assert isinstance(cres.witness, CnfWitness)
        assert cres.witness.size == cres.value
        assert all(cres.witness.evaluate(x) == f.value(x) for x in range(8))


def test_width_measures():
    assert dnf_width(make_function(1, [1, 1])).value == 0
    assert dnf_width(make_function(1, [0, 0])).value == 0
    assert dnf_width(or_function(2)).value == 1
    for k in (2, 3):
        assert dnf_width(parity(k)).value == k  # every implicant is a full minterm
    assert cnf_width(and_function(2)).value == 1
    res = dnf_width(tribes(2, 2), with_witness=True)
    assert res.value == 2
    assert all(res.witness.evaluate(x) == tribes(2, 2).value(x) for x in range(16))


def test_dl_min_size_spec_values():
    assert dl_min_size(make_function(0, [3])).value == 1
    assert dl_min_size(make_function(2, [1, 1, 1, 1])).value == 1
    assert dl_min_size(make_function(2, [0, 1, 1, 0])).value == 3
    assert dl_min_size(read_once_tree(2)).value == 4
    # a later clause only needs constancy on the still-uncovered points, so
    # parity lists are far smaller than parity trees: DL = DNF + 1 here
    assert [dl_min_size(parity(k)).value for k in (1, 2, 3)] == [2, 3, 5]


def oracle_dl_unpruned(f: HypercubeFunction) -> int:
    """Same state space, no dominance pruning: independent of the fast path."""
    from shrinklab.measures import _sat_masks

    masks = _sat_masks(f.n)
    vmasks: dict[int, int] = {}
    for x, v in enumerate(f.outputs):
        vmasks[v] = vmasks.get(v, 0) | (1 << x)
    vlist = list(vmasks.values())
    memo: dict[int, int] = {}

    def best(uncovered: int) -> int:
        if uncovered == 0:
            return 0
        if uncovered in memo:
            return memo[uncovered]
        moves = set()
        for sat in masks:
            s = sat & uncovered
            if s and any(s & ~vm == 0 for vm in vlist):
                moves.add(s)
        value = min(1 + best(uncovered & ~s) for s in moves)
        memo[uncovered] = value
        return value

    return best((1 << (1 << f.n)) - 1)


def test_dl_pruning_matches_unpruned_search():
    for code in list(range(0, 256, 13)) + [0b10010110]:
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        assert dl_min_size(f).value == oracle_dl_unpruned(f)
    assert dl_min_size(parity(3)).value == oracle_dl_unpruned(parity(3))
    for seed in range(4):
        f = random_function(3, 4, seed + 120)
        assert dl_min_size(f).value == oracle_dl_unpruned(f)


def test_dl_min_size_against_sequence_enumeration():
    for code in range(16):
        f = make_function(2, [(code >> x) & 1 for x in range(4)])
        assert dl_min_size(f).value == brute_dl_size(f)
    f = random_function(2, 3, seed=3)
    assert dl_min_size(f).value == brute_dl_size(f)


def test_dl_witness_valid_minimal():
    for seed in range(8):
        f = random_function(3, 3, seed + 90)
        res = dl_min_size(f, with_witness=True)
        witness = res.witness
        assert witness.size == res.value
        assert validate_dl(witness) is None
        assert witness.tabulate() == f


def test_dl_bounded_by_two_level_sizes():
    for code in range(256):
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        dl = dl_min_size(f).value
        assert dl <= dnf_min_size(f).value + 1
        assert dl <= cnf_min_size(f).value + 1


def test_odl_wodl_spec_values():
    const = make_function(1, [1, 1])
    assert odl_min_size(const).value == 1
    assert wodl_min_size(const).value == 1
    xor = make_function(2, [0, 1, 1, 0])
    assert odl_min_size(xor).value == 4  # every xor-constant subcube is a point
    assert wodl_min_size(xor).value == 3


def test_odl_wodl_witnesses():
    from shrinklab.dlists import is_orthogonal, is_weakly_orthogonal

    for seed in range(8):
        f = random_function(3, 2, seed + 100)
        ores = odl_min_size(f, with_witness=True)
        assert ores.witness.size == ores.value
        assert ores.witness.tabulate() == f
        assert is_orthogonal(ores.witness)
        wres = wodl_min_size(f, with_witness=True)
        assert wres.witness.size == wres.value
        assert wres.witness.tabulate() == f
        assert is_weakly_orthogonal(wres.witness)


def test_dl_width_values_and_witness():
    assert dl_width(make_function(2, [1, 1, 1, 1])).value == 0
    assert dl_width(make_function(2, [0, 1, 1, 0])).value == 2
    assert dl_width(or_function(3)).value == 1
    res = dl_width(tribes(2, 2), with_witness=True)
    assert res.witness.width == res.value
    assert res.witness.tabulate() == tribes(2, 2)


def test_f2_and_l2():
    assert f2_size(make_function(1, [0, 0])).value == 0
    assert f2_size(make_function(1, [1, 1])).value == 0  # empty CNF side
    assert l2_leafsize(make_function(1, [0, 0])).value == 0
    assert l2_leafsize(make_function(2, [0, 1, 0, 1])).value == 1  # single literal
    xor = make_function(2, [0, 1, 1, 0])
    assert f2_size(xor).value == 2
    assert l2_leafsize(xor).value == 4
    for code in range(0, 256, 11):
        f = make_function(3, [(code >> x) & 1 for x in range(8)])
        assert f2_size(f).value == min(dnf_min_size(f).value, cnf_min_size(f).value)


def test_l2_witness_attains_cost():
    for seed in range(5):
        f = random_function(3, 2, seed + 110)
        res = l2_leafsize(f, with_witness=True)
        w = res.witness
        total = sum(c.width for c in (w.dual.clauses if isinstance(w, CnfWitness) else w.clauses))
        assert total == res.value
        assert all(w.evaluate(x) == f.value(x) for x in range(8))


def test_measure_chain_check_examples():
    xor = make_function(2, [0, 1, 1, 0])
    report = measure_chain_check(xor)
    assert report.passed
    v = report.values
    assert (v["dl"], v["dnf"], v["cnf"], v["dt"]) == (3, 2, 2, 4)
    const1 = make_function(2, [1, 1, 1, 1])
    r1 = measure_chain_check(const1)
    assert r1.passed
    assert (r1.values["dl"], r1.values["dnf"], r1.values["cnf"], r1.values["dt"]) == (1, 1, 0, 1)
    # non-Boolean functions keep the list-measure chain only
    tree = measure_chain_check(read_once_tree(2))
    assert tree.passed and "dnf" not in tree.values


def test_budget_errors_and_inexact_flagging():
    big = parity(6)
    with pytest.raises(BudgetError):
        dl_min_size(big)
    with pytest.raises(BudgetError):
        measure_value("dl", big)
    with pytest.raises(BudgetError):
        dnf_min_size(random_function(11, 2, 1), cap=10)
    # extended band with a completable state space: still exact
    res = dl_min_size(parity(4), cap=3)
    assert res.exact and res.value == dl_min_size(parity(4)).value == 9


def test_measure_value_unknown_name():
    with pytest.raises(ValueError):
        measure_value("girth", parity(2))
