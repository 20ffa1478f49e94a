"""Truth-table core: construction, restriction, families, text round-trips."""

import itertools

import pytest

from shrinklab.caps import BudgetError
from shrinklab.core import (
    STAR,
    HypercubeFunction,
    Restriction,
    apply_restriction,
    complement,
    format_function,
    is_constant,
    make_function,
    parse_function,
)
from shrinklab.families import (
    and_function,
    function_from_spec,
    or_function,
    parity,
    parse_family,
    random_function,
    read_once_tree,
    tribes,
)
from shrinklab.restrictions import compose, restriction_from_code


def test_make_function_identity_and_xor():
    ident = make_function(1, [0, 1])
    assert ident.value(0) == 0 and ident.value(1) == 1
    xor = make_function(2, [0, 1, 1, 0])
    # index encoding: x1 is the least-significant bit
    assert xor.value(0b01) == 1 and xor.value(0b10) == 1
    assert xor.value(0b00) == 0 and xor.value(0b11) == 0
    assert xor.is_boolean


def test_make_function_dimension_zero_constant():
    const = make_function(0, [7])
    assert const.n == 0
    assert is_constant(const) == 7
    assert not const.is_boolean


def test_make_function_length_mismatch():
    with pytest.raises(ValueError):
        make_function(2, [0, 1, 0])


def test_make_function_dimension_cap():
    # the cap guard fires before the table length is even inspected
    with pytest.raises(BudgetError):
        make_function(25, [0])


def test_apply_restriction_xor_fix_one():
    xor = make_function(2, [0, 1, 1, 0])
    restricted = apply_restriction(xor, Restriction((1, STAR)))
    # fixing x1=1 leaves NOT of the remaining variable
    assert restricted.n == 1
    assert restricted.outputs == (1, 0)


def test_apply_restriction_all_star_is_identity():
    f = random_function(3, 4, seed=5)
    assert apply_restriction(f, Restriction.all_star(3)) == f


def test_apply_restriction_full_assignment():
    xor = make_function(2, [0, 1, 1, 0])
    restricted = apply_restriction(xor, Restriction((1, 0)))
    assert restricted.n == 0
    assert is_constant(restricted) == 1


def test_apply_restriction_length_mismatch():
    with pytest.raises(ValueError):
        apply_restriction(make_function(2, [0, 1, 1, 0]), Restriction((STAR,)))


def test_is_constant_cases():
    assert is_constant(make_function(0, [7])) == 7
    assert is_constant(make_function(2, [0, 1, 1, 0])) is None
    and3 = and_function(3)
    falsified = apply_restriction(and3, Restriction((0, STAR, STAR)))
    assert is_constant(falsified) == 0


def test_restriction_helpers():
    rho = Restriction.fixing(4, {1: 1})
    assert rho.assignments == (1, STAR, STAR, STAR)
    assert rho.stars() == (2, 3, 4)
    assert rho.star_count() == 3
    assert sorted(rho.consistent_points()) == [1, 3, 5, 7, 9, 11, 13, 15]
    assert str(rho) == "1***"
    assert rho.is_consistent(0b0011) and not rho.is_consistent(0b0010)


def test_restriction_composition_matches_sequential_restriction():
    # f|rho|sigma == f|compose(rho, sigma), exhaustively at n = 4
    f = random_function(4, 3, seed=11)
    for rho_code in range(3**4):
        rho = restriction_from_code(4, rho_code)
        inner = apply_restriction(f, rho)
        k = rho.star_count()
        for sigma_code in range(3**k):
            sigma = restriction_from_code(k, sigma_code)
            assert apply_restriction(inner, sigma) == apply_restriction(
                f, compose(rho, sigma)
            )


def test_parity_basic():
    assert parity(1).outputs == (0, 1)
    assert parity(2).outputs == (0, 1, 1, 0)
    assert sum(parity(3).outputs) == 4


def test_parity_restriction_is_smaller_parity():
    # fixing any single variable leaves parity or its complement on k-1 vars
    for k in (2, 3, 4):
        f = parity(k)
        for var in range(1, k + 1):
            for bit in (0, 1):
                rho = Restriction.fixing(k, {var: bit})
                g = apply_restriction(f, rho)
                target = parity(k - 1).outputs
                assert g.outputs in (target, tuple(1 - v for v in target))


def test_read_once_tree_shape():
    f = read_once_tree(2)
    assert f.n == 3
    assert sorted(set(f.outputs)) == [0, 1, 2, 3]
    assert read_once_tree(1).outputs == (0, 1)


def test_and_or_tribes():
    assert and_function(2).outputs == (0, 0, 0, 1)
    assert or_function(2).outputs == (0, 1, 1, 1)
    t = tribes(2, 2)
    # (x1 & x2) | (x3 & x4)
    for x in range(16):
        expected = 1 if (x & 0b0011) == 0b0011 or (x & 0b1100) == 0b1100 else 0
        assert t.value(x) == expected


def test_random_function_deterministic():
    assert random_function(3, 2, seed=1) == random_function(3, 2, seed=1)
    assert random_function(3, 4, seed=1).n == 3


def test_complement():
    f = make_function(2, [0, 1, 1, 0])
    assert complement(f).outputs == (1, 0, 0, 1)
    with pytest.raises(ValueError):
        complement(make_function(0, [3]))


def test_function_text_round_trip():
    f = parse_function("n=2 outputs=0110")
    assert f == make_function(2, [0, 1, 1, 0])
    assert format_function(f) == "n=2 outputs=0110"
    wide = make_function(1, [0, 12])
    assert parse_function(format_function(wide)) == wide
    assert parse_function("n=0 outputs=7") == make_function(0, [7])


def test_family_spec_parsing():
    assert parse_family("parity:3") == parity(3)
    assert parse_family("tribes:2,2") == tribes(2, 2)
    assert parse_family("random:3,2,1") == random_function(3, 2, 1)
    assert function_from_spec("n=1 outputs=01") == make_function(1, [0, 1])
    assert function_from_spec("rotree:2") == read_once_tree(2)
    with pytest.raises(ValueError):
        parse_family("sponge:3")
