import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commuting_tuples.counts import (
    a_lower_bound,
    n_table,
    n_value_by_partition_sum,
    orbifold_polynomial,
    orbifold_polynomials,
    partition_table,
    partitions,
)
from commuting_tuples.subgroup_growth import g_table_by_recurrence


def partitions_by_enumeration(n):
    return sum(1 for _ in partitions(n))


def test_partition_table_examples():
    p = partition_table(25)
    assert p[0] == 1
    assert p[20] == 627
    assert p[25] == 1958


def test_partition_table_matches_enumeration():
    p = partition_table(30)
    assert [partitions_by_enumeration(n) for n in range(31)] == list(p.values)


def test_n2_is_partition_numbers():
    assert n_table(2, 5).values == (1, 1, 2, 3, 5, 7)
    p = partition_table(1500)
    assert n_table(2, 1500).values == p.values


def test_n_table_examples():
    assert n_table(3, 3).values == (1, 1, 4, 8)
    assert n_table(0, 3).values == (1, 1, Fraction(1, 2), Fraction(1, 6))
    for ell in range(1, 15):
        s = n_table(ell, 3)
        assert s[2] == 2 ** (ell - 1)
        assert 2 * s[3] == 3 ** (ell - 1) + 2**ell - 1


def test_ell_zero_is_inverse_factorial():
    s = n_table(0, 20)
    assert all(s[n] == Fraction(1, math.factorial(n)) for n in range(21))


def test_ell_one_is_all_ones():
    assert n_table(1, 30).values == (1,) * 31


def test_exact_division_invariant():
    for ell in range(1, 9):
        g = g_table_by_recurrence(ell, 80)
        vals = [1]
        for n in range(1, 81):
            s = sum(g[k] * vals[n - k] for k in range(1, n + 1))
            assert s % n == 0
            vals.append(s // n)
        assert tuple(vals) == n_table(ell, 80, g).values


def test_mismatched_gseries_rejected():
    with pytest.raises(ValueError):
        n_table(3, 5, g_table_by_recurrence(2, 5))
    with pytest.raises(ValueError):
        n_table(3, 10, g_table_by_recurrence(3, 5))


def test_partition_sum_examples():
    assert n_value_by_partition_sum(2, 4) == 5
    assert n_value_by_partition_sum(3, 3) == 8
    for ell in range(0, 6):
        assert n_value_by_partition_sum(ell, 1) == 1


def test_partition_sum_by_hand():
    # compositions of 3 for ell = 3: g = 1, 7, 13
    by_hand = Fraction(13, 3) + 2 * Fraction(7, 2) / 2 + Fraction(1, 6)
    assert by_hand == 8 == n_value_by_partition_sum(3, 3)


def test_partition_sum_equals_recurrence():
    for ell in range(0, 5):
        s = n_table(ell, 16)
        for n in range(1, 17):
            v = n_value_by_partition_sum(ell, n)
            assert v == s[n]
            if ell >= 1:
                assert v.denominator == 1


def test_orbifold_examples():
    assert orbifold_polynomial(3, 0).coeffs == (1,)
    assert orbifold_polynomial(2, 2).coeffs == (0, Fraction(3, 2), Fraction(1, 2))


def test_orbifold_structure():
    for ell in (1, 2, 3):
        for poly in orbifold_polynomials(ell, 25):
            assert poly.degree == poly.n
            assert poly.coeffs[poly.n] == Fraction(1, math.factorial(poly.n))


def test_orbifold_at_one_is_count():
    for ell in range(2, 6):
        s = n_table(ell, 40)
        polys = orbifold_polynomials(ell, 40)
        assert all(polys[n](1) == s[n] for n in range(41))


def test_orbifold_at_zero_vanishes():
    assert all(p(0) == 0 for p in orbifold_polynomials(3, 10)[1:])


@pytest.mark.parametrize("ell,n,expected", [(2, 3, Fraction(1)), (3, 5, Fraction(6))])
def test_a_lower_bound_examples(ell, n, expected):
    assert a_lower_bound(ell, n) == expected


def test_a_lower_bound_rejects_undefined_branch():
    with pytest.raises(ValueError):
        a_lower_bound(3, 1)
    with pytest.raises(ValueError):
        a_lower_bound(1, 6)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(2, 60))
def test_a_lower_bound_below_count(ell, n):
    assert a_lower_bound(ell, n) <= n_table(ell, n)[n]
