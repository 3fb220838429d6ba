import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commuting_tuples.subgroup_growth import (
    divisors,
    factorize,
    first_disagreement,
    g_multiplicative,
    g_prime_power,
    g_table_by_recurrence,
    g_table_multiplicative,
    sigma,
)


def trial_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def hnf_count(ell, n):
    """Index-n sublattices of Z^ell via Hermite normal forms.

    In column HNF the i-1 entries above the i-th diagonal entry d_i are
    reduced mod d_i, so a diagonal (d_1..d_ell) contributes prod d_i^(i-1).
    """
    if ell == 0:
        return 1 if n == 1 else 0
    total = 0

    def rec(i, rest, weight):
        nonlocal total
        if i == ell:
            if rest == 1:
                total += weight
            return
        for d in trial_divisors(rest):
            rec(i + 1, rest // d, weight * d**i)

    rec(0, n, 1)
    return total


@pytest.mark.parametrize("n,expected", [(1, [1]), (12, [1, 2, 3, 4, 6, 12]), (7, [1, 7])])
def test_divisors_examples(n, expected):
    assert divisors(n) == expected == trial_divisors(n)


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (6, 12)])
def test_sigma_examples(n, expected):
    assert sigma(n) == expected


@pytest.mark.parametrize("bad", [0, -3])
def test_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        divisors(bad)
    with pytest.raises(ValueError):
        sigma(bad)


def test_divisors_match_trial_division():
    for n in range(1, 400):
        assert divisors(n) == trial_divisors(n)


def test_factorize_roundtrip():
    for n in range(1, 2000):
        f = factorize(n)
        assert f.product() == n
        ps = [p for p, _ in f.factors]
        assert ps == sorted(set(ps))
        assert all(len(trial_divisors(p)) == 2 for p in ps)


def test_recurrence_examples():
    assert g_table_by_recurrence(2, 6).as_list() == [1, 3, 4, 7, 6, 12]
    assert g_table_by_recurrence(3, 2)[2] == 7
    for ell in range(1, 8):
        assert g_table_by_recurrence(ell, 3)[1] == 1


def test_ell_zero_is_indicator():
    g = g_table_by_recurrence(0, 10)
    assert g.as_list() == [1] + [0] * 9
    assert [g_multiplicative(n, 0) for n in range(1, 11)] == g.as_list()


def test_prime_power_examples():
    assert g_prime_power(2, 1, 3) == 7
    assert g_prime_power(2, 2, 3) == 35
    for p in (2, 3, 5, 7):
        for m in range(1, 5):
            assert g_prime_power(p, m, 1) == 1


def test_small_closed_forms():
    for ell in range(1, 12):
        assert g_multiplicative(2, ell) == 2**ell - 1
        assert 3 * g_multiplicative(4, ell) == (2**ell - 1) * (2 ** (ell + 1) - 1)


def test_multiplicative_examples():
    assert g_multiplicative(1, 5) == 1
    assert g_multiplicative(4, 2) == 7
    assert g_multiplicative(6, 3) == 91


def test_both_routes_match_hnf_enumeration():
    for ell in range(0, 5):
        hnf = [hnf_count(ell, n) for n in range(1, 25)]
        assert g_table_by_recurrence(ell, 24).as_list() == hnf
        if ell:
            assert [g_multiplicative(n, ell) for n in range(1, 25)] == hnf


def test_cross_algorithm_agreement_moderate():
    for ell in range(1, 7):
        assert first_disagreement(g_table_by_recurrence(ell, 2000),
                                  g_table_multiplicative(ell, 2000)) is None


def test_g2_is_sigma():
    g = g_table_by_recurrence(2, 500)
    assert all(g[n] == sigma(n) for n in range(1, 501))


def test_sandwich_inequality():
    for ell in range(2, 7):
        g = g_table_by_recurrence(ell, 300)
        for n in range(1, 301):
            assert n ** (ell - 1) <= g[n] <= n**ell <= sigma(n) * n ** (ell - 1)


G4 = g_table_by_recurrence(4, 3000)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 54), st.integers(1, 54))
def test_multiplicative_on_coprime_pairs(a, b):
    if math.gcd(a, b) == 1:
        assert G4[a * b] == G4[a] * G4[b]


def test_csv_dump():
    text = g_table_by_recurrence(1, 3).to_csv()
    assert text == "n,g_1\n1,1\n2,1\n3,1\n"


def test_index_out_of_range():
    with pytest.raises(IndexError):
        g_table_by_recurrence(2, 5)[6]
