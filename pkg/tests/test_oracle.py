import itertools
import json
import math
from fractions import Fraction

import pytest

from commuting_tuples.counts import n_table, partition_table
from commuting_tuples.oracle import (
    OracleRefused,
    Permutation,
    compose,
    conjugacy_class_count,
    count_commuting_tuples,
    count_hom_by_centralizers,
    cycle_type,
    inverse,
)


def naive_count(n, ell):
    """Every ell-tuple of S_n, tested pairwise."""
    elems = list(itertools.permutations(range(n)))
    total = 0
    for tup in itertools.product(elems, repeat=ell):
        if all(compose(a, b) == compose(b, a) for a, b in itertools.combinations(tup, 2)):
            total += 1
    return total


def test_brute_examples():
    r = count_commuting_tuples(3, 2)
    assert (r.raw, r.normalized) == (18, 3)
    r = count_commuting_tuples(3, 3)
    assert (r.raw, r.normalized) == (48, 8)
    for n in range(1, 6):
        assert count_commuting_tuples(n, 1).normalized == 1


def test_brute_matches_naive_enumeration():
    for n, ell in [(3, 2), (3, 3), (4, 2), (4, 3)]:
        assert count_commuting_tuples(n, ell).raw == naive_count(n, ell)


def test_brute_refuses_beyond_caps():
    with pytest.raises(OracleRefused, match="n <= 6"):
        count_commuting_tuples(7, 2)
    with pytest.raises(OracleRefused):
        count_commuting_tuples(4, 5)


def test_centralizer_examples():
    assert count_hom_by_centralizers(4, 2).normalized == 5
    r = count_hom_by_centralizers(6, 0)
    assert r.raw == 1 and r.normalized == Fraction(1, 720)
    assert count_hom_by_centralizers(5, 3).normalized == n_table(3, 5)[5]


def test_triple_agreement_small():
    for n in range(0, 6):
        for ell in range(0, 4):
            brute = count_commuting_tuples(n, ell).raw
            rec = count_hom_by_centralizers(n, ell).raw
            assert brute == rec == math.factorial(n) * n_table(ell, max(n, 1))[n]
            if ell:
                assert brute % math.factorial(n) == 0


def test_class_counts():
    assert [conjugacy_class_count(n) for n in (1, 4, 6)] == [1, 5, 11]
    p = partition_table(8)
    assert all(conjugacy_class_count(n) == p[n] for n in range(0, 9))


def test_class_count_cap():
    with pytest.raises(OracleRefused):
        conjugacy_class_count(9)


def test_result_json():
    d = json.loads(count_commuting_tuples(3, 2).to_json())
    assert d["raw"] == 18 and d["normalized"] == "3" and d["method"] == "brute"
    assert set(d) == {"n", "ell", "raw", "normalized", "method", "elapsed"}


def test_permutation_helpers():
    a = Permutation((1, 2, 0))
    assert (a * a * a).image == (0, 1, 2)
    assert compose(a.image, inverse(a.image)) == (0, 1, 2)
    assert cycle_type((1, 0, 3, 4, 2)) == (3, 2)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
