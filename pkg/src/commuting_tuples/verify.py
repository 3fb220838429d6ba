"""Invariant suites behind ``commuting-tuples verify``.

Each check yields a ``Check`` record; a suite passes when every record does.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterator, List

from . import bounds
from .counts import n_table, partition_table
from .logconcavity import NEGATIVE, POSITIVE, ZERO, delta, sign_of
from .oracle import conjugacy_class_count, count_commuting_tuples, count_hom_by_centralizers
from .subgroup_growth import first_disagreement, g_table_by_recurrence, g_table_multiplicative


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["elapsed"] = round(self.elapsed, 3)
        return d


def _timed(suite: str, name: str, fn: Callable[[], str]) -> Check:
    t0 = time.perf_counter()
    detail = fn()
    return Check(suite, name, not detail, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------

def oracle_checks() -> Iterator[Check]:
    def brute():
        bad = []
        for n in range(0, 6):
            for ell in range(0, 4):
                r = count_commuting_tuples(n, ell)
                want = math.factorial(n) * n_table(ell, n)[n]
                if r.raw != want or (ell >= 1 and r.raw % math.factorial(n)):
                    bad.append(f"(n={n}, ell={ell}) brute {r.raw} vs {want}")
        return "; ".join(bad)

    def centralizer():
        bad = []
        for n in range(0, 9):
            for ell in range(0, 5):
                r = count_hom_by_centralizers(n, ell)
                want = math.factorial(n) * n_table(ell, n)[n]
                if r.raw != want:
                    bad.append(f"(n={n}, ell={ell}) centralizer {r.raw} vs {want}")
        return "; ".join(bad)

    def classes():
        p = partition_table(8)
        n2 = n_table(2, 8)
        bad = [n for n in range(0, 9) if not conjugacy_class_count(n) == p[n] == n2[n]]
        return f"class count != p(n) at n={bad}" if bad else ""

    yield _timed("oracle", "brute force = n! N_ell(n), n<=5, ell<=3", brute)
    yield _timed("oracle", "centralizer recursion = n! N_ell(n), n<=8, ell<=4", centralizer)
    yield _timed("oracle", "conjugacy classes of S_n = p(n) = N_2(n), n<=8", classes)


def growth_checks(n_max: int = 10_000, ell_max: int = 10) -> Iterator[Check]:
    def agree():
        for ell in range(1, ell_max + 1):
            d = first_disagreement(g_table_by_recurrence(ell, n_max), g_table_multiplicative(ell, n_max))
            if d is not None:
                return f"ell={ell}: first difference at n={d}"
        return ""

    yield _timed("growth", f"sieve = multiplicative g_ell(n), n<={n_max}, ell<={ell_max}", agree)


def bounds_checks() -> Iterator[Check]:
    def sandwich():
        bad = []
        for ell in range(2, 13):
            s = n_table(ell, 40)
            bad += [(ell, n) for n in range(3, 41) if not bounds.sandwich_check(ell, n, s).holds]
        return f"B-sandwich fails at {bad}" if bad else ""

    def estimate():
        bad = []
        for ell in range(2, 9):
            s = n_table(ell, 60)
            bad += [(ell, n) for n in range(2, 61) if not bounds.estimate_check(ell, n, s).holds]
        return f"A <= N <= p M1^(ell-1) fails at {bad}" if bad else ""

    def products():
        bad = []
        for n in range(2, bounds.BRUTE_MAX_N + 1):
            entries = bounds.brute_max_products(n)
            mp = bounds.max_product(n)
            if entries[0].product != mp.m1:
                bad.append(f"M1({n})")
            if entries[0].compositions_by_k != mp.multiplicity:
                bad.append(f"multiplicity({n})")
            if n >= 3 and entries[1].product != bounds.second_growth_base(n):
                bad.append(f"M2({n})")
        if bounds.brute_max_products(20)[2].product != bounds.M3_20:
            bad.append("M3(20)")
        return ", ".join(bad)

    def kappa_vs_L():
        bad = [n for n in range(2, 21)
               if bounds.kappa(n).value_ceiling < bounds.L_threshold(n).value_ceiling]
        return f"kappa < ceil(L) at n={bad}" if bad else ""

    yield _timed("bounds", "B_ell(n) <= N <= B_ell(n) + p(n) M2^(ell-1), ell<=12, n<=40", sandwich)
    yield _timed("bounds", "A_ell(n) <= N <= p(n) M1^(ell-1), ell<=8, n<=60", estimate)
    yield _timed("bounds", "closed-form M1, M2, multiplicities vs enumeration, n<=40", products)
    yield _timed("bounds", "kappa(n) >= ceil(L(n)), 2<=n<=20", kappa_vs_L)


def theorem_checks() -> Iterator[Check]:
    def small_n():
        bad = []
        for ell in range(1, 41):
            s = n_table(ell, 4)
            d1, d2, d3 = (sign_of(delta(ell, n, s)) for n in (1, 2, 3))
            if ell == 1:
                ok = d1 == d2 == d3 == ZERO
            else:
                ok = d1 == NEGATIVE and d2 == POSITIVE and d3 == (NEGATIVE if ell <= 13 else POSITIVE)
            if not ok:
                bad.append(ell)
        return f"small-n signs wrong at ell={bad}" if bad else ""

    def signs():
        bad = []
        cache: Dict[int, object] = {}

        def series(ell):
            if ell not in cache:
                cache[ell] = n_table(ell, 22)
            return cache[ell]

        for n in range(2, 22):
            b = bounds.L_threshold(n)
            offsets = (0, 1, 10) if n <= 20 else (0,)
            if not bounds.verify_theorem_sign(n, b, series, offsets):
                bad.append(n)
        return f"sign at ceil(L(n)) wrong for n={bad}" if bad else ""

    yield _timed("theorem", "small-n signs of Delta for ell<=40", small_n)
    yield _timed("theorem", "sign of Delta at ceil(L(n)) (+1, +10) matches n mod 3, n<=21", signs)


SUITES = {
    "oracle": oracle_checks,
    "bounds": bounds_checks,
    "theorem": theorem_checks,
    "growth": growth_checks,
}


def run(suite: str) -> List[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}, all")
    return [c for name in names for c in SUITES[name]()]
