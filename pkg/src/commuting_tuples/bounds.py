"""Growth constants of N_ell(n) in ell and the explicit sign thresholds.

Everything here is exact: integers and ``Fraction``. Thresholds of the form
``1 + log_b(X)`` are turned into integer ceilings by comparing rational
powers, never by floating logarithms.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .counts import NSeries, a_lower_bound, partition_table, partitions

NINE_EIGHTHS = Fraction(9, 8)
SIXTEEN_FIFTEENTHS = Fraction(16, 15)

POSITIVE = "positive"
NEGATIVE = "negative"

# Largest n for the exhaustive partition-product oracle.
BRUTE_MAX_N = 40


def _p(n: int) -> int:
    return partition_table(n).values[n]


# ---------------------------------------------------------------------------
# Maximal partition products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaxProduct:
    """M1(n) plus, for each part count k that reaches it, the number of
    ordered tuples (m_1..m_k) attaining the maximum."""

    n: int
    m1: int
    multiplicity: Dict[int, int]

    @property
    def achieving_k(self) -> frozenset:
        return frozenset(self.multiplicity)


def max_product(n: int) -> MaxProduct:
    if n < 2:
        raise ValueError("M1(n) is defined here for n >= 2")
    r = n % 3
    if r == 0:
        return MaxProduct(n, 3 ** (n // 3), {n // 3: 1})
    if r == 1:
        k1, k2 = (n - 1) // 3, (n + 2) // 3
        return MaxProduct(n, 4 * 3 ** ((n - 4) // 3), {k1: k1, k2: math.comb(k2, 2)})
    k = (n + 1) // 3
    return MaxProduct(n, 2 * 3 ** ((n - 2) // 3), {k: k})


@dataclass(frozen=True)
class ProductEntry:
    product: int
    partitions: int
    # ordered tuples attaining the product, keyed by number of parts
    compositions_by_k: Dict[int, int] = field(default_factory=dict)


def brute_max_products(n: int) -> List[ProductEntry]:
    """Every distinct product of parts over the partitions of n, descending."""
    if not 1 <= n <= BRUTE_MAX_N:
        raise ValueError(f"exhaustive enumeration limited to 1 <= n <= {BRUTE_MAX_N}")
    parts_count: Counter = Counter()
    by_k: Dict[int, Counter] = defaultdict(Counter)
    for lam in partitions(n):
        prod = math.prod(lam)
        parts_count[prod] += 1
        k = len(lam)
        orderings = math.factorial(k)
        for c in Counter(lam).values():
            orderings //= math.factorial(c)
        by_k[prod][k] += orderings
    return [
        ProductEntry(prod, parts_count[prod], dict(sorted(by_k[prod].items())))
        for prod in sorted(parts_count, reverse=True)
    ]


def second_growth_base(n: int) -> int:
    if n < 3:
        raise ValueError("M2(n) is defined for n >= 3")
    itemized = {3: 2, 4: 3, 5: 5, 7: 10}
    if n in itemized:
        return itemized[n]
    r = n % 3
    if r == 0:
        return 8 * 3 ** ((n - 6) // 3)
    if r == 1:
        return 32 * 3 ** ((n - 10) // 3)
    return 16 * 3 ** ((n - 8) // 3)


M3_20 = 5 * 3**5


def leading_coefficient(n: int) -> Fraction:
    """C1(n): B_ell(n) = C1(n) * M1(n)^(ell-1) is the dominant term."""
    if n < 2:
        raise ValueError("C1(n) is defined for n > 1")
    r = n % 3
    if r == 0:
        j = n // 3
        return Fraction(1, 2**j * math.factorial(j))
    if r == 1:
        if n < 4:
            raise ValueError("C1(n) undefined for n = 1")
        j = (n - 4) // 3
        return Fraction(7, 6 * 2**j * math.factorial(j))
    j = (n - 2) // 3
    return Fraction(1, 2**j * math.factorial(j))


_C2 = {
    19: Fraction(41, math.factorial(6) * 2**3),
    20: Fraction(43, math.factorial(4) ** 2 * math.factorial(3) * 2**3),
    21: Fraction(1, math.factorial(3) * math.factorial(4) * 2**5),
}


def second_coefficient(n: int) -> Fraction:
    if n not in _C2:
        raise ValueError("C2(n) is only available for n in {19, 20, 21}")
    return _C2[n]


def leading_term(ell: int, n: int) -> Fraction:
    """B_ell(n)."""
    return leading_coefficient(n) * max_product(n).m1 ** (ell - 1)


@dataclass(frozen=True)
class GrowthProfile:
    n: int
    m1: int
    achieving_k: Tuple[int, ...]
    multiplicity: Dict[int, int]
    m2: Optional[int]
    c1: Fraction
    c2: Optional[Fraction]
    m3: Optional[int]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m1": self.m1,
            "achieving_k": list(self.achieving_k),
            "multiplicity": {str(k): v for k, v in self.multiplicity.items()},
            "m2": self.m2,
            "c1": str(self.c1),
            "c2": None if self.c2 is None else str(self.c2),
            "m3": self.m3,
        }


def growth_profile(n: int) -> GrowthProfile:
    if n < 2:
        raise ValueError("growth profile needs n >= 2")
    mp = max_product(n)
    return GrowthProfile(
        n=n,
        m1=mp.m1,
        achieving_k=tuple(sorted(mp.multiplicity)),
        multiplicity=dict(sorted(mp.multiplicity.items())),
        m2=second_growth_base(n) if n >= 3 else None,
        c1=leading_coefficient(n),
        c2=_C2.get(n),
        m3=M3_20 if n == 20 else None,
    )


# ---------------------------------------------------------------------------
# Two-sided estimates on N_ell(n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichReport:
    ell: int
    n: int
    lower: Fraction
    value: int
    upper: Fraction
    lower_ok: bool
    upper_ok: bool

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok


def sandwich_check(ell: int, n: int, series: NSeries, literal_upper: bool = False) -> SandwichReport:
    """B_ell(n) <= N_ell(n) <= B_ell(n) + p(n) M2(n)^(ell-1).

    ``literal_upper`` drops the exponent on M2 in the upper term.
    """
    if n < 3 or ell < 2:
        raise ValueError("sandwich needs n >= 3, ell >= 2")
    lower = leading_term(ell, n)
    m2 = second_growth_base(n)
    upper = lower + _p(n) * (m2 if literal_upper else m2 ** (ell - 1))
    v = series[n]
    return SandwichReport(ell, n, lower, v, upper, lower <= v, v <= upper)


def estimate_check(ell: int, n: int, series: NSeries) -> SandwichReport:
    """A_ell(n) <= N_ell(n) <= p(n) M1(n)^(ell-1)."""
    lower = a_lower_bound(ell, n)
    upper = Fraction(_p(n) * max_product(n).m1 ** (ell - 1)) if n >= 2 else Fraction(1)
    v = series[n]
    return SandwichReport(ell, n, lower, v, upper, lower <= v, v <= upper)


# ---------------------------------------------------------------------------
# Sign thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdBound:
    n: int
    kind: str  # "kappa" or "L"
    value: Fraction  # kappa itself, or the argument X of 1 + log_base X
    value_ceiling: int
    certified_sign: str
    base: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "value_ceiling": self.value_ceiling,
            "certified_sign": self.certified_sign,
        }


def certified_sign(n: int) -> str:
    """Sign of Delta_ell(n) for all large ell, by n mod 3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return NEGATIVE
    r = n % 3
    if r == 0:
        return POSITIVE
    if r == 1:
        return NEGATIVE
    return POSITIVE if n < 20 else NEGATIVE


def _threshold_argument(n: int, variant: str = "table") -> Tuple[Fraction, Fraction]:
    """(base, X) such that the threshold is 1 + log_base(X); n != 2."""
    f = math.factorial
    r = n % 3
    if r == 0:
        j = n // 3
        return NINE_EIGHTHS, Fraction(f(j) ** 2 * _p(n - 1) * _p(n + 1) * 3 ** (2 * n // 3))
    if r == 1:
        j = (n - 1) // 3
        return NINE_EIGHTHS, Fraction((f(j) * _p(n)) ** 2 * 2 * 3 ** (2 * (n - 1) // 3))
    if n == 20:
        if variant == "table":
            inner = Fraction(1, f(6) * 2**6)
        elif variant == "proof":
            inner = second_coefficient(20)
        else:
            raise ValueError(f"unknown variant {variant!r}")
        p20 = _p(20)
        x = Fraction(f(3) * f(6) * f(7) * 2**10, 211) * (
            (inner + p20) ** 2 + Fraction(p20, f(6) * 2**5)
        )
        return SIXTEEN_FIFTEENTHS, x
    if n <= 17:
        j = (n + 1) // 3
        return NINE_EIGHTHS, Fraction(71 * 2**j * f(j) * _p(n + 1))
    j = (n - 2) // 3
    return NINE_EIGHTHS, Fraction(97 * 2**j * f(j) * _p(n))


def ceil_log_threshold(base: Fraction, x: Fraction) -> int:
    """Least integer ell with base^(ell-1) >= x, i.e. ceil(1 + log_base x)."""
    if base <= 1:
        raise ValueError("base must exceed 1")
    if x <= 1:
        # 1 + log_base(x) <= 1; smallest integer at or above it
        lo_e = 0
        while base ** (-lo_e - 1) >= x:
            lo_e += 1
        return 1 - lo_e
    hi = 1
    while base**hi < x:
        hi *= 2
    lo = hi // 2  # base^lo < x (or lo == 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if base**mid >= x:
            hi = mid
        else:
            lo = mid
    e = hi if base**lo < x else lo
    return e + 1


def L_threshold(n: int, variant: str = "table") -> ThresholdBound:
    """Ceiling of the logarithmic threshold L(n).

    ``variant="proof"`` uses C2(20) instead of C1(20) inside the n = 20
    argument; the default reproduces the published ceilings.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 2:
        return ThresholdBound(2, "L", Fraction(2), 2, POSITIVE)
    base, x = _threshold_argument(n, variant)
    return ThresholdBound(n, "L", x, ceil_log_threshold(base, x), certified_sign(n), base)


def kappa(n: int, variant: str = "table") -> ThresholdBound:
    """Linear threshold: 1 + 8(X - 1), or 1 + 15(X - 1) at n = 20."""
    if n < 2:
        raise ValueError("kappa(n) is defined for n >= 2")
    if n == 2:
        return ThresholdBound(2, "kappa", Fraction(2), 2, POSITIVE)
    base, x = _threshold_argument(n, variant)
    slope = 15 if n == 20 else 8
    k = 1 + slope * (x - 1)
    return ThresholdBound(n, "kappa", k, math.ceil(k), certified_sign(n), base)


def verify_theorem_sign(n: int, bound: ThresholdBound, series_for: Callable[[int], NSeries],
                        offsets: Tuple[int, ...] = (0,)) -> bool:
    """Check sign(Delta_ell(n)) == certified sign at ell = ceiling + offset."""
    from .logconcavity import delta, sign_of

    for off in offsets:
        ell = bound.value_ceiling + off
        d = delta(ell, n, series_for(ell))
        if sign_of(d) != bound.certified_sign:
            return False
    return True
