"""Normalized commuting-tuple counts N_ell(n) = |C_{ell,n}| / n!.

The main path (``n_table``) is the integer recurrence
n * N(n) = sum_{k=1..n} g(k) N(n-k), with the division by n asserted exact
for ell >= 1. The partition-sum and the orbifold polynomials are kept on
independent code paths so they can serve as cross-checks.
"""

from __future__ import annotations

import csv
import io
import json
import math
import operator
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from .subgroup_growth import GSeries, g_table_by_recurrence

Number = Union[int, Fraction]


@dataclass(frozen=True)
class NSeries:
    ell: int
    n_max: int
    values: Tuple[Number, ...]

    def __getitem__(self, n: int) -> Number:
        if not 0 <= n <= self.n_max:
            raise IndexError(f"N_{self.ell}({n}) outside table 0..{self.n_max}")
        return self.values[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", f"N_{self.ell}"])
        for n, v in enumerate(self.values):
            w.writerow([n, v])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"ell": self.ell, "n_max": self.n_max, "values": [str(v) for v in self.values]}
        )


@dataclass(frozen=True)
class OrbifoldPolynomial:
    """P_n(x) with ``coeffs[k]`` the coefficient of x^k."""

    ell: int
    n: int
    coeffs: Tuple[Fraction, ...]

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1


@dataclass(frozen=True)
class PartitionSeries:
    n_max: int
    values: Tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]


# ---------------------------------------------------------------------------
# Partition numbers (pentagonal recurrence, independent of N_2)
# ---------------------------------------------------------------------------

def partition_table(n_max: int) -> PartitionSeries:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            g2 = g1 + k
            term = p[n - g1] + (p[n - g2] if g2 <= n else 0)
            total += term if k % 2 else -term
            k += 1
        p[n] = total
    return PartitionSeries(n_max, tuple(p))


def partitions(n: int, max_part: int | None = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# N_ell(n)
# ---------------------------------------------------------------------------

def _ensure_g(ell: int, n_max: int, g: GSeries | None) -> GSeries:
    if g is None:
        return g_table_by_recurrence(ell, max(n_max, 1))
    if g.ell != ell:
        raise ValueError(f"GSeries is for ell={g.ell}, not {ell}")
    if g.n_max < n_max:
        raise ValueError(f"GSeries covers 1..{g.n_max}, need 1..{n_max}")
    return g


def n_table(ell: int, n_max: int, g: GSeries | None = None) -> NSeries:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g = _ensure_g(ell, n_max, g)
    gv = g.values
    if ell == 0:
        vals: List[Number] = [Fraction(1)]
        for n in range(1, n_max + 1):
            vals.append(vals[-1] / n)
        return NSeries(ell, n_max, tuple(vals))

    vals_i: List[int] = [1]
    for n in range(1, n_max + 1):
        # sum_{k=1..n} g(k) * N(n-k); map(mul) keeps the inner loop in C
        s = sum(map(operator.mul, gv[1 : n + 1], reversed(vals_i)))
        q, r = divmod(s, n)
        if r:
            raise ArithmeticError(f"N_{ell}({n}): recurrence sum not divisible by {n}")
        vals_i.append(q)
    return NSeries(ell, n_max, tuple(vals_i))


def n_value_by_partition_sum(ell: int, n: int, g: GSeries | None = None) -> Fraction:
    """Exponential-formula sum grouped by the multiset of parts.

    An ordered composition with part multiplicities c_j contributes
    k!/prod(c_j!) times the same term, so each partition adds
    prod_j (g(j)/j)^c_j / c_j!.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    g = _ensure_g(ell, n, g)
    total = Fraction(0)
    for lam in partitions(n):
        term = Fraction(1)
        for part, c in Counter(lam).items():
            term *= Fraction(g[part], part) ** c / math.factorial(c)
        total += term
    return total


def orbifold_polynomials(ell: int, n_max: int, g: GSeries | None = None) -> List[OrbifoldPolynomial]:
    """P_0..P_{n_max} as [t^n] exp(x * G(t)), G(t) = sum g(m) t^m / m.

    [x^k] P_n = [t^n] G(t)^k / k!. Powers of G are taken on the integer
    series H = D*G with D = lcm(1..n_max), then rescaled.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g = _ensure_g(ell, max(n_max, 1), g)
    D = math.lcm(*range(1, n_max + 1)) if n_max else 1
    h = [0] + [D * g[m] // m for m in range(1, n_max + 1)]
    coeffs = [[Fraction(0)] * (n + 1) for n in range(n_max + 1)]
    coeffs[0][0] = Fraction(1)
    power = [1] + [0] * n_max  # H^0
    for k in range(1, n_max + 1):
        nxt = [0] * (n_max + 1)
        for i in range(k - 1, n_max + 1):
            a = power[i]
            if a:
                for j in range(1, n_max - i + 1):
                    nxt[i + j] += a * h[j]
        power = nxt
        scale = D**k * math.factorial(k)
        for n in range(k, n_max + 1):
            coeffs[n][k] = Fraction(power[n], scale)
    return [OrbifoldPolynomial(ell, n, tuple(c)) for n, c in enumerate(coeffs)]


def orbifold_polynomial(ell: int, n: int, g: GSeries | None = None) -> OrbifoldPolynomial:
    return orbifold_polynomials(ell, n, g)[n]


# ---------------------------------------------------------------------------
# Lower bound A_ell(n) from the maximal partition products
# ---------------------------------------------------------------------------

def a_lower_bound(ell: int, n: int) -> Fraction:
    if ell < 2:
        raise ValueError("A_ell(n) is stated for ell >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    r = n % 3
    if r == 0:
        return Fraction(3 ** ((ell - 2) * n // 3), math.factorial(n // 3))
    if r == 1:
        if n < 4:
            raise ValueError("A_ell(n) undefined for n = 1 (factorial of a negative)")
        j = (n - 4) // 3
        return Fraction(3 * (4 * 3**j) ** (ell - 2), 2 * math.factorial(j))
    j = (n - 2) // 3
    return Fraction((2 * 3**j) ** (ell - 2), math.factorial(j))

