"""Subgroup growth of Z^ell: g_ell(n) counts the subgroups of index n.

Two independent routes are provided:

* ``g_table_by_recurrence`` iterates the Dirichlet-type convolution
  g_ell(n) = sum_{d | n} d * g_{ell-1}(d) as a sieve, starting from the
  indicator g_0 = [n == 1].
* ``g_multiplicative`` factorizes n and multiplies the Gaussian-binomial
  closed form at each prime power.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple


@dataclass(frozen=True)
class GSeries:
    """Exact values g_ell(1..n_max); ``values[0]`` is an unused 0 pad."""

    ell: int
    n_max: int
    values: Tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"g_{self.ell}({n}) outside table 1..{self.n_max}")
        return self.values[n]

    def as_list(self) -> List[int]:
        return list(self.values[1:])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", f"g_{self.ell}"])
        for n in range(1, self.n_max + 1):
            w.writerow([n, self.values[n]])
        return buf.getvalue()


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    def product(self) -> int:
        out = 1
        for p, m in self.factors:
            out *= p**m
        return out


# ---------------------------------------------------------------------------
# Divisor utilities
# ---------------------------------------------------------------------------

def _check_positive(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


def factorize(n: int) -> Factorization:
    """Trial division up to sqrt(n)."""
    _check_positive(n)
    factors = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            m = 0
            while rest % p == 0:
                rest //= p
                m += 1
            factors.append((p, m))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def divisors(n: int) -> List[int]:
    _check_positive(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def sigma(n: int) -> int:
    """Sum of the divisors of n."""
    return sum(divisors(n))


# ---------------------------------------------------------------------------
# Route 1: sieve over the recurrence
# ---------------------------------------------------------------------------

def _next_layer(prev: Sequence[int], n_max: int) -> List[int]:
    cur = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        w = d * prev[d]
        if w:
            for m in range(d, n_max + 1, d):
                cur[m] += w
    return cur


def g_table_by_recurrence(ell: int, n_max: int) -> GSeries:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    _check_positive(n_max)
    layer = [0] * (n_max + 1)
    layer[1] = 1
    for _ in range(ell):
        layer = _next_layer(layer, n_max)
    return GSeries(ell, n_max, tuple(layer))


# ---------------------------------------------------------------------------
# Route 2: multiplicative closed form
# ---------------------------------------------------------------------------

def g_prime_power(p: int, m: int, ell: int) -> int:
    """g_ell(p^m) = prod_{i<m} (p^(ell+i) - 1) / prod_{i=1..m} (p^i - 1)."""
    if m < 0 or ell < 0:
        raise ValueError("m and ell must be non-negative")
    if m == 0:
        return 1
    if ell == 0:
        return 0
    num = 1
    den = 1
    for i in range(m):
        num *= p ** (ell + i) - 1
        den *= p ** (i + 1) - 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact Gaussian binomial at p={p}, m={m}, ell={ell}")
    return q


def g_multiplicative(n: int, ell: int) -> int:
    out = 1
    for p, m in factorize(n).factors:
        out *= g_prime_power(p, m, ell)
    return out


def g_table_multiplicative(ell: int, n_max: int) -> GSeries:
    _check_positive(n_max)
    vals = [0] + [g_multiplicative(n, ell) for n in range(1, n_max + 1)]
    return GSeries(ell, n_max, tuple(vals))


def first_disagreement(a: GSeries, b: GSeries) -> int | None:
    """Smallest n where two tables differ, or None."""
    for n in range(1, min(a.n_max, b.n_max) + 1):
        if a.values[n] != b.values[n]:
            return n
    return None
