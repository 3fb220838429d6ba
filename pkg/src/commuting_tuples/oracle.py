"""Group-theoretic ground truth for tiny n.

Two counts of |Hom(Z^ell, S_n)| = |C_{ell,n}| that never touch g_ell:

* ``count_commuting_tuples`` backtracks over tuples, each new entry drawn
  from the intersection of the centralizers of the entries already chosen.
  Centralizers are bitmasks over an indexing of S_n.
* ``count_hom_by_centralizers`` uses
  |Hom(Z^ell, G)| = sum over classes [g] of |[g]| * |Hom(Z^(ell-1), C_G(g))|,
  with the classes of S_n given by cycle types and the classes of
  subgroups found by orbit computation.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from .counts import partitions

Perm = Tuple[int, ...]

BRUTE_MAX_N, BRUTE_MAX_ELL = 6, 4
CENTRALIZER_MAX_N = 8


class OracleRefused(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    image: Perm

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a permutation of 0..{len(self.image) - 1}")

    @property
    def degree(self) -> int:
        return len(self.image)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(compose(self.image, other.image))


@dataclass(frozen=True)
class OracleResult:
    n: int
    ell: int
    raw: int
    method: str
    elapsed: float = 0.0

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.raw, math.factorial(self.n))

    def to_json(self) -> str:
        d = asdict(self)
        d["normalized"] = str(self.normalized)
        d["elapsed"] = round(self.elapsed, 6)
        return json.dumps(d, sort_keys=True)


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def cycle_type(a: Perm) -> Tuple[int, ...]:
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if not seen[i]:
            j, c = i, 0
            while not seen[j]:
                seen[j] = True
                j = a[j]
                c += 1
            lengths.append(c)
    return tuple(sorted(lengths, reverse=True))


# ---------------------------------------------------------------------------
# Backtracking over centralizer intersections
# ---------------------------------------------------------------------------

def _centralizer_masks(n: int) -> List[int]:
    elems = list(itertools.permutations(range(n)))
    masks = [0] * len(elems)
    for i, a in enumerate(elems):
        for j in range(i, len(elems)):
            b = elems[j]
            if compose(a, b) == compose(b, a):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def count_commuting_tuples(n: int, ell: int) -> OracleResult:
    if n < 0 or ell < 0:
        raise ValueError("n and ell must be non-negative")
    if n > BRUTE_MAX_N or ell > BRUTE_MAX_ELL:
        est = math.factorial(n) ** 2
        raise OracleRefused(
            f"brute force capped at n <= {BRUTE_MAX_N}, ell <= {BRUTE_MAX_ELL}; "
            f"(n, ell) = ({n}, {ell}) needs ~{est:.3g} commutator tests just for the table"
        )
    t0 = time.perf_counter()
    masks = _centralizer_masks(n)
    full = (1 << len(masks)) - 1

    def extend(allowed: int, depth: int) -> int:
        if depth == 0:
            return 1
        if depth == 1:
            return bin(allowed).count("1")
        return sum(extend(allowed & masks[i], depth - 1) for i in _bits(allowed))

    raw = extend(full, ell)
    return OracleResult(n, ell, raw, "brute", time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Centralizer recursion
# ---------------------------------------------------------------------------

def _cycle_type_rep(lam: Tuple[int, ...]) -> Perm:
    img = []
    start = 0
    for c in lam:
        img.extend(range(start + 1, start + c))
        img.append(start)
        start += c
    return tuple(img)


def _class_size(lam: Tuple[int, ...]) -> int:
    z = 1
    for part, mult in itertools.groupby(lam):
        m = len(list(mult))
        z *= part**m * math.factorial(m)
    return math.factorial(sum(lam)) // z


def _centralizer_in(group: FrozenSet[Perm], g: Perm) -> FrozenSet[Perm]:
    return frozenset(h for h in group if compose(h, g) == compose(g, h))


def _classes(group: FrozenSet[Perm]) -> List[Tuple[Perm, int]]:
    """(representative, size) for each conjugacy class of ``group``."""
    remaining = set(group)
    out = []
    while remaining:
        g = min(remaining)
        orbit = {compose(compose(x, g), inverse(x)) for x in group}
        remaining -= orbit
        out.append((g, len(orbit)))
    return out


class _HomCounter:
    def __init__(self, n: int):
        self.n = n
        self.symmetric = frozenset(itertools.permutations(range(n)))
        self.memo: Dict[Tuple[FrozenSet[Perm], int], int] = {}

    def classes(self, group: FrozenSet[Perm]) -> List[Tuple[Perm, int]]:
        if group is self.symmetric or len(group) == len(self.symmetric):
            return [(_cycle_type_rep(lam), _class_size(lam)) for lam in partitions(self.n)]
        return _classes(group)

    def hom(self, group: FrozenSet[Perm], ell: int) -> int:
        if ell == 0:
            return 1
        if ell == 1:
            return len(group)
        key = (group, ell)
        if key not in self.memo:
            total = 0
            for rep, size in self.classes(group):
                total += size * self.hom(_centralizer_in(group, rep), ell - 1)
            self.memo[key] = total
        return self.memo[key]


def count_hom_by_centralizers(n: int, ell: int) -> OracleResult:
    if n < 0 or ell < 0:
        raise ValueError("n and ell must be non-negative")
    if n > CENTRALIZER_MAX_N:
        raise OracleRefused(f"centralizer recursion capped at n <= {CENTRALIZER_MAX_N}")
    t0 = time.perf_counter()
    counter = _HomCounter(n)
    raw = counter.hom(counter.symmetric, ell)
    return OracleResult(n, ell, raw, "centralizer", time.perf_counter() - t0)


def conjugacy_class_count(n: int) -> int:
    """Number of distinct cycle types over all elements of S_n."""
    if n < 0 or n > CENTRALIZER_MAX_N:
        raise OracleRefused(f"class count capped at 0 <= n <= {CENTRALIZER_MAX_N}")
    return len({cycle_type(a) for a in itertools.permutations(range(n))})
