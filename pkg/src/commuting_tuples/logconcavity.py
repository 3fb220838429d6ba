"""Discriminant Delta_ell(n) = N(n)^2 - N(n-1) N(n+1) and exception scans.

A pair (n, ell) is an exception when Delta_ell(n) < 0; zero is not an
exception. Scans work column by column (fixed ell): one NSeries per column,
reused for every n. Columns are independent, so they can be farmed out to
processes and are reduced in ell order, which keeps output deterministic.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import bounds
from .counts import NSeries, n_table

NEGATIVE, ZERO, POSITIVE = "negative", "zero", "positive"

WORKERS_ENV = "COMMUTING_TUPLES_WORKERS"


def sign_of(x: Union[int, Fraction]) -> str:
    return NEGATIVE if x < 0 else POSITIVE if x > 0 else ZERO


def delta(ell: int, n: int, series: NSeries) -> Union[int, Fraction]:
    if n < 1:
        raise ValueError("Delta_ell(n) needs n >= 1")
    if series.n_max < n + 1:
        raise ValueError(f"series covers 0..{series.n_max}, need 0..{n + 1}")
    if series.ell != ell:
        raise ValueError(f"series is for ell={series.ell}, not {ell}")
    v = series.values
    return v[n] * v[n] - v[n - 1] * v[n + 1]


def column_signs(ell: int, n_lo: int, n_hi: int) -> List[str]:
    """sign(Delta_ell(n)) for n_lo <= n <= n_hi."""
    s = n_table(ell, n_hi + 1)
    return [sign_of(delta(ell, n, s)) for n in range(n_lo, n_hi + 1)]


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _column_job(args: Tuple[int, int, int]) -> Tuple[int, List[str]]:
    ell, n_lo, n_hi = args
    return ell, column_signs(ell, n_lo, n_hi)


class CheckpointError(RuntimeError):
    pass


def _load_checkpoint(path: Path, n_lo: int, n_hi: int) -> Dict[int, dict]:
    try:
        data = json.loads(path.read_text())
        if data["n_range"] != [n_lo, n_hi]:
            raise CheckpointError(
                f"checkpoint {path} was written for n in {data['n_range']}, not {[n_lo, n_hi]}"
            )
        return {
            int(c["ell"]): {
                "exceptions": [int(x) for x in c["exceptions"]],
                "zeros": [int(x) for x in c.get("zeros", [])],
            }
            for c in data["columns"]
        }
    except (ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from exc


def _write_checkpoint(path: Path, n_lo: int, n_hi: int, done: Dict[int, dict]) -> None:
    payload = {
        "n_range": [n_lo, n_hi],
        "columns": [dict(ell=ell, **done[ell]) for ell in sorted(done)],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.replace(path)


def scan_columns(ells: Iterable[int], n_lo: int, n_hi: int, workers: Optional[int] = None,
                 checkpoint: Optional[Union[str, Path]] = None) -> Dict[int, List[str]]:
    """Signs per column, keyed by ell.

    With a checkpoint, each finished column is persisted as its exception
    and zero positions; columns already present are skipped on resume.
    """
    ells = list(ells)
    workers = workers or default_workers()
    ckpt = Path(checkpoint) if checkpoint else None
    done_exc: Dict[int, dict] = {}
    if ckpt and ckpt.exists():
        done_exc = _load_checkpoint(ckpt, n_lo, n_hi)

    todo = [ell for ell in ells if ell not in done_exc]
    results: Dict[int, List[str]] = {}
    jobs = [(ell, n_lo, n_hi) for ell in todo]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for ell, signs in pool.map(_column_job, jobs):
                results[ell] = signs
                if ckpt:
                    done_exc[ell] = _compress(signs, n_lo)
                    _write_checkpoint(ckpt, n_lo, n_hi, done_exc)
    else:
        for job in jobs:
            ell, signs = _column_job(job)
            results[ell] = signs
            if ckpt:
                done_exc[ell] = _compress(signs, n_lo)
                _write_checkpoint(ckpt, n_lo, n_hi, done_exc)

    for ell in ells:
        if ell not in results:
            neg = set(done_exc[ell]["exceptions"])
            zero = set(done_exc[ell]["zeros"])
            results[ell] = [
                NEGATIVE if n in neg else ZERO if n in zero else POSITIVE
                for n in range(n_lo, n_hi + 1)
            ]
    return {ell: results[ell] for ell in ells}


def _compress(signs: Sequence[str], n_lo: int) -> dict:
    return {
        "exceptions": [n_lo + i for i, s in enumerate(signs) if s == NEGATIVE],
        "zeros": [n_lo + i for i, s in enumerate(signs) if s == ZERO],
    }


# ---------------------------------------------------------------------------
# Exception landscape
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionGrid:
    n_range: Tuple[int, int]
    ell_range: Tuple[int, int]
    # sign[n][ell]
    sign: Dict[int, Dict[int, str]]

    def is_exception(self, n: int, ell: int) -> bool:
        return self.sign[n][ell] == NEGATIVE

    def exceptions(self) -> List[Tuple[int, int]]:
        return [
            (n, ell)
            for n in range(self.n_range[0], self.n_range[1] + 1)
            for ell in range(self.ell_range[0], self.ell_range[1] + 1)
            if self.sign[n][ell] == NEGATIVE
        ]


def exception_grid(n_lo: int, n_hi: int, ell_lo: int, ell_hi: int,
                   workers: Optional[int] = None, checkpoint=None) -> ExceptionGrid:
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    if not 0 <= ell_lo <= ell_hi:
        raise ValueError("need 0 <= ell_lo <= ell_hi")
    cols = scan_columns(range(ell_lo, ell_hi + 1), n_lo, n_hi, workers, checkpoint)
    sign = {
        n: {ell: cols[ell][n - n_lo] for ell in range(ell_lo, ell_hi + 1)}
        for n in range(n_lo, n_hi + 1)
    }
    return ExceptionGrid((n_lo, n_hi), (ell_lo, ell_hi), sign)


# ---------------------------------------------------------------------------
# Fixed n: classification in ell
# ---------------------------------------------------------------------------

TAIL_EXCEPTIONAL = "tail-exceptional"
TAIL_LOGCONCAVE = "tail-log-concave"
TAIL_UNVERIFIED = "unverified"


@dataclass(frozen=True)
class ExceptionClassification:
    n: int
    window_ell_max: int
    exceptional_ells: frozenset
    tail: str
    threshold: Optional[int] = None

    def intervals(self) -> List[Tuple[int, Optional[int]]]:
        """Maximal runs of exceptional ell; an open last run is (lo, None)."""
        runs: List[List[int]] = []
        for ell in sorted(self.exceptional_ells):
            if runs and runs[-1][1] == ell - 1:
                runs[-1][1] = ell
            else:
                runs.append([ell, ell])
        out: List[Tuple[int, Optional[int]]] = [(a, b) for a, b in runs]
        if self.tail == TAIL_EXCEPTIONAL and out and out[-1][1] == self.window_ell_max:
            out[-1] = (out[-1][0], None)
        return out


def classify_exceptions(n: int, window_ell_max: Optional[int] = None,
                        threshold: Optional[bounds.ThresholdBound] = None) -> ExceptionClassification:
    """Exact exception set for 0 <= ell <= window, plus a certified tail.

    The tail is only certified when the window reaches the threshold and
    the sign there equals the certified one.
    """
    if threshold is None:
        threshold = bounds.L_threshold(n)
    if window_ell_max is None:
        window_ell_max = max(60, threshold.value_ceiling)
    exc = set()
    sign_at_threshold = None
    for ell in range(window_ell_max + 1):
        s = n_table(ell, n + 1)
        sg = sign_of(delta(ell, n, s))
        if sg == NEGATIVE:
            exc.add(ell)
        if ell == threshold.value_ceiling:
            sign_at_threshold = sg
    tail = TAIL_UNVERIFIED
    if sign_at_threshold is not None and sign_at_threshold == threshold.certified_sign:
        tail = TAIL_EXCEPTIONAL if threshold.certified_sign == NEGATIVE else TAIL_LOGCONCAVE
    return ExceptionClassification(n, window_ell_max, frozenset(exc), tail, threshold.value_ceiling)


# ---------------------------------------------------------------------------
# Fixed ell: patterns in n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedEllPattern:
    ell: int
    n_max: int
    log_concave: frozenset
    log_convex: frozenset


def fixed_ell_pattern(ell: int, n_max: int, signs: Optional[Sequence[str]] = None) -> FixedEllPattern:
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if signs is None:
        signs = column_signs(ell, 1, n_max)
    convex = frozenset(n for n, s in enumerate(signs, start=1) if s == NEGATIVE)
    concave = frozenset(range(1, n_max + 1)) - convex
    return FixedEllPattern(ell, n_max, concave, convex)


def smallest_logconcave_start(ell: int, n_check: int, signs: Optional[Sequence[str]] = None) -> int:
    """Least n0 with Delta_ell(n) >= 0 for every n0 <= n <= n_check."""
    if n_check < 3:
        raise ValueError("n_check must be >= 3")
    if signs is None:
        signs = column_signs(ell, 1, n_check)
    last_bad = 0
    for n, s in enumerate(signs, start=1):
        if s == NEGATIVE:
            last_bad = n
    return last_bad + 1


def smallest_starts(ells: Iterable[int], n_check: int, workers: Optional[int] = None,
                    checkpoint=None) -> Dict[int, int]:
    cols = scan_columns(ells, 1, n_check, workers, checkpoint)
    return {ell: smallest_logconcave_start(ell, n_check, signs) for ell, signs in cols.items()}
