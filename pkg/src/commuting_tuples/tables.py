"""Build, render and golden-check the six published tables.

T1/T2: exception landscape grids.  T3: classification for 1 <= n <= 20.
T4: fixed-ell patterns.  T5: smallest log-concave starts.  T6: ceil(L(n)).

LaTeX output for T1, T2, T5 and T6 reproduces the published array layout
byte for byte, so ``check`` compares it against the shipped golden files.
T3 and T4 are compared as data against JSON transcriptions.
"""

from __future__ import annotations

import csv
import difflib
import io
import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import bounds
from .bounds import ThresholdBound
from .logconcavity import (
    NEGATIVE,
    ExceptionClassification,
    ExceptionGrid,
    FixedEllPattern,
    classify_exceptions,
    exception_grid,
    fixed_ell_pattern,
    scan_columns,
    smallest_logconcave_start,
)

SELECTORS = ("T1", "T2", "T3", "T4", "T5", "T6")
FORMATS = ("latex", "csv", "json")

# desk-scale windows for T4 (the published windows are 10^4 / 10^5)
T4_WINDOW_ELL2 = 10_000
T4_WINDOW = 2000
T5_NCHECK = 1000


@dataclass(frozen=True)
class SmallestStarts:
    n_check: int
    n0: Dict[int, int]


@dataclass(frozen=True)
class Thresholds:
    bounds: Tuple[ThresholdBound, ...]


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build(selector: str, *, n_max: Optional[int] = None, n_check: Optional[int] = None,
          workers: Optional[int] = None, checkpoint=None):
    selector = selector.upper()
    if selector == "T1":
        return exception_grid(1, 30, 0, 20, workers, checkpoint)
    if selector == "T2":
        return exception_grid(1, 30, 20, 40, workers, checkpoint)
    if selector == "T3":
        return [classify_exceptions(n) for n in range(1, 21)]
    if selector == "T4":
        return build_t4(n_max, workers, checkpoint)
    if selector == "T5":
        n_check = n_check or T5_NCHECK
        cols = scan_columns(range(1, 41), 1, n_check, workers, checkpoint)
        return SmallestStarts(
            n_check, {ell: smallest_logconcave_start(ell, n_check, s) for ell, s in cols.items()}
        )
    if selector == "T6":
        return Thresholds(tuple(bounds.L_threshold(n) for n in range(1, 21)))
    raise ValueError(f"unknown table {selector!r}; expected one of {', '.join(SELECTORS)}")


def build_t4(n_max: Optional[int] = None, workers: Optional[int] = None,
             checkpoint=None) -> List[FixedEllPattern]:
    """ell = 2 over T4_WINDOW_ELL2, the others over T4_WINDOW (or n_max for all)."""
    w2 = n_max or T4_WINDOW_ELL2
    w = n_max or T4_WINDOW
    out = [fixed_ell_pattern(2, w2)]
    cols = scan_columns([1] + list(range(3, 11)), 1, w, workers, checkpoint)
    for ell, signs in cols.items():
        out.append(fixed_ell_pattern(ell, w, signs))
    return sorted(out, key=lambda p: p.ell)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render(obj, fmt: str = "latex") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(obj, ExceptionGrid):
        kind = "grid"
    elif isinstance(obj, SmallestStarts):
        kind = "starts"
    elif isinstance(obj, Thresholds):
        kind = "thresholds"
    elif isinstance(obj, list) and all(isinstance(x, ExceptionClassification) for x in obj):
        kind = "classification"
    elif isinstance(obj, list) and all(isinstance(x, FixedEllPattern) for x in obj):
        kind = "patterns"
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    return _RENDERERS[kind, fmt](obj)


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _grid_latex(g: ExceptionGrid) -> str:
    ells = list(range(g.ell_range[0], g.ell_range[1] + 1))
    ns = list(range(g.n_range[0], g.n_range[1] + 1))
    lines = [
        "\\begin{array}{r" + "c" * len(ells) + "}",
        "\\hline",
        "n\\backslash \\ell &" + "&".join(map(str, ells)) + "\\\\ \\hline \\hline",
    ]
    for i, n in enumerate(ns):
        cells = ["\\bullet " if g.sign[n][ell] == NEGATIVE else "" for ell in ells]
        row = f"{n}&" + "&".join(cells) + "\\\\"
        if i == len(ns) - 1:
            row += " \\hline"
        lines.append(row)
    lines.append("\\end{array}")
    return "\n".join(lines) + "\n"


def _grid_csv(g: ExceptionGrid) -> str:
    rows = [(n, ell, s) for n in sorted(g.sign) for ell, s in sorted(g.sign[n].items())]
    return _csv(rows, ("n", "ell", "sign"))


def _grid_json(g: ExceptionGrid) -> str:
    ells = range(g.ell_range[0], g.ell_range[1] + 1)
    return json.dumps({
        "n_range": list(g.n_range),
        "ell_range": list(g.ell_range),
        "sign": [[g.sign[n][ell] for ell in ells] for n in sorted(g.sign)],
    }) + "\n"


def _interval_text(iv: Tuple[int, Optional[int]]) -> str:
    lo, hi = iv
    return f"${lo} \\leq \\ell$" if hi is None else f"${lo} \\leq \\ell \\leq {hi}$"


def _classification_latex(cs: List[ExceptionClassification]) -> str:
    lines = ["\\begin{tabular}{|r|c|}", "\\hline", "$n$ & \\\\ \\hline"]
    for c in cs:
        ivs = c.intervals()
        text = ", ".join(_interval_text(iv) for iv in ivs) if ivs else "$\\emptyset$"
        lines.append(f"${c.n}$ & {text}\\\\")
    lines[-1] += " \\hline"
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _intervals_json(c: ExceptionClassification) -> list:
    return [[lo, hi] for lo, hi in c.intervals()]


def _classification_csv(cs: List[ExceptionClassification]) -> str:
    rows = [
        (c.n, json.dumps(_intervals_json(c)), c.tail, c.threshold, c.window_ell_max) for c in cs
    ]
    return _csv(rows, ("n", "intervals", "tail", "threshold", "window_ell_max"))


def _classification_json(cs: List[ExceptionClassification]) -> str:
    return json.dumps([
        {"n": c.n, "intervals": _intervals_json(c), "tail": c.tail,
         "threshold": c.threshold, "window_ell_max": c.window_ell_max}
        for c in cs
    ]) + "\n"


def _set_text(s) -> str:
    return "\\emptyset" if not s else "\\left\\{" + ",".join(map(str, sorted(s))) + "\\right\\}"


def _patterns_latex(ps: List[FixedEllPattern]) -> str:
    lines = ["\\begin{tabular}{rll}", "\\hline", "$\\ell $&log-convex&checked\\\\ \\hline"]
    for p in ps:
        lines.append(f"${p.ell}$&${_set_text(p.log_convex)}$&$n\\leq {p.n_max}$\\\\")
    lines[-1] += " \\hline"
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _patterns_csv(ps: List[FixedEllPattern]) -> str:
    rows = [(p.ell, p.n_max, " ".join(map(str, sorted(p.log_convex)))) for p in ps]
    return _csv(rows, ("ell", "n_max", "log_convex"))


def _patterns_json(ps: List[FixedEllPattern]) -> str:
    return json.dumps([
        {"ell": p.ell, "n_max": p.n_max, "log_convex": sorted(p.log_convex)} for p in ps
    ]) + "\n"


def _starts_latex(s: SmallestStarts) -> str:
    ells = sorted(s.n0)
    row_keys = sorted({10 * ((ell - 1) // 10) for ell in ells})
    lines = [
        "\\begin{array}{r" + "r" * 10 + "}",
        "\\hline",
        "\\ell _{1}\\backslash \\ell _{0}&" + "&".join(map(str, range(1, 11))) + "\\\\ \\hline \\hline",
    ]
    for i, r in enumerate(row_keys):
        cells = [str(s.n0[r + j]) if r + j in s.n0 else "" for j in range(1, 11)]
        row = f"{r}&" + "&".join(cells) + "\\\\"
        if i == len(row_keys) - 1:
            row += " \\hline"
        lines.append(row)
    lines.append("\\end{array}")
    return "\n".join(lines) + "\n"


def _starts_csv(s: SmallestStarts) -> str:
    return _csv([(ell, s.n0[ell], s.n_check) for ell in sorted(s.n0)], ("ell", "n0", "n_check"))


def _starts_json(s: SmallestStarts) -> str:
    return json.dumps({"n_check": s.n_check, "n0": {str(k): v for k, v in sorted(s.n0.items())}}) + "\n"


def _thresholds_latex(t: Thresholds) -> str:
    bs = list(t.bounds)
    half = (len(bs) + 1) // 2
    head = "n&\\left\\lceil L\\left( n\\right) \\right\\rceil "
    lines = ["\\begin{array}{rrrr}", "\\hline", f"{head}&{head}\\\\ \\hline"]
    for i in range(half):
        left = bs[i]
        cells = [str(left.n), str(left.value_ceiling)]
        if i + half < len(bs):
            right = bs[i + half]
            cells += [str(right.n), str(right.value_ceiling)]
        else:
            cells += ["", ""]
        row = "&".join(cells) + "\\\\"
        if i == half - 1:
            row += " \\hline"
        lines.append(row)
    lines.append("\\end{array}")
    return "\n".join(lines) + "\n"


def _thresholds_csv(t: Thresholds) -> str:
    return _csv([(b.n, b.value_ceiling, b.certified_sign) for b in t.bounds],
                ("n", "L_ceil", "certified_sign"))


def _thresholds_json(t: Thresholds) -> str:
    rows = [json.dumps({"n": b.n, "L_ceil": b.value_ceiling}) for b in t.bounds]
    return "[\n  " + ",\n  ".join(rows) + "\n]\n"


_RENDERERS = {
    ("grid", "latex"): _grid_latex,
    ("grid", "csv"): _grid_csv,
    ("grid", "json"): _grid_json,
    ("classification", "latex"): _classification_latex,
    ("classification", "csv"): _classification_csv,
    ("classification", "json"): _classification_json,
    ("patterns", "latex"): _patterns_latex,
    ("patterns", "csv"): _patterns_csv,
    ("patterns", "json"): _patterns_json,
    ("starts", "latex"): _starts_latex,
    ("starts", "csv"): _starts_csv,
    ("starts", "json"): _starts_json,
    ("thresholds", "latex"): _thresholds_latex,
    ("thresholds", "csv"): _thresholds_csv,
    ("thresholds", "json"): _thresholds_json,
}


# ---------------------------------------------------------------------------
# Golden files
# ---------------------------------------------------------------------------

GOLDEN_FILES = {
    "T1": "table1.tex",
    "T2": "table2.tex",
    "T3": "table3.json",
    "T4": "table4.json",
    "T5": "table5.tex",
    "T6": "table6.tex",
}


def golden_text(name: str) -> str:
    return resources.files("commuting_tuples").joinpath("golden").joinpath(name).read_text()


@dataclass(frozen=True)
class CheckResult:
    selector: str
    ok: bool
    detail: str = ""


def _diff(expected: str, actual: str) -> str:
    return "".join(difflib.unified_diff(
        expected.splitlines(True), actual.splitlines(True), "golden", "computed", n=1
    ))


def check(selector: str, obj=None, **build_kw) -> CheckResult:
    """Compare a freshly built (or supplied) table against its golden file."""
    selector = selector.upper()
    if obj is None:
        obj = build(selector, **build_kw)
    if selector in ("T1", "T2", "T5", "T6"):
        expected = golden_text(GOLDEN_FILES[selector])
        actual = render(obj, "latex")
        return CheckResult(selector, expected == actual, _diff(expected, actual))
    golden = json.loads(golden_text(GOLDEN_FILES[selector]))
    mismatches = []
    if selector == "T3":
        for c in obj:
            want = golden[str(c.n)]
            got = _intervals_json(c)
            if got != want:
                mismatches.append(f"n={c.n}: golden {want}, computed {got} (tail {c.tail})")
            open_end = bool(want) and want[-1][1] is None
            if open_end != (c.tail == "tail-exceptional"):
                mismatches.append(f"n={c.n}: tail {c.tail} disagrees with golden {want}")
    else:
        for p in obj:
            want = golden[str(p.ell)]
            got = sorted(p.log_convex)
            if got != want:
                mismatches.append(f"ell={p.ell}: golden {want}, computed {got} (n <= {p.n_max})")
    return CheckResult(selector, not mismatches, "\n".join(mismatches))
