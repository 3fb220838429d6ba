"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
Option precedence: command-line flags > ``--config`` JSON file > defaults.
The config file may hold top-level keys (applied to every subcommand) and
one object per subcommand name, e.g. ``{"workers": 4, "table": {"ncheck": 300}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import bounds, tables, verify
from .counts import n_table, orbifold_polynomial
from .logconcavity import (
    CheckpointError,
    classify_exceptions,
    default_workers,
    delta,
    exception_grid,
    sign_of,
)
from .oracle import OracleRefused, count_commuting_tuples, count_hom_by_centralizers
from .subgroup_growth import first_disagreement, g_table_by_recurrence, g_table_multiplicative

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class Mismatch(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num(v) -> str:
    return str(v) if not isinstance(v, Fraction) or v.denominator != 1 else str(v.numerator)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_g(a) -> int:
    if a.method == "sieve":
        g = g_table_by_recurrence(a.ell, a.nmax)
    elif a.method == "multiplicative":
        g = g_table_multiplicative(a.ell, a.nmax)
    else:
        g = g_table_by_recurrence(a.ell, a.nmax)
        d = first_disagreement(g, g_table_multiplicative(a.ell, a.nmax))
        if d is not None:
            raise Mismatch(f"sieve and multiplicative g_{a.ell} differ first at n={d}")
    if a.format == "json":
        text = json.dumps({"ell": g.ell, "n_max": g.n_max, "values": [str(v) for v in g.as_list()]}) + "\n"
    else:
        text = g.to_csv()
    _emit(text, a.out)
    return EXIT_OK


def cmd_count(a) -> int:
    try:
        s = n_table(a.ell, a.nmax)
    except ArithmeticError as exc:
        raise Mismatch(str(exc)) from exc
    _emit(s.to_json() + "\n" if a.format == "json" else s.to_csv(), a.out)
    return EXIT_OK


def cmd_poly(a) -> int:
    p = orbifold_polynomial(a.ell, a.n)
    if a.format == "json":
        text = json.dumps({"ell": a.ell, "n": a.n, "coeffs": [str(c) for c in p.coeffs],
                           "value_at_1": str(p(1))}) + "\n"
    else:
        text = "k,coeff\n" + "".join(f"{k},{c}\n" for k, c in enumerate(p.coeffs))
    _emit(text, a.out)
    return EXIT_OK


def cmd_delta(a) -> int:
    s = n_table(a.ell, a.n + 1)
    d = delta(a.ell, a.n, s)
    if a.format == "json":
        text = json.dumps({"ell": a.ell, "n": a.n, "delta": _num(d), "sign": sign_of(d)}) + "\n"
    else:
        text = f"ell,n,delta,sign\n{a.ell},{a.n},{_num(d)},{sign_of(d)}\n"
    _emit(text, a.out)
    return EXIT_OK


def cmd_table(a) -> int:
    sel = a.selector.upper()
    n_check = a.ncheck or (300 if a.quick else None)
    obj = tables.build(sel, n_max=a.nmax, n_check=n_check, workers=a.workers,
                       checkpoint=a.checkpoint)
    _emit(tables.render(obj, a.format), a.out)
    if a.check:
        res = tables.check(sel, obj)
        if not res.ok:
            sys.stderr.write(f"{sel}: MISMATCH\n{res.detail}\n")
            return EXIT_MISMATCH
        sys.stderr.write(f"{sel}: matches golden file\n")
    return EXIT_OK


def cmd_classify(a) -> int:
    cs = [classify_exceptions(n, a.window) for n in range(a.n_lo, a.n_hi + 1)]
    _emit(tables.render(cs, a.format), a.out)
    return EXIT_OK


def cmd_scan(a) -> int:
    grid = exception_grid(a.n_lo, a.n_hi, a.ell_lo, a.ell_hi, a.workers, a.checkpoint)
    _emit(tables.render(grid, a.format), a.out)
    return EXIT_OK


def cmd_bounds(a) -> int:
    rows = []
    for n in range(a.n_lo, a.n_hi + 1):
        row = {"n": n}
        if n >= 2:
            row["profile"] = bounds.growth_profile(n).to_dict()
            row["kappa_ceil"] = bounds.kappa(n, a.variant).value_ceiling
        row["L_ceil"] = bounds.L_threshold(n, a.variant).value_ceiling
        row["certified_sign"] = bounds.certified_sign(n)
        rows.append(row)
    if a.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        text = "n,m1,m2,c1,L_ceil,kappa_ceil,certified_sign\n" + "".join(
            f"{r['n']},{r.get('profile', {}).get('m1', '')},{r.get('profile', {}).get('m2', '') or ''},"
            f"{r.get('profile', {}).get('c1', '')},{r['L_ceil']},{r.get('kappa_ceil', '')},"
            f"{r['certified_sign']}\n"
            for r in rows
        )
    _emit(text, a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    checks = verify.run(a.suite)
    report = {"suite": a.suite, "ok": all(c.ok for c in checks),
              "checks": [c.to_dict() for c in checks]}
    _emit(json.dumps(report, indent=1) + "\n", a.out)
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def cmd_oracle(a) -> int:
    if a.method == "brute":
        r = count_commuting_tuples(a.n, a.ell)
    else:
        r = count_hom_by_centralizers(a.n, a.ell)
    want = n_table(a.ell, max(a.n, 1))[a.n]
    _emit(r.to_json() + "\n", a.out)
    if r.normalized != want:
        sys.stderr.write(f"oracle {r.normalized} != N_{a.ell}({a.n}) = {want}\n")
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _load_config(argv: List[str]) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    ns, _ = pre.parse_known_args(argv)
    if not ns.config:
        return {}
    try:
        with open(ns.config) as fh:
            cfg = json.load(fh)
    except (OSError, ValueError) as exc:
        raise SystemExit(f"error: cannot read config {ns.config}: {exc}")
    if not isinstance(cfg, dict):
        raise SystemExit(f"error: config {ns.config} must hold a JSON object")
    return cfg


def build_parser(config: Optional[dict] = None) -> argparse.ArgumentParser:
    config = config or {}
    common = {k: v for k, v in config.items() if not isinstance(v, dict)}

    p = argparse.ArgumentParser(prog="commuting-tuples", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON config file (flags override it)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def fmt(sp, choices=("csv", "json"), default="csv"):
        sp.add_argument("--format", choices=choices, default=default)
        sp.add_argument("--out", help="write to file instead of stdout")

    def par(sp):
        sp.add_argument("--workers", type=int, default=default_workers(),
                        help="parallel column workers (env COMMUTING_TUPLES_WORKERS)")
        sp.add_argument("--checkpoint", help="resumable JSON checkpoint of finished columns")

    sp = add("g", cmd_g, "subgroup growth g_ell(1..nmax)")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--method", choices=("sieve", "multiplicative", "both"), default="sieve")
    fmt(sp)

    sp = add("count", cmd_count, "N_ell(0..nmax)")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    fmt(sp)

    sp = add("poly", cmd_poly, "orbifold polynomial coefficients")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    fmt(sp)

    sp = add("delta", cmd_delta, "Delta_ell(n) and its sign")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    fmt(sp)

    sp = add("table", cmd_table, "reproduce a published table (T1..T6)")
    sp.add_argument("selector", choices=tables.SELECTORS + tuple(s.lower() for s in tables.SELECTORS))
    sp.add_argument("--check", action="store_true", help="diff against the golden file")
    sp.add_argument("--ncheck", type=int, help="T5 verification window (default 1000)")
    sp.add_argument("--quick", action="store_true", help="T5 with window 300")
    sp.add_argument("--nmax", type=int, help="T4 window for every ell")
    fmt(sp, ("latex", "csv", "json"), "latex")
    par(sp)

    sp = add("classify", cmd_classify, "exception classification in ell for fixed n")
    sp.add_argument("--n-lo", type=int, default=1)
    sp.add_argument("--n-hi", type=int, default=20)
    sp.add_argument("--window", type=int, help="largest ell scanned (default max(60, ceil L(n)))")
    fmt(sp, ("latex", "csv", "json"), "csv")

    sp = add("scan", cmd_scan, "exception grid over an (n, ell) rectangle")
    sp.add_argument("--n-lo", type=int, default=1)
    sp.add_argument("--n-hi", type=int, required=True)
    sp.add_argument("--ell-lo", type=int, default=0)
    sp.add_argument("--ell-hi", type=int, required=True)
    fmt(sp, ("latex", "csv", "json"), "csv")
    par(sp)

    sp = add("bounds", cmd_bounds, "growth constants and thresholds")
    sp.add_argument("--n-lo", type=int, default=1)
    sp.add_argument("--n-hi", type=int, default=20)
    sp.add_argument("--variant", choices=("table", "proof"), default="table",
                    help="n=20 constant: C1(20) (published ceilings) or C2(20)")
    fmt(sp, ("csv", "json"), "json")

    sp = add("verify", cmd_verify, "run invariant suites, JSON report")
    sp.add_argument("suite", choices=tuple(verify.SUITES) + ("all",))
    sp.add_argument("--out")

    sp = add("oracle", cmd_oracle, "brute-force commuting tuple count")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--method", choices=("brute", "centralizer"), default="brute")
    sp.add_argument("--out")

    for name, sp in sub.choices.items():
        overrides = dict(common)
        overrides.update(config.get(name, {}))
        overrides = {k.replace("-", "_"): v for k, v in overrides.items()}
        for action in sp._actions:
            if action.dest in overrides:
                # a config value satisfies a required flag
                action.required = False
        known = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in overrides.items() if k in known})
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser(_load_config(argv))
    except SystemExit as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "workers", 1) is not None and getattr(args, "workers", 1) < 1:
        sys.stderr.write("error: --workers must be >= 1\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except Mismatch as exc:
        sys.stderr.write(f"mismatch: {exc}\n")
        return EXIT_MISMATCH
    except CheckpointError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, OracleRefused) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
