"""Command-line front end.

    burgess verify lemmas|weil|pv
    burgess constants table|lower-bounds|corollary
    burgess nonresidue scan|chain
    burgess threshold
    burgess report all

Exit status: 0 all checks pass, 1 some check failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import constant_engine as ce
from . import lemma_suite as ls
from . import nonresidue as nr
from .char_arith import verify_pv
from .reference import C1_LOWER, C2_LOWER, COROLLARY_CONSTANT
from .reports import InequalityReport, SuiteReport
from .sieve import primes_upto, sieve_tables
from .weil_verify import verify_weil_range

OUT_DIR_ENV = "BURGESS_OUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- parsing helpers -------------------------------------------------------

def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def parse_int_list(s: str) -> list[int]:
    """'2..10', '3', or '7,10,20' (pieces may be ranges)."""
    out: list[int] = []
    try:
        for piece in str(s).split(","):
            piece = piece.strip()
            if ".." in piece:
                a, b = piece.split("..")
                lo, hi = int(a), int(b)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(piece))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list: {s!r}") from exc
    return out


def parse_count(s: str) -> int:
    """Integers, also written as 1e5 or 10**5."""
    s = str(s).strip()
    try:
        if "**" in s:
            a, b = s.split("**")
            return int(a) ** int(b)
        if "e" in s.lower():
            m, e = s.lower().split("e")
            return int(m) * 10 ** int(e)
        return int(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from exc


def read_config(path: str) -> dict[str, str]:
    """key = value lines; '#' starts a comment."""
    cfg = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        k, v = (t.strip() for t in line.split("=", 1))
        cfg[k.replace("-", "_")] = v
    return cfg


# --- output ----------------------------------------------------------------

def _fmt_float(x: float, digits: int) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, f".{digits}g")


def to_json(obj: Any, digits: int = 17) -> str:
    """Deterministic JSON: sorted keys, floats at a fixed number of significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj, digits)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ", ".join(f"{json.dumps(k)}: {to_json(v, digits)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v, digits) for v in obj) + "]"
    return json.dumps(str(obj))


def _cell(v: Any, digits: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v, digits) if math.isfinite(v) else ""
    if isinstance(v, (dict, list)):
        return to_json(v, digits)
    return str(v)


def to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    columns = columns or list(rows[0])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c), 17) for c in columns])
    return buf.getvalue()


def check_rows(checks: list[InequalityReport]) -> list[dict]:
    return [
        {"name": c.name, "params": c.params, "lhs": float(c.lhs), "rhs": float(c.rhs),
         "margin": c.margin, "status": c.status}
        for c in checks
    ]


@dataclass
class Outcome:
    """What a subcommand produced: the checks plus an optional table of rows."""

    command: str
    params: dict
    suite: SuiteReport
    rows: list[dict] = field(default_factory=list)
    columns: list[str] | None = None
    extra: dict = field(default_factory=dict)

    def payload(self, all_checks: bool = False) -> dict:
        d = {
            "command": self.command,
            "params": self.params,
            "status": "pass" if self.suite.ok else "fail",
            "counts": self.suite.counts(),
            "failures": check_rows(self.suite.failures()),
            "worst": _worst_by_name(self.suite.checks),
        }
        if self.rows:
            d["rows"] = self.rows
        if all_checks:
            d["checks"] = check_rows(self.suite.checks)
        if self.suite.notes:
            d["notes"] = list(self.suite.notes)
        d.update(self.extra)
        return d


def _worst_by_name(checks: list[InequalityReport]) -> dict:
    worst: dict[str, InequalityReport] = {}
    for c in checks:
        if c.name not in worst or c.margin < worst[c.name].margin:
            worst[c.name] = c
    return {k: {"margin": v.margin, "params": v.params} for k, v in sorted(worst.items())}


def render(outcome: Outcome, fmt: str, all_checks: bool = False) -> str:
    if fmt == "json":
        # timings are left out so that identical runs give identical bytes
        return to_json(outcome.payload(all_checks)) + "\n"
    if fmt == "csv":
        if outcome.rows:
            return to_csv(outcome.rows, outcome.columns)
        return to_csv(check_rows(outcome.suite.checks),
                      ["name", "params", "lhs", "rhs", "margin", "status"])
    return render_text(outcome)


def render_text(o: Outcome) -> str:
    lines = [f"{o.command}: {'PASS' if o.suite.ok else 'FAIL'}  {o.suite.counts()}"]
    for name, secs in o.suite.sections.items():
        lines.append(f"  {name:<28s} {secs:8.2f} s")
    for name, w in _worst_by_name(o.suite.checks).items():
        lines.append(f"  worst {name:<34s} margin {_fmt_float(w['margin'], 6)}")
    if o.rows:
        cols = o.columns or list(o.rows[0])
        lines.append("  " + "  ".join(f"{c:>12s}" for c in cols))
        for row in o.rows[:200]:
            lines.append("  " + "  ".join(f"{_cell(row.get(c), 6):>12s}" for c in cols))
        if len(o.rows) > 200:
            lines.append(f"  ... {len(o.rows) - 200} more rows")
    for c in o.suite.failures()[:20]:
        lines.append(f"  FAILED {c.name} {c.params} lhs={_fmt_float(float(c.lhs), 6)} rhs={_fmt_float(float(c.rhs), 6)}")
    for n in o.suite.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


# --- subcommand bodies -----------------------------------------------------

def run_lemmas(xmax=10**5, v2_count=50, v2_p_max=10**5, s1_max=500, seed=0,
               sieve_limit=None, **_) -> Outcome:
    suite = SuiteReport()
    limit = sieve_limit or xmax
    if limit < xmax:
        raise UsageError(f"sieve limit {limit} below xmax {xmax}")
    with suite.section("integer lemmas"):
        suite.extend(ls.sweep_integer_lemmas(xmax, sieve_tables(limit)).values())
    with suite.section("V2 lemma 2.1"):
        for inst in ls.random_v2_instances("lemma21", v2_count, v2_p_max, seed):
            suite.extend(ls.v_counts(*inst).reports())
    with suite.section("V2 lemma 4.1"):
        for inst in ls.random_v2_instances("lemma41", v2_count, v2_p_max, seed + 1):
            suite.extend(ls.v_counts(*inst).reports())
    with suite.section("S sums"):
        table = ls.s1_exact_table(s1_max)
        for A in range(2, s1_max + 1):
            closed = Fraction(3, 4) * A * (A - 1)
            suite.checks.append(InequalityReport(
                "S1_identity", {"A": A}, float(abs(table[A] - closed)), 0.0,
                slack=0.0))
        for A in (11, 27, 50, 100):
            suite.extend(c for c in ls.s_sums_check(A) if c.name != "S1_identity")
        for A in range(11, 200):
            suite.checks.append(ls.log_weight_helper(A))
        for A in range(27, 2000):
            suite.checks.append(ls.harmonic_helper(A))
    params = {"xmax": xmax, "v2_count": v2_count, "v2_p_max": v2_p_max, "s1_max": s1_max, "seed": seed}
    return Outcome("verify lemmas", params, suite)


def run_weil(p_max=500, B=(1, 2, 3, 4, 5), r=(1, 2, 3), workers=1, **_) -> Outcome:
    suite = SuiteReport()
    primes = [p for p in primes_upto(p_max).tolist() if p >= 3]
    with suite.section("weil moments"):
        reps = verify_weil_range(primes, list(B), list(r), workers=workers)
    for m in reps:
        suite.checks.append(InequalityReport(
            "weil_moment", {"p": m.p, "B": m.B, "r": m.r, "order": m.order, "index": m.index},
            float(m.W), m.bound, slack=m.slack))
    return Outcome("verify weil", {"p_max": p_max, "B": list(B), "r": list(r)}, suite)


def run_pv(p_max=300, **_) -> Outcome:
    suite = SuiteReport()
    with suite.section("polya-vinogradov"):
        for p in primes_upto(p_max).tolist():
            if p >= 3:
                suite.extend(verify_pv(p))
    return Outcome("verify pv", {"p_max": p_max}, suite)


TABLE_COLUMNS = ["variant", "r", "p0_exponent", "k", "c_prime", "s", "A_min", "B", "c",
                 "reference", "delta"]


def run_table(variant="thm1", p0=None, r=tuple(range(2, 11)), **_) -> Outcome:
    suite = SuiteReport()
    variants = ["thm1", "thm2"] if variant == "both" else [variant]
    rows = []
    for v in variants:
        exps = p0 or ([7, 10, 20] if v == "thm1" else [10, 15, 20])
        for e in exps:
            with suite.section(f"{v} p0=10^{e}"):
                results = ce.optimize_table(v, e, r)
            for res in results:
                row = res.row()
                row["p0_exponent"] = e
                rows.append(row)
                params = {"variant": v, "r": res.inputs.r, "p0_exp": e}
                suite.checks.append(InequalityReport("feasible", params, 0.0, 1.0 if res.feasible else -1.0))
                if res.feasible:
                    lower = ce.floorA_lower_bound_c(res.inputs.r, e, v)
                    suite.checks.append(InequalityReport("above_floorA_lower_bound", params, lower, res.c))
                    if res.reference is not None:
                        suite.checks.append(
                            InequalityReport("within_1e-3_of_table", params, res.c, res.reference + 1e-3))
    return Outcome("constants table", {"variant": variant, "p0": p0, "r": list(r)}, suite,
                   rows, TABLE_COLUMNS)


def run_lower_bounds(variant="both", **_) -> Outcome:
    suite = SuiteReport()
    rows = []
    variants = ["thm1", "thm2"] if variant == "both" else [variant]
    for v in variants:
        table = C1_LOWER if v == "thm1" else C2_LOWER
        for (r_, e), ref in sorted(table.items(), key=lambda t: (t[0][1], t[0][0])):
            val = ce.floorA_lower_bound_c(r_, e, v)
            rows.append({"variant": v, "r": r_, "p0_exponent": e, "value": val, "reference": ref,
                         "abs_diff": abs(val - ref)})
            suite.checks.append(InequalityReport(
                "lower_bound_5dp", {"variant": v, "r": r_, "p0_exp": e}, abs(val - ref),
                ce.LOWER_BOUND_TOL, slack=0.0))
    return Outcome("constants lower-bounds", {"variant": variant}, suite, rows,
                   ["variant", "r", "p0_exponent", "value", "reference", "abs_diff"])


def run_corollary(p0=7, r_max=100, p0_14=10, r14_max=40, **_) -> Outcome:
    suite = SuiteReport()
    with suite.section("corollary 1.2"):
        suite.extend(ce.corollary12_check(p0, r_max))
    with suite.section("corollary 1.4"):
        suite.extend(ce.corollary14_range_check(p0_14, r14_max))
    with suite.section("B >= 15"):
        suite.extend(ce.verify_B_ge_15(r_max, p0))
    rows = [{"r": r_, "c": ce.corollary12_constant(r_, p0), "bound": COROLLARY_CONSTANT}
            for r_ in range(4, r_max + 1)]
    params = {"p0": p0, "r_max": r_max, "p0_14": p0_14, "r14_max": r14_max}
    return Outcome("constants corollary", params, suite, rows, ["r", "c", "bound"])


SCAN_COLUMNS = ["p", "k", "g", "norton_bound", "grh_bound", "ok"]


def run_scan(p_min=10**4, p_max=10**6, k=None, rows=False, **_) -> Outcome:
    suite = SuiteReport()
    summary = nr.ScanSummary(p_min, p_max)
    kept = []
    last = None
    with suite.section("scan"):
        for rec in nr.scan_nonresidues(p_min, p_max, k):
            if rec.p != last:
                summary.primes += 1
                last = rec.p
            summary.add(rec)
            if rows:
                kept.append(rec.row())
    for v in summary.violations:
        suite.checks.append(InequalityReport("norton_bound", {"p": v.p, "k": v.k}, v.g, v.norton_bound))
    if summary.max_ratio_record is not None:
        m = summary.max_ratio_record
        suite.checks.append(InequalityReport("norton_bound_worst", {"p": m.p, "k": m.k}, m.g, m.norton_bound))
    params = {"p_min": p_min, "p_max": p_max, "k": k}
    return Outcome("nonresidue scan", params, suite, kept, SCAN_COLUMNS,
                   {"summary": summary.as_dict()})


def run_chain(p_max=10**5, g_min=7, rs_xmax=10**5, **_) -> Outcome:
    suite = SuiteReport()
    with suite.section("vinogradov chain"):
        suite.extend(nr.vinogradov_chain_sweep(p_max, g_min))
    with suite.section("prime reciprocal estimates"):
        suite.extend(nr.rs_sweep(rs_xmax).values())
    return Outcome("nonresidue chain", {"p_max": p_max, "g_min": g_min, "rs_xmax": rs_xmax}, suite)


def run_threshold(alpha=Fraction(1, 6), r=(22,), const=2.74, **_) -> Outcome:
    suite = SuiteReport()
    rows = []
    extra: dict = {}
    for r_ in r:
        res = nr.threshold_solver(alpha, r_, const)
        rows.append(res.as_dict())
        suite.checks.append(InequalityReport("holds_at_E", {"r": r_, "E": res.E}, res.lhs_at_E, res.rhs_at_E, strict=True))
        suite.checks.append(InequalityReport(
            "fails_at_E_minus_1", {"r": r_, "E": res.E}, res.rhs_at_E_minus_1, res.lhs_at_E_minus_1))
    if len(rows) == 1:
        extra = {"result": rows[0]}
    else:
        best = min(rows, key=lambda d: d["E"])
        extra = {"best_r": best["r"], "best_E": best["E"]}
    if Fraction(alpha) != Fraction(1, 6):
        suite.notes.append("alpha other than 1/6 has no published reference value")
    return Outcome("threshold", {"alpha": str(alpha), "r": list(r), "const": const}, suite, rows,
                   ["alpha", "r", "const", "delta", "E", "lhs_at_E", "rhs_at_E",
                    "lhs_at_E_minus_1", "rhs_at_E_minus_1"], extra)


def run_report_all(workers=1, sieve_limit=None, **_) -> Outcome:
    suite = SuiteReport()
    parts = [
        ("table thm1", lambda: run_table("thm1")),
        ("table thm2", lambda: run_table("thm2")),
        ("lower bounds", lambda: run_lower_bounds("both")),
        ("threshold", lambda: run_threshold()),
        ("weil", lambda: run_weil(workers=workers)),
        ("lemmas", lambda: run_lemmas(sieve_limit=sieve_limit)),
        ("polya-vinogradov", lambda: run_pv()),
        ("nonresidue scan", lambda: run_scan()),
        ("nonresidue chain", lambda: run_chain()),
        ("corollaries", lambda: run_corollary()),
    ]
    summary = {}
    for name, fn in parts:
        with suite.section(name):
            o = fn()
        suite.extend(o.suite.checks)
        summary[name] = {"status": "pass" if o.suite.ok else "fail", "counts": o.suite.counts()}
    return Outcome("report all", {"workers": workers}, suite, extra={"parts": summary})


# --- argument parsing ------------------------------------------------------

# built-in defaults; config files and then flags override these
DEFAULTS: dict[str, dict[str, Any]] = {
    "verify lemmas": {"xmax": 10**5, "v2_count": 50, "v2_p_max": 10**5, "s1_max": 500, "seed": 0},
    "verify weil": {"p_max": 500, "B": [1, 2, 3, 4, 5], "r": [1, 2, 3]},
    "verify pv": {"p_max": 300},
    "constants table": {"variant": "thm1", "p0": None, "r": list(range(2, 11))},
    "constants lower-bounds": {"variant": "both"},
    "constants corollary": {"p0": 7, "r_max": 100, "p0_14": 10, "r14_max": 40},
    "nonresidue scan": {"p_min": 10**4, "p_max": 10**6, "k": None, "rows": False},
    "nonresidue chain": {"p_max": 10**5, "g_min": 7, "rs_xmax": 10**5},
    "threshold": {"alpha": Fraction(1, 6), "r": [22], "const": 2.74},
    "report all": {},
}

RUNNERS: dict[str, Callable[..., Outcome]] = {
    "verify lemmas": run_lemmas,
    "verify weil": run_weil,
    "verify pv": run_pv,
    "constants table": run_table,
    "constants lower-bounds": run_lower_bounds,
    "constants corollary": run_corollary,
    "nonresidue scan": run_scan,
    "nonresidue chain": run_chain,
    "threshold": run_threshold,
    "report all": run_report_all,
}

# how config-file strings are converted, per key
CONVERTERS: dict[str, Callable[[str], Any]] = {
    "xmax": parse_count, "v2_count": parse_count, "v2_p_max": parse_count, "s1_max": parse_count,
    "seed": int, "p_max": parse_count, "p_min": parse_count, "B": parse_int_list,
    "r": parse_int_list, "variant": str, "p0": None, "r_max": int, "p0_14": int, "r14_max": int,
    "k": parse_int_list, "rows": lambda s: s.strip().lower() in ("1", "true", "yes"),
    "g_min": int, "rs_xmax": parse_count, "alpha": parse_rational, "const": float,
    "workers": int, "sieve_limit": parse_count, "format": str, "out": str,
}


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=["json", "csv", "text"], default=None)
    sp.add_argument("--out", default=None, help=f"output file (default: stdout, or ${OUT_DIR_ENV}/<command>.<ext>)")
    sp.add_argument("--config", default=None, help="key = value file; flags override it")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--sieve-limit", type=parse_count, default=None)
    sp.add_argument("--all-checks", action="store_true", help="include every check in JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burgess", description="explicit Burgess bound checks")
    sub = parser.add_subparsers(dest="group", required=True)

    verify = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    sp = verify.add_parser("lemmas")
    sp.add_argument("--xmax", type=parse_count)
    sp.add_argument("--v2-count", type=parse_count)
    sp.add_argument("--v2-p-max", type=parse_count)
    sp.add_argument("--s1-max", type=parse_count)
    sp.add_argument("--seed", type=int)
    _common(sp)
    sp = verify.add_parser("weil")
    sp.add_argument("--p-max", type=parse_count)
    sp.add_argument("--B", type=parse_int_list)
    sp.add_argument("--r", type=parse_int_list)
    _common(sp)
    sp = verify.add_parser("pv")
    sp.add_argument("--p-max", type=parse_count)
    _common(sp)

    const = sub.add_parser("constants").add_subparsers(dest="action", required=True)
    sp = const.add_parser("table")
    sp.add_argument("--variant", choices=["thm1", "thm2", "both"])
    sp.add_argument("--p0", type=parse_int_list, help="decimal exponent(s) of p0, e.g. 7 or 7,10,20")
    sp.add_argument("--r", type=parse_int_list, help="e.g. 2..10")
    _common(sp)
    sp = const.add_parser("lower-bounds")
    sp.add_argument("--variant", choices=["thm1", "thm2", "both"])
    _common(sp)
    sp = const.add_parser("corollary")
    sp.add_argument("--p0", type=int)
    sp.add_argument("--r-max", type=int)
    sp.add_argument("--p0-14", type=int)
    sp.add_argument("--r14-max", type=int)
    _common(sp)

    nonres = sub.add_parser("nonresidue").add_subparsers(dest="action", required=True)
    sp = nonres.add_parser("scan")
    sp.add_argument("--p-min", type=parse_count)
    sp.add_argument("--p-max", type=parse_count)
    sp.add_argument("--k", type=parse_int_list)
    sp.add_argument("--rows", action="store_const", const=True, default=None,
                    help="emit one row per (p, k) (implied by --format csv)")
    _common(sp)
    sp = nonres.add_parser("chain")
    sp.add_argument("--p-max", type=parse_count)
    sp.add_argument("--g-min", type=int)
    sp.add_argument("--rs-xmax", type=parse_count)
    _common(sp)

    sp = sub.add_parser("threshold")
    sp.add_argument("--alpha", type=parse_rational)
    sp.add_argument("--r", type=parse_int_list)
    sp.add_argument("--const", type=float)
    _common(sp)

    report = sub.add_parser("report").add_subparsers(dest="action", required=True)
    _common(report.add_parser("all"))
    return parser


COMMON_KEYS = ("format", "out", "workers", "sieve_limit")


def resolve(args: argparse.Namespace) -> tuple[str, dict[str, Any], dict[str, Any]]:
    """Merge built-in defaults, the config file and explicit flags (in that order)."""
    command = args.group if args.group == "threshold" else f"{args.group} {args.action}"
    params = dict(DEFAULTS[command])
    common: dict[str, Any] = {"format": "json", "out": None, "workers": 1, "sieve_limit": None}
    if args.config:
        for key, raw in read_config(args.config).items():
            if key not in CONVERTERS or (key not in params and key not in COMMON_KEYS):
                raise UsageError(f"unknown config key {key!r} for {command}")
            conv = CONVERTERS[key] or (parse_int_list if command == "constants table" else int)
            try:
                value = conv(raw)
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config key {key}: {exc}") from exc
            (common if key in COMMON_KEYS else params)[key] = value
    for key, value in vars(args).items():
        if value is None or key in ("group", "action", "config", "all_checks"):
            continue
        (common if key in COMMON_KEYS else params)[key] = value
    if command == "nonresidue scan" and common["format"] == "csv":
        params["rows"] = True
    if command in ("verify weil", "report all"):
        params["workers"] = common["workers"]
    if command in ("verify lemmas", "report all"):
        params["sieve_limit"] = common["sieve_limit"]
    validate(command, params, common)
    return command, params, common


def validate(command: str, params: dict, common: dict) -> None:
    if common["format"] not in ("json", "csv", "text"):
        raise UsageError(f"unknown format {common['format']!r}")
    if common["workers"] < 1:
        raise UsageError("--workers must be >= 1")
    if command == "verify weil":
        if any(B < 1 for B in params["B"]) or any(r < 1 for r in params["r"]):
            raise UsageError("B and r must be >= 1")
    if command == "constants table":
        if any(r < 2 for r in params["r"]):
            raise UsageError("r >= 2 required")
        if params["variant"] not in ("thm1", "thm2", "both"):
            raise UsageError("variant must be thm1, thm2 or both")
    if command == "nonresidue scan":
        if params["p_max"] > nr.SCAN_P_MAX or params["p_min"] > params["p_max"]:
            raise UsageError("need p_min <= p_max <= 10^9")
    if command == "threshold":
        for r in params["r"]:
            try:
                nr.delta_of(params["alpha"], r)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
    if command == "verify lemmas" and params["xmax"] < 1:
        raise UsageError("xmax >= 1 required")


def _destination(command: str, common: dict) -> Path | None:
    if common["out"]:
        return Path(common["out"])
    base = os.environ.get(OUT_DIR_ENV)
    if base:
        ext = {"json": "json", "csv": "csv", "text": "txt"}[common["format"]]
        return Path(base) / f"{command.replace(' ', '_')}.{ext}"
    return None


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        command, params, common = resolve(args)
        outcome = RUNNERS[command](**params)
    except (UsageError, ValueError) as exc:
        print(f"burgess: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(outcome, common["format"], getattr(args, "all_checks", False))
    dest = _destination(command, common)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        print(f"{command}: {'pass' if outcome.suite.ok else 'FAIL'} -> {dest}", file=sys.stderr)
    return EXIT_OK if outcome.suite.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
