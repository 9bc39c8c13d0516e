"""Least k-th power non-residues, prime-reciprocal estimates and the 10^E threshold.

All logarithms are natural.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .char_arith import DirichletCharacter, char_eval
from .reports import InequalityReport
from .sieve import (
    divisors_from_factors,
    factorize_with_table,
    is_prime,
    primes_upto,
    segmented_primes,
    smallest_factor_table,
)

# Mertens' constant, lim (sum_{p <= x} 1/p - log log x). Literature value; it is
# not derived here. The checks below keep a margin of >= 3e-7 so a change of
# 1e-10 cannot flip any of them.
MERTENS_B = 0.26149721284764278

NORTON_CONST = 0.9
NORTON_CONST_K2_3MOD4 = 1.1
RS_UPPER_FROM = 286
THRESHOLD_MAX_EXPONENT = 10**6
# spf tables are built up to this bound; larger p - 1 fall back to trial division
SPF_CAP = 2 * 10**7
SCAN_P_MAX = 10**9


class HypothesisViolation(ValueError):
    """chi(n) != 1 for some n <= y, so the Vinogradov-trick bound does not apply."""


class NoThreshold(RuntimeError):
    pass


def _check_k(p: int, k: int) -> None:
    if k < 1 or (p - 1) % k:
        raise ValueError(f"k={k} does not divide p-1={p - 1}")


def is_kth_residue(n: int, p: int, k: int) -> bool:
    """Euler's criterion generalised: n^((p-1)/k) == 1 mod p."""
    _check_k(p, k)
    if not 1 <= n < p:
        raise ValueError("need 1 <= n < p")
    return pow(n, (p - 1) // k, p) == 1


def least_nonresidue(p: int, k: int) -> int:
    if k < 2:
        raise ValueError("k > 1 required")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _check_k(p, k)
    e = (p - 1) // k
    n = 2
    while pow(n, e, p) == 1:
        n += 1
    return n


def norton_bound(p: int, k: int) -> float:
    c = NORTON_CONST_K2_3MOD4 if (k == 2 and p % 4 == 3) else NORTON_CONST
    return c * p**0.25 * math.log(p)


def grh_bound(p: int) -> float:
    return 2 * math.log(p) ** 2


@dataclass(frozen=True, slots=True)
class NonResidueRecord:
    p: int
    k: int
    g: int
    norton_bound: float
    grh_bound: float

    @property
    def ok(self) -> bool:
        return self.g <= self.norton_bound

    def row(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "g": self.g,
            "norton_bound": self.norton_bound,
            "grh_bound": self.grh_bound,
            "ok": self.ok,
        }


def _small_primes(limit: int = 10**4) -> list[int]:
    return [int(q) for q in primes_upto(limit)]


_SMALL_PRIMES = _small_primes()


def _index_gcds(p: int, prime_factors: list[int]) -> Iterator[tuple[int, int]]:
    """Yield (q, (p-1)/ord_p(q)) for primes q = 2, 3, 5, ... below p.

    q is a k-th power residue exactly when k divides the second entry.
    """
    more = (q for q in itertools.count(_SMALL_PRIMES[-1] + 2, 2) if is_prime(q))
    for q in itertools.chain(_SMALL_PRIMES, more):
        if q >= p:
            return
        order = p - 1
        for ell in prime_factors:
            while order % ell == 0 and pow(q, order // ell, p) == 1:
                order //= ell
        yield q, (p - 1) // order


def nonresidues_for_prime(p: int, ks: Iterable[int] | None = None, spf=None) -> dict[int, int]:
    """g(p, k) for every requested k | p-1, k > 1 (default: all of them)."""
    if spf is None:
        spf = smallest_factor_table(min(max(p, 16), SPF_CAP))
    factors = factorize_with_table(p - 1, spf)
    if ks is None:
        todo = [d for d in divisors_from_factors(factors) if d > 1]
    else:
        todo = [k for k in ks if k > 1 and (p - 1) % k == 0]
    out: dict[int, int] = {}
    if not todo:
        return out
    ells = [ell for ell, _ in factors]
    for q, h in _index_gcds(p, ells):
        still = []
        for k in todo:
            if h % k:
                out[k] = q
            else:
                still.append(k)
        todo = still
        if not todo:
            break
    return out


def scan_nonresidues(
    p_min: int, p_max: int, k_filter: Iterable[int] | None = None
) -> Iterator[NonResidueRecord]:
    """Records for every prime p in [p_min, p_max] and each admissible k, ascending in p then k."""
    if p_max > SCAN_P_MAX:
        raise ValueError(f"p_max={p_max} above the segmented-sieve range {SCAN_P_MAX}")
    ks = None if k_filter is None else sorted(set(k_filter))
    spf = smallest_factor_table(min(max(p_max, 16), SPF_CAP))
    for block in segmented_primes(max(p_min, 3), p_max):
        for p in block.tolist():
            gs = nonresidues_for_prime(p, ks, spf)
            grh = grh_bound(p)
            for k in sorted(gs):
                yield NonResidueRecord(p, k, gs[k], norton_bound(p, k), grh)


@dataclass
class ScanSummary:
    p_min: int
    p_max: int
    primes: int = 0
    records: int = 0
    violations: list[NonResidueRecord] = field(default_factory=list)
    grh_exceed: int = 0
    max_g: NonResidueRecord | None = None
    max_ratio: float = 0.0
    max_ratio_record: NonResidueRecord | None = None

    def add(self, rec: NonResidueRecord) -> None:
        self.records += 1
        if not rec.ok:
            self.violations.append(rec)
        if rec.g > rec.grh_bound:
            self.grh_exceed += 1
        if self.max_g is None or rec.g > self.max_g.g:
            self.max_g = rec
        ratio = rec.g / rec.norton_bound
        if ratio > self.max_ratio:
            self.max_ratio, self.max_ratio_record = ratio, rec

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "p_min": self.p_min,
            "p_max": self.p_max,
            "primes": self.primes,
            "records": self.records,
            "violations": [v.row() for v in self.violations],
            "grh_exceed": self.grh_exceed,
            "max_g": None if self.max_g is None else self.max_g.row(),
            "max_ratio_to_norton": self.max_ratio,
            "max_ratio_record": None if self.max_ratio_record is None else self.max_ratio_record.row(),
            "ok": self.ok,
        }


def scan_summary(p_min: int, p_max: int, k_filter: Iterable[int] | None = None) -> ScanSummary:
    summary = ScanSummary(p_min, p_max)
    last = None
    for rec in scan_nonresidues(p_min, p_max, k_filter):
        if rec.p != last:
            summary.primes += 1
            last = rec.p
        summary.add(rec)
    return summary


# --- prime reciprocal sums -------------------------------------------------

def prime_recip_sum(x: float) -> float:
    """sum of 1/p over p <= x, compensated summation."""
    n = math.floor(x)
    if n < 2:
        return 0.0
    return math.fsum(1.0 / q for q in primes_upto(n).tolist())


def _rs_lower(x: float) -> float:
    lx = math.log(x)
    return math.log(lx) + MERTENS_B - 1 / (2 * lx * lx)


def _rs_upper(x: float) -> float:
    lx = math.log(x)
    return math.log(lx) + MERTENS_B + 1 / (2 * lx * lx)


def prime_count_bound(x: float) -> float:
    lx = math.log(x)
    return x / lx * (1 + 3 / (2 * lx))


def prime_recip_bounds(x: float) -> tuple[InequalityReport, InequalityReport | None]:
    """(lower, upper) reports for sum_{p <= x} 1/p; upper is None below 286."""
    if x <= 1:
        raise ValueError("x > 1 required")
    s = prime_recip_sum(x)
    lower = InequalityReport("rs_recip_lower", {"x": x}, _rs_lower(x), s, strict=True)
    upper = None
    if x >= RS_UPPER_FROM:
        upper = InequalityReport("rs_recip_upper", {"x": x}, s, _rs_upper(x), strict=True)
    return lower, upper


def prime_count_report(x: float) -> InequalityReport:
    if x <= 1:
        raise ValueError("x > 1 required")
    n = math.floor(x)
    pi = 0 if n < 2 else len(primes_upto(n))
    return InequalityReport("rs_prime_count", {"x": x}, pi, prime_count_bound(x), strict=True)


def prime_recip_interval(y: float, x: float) -> InequalityReport:
    """sum over y < p <= x of 1/p against the difference of the two estimates."""
    if not (x > y > 1 and x >= RS_UPPER_FROM):
        raise ValueError("need x > y > 1 and x >= 286")
    lo, hi = math.floor(y), math.floor(x)
    qs = primes_upto(hi)
    s = math.fsum(1.0 / q for q in qs[qs > lo].tolist())
    lx, ly = math.log(x), math.log(y)
    rhs = math.log(lx) - math.log(ly) + 1 / (2 * lx * lx) + 1 / (2 * ly * ly)
    return InequalityReport("rs_recip_interval", {"y": y, "x": x}, s, rhs, strict=True)


def rs_sweep(xmax: int) -> dict[str, InequalityReport]:
    """Exhaustive integer sweep of the three estimates up to xmax; worst case of each.

    The lower estimate increases in x, so on [n, n+1) it is largest at the left
    limit (n+1)^-; those limits are checked (non-strictly) alongside the integers.
    The prefix sums use float64 cumsum, which is accurate to ~1e-13 here.
    """
    if xmax < RS_UPPER_FROM:
        raise ValueError("xmax >= 286 required")
    mask = np.zeros(xmax + 2, dtype=bool)
    mask[primes_upto(xmax + 1)] = True
    n = np.arange(xmax + 2, dtype=np.float64)
    recip = np.where(mask, 1.0 / np.maximum(n, 1), 0.0)
    S = np.cumsum(recip)
    pi = np.cumsum(mask)

    ints = np.arange(2, xmax + 1)
    L = np.log(ints.astype(np.float64))
    lower = np.log(L) + MERTENS_B - 1 / (2 * L * L)
    upper = np.log(L) + MERTENS_B + 1 / (2 * L * L)
    Lnext = np.log(ints + 1.0)
    lower_left = np.log(Lnext) + MERTENS_B - 1 / (2 * Lnext * Lnext)
    pib = ints / L * (1 + 3 / (2 * L))

    def worst(name, lhs, rhs, xs, strict=True):
        i = int(np.argmin(rhs - lhs))
        return InequalityReport(name, {"x": float(xs[i]), "xmax": xmax}, float(lhs[i]), float(rhs[i]), strict=strict)

    big = ints >= RS_UPPER_FROM
    out = {
        "rs_recip_lower": worst("rs_recip_lower", lower, S[ints], ints),
        "rs_recip_lower_left_limit": worst(
            "rs_recip_lower_left_limit", lower_left, S[ints], ints + 1, strict=False
        ),
        "rs_recip_upper": worst("rs_recip_upper", S[ints][big], upper[big], ints[big]),
        "rs_prime_count": worst("rs_prime_count", pi[ints].astype(float), pib, ints),
    }
    # below 3 the pi bound is not monotone in x, so sample (1, 3) densely
    xs = np.linspace(1.001, 3.0, 4000, endpoint=False)
    lxs = np.log(xs)
    small_pi = (xs >= 2).astype(float)
    out["rs_prime_count_small"] = worst("rs_prime_count_small", small_pi, xs / lxs * (1 + 3 / (2 * lxs)), xs)
    return out


# --- Vinogradov's trick ----------------------------------------------------

def vinogradov_lower_bound(x: float, delta: float) -> float:
    """x (2 log(delta sqrt e + 1) - 1/log^2 x - 1/log^2 y - 1/x) with y = x^(1/sqrt e + delta)."""
    if x < RS_UPPER_FROM:
        raise ValueError("x >= 286 required")
    if delta <= 0:
        raise ValueError("delta > 0 required")
    lx = math.log(x)
    ly = (math.exp(-0.5) + delta) * lx
    return x * (2 * math.log(delta * math.sqrt(math.e) + 1) - 1 / lx**2 - 1 / ly**2 - 1 / x)


def vinogradov_chain_check(chi: DirichletCharacter, y: float, x: float) -> InequalityReport:
    """|S_chi(0, floor x)| >= floor x - 2 sum_{y < q <= x} floor(x / q), by direct evaluation."""
    p = chi.p
    if x >= p:
        raise ValueError("x < p required")
    if x < y:
        raise ValueError("x >= y required")
    for n in range(1, math.floor(y) + 1):
        v = char_eval(chi, n)
        if v.exact != 1:
            raise HypothesisViolation(f"chi({n}) != 1 with n <= y = {y}")
    fx = math.floor(x)
    total = complex(0)
    exact = 0
    all_exact = True
    for n in range(1, fx + 1):
        v = char_eval(chi, n)
        if v.exact is not None:
            exact += v.exact
        else:
            all_exact = False
            total += v.value
    S = abs(exact) if all_exact else abs(total + exact)
    qs = primes_upto(max(fx, 2))
    qs = qs[(qs > math.floor(y)) & (qs <= fx)]
    bound = fx - 2 * sum(fx // int(q) for q in qs)
    return InequalityReport(
        "vinogradov_chain",
        {"p": p, "order": chi.order, "index": chi.index, "y": y, "x": x},
        bound,
        S,
    )


def vinogradov_chain_sweep(p_max: int, g_min: int = 7) -> list[InequalityReport]:
    """Chain check for all p <= p_max with g(p, 2) >= g_min, y = g - 1, y < x <= min(p-1, 3y)."""
    out = []
    for p in primes_upto(p_max).tolist():
        if p < 3:
            continue
        g = least_nonresidue(p, 2)
        if g < g_min:
            continue
        chi = DirichletCharacter(p, 2, 1)
        y = g - 1
        for x in range(y + 1, min(p - 1, 3 * y) + 1):
            out.append(vinogradov_chain_check(chi, y, x))
    return out


# --- the threshold ---------------------------------------------------------

def _as_fraction(alpha) -> Fraction:
    return alpha if isinstance(alpha, Fraction) else Fraction(alpha).limit_denominator(10**12)


def delta_of(alpha, r: int) -> float:
    """delta = alpha / (1/4 + 1/(2r)) - 1/sqrt(e); errors when this is not positive."""
    if r < 1:
        raise ValueError("r >= 1 required")
    ratio = _as_fraction(alpha) / (Fraction(1, 4) + Fraction(1, 2 * r))
    d = float(ratio) - math.exp(-0.5)
    if d <= 0:
        raise ValueError(f"no positive delta for alpha={alpha}, r={r} (delta = {d:.6g})")
    return d


def threshold_sides(E: float, alpha, r: int, const: float) -> tuple[float, float]:
    """(lhs, rhs) of the closing inequality at p = 10^E, evaluated through log p only."""
    a = float(_as_fraction(alpha))
    d = delta_of(alpha, r)
    L = E * math.log(10)
    lhs = const * math.exp(math.log(L) / r - L / (4 * r * r))
    lx = (0.25 + 0.5 / r) * L
    ly = a * L
    rhs = 2 * math.log(d * math.sqrt(math.e) + 1) - 1 / lx**2 - 1 / ly**2 - math.exp(-lx)
    return lhs, rhs


@dataclass(frozen=True)
class ThresholdResult:
    alpha: str
    r: int
    const: float
    delta: float
    E: int
    lhs_at_E: float
    rhs_at_E: float
    lhs_at_E_minus_1: float
    rhs_at_E_minus_1: float
    lhs_decreasing_from: float

    @property
    def holds_at_E(self) -> bool:
        return self.rhs_at_E > self.lhs_at_E

    @property
    def fails_below(self) -> bool:
        return not (self.rhs_at_E_minus_1 > self.lhs_at_E_minus_1)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["holds_at_E"] = self.holds_at_E
        d["fails_at_E_minus_1"] = self.fails_below
        return d


def threshold_solver(alpha, r: int, const: float, e_max: int = THRESHOLD_MAX_EXPONENT) -> ThresholdResult:
    """Least integer E >= 1 such that the claim holds at p = 10^E and at every larger p.

    Also requires x = p^(1/4 + 1/(2r)) >= 286. The left side decreases once
    log p > 4r and the right side increases in p, so past that point the first
    E that works keeps working; the scan is over all E up to e_max.
    """
    d = delta_of(alpha, r)
    a = float(_as_fraction(alpha))
    E = np.arange(1, e_max + 1, dtype=np.float64)
    L = E * math.log(10)
    lhs = const * np.exp(np.log(L) / r - L / (4 * r * r))
    lx = (0.25 + 0.5 / r) * L
    ly = a * L
    rhs = 2 * math.log(d * math.sqrt(math.e) + 1) - 1 / lx**2 - 1 / ly**2 - np.exp(-lx)
    ok = (rhs > lhs) & (lx >= math.log(RS_UPPER_FROM))
    mono_from = 4 * r / math.log(10)
    # first E after which the claim never fails again within the scanned range
    bad = np.flatnonzero(~ok)
    if len(bad) == len(E) or bad.size and bad[-1] == len(E) - 1:
        raise NoThreshold(f"no threshold up to 10^{e_max} for alpha={alpha}, r={r}")
    first = int(bad[-1]) + 2 if bad.size else 1
    lE, rE = threshold_sides(first, alpha, r, const)
    lE1, rE1 = threshold_sides(first - 1, alpha, r, const) if first > 1 else (math.nan, math.nan)
    return ThresholdResult(
        alpha=str(_as_fraction(alpha)),
        r=r,
        const=const,
        delta=d,
        E=first,
        lhs_at_E=lE,
        rhs_at_E=rE,
        lhs_at_E_minus_1=lE1,
        rhs_at_E_minus_1=rE1,
        lhs_decreasing_from=mono_from,
    )


def threshold_sweep(alpha, rs: Iterable[int], const: float) -> list[dict]:
    """E(r) for each r; rows where delta is not positive are reported with E = None."""
    rows = []
    for r in rs:
        try:
            res = threshold_solver(alpha, r, const)
            rows.append({"r": r, "delta": res.delta, "E": res.E})
        except (ValueError, NoThreshold) as exc:
            rows.append({"r": r, "delta": None, "E": None, "note": str(exc)})
    return rows
