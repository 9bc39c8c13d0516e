"""Arithmetic sums behind the V2 counting bound, evaluated exactly and checked."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .reports import InequalityReport
from .sieve import SieveTables, is_prime, primes_upto, sieve_tables

SIX_OVER_PI2 = 6 / math.pi**2
ZETA2 = math.pi**2 / 6
ZETA3 = 1.2020569031595942


def _tables(x: float, tables: SieveTables | None) -> SieveTables:
    t = tables or sieve_tables()
    if math.floor(x) > t.limit:
        raise ValueError(f"x={x} beyond sieve limit {t.limit}")
    return t


def phi_ratio_sum(x: float, tables: SieveTables | None = None) -> InequalityReport:
    """sum_{n<=x} phi(n)/n <= 6x/pi^2 + log x + 1."""
    if x < 1:
        raise ValueError("x >= 1 required")
    t = _tables(x, tables)
    n = math.floor(x)
    lhs = math.fsum((t.phi[1 : n + 1] / np.arange(1, n + 1)).tolist())
    rhs = SIX_OVER_PI2 * x + math.log(x) + 1
    return InequalityReport("phi_ratio_sum", {"x": x}, lhs, rhs)


def phi_ratio_sum_strong(x: int, tables: SieveTables | None = None) -> InequalityReport:
    """The sharper form used for 2 <= x <= 41: argument shifted to x - 1."""
    t = _tables(x, tables)
    lhs = math.fsum((t.phi[1 : x + 1] / np.arange(1, x + 1)).tolist())
    rhs = SIX_OVER_PI2 * (x - 1) + math.log(x - 1) + 1
    return InequalityReport("phi_ratio_sum_strong", {"x": x}, lhs, rhs)


def phi_n_sum(x: float, tables: SieveTables | None = None) -> InequalityReport:
    """sum_{n<=x} n phi(n) <= 2x^3/pi^2 + x^2 log(x)/2 + x^2 (left side exact)."""
    if x < 1:
        raise ValueError("x >= 1 required")
    t = _tables(x, tables)
    n = math.floor(x)
    lhs = sum(int(v) * i for i, v in enumerate(t.phi[1 : n + 1].tolist(), start=1))
    rhs = 2 / math.pi**2 * x**3 + 0.5 * x * x * math.log(x) + x * x
    return InequalityReport("phi_n_sum", {"x": x}, lhs, rhs)


def log_sum(x: float) -> InequalityReport:
    """sum_{d<=x} log(x/d) <= x - 1, with the left side as floor(x) log x - log(floor(x)!)."""
    if x < 1:
        raise ValueError("x >= 1 required")
    n = math.floor(x)
    lhs = n * math.log(x) - math.lgamma(n + 1)
    return InequalityReport("log_sum", {"x": x}, lhs, x - 1)


def mertens_tail(x: float, tables: SieveTables | None = None) -> InequalityReport:
    """|6/pi^2 - sum_{d<=x} mu(d)/d^2| <= 1/(3x) + 8/(3x^2) for x >= 2."""
    if x < 2:
        raise ValueError("x >= 2 required")
    t = _tables(x, tables)
    n = math.floor(x)
    d = np.arange(1, n + 1, dtype=np.float64)
    partial = math.fsum((t.mu[1 : n + 1] / (d * d)).tolist())
    lhs = abs(SIX_OVER_PI2 - partial)
    rhs = 1 / (3 * x) + 8 / (3 * x * x)
    return InequalityReport("mertens_tail", {"x": x}, lhs, rhs)


def sweep_integer_lemmas(xmax: int, tables: SieveTables | None = None) -> dict[str, InequalityReport]:
    """Check the four summatory bounds at every integer 1 <= x <= xmax at once.

    Each left side is constant on [n, n+1) while the right sides of the phi and
    log bounds increase, so integers are the worst points there. The tail bound
    decreases in x, so it is also checked at the left limit x -> (n+1)^-.
    Returns the worst (minimum-margin) report per lemma.
    """
    t = _tables(xmax, tables)
    n = np.arange(1, xmax + 1, dtype=np.float64)
    phi = t.phi[1 : xmax + 1].astype(np.float64)
    mu = t.mu[1 : xmax + 1].astype(np.float64)
    logn = np.log(n)

    out: dict[str, InequalityReport] = {}

    def worst(name, lhs, rhs, xs):
        i = int(np.argmin(rhs - lhs))
        out[name] = InequalityReport(
            name, {"x": float(xs[i]), "sweep_max": xmax, "points": len(xs)}, float(lhs[i]), float(rhs[i])
        )

    lhs22 = np.cumsum(phi / n)
    worst("phi_ratio_sum", lhs22, SIX_OVER_PI2 * n + logn + 1, n)

    # exact integer prefix sums of n phi(n); float64 is exact below 2^53
    lhs23 = np.cumsum(t.phi[1 : xmax + 1].astype(np.int64) * np.arange(1, xmax + 1, dtype=np.int64))
    worst("phi_n_sum", lhs23.astype(np.float64), 2 / math.pi**2 * n**3 + 0.5 * n * n * logn + n * n, n)

    lgam = np.cumsum(logn)  # log(n!)
    worst("log_sum", n * logn - lgam, n - 1, n)

    partial = np.cumsum(mu / (n * n))
    tail = np.abs(SIX_OVER_PI2 - partial)
    xs = n[1:]
    worst("mertens_tail", tail[1:], 1 / (3 * xs) + 8 / (3 * xs * xs), xs)
    # left limits: x in (n, n+1) keeps the n-term partial sum
    xr = n[2:]
    worst_left = tail[1:-1]
    i = int(np.argmin(1 / (3 * xr) + 8 / (3 * xr * xr) - worst_left))
    out["mertens_tail_left_limit"] = InequalityReport(
        "mertens_tail_left_limit",
        {"x": f"{int(xr[i])}-", "sweep_max": xmax},
        float(worst_left[i]),
        float(1 / (3 * xr[i]) + 8 / (3 * xr[i] ** 2)),
    )
    return out


def pair_count(a1: int, a2: int, M: int, N: int, p: int, kk: int) -> int:
    """#{(n1, n2) in (M, M+N]^2 : a1 n2 - a2 n1 = kk p}."""
    count = 0
    target = kk * p
    for n1 in range(M + 1, M + N + 1):
        num = target + a2 * n1
        if num % a1 == 0 and M < num // a1 <= M + N:
            count += 1
    return count


def pair_count_check(a1: int, a2: int, M: int, N: int, p: int, kk: int) -> InequalityReport:
    if a1 == a2 or min(a1, a2) < 1:
        raise ValueError("need distinct positive a1, a2")
    if not (p > N and is_prime(p)):
        raise ValueError("need a prime p > N")
    lhs = pair_count(a1, a2, M, N, p, kk)
    rhs = N * math.gcd(a1, a2) / max(a1, a2) + 1
    return InequalityReport(
        "pair_count", {"a1": a1, "a2": a2, "M": M, "N": N, "p": p, "k": kk}, lhs, rhs
    )


@dataclass
class VCountReport:
    p: int
    A: int
    M: int
    N: int
    histogram: dict[int, int] = field(repr=False)
    V1: int
    V2: int
    lemma21_bound: float | None
    lemma41_bound: float | None
    flags: dict[str, bool]

    def reports(self) -> list[InequalityReport]:
        params = {"p": self.p, "A": self.A, "M": self.M, "N": self.N}
        out = [
            InequalityReport("v1_identity", params, self.V1, self.A * self.N),
            InequalityReport("v2_cauchy_schwarz", params, self.V1**2 / self.p, self.V2),
        ]
        if self.lemma21_bound is not None:
            out.append(InequalityReport("v2_lemma21", params, self.V2, self.lemma21_bound))
        if self.lemma41_bound is not None:
            out.append(InequalityReport("v2_lemma41", params, self.V2, self.lemma41_bound))
        return out


def v_counts(p: int, A: int, M: int, N: int) -> VCountReport:
    """v(x) = #{(a, n): 1 <= a <= A, M < n <= M+N, n = a x mod p}, enumerated."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if N >= p:
        raise ValueError("need N < p")
    A = math.floor(A)
    if A < 1 or N < 1:
        raise ValueError("need A >= 1 and N >= 1")
    n = np.arange(M + 1, M + N + 1, dtype=np.int64) % p
    counts = np.zeros(p, dtype=np.int64)
    for a in range(1, A + 1):
        inv = pow(a, -1, p)
        counts += np.bincount(n * inv % p, minlength=p)
    V1 = int(counts.sum())
    V2 = int((counts * counts).sum())
    nz = np.flatnonzero(counts)
    hist = dict(zip(nz.tolist(), counts[nz].tolist()))

    flags = {
        "lemma21_hypotheses": A >= 28 and N > 12 * A and N < p,
        "lemma41_hypotheses": A >= 30 and N > 7 * A and 2 * A * N < p,
    }
    b21 = 2 * A * N * (A * N / p + math.log(1.85 * A)) if flags["lemma21_hypotheses"] else None
    b41 = 2 * A * N * math.log(1.85 * A) if flags["lemma41_hypotheses"] else None
    return VCountReport(p, A, M, N, hist, V1, V2, b21, b41, flags)


def quadruple_count(p: int, A: int, M: int, N: int) -> int:
    """V2 as #{(a1, a2, n1, n2): a1 n2 = a2 n1 (mod p)}; independent of the histogram path."""
    n = np.arange(M + 1, M + N + 1, dtype=np.int64)
    total = 0
    for a1 in range(1, A + 1):
        left = (a1 * n) % p
        for a2 in range(1, A + 1):
            right = np.sort((a2 * n) % p)
            lo = np.searchsorted(right, left, side="left")
            hi = np.searchsorted(right, left, side="right")
            total += int((hi - lo).sum())
    return total


def s1_exact(A: int) -> Fraction:
    return sum(
        (Fraction(a1 + a2, a2) for a2 in range(2, A + 1) for a1 in range(1, a2)), Fraction(0)
    )


def s1_exact_table(A_max: int) -> list[Fraction]:
    """S1(A) for A = 0..A_max by exact column-wise double loop."""
    out = [Fraction(0), Fraction(0)]
    acc = Fraction(0)
    for a2 in range(2, A_max + 1):
        acc += sum((Fraction(a1 + a2, a2) for a1 in range(1, a2)), Fraction(0))
        out.append(acc)
    return out[: A_max + 1]


def s2_exact(A: int) -> int:
    return sum((a1 + a2) // math.gcd(a1, a2) for a2 in range(2, A + 1) for a1 in range(1, a2))


def s3_exact(A: int) -> Fraction:
    return sum(
        (Fraction(math.gcd(a1, a2), a2) for a2 in range(2, A + 1) for a1 in range(1, a2)),
        Fraction(0),
    )


def s_sums_check(A: int) -> list[InequalityReport]:
    if A < 2:
        raise ValueError("A >= 2 required")
    out = []
    s1 = s1_exact(A)
    closed = Fraction(3, 4) * A * A - Fraction(3, 4) * A
    out.append(InequalityReport("S1_identity", {"A": A, "exact": s1 == closed}, float(s1), float(closed)))
    if A >= 11:
        rhs = 3 * ZETA3 / math.pi**2 * A**3 + 3 * ZETA2 / 4 * A * A * math.log(A) + 2 * A * A
        out.append(InequalityReport("S2_bound", {"A": A}, s2_exact(A), rhs))
    if A >= 27:
        rhs = SIX_OVER_PI2 * A * math.log(1.85 * A) + A - 1
        out.append(InequalityReport("S3_bound", {"A": A}, float(s3_exact(A)), rhs))
    return out


def log_weight_helper(A: int) -> InequalityReport:
    """3 zeta(2)/2 - (3/4) sum_{d<=A} log(d)/d^2 < 2 for A >= 11."""
    lhs = 1.5 * ZETA2 - 0.75 * math.fsum(math.log(d) / (d * d) for d in range(2, A + 1))
    return InequalityReport("log_weight_helper", {"A": A}, lhs, 2.0, strict=True)


def harmonic_helper(A: int) -> InequalityReport:
    """sum_{d<=A} 1/d < log(1.85 A) for A >= 27."""
    lhs = math.fsum(1 / d for d in range(1, A + 1))
    return InequalityReport("harmonic_helper", {"A": A}, lhs, math.log(1.85 * A), strict=True)


def random_v2_instances(lemma: str, count: int, p_max: int = 10**5, seed: int = 0):
    """Hypothesis-satisfying (p, A, M, N) draws for the V2 lemmas."""
    rng = np.random.default_rng(seed)
    primes = primes_upto(p_max)
    out = []
    while len(out) < count:
        p = int(rng.choice(primes[primes > 5000]))
        if lemma == "lemma21":
            A = int(rng.integers(28, 60))
            lo, hi = 12 * A + 1, min(p - 1, 40 * A)
        else:
            A = int(rng.integers(30, 60))
            lo, hi = 7 * A + 1, (p - 1) // (2 * A)
        if hi < lo:
            continue
        N = int(rng.integers(lo, hi + 1))
        M = int(rng.integers(0, 3 * p))
        out.append((p, A, M, N))
    return out
