"""Brute-force 2r-th moments of short character sums against the Weil-type bound.

The moment is

    W = sum over x mod p of |sum_{1 <= b <= B} chi(x + b)|^(2r)

and the bound is (2r-1)!! B^r p + (2r-1) B^(2r) sqrt(p), valid for r <= 9B.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .char_arith import DirichletCharacter, _check_prime

ALL_CHARACTERS_CAP = 10**4
RELATIVE_SLACK = 1e-6


class WeilPreconditionError(ValueError):
    """r > 9B: outside the range where the moment bound is claimed."""


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def log_double_factorial(n: int) -> float:
    if n <= 29:
        return math.log(double_factorial(n))
    return math.fsum(math.log(j) for j in range(n, 0, -2))


def pairing_count(r: int) -> Fraction:
    """(2r)! / (2^r r!), the other closed form of (2r-1)!!."""
    return Fraction(math.factorial(2 * r), 2**r * math.factorial(r))


def weil_bound(p: float, B: float, r: int) -> float:
    if r < 1 or B <= 0:
        raise ValueError("need r >= 1 and B > 0")
    if r > 9 * B:
        raise WeilPreconditionError(f"r={r} > 9B={9 * B}")
    lw = log_weil_bound(p, B, r)
    return math.exp(lw) if lw < 709.0 else math.inf


def log_weil_bound(p: float, B: float, r: int) -> float:
    """log of the bound, usable when the bound itself exceeds float range."""
    if r < 1 or B <= 0:
        raise ValueError("need r >= 1 and B > 0")
    if r > 9 * B:
        raise WeilPreconditionError(f"r={r} > 9B={9 * B}")
    lp, lB = math.log(p), math.log(B)
    main = log_double_factorial(2 * r - 1) + r * lB + lp
    second = math.log(2 * r - 1) + 2 * r * lB + 0.5 * lp
    hi, lo = max(main, second), min(main, second)
    return hi + math.log1p(math.exp(lo - hi))


def inner_sums(chi: DirichletCharacter, B: int) -> np.ndarray:
    """sum_{1<=b<=B} chi(x+b) for x = 0..p-1 (integer array for real characters)."""
    v = chi.values()
    p = chi.p
    ext = np.concatenate([v, v[: B + 1]])
    c = np.concatenate([[0], np.cumsum(ext)])
    x = np.arange(p)
    return c[x + B + 1] - c[x + 1]


def moment_from_inner(inner: np.ndarray, r: int) -> float | int:
    if inner.dtype.kind == "i":
        return sum(int(t) ** (2 * r) for t in inner)
    mags = np.abs(inner) ** 2
    # fixed chunk order keeps the float reduction deterministic
    return math.fsum((mags**r).tolist())


def weil_moment(chi: DirichletCharacter, B: int, r: int) -> float | int:
    chi.require_nonprincipal()
    if B < 1 or r < 1:
        raise ValueError("need B >= 1 and r >= 1")
    if B >= chi.p:
        raise ValueError("need B < p")
    return moment_from_inner(inner_sums(chi, B), r)


@dataclass(frozen=True)
class MomentReport:
    p: int
    r: int
    B: int
    order: int
    index: int
    W: float
    bound: float
    slack: float

    @property
    def margin(self) -> float:
        return self.bound - float(self.W)

    @property
    def holds(self) -> bool:
        return self.margin >= -self.slack

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "B": self.B,
            "order": self.order,
            "index": self.index,
            "W": float(self.W),
            "bound": self.bound,
            "margin": self.margin,
            "holds": self.holds,
        }


def _reports_for_character(chi: DirichletCharacter, Bs, rs) -> list[MomentReport]:
    out = []
    for B in Bs:
        inner = inner_sums(chi, B)
        for r in rs:
            if r > 9 * B:
                continue
            W = moment_from_inner(inner, r)
            bound = weil_bound(chi.p, B, r)
            slack = 0.0 if chi.is_real else RELATIVE_SLACK * bound
            out.append(MomentReport(chi.p, r, B, chi.order, chi.index, W, bound, slack))
    return out


def verify_weil_grid(p: int, Bs, rs, cap: int = ALL_CHARACTERS_CAP) -> list[MomentReport]:
    """Reports for every non-principal character mod p and every (B, r) in the grid."""
    _check_prime(p)
    if p > cap:
        raise ValueError(
            f"p={p} exceeds the all-characters cap {cap}; use verify_weil_sampled instead"
        )
    Bs = [B for B in Bs if B < p]
    out = []
    for chi in DirichletCharacter.all_nonprincipal(p):
        out.extend(_reports_for_character(chi, Bs, rs))
    return out


def verify_weil_all(p: int, B: int, r: int, cap: int = ALL_CHARACTERS_CAP) -> list[MomentReport]:
    if r > 9 * B:
        raise WeilPreconditionError(f"r={r} > 9B={9 * B}")
    return verify_weil_grid(p, [B], [r], cap)


def verify_weil_sampled(p: int, B: int, r: int, samples: int, seed: int = 0) -> list[MomentReport]:
    """Sampling mode for moduli above the all-characters cap."""
    _check_prime(p)
    rng = np.random.default_rng(seed)
    js = sorted({int(j) for j in rng.integers(1, p - 1, size=samples)})
    out = []
    for j in js:
        g = math.gcd(j, p - 1)
        chi = DirichletCharacter(p, (p - 1) // g, j // g)
        out.extend(_reports_for_character(chi, [B], [r]))
    return out


def _grid_task(args):
    p, Bs, rs = args
    return verify_weil_grid(p, Bs, rs)


def verify_weil_range(primes, Bs, rs, workers: int = 1) -> list[MomentReport]:
    """Run the grid over many primes; results come back in input order."""
    tasks = [(int(p), list(Bs), list(rs)) for p in primes]
    if workers <= 1:
        chunks = map(_grid_task, tasks)
        return [rep for chunk in chunks for rep in chunk]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return [rep for chunk in ex.map(_grid_task, tasks) for rep in chunk]
