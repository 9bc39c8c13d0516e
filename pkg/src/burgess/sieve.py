"""Prime sieves, totient/Moebius tables and small factorisation helpers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

DEFAULT_SIEVE_LIMIT = 10**6


def prime_mask(limit: int) -> np.ndarray:
    """Boolean array ``m`` with ``m[n]`` true iff n is prime, for 0 <= n <= limit."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


@lru_cache(maxsize=8)
def primes_upto(limit: int) -> np.ndarray:
    return np.flatnonzero(prime_mask(max(limit, 1))).astype(np.int64)


def segmented_primes(lo: int, hi: int, segment: int = 1 << 18) -> Iterator[np.ndarray]:
    """Yield arrays of the primes in [lo, hi], ascending, one segment at a time."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = primes_upto(math.isqrt(hi) + 1)
    start = lo
    while start <= hi:
        stop = min(start + segment, hi + 1)
        mask = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            mask[first - start :: p] = False
        yield np.flatnonzero(mask) + start
        start = stop


@dataclass(frozen=True)
class SieveTables:
    """phi(n) and mu(n) for 0 <= n <= limit (index 0 unused)."""

    limit: int
    phi: np.ndarray
    mu: np.ndarray

    @classmethod
    def build(cls, limit: int = DEFAULT_SIEVE_LIMIT) -> "SieveTables":
        phi = np.arange(limit + 1, dtype=np.int64)
        mu = np.ones(limit + 1, dtype=np.int8)
        for p in primes_upto(limit):
            p = int(p)
            phi[p::p] -= phi[p::p] // p
            mu[p::p] *= -1
            if p * p <= limit:
                mu[p * p :: p * p] = 0
        mu[0] = 0
        phi.flags.writeable = False
        mu.flags.writeable = False
        return cls(limit, phi, mu)


@lru_cache(maxsize=4)
def sieve_tables(limit: int = DEFAULT_SIEVE_LIMIT) -> SieveTables:
    return SieveTables.build(limit)


def linear_sieve(limit: int) -> tuple[list[int], list[int], list[int]]:
    """Pure-Python linear sieve returning (primes, phi, mu); reference path for small limits."""
    phi = [0] * (limit + 1)
    mu = [0] * (limit + 1)
    composite = [False] * (limit + 1)
    primes: list[int] = []
    if limit >= 1:
        phi[1] = mu[1] = 1
    for i in range(2, limit + 1):
        if not composite[i]:
            primes.append(i)
            phi[i] = i - 1
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > limit:
                break
            composite[ip] = True
            if i % p == 0:
                phi[ip] = phi[i] * p
                mu[ip] = 0
                break
            phi[ip] = phi[i] * (p - 1)
            mu[ip] = -mu[i]
    return primes, phi, mu


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorisation; fine for n up to ~1e12."""
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            if e:
                out.append((q, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=2)
def smallest_factor_table(limit: int) -> np.ndarray:
    """spf[n] = least prime factor of n for 2 <= n <= limit."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf.flags.writeable = False
    return spf


def factorize_with_table(n: int, spf: np.ndarray) -> list[tuple[int, int]]:
    if n >= len(spf):
        return factorize(n)
    out: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def divisors_from_factors(factors: list[tuple[int, int]]) -> list[int]:
    divs = [1]
    for p, e in factors:
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
