"""Dirichlet characters modulo a prime and their partial sums."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .reports import InequalityReport
from .sieve import factorize, is_prime

# discrete-log tables are only built below this modulus
TABLE_CAP = 2**31


class PrincipalCharacterError(ValueError):
    pass


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 3 or not is_prime(int(p)):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")


def find_primitive_root(p: int) -> int:
    """Least generator of (Z/pZ)*."""
    _check_prime(p)
    qs = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


@lru_cache(maxsize=64)
def index_table(p: int) -> np.ndarray:
    """ind[n] = discrete log of n base the least primitive root; ind[0] = -1."""
    _check_prime(p)
    if p > TABLE_CAP:
        raise ValueError(f"p={p} exceeds the discrete-log table cap {TABLE_CAP}")
    g = find_primitive_root(p)
    ind = np.full(p, -1, dtype=np.int64)
    x = 1
    for e in range(p - 1):
        ind[x] = e
        x = x * g % p
    ind.flags.writeable = False
    return ind


@dataclass(frozen=True)
class CharSumValue:
    real: float
    imag: float
    exact: int | None = None

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)

    def __abs__(self) -> float:
        if self.exact is not None:
            return float(abs(self.exact))
        return math.hypot(self.real, self.imag)

    @classmethod
    def from_int(cls, n: int) -> "CharSumValue":
        return cls(float(n), 0.0, int(n))


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(g) = exp(2 pi i m / d) for the least primitive root g mod p.

    Quadratic and principal characters (d <= 2) evaluate exactly through
    Euler's criterion and never need the discrete-log table.
    """

    p: int
    order: int = 2
    index: int = 1
    primitive_root: int = field(init=False)

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.order < 1 or (self.p - 1) % self.order:
            raise ValueError(f"order {self.order} does not divide p-1={self.p - 1}")
        object.__setattr__(self, "index", self.index % self.order)
        object.__setattr__(self, "primitive_root", find_primitive_root(self.p))

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    @property
    def is_real(self) -> bool:
        return self.order <= 2 or 2 * self.index == self.order

    @property
    def exact_order(self) -> int:
        """Order of chi as a group element (d / gcd(m, d))."""
        return self.order // math.gcd(self.index, self.order)

    def require_nonprincipal(self) -> None:
        if self.is_principal:
            raise PrincipalCharacterError("operation requires a non-principal character")

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.p, self.order, (-self.index) % self.order)

    def exponent(self, n: int) -> int | None:
        """Exponent e with chi(n) = exp(2 pi i e / d); None when p | n."""
        n %= self.p
        if n == 0:
            return None
        if self.index == 0:
            return 0
        if self.order == 2:
            return 0 if pow(n, (self.p - 1) // 2, self.p) == 1 else 1
        return int(self.index * int(index_table(self.p)[n]) % self.order)

    def __call__(self, n: int) -> CharSumValue:
        return char_eval(self, n)

    def values(self) -> np.ndarray:
        """chi(n) for n = 0..p-1: int64 array when d <= 2, complex128 otherwise."""
        p = self.p
        if self.is_principal:
            v = np.ones(p, dtype=np.int64)
            v[0] = 0
            return v
        if self.is_real:
            v = -np.ones(p, dtype=np.int64)
            half = np.arange(1, (p + 1) // 2, dtype=np.int64)
            v[half * half % p] = 1
            v[0] = 0
            return v
        ind = index_table(p)
        e = (self.index * ind[1:]) % self.order
        v = np.zeros(p, dtype=np.complex128)
        v[1:] = np.exp(2j * np.pi * e / self.order)
        return v

    @classmethod
    def all_nonprincipal(cls, p: int) -> Iterator["DirichletCharacter"]:
        """Every non-principal character mod p, each in lowest terms (order = exact order)."""
        for j in range(1, p - 1):
            g = math.gcd(j, p - 1)
            yield cls(p, (p - 1) // g, j // g)


def char_eval(chi: DirichletCharacter, n: int) -> CharSumValue:
    e = chi.exponent(n)
    if e is None:
        return CharSumValue.from_int(0)
    if chi.order <= 2 or 2 * e == chi.order:
        return CharSumValue.from_int(1 if e == 0 else -1)
    if e == 0:
        return CharSumValue.from_int(1)
    z = cmath.exp(2j * math.pi * e / chi.order)
    return CharSumValue(z.real, z.imag)


def _partial_sum(chi: DirichletCharacter, lo: int, count: int) -> CharSumValue:
    """Sum of chi(n) for lo < n <= lo + count with 0 <= count < p."""
    if count == 0:
        return CharSumValue.from_int(0)
    p = chi.p
    idx = (np.arange(lo + 1, lo + count + 1, dtype=np.int64)) % p
    if chi.p <= TABLE_CAP and (chi.is_real or chi.is_principal or count > 64):
        vals = chi.values()[idx]
    else:
        vals = np.array([char_eval(chi, int(n)).value for n in idx])
    if vals.dtype.kind == "i":
        return CharSumValue.from_int(int(vals.sum()))
    return CharSumValue(math.fsum(vals.real), math.fsum(vals.imag))


def char_sum(chi: DirichletCharacter, M: int, N: int) -> CharSumValue:
    """S(M, N) = sum of chi(n) over M < n <= M + N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    p = chi.p
    periods, rest = divmod(N, p)
    head = (p - 1) * periods if chi.is_principal else 0
    tail = _partial_sum(chi, M % p, rest)
    if tail.exact is not None:
        return CharSumValue.from_int(head + tail.exact)
    return CharSumValue(tail.real + head, tail.imag)


def polya_vinogradov_bound(p: int) -> float:
    return math.sqrt(p) * math.log(p)


def max_partial_sums(chi: DirichletCharacter) -> float:
    """max |S(M, N)| over all 0 <= M < p, 1 <= N <= p, by exhaustive enumeration."""
    v = chi.values()
    p = chi.p
    # prefix[t] = sum of chi(n) for 1 <= n <= t, over two periods
    ext = np.concatenate([v[1:], v, v[:1]])
    prefix = np.concatenate([[0], np.cumsum(ext)])
    # row M holds S(M, N) for N = 1..p
    windows = np.lib.stride_tricks.sliding_window_view(prefix[1:], p)[:p]
    return float(np.abs(windows - prefix[:p, None]).max())


def verify_pv(p: int) -> list[InequalityReport]:
    """Polya-Vinogradov with constant 1, exhaustively over characters and windows."""
    bound = polya_vinogradov_bound(p)
    out = []
    for chi in DirichletCharacter.all_nonprincipal(p):
        lhs = max_partial_sums(chi)
        slack = 0.0 if chi.is_real else 1e-9 * p
        out.append(
            InequalityReport(
                "polya_vinogradov",
                {"p": p, "order": chi.order, "index": chi.index},
                lhs,
                bound,
                slack=slack,
            )
        )
    return out
