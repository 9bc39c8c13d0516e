"""Explicit Burgess constants: closed-form evaluation and the (k, c') optimisation.

Everything is evaluated at the worst case p = p0, A = A_min, B = B(r, p0), with
natural logarithms. p0 is always passed as its decimal exponent.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Iterable

from .reference import C1_TABLE, C2_TABLE, COROLLARY14_C1_R2, COROLLARY_CONSTANT
from .reports import InequalityReport
from .weil_verify import log_double_factorial

VARIANTS = ("thm1", "thm2")
LN10 = math.log(10)
K_STEP = Fraction(1, 600)
FIXED_POINT_TOL = 1e-6
FIXED_POINT_MAX_ITER = 200
GOLDEN = (math.sqrt(5) - 1) / 2
# one unit in the fifth decimal: the published lower bounds are rounded to
# nearest (c1) or upward (c2), either way within this of the exact value
LOWER_BOUND_TOL = 1e-5


class InadmissibleK(ValueError):
    pass


def log_D(r: int) -> float:
    """log of ((2r-3)!! (r-1))^(1/r)."""
    if r < 2:
        raise ValueError("r >= 2 required")
    return (log_double_factorial(2 * r - 3) + math.log(r - 1)) / r


def B_of(r: int, p: float) -> float:
    return math.exp(log_D(r) + math.log(p) / (2 * r))


def B_of_exp(r: int, p0_exp: float) -> float:
    return math.exp(log_D(r) + p0_exp * LN10 / (2 * r))


def k_interval(r: int, variant: str) -> tuple[float, float]:
    """Admissible k as the half-open interval [lo, hi)."""
    if variant == "thm1":
        return 1 / 30, 1.0
    if variant == "thm2":
        return 3 / 64, min(math.exp(log_D(r)) / 8, 1.0)
    raise ValueError(f"unknown variant {variant!r}")


def min_floor_A(variant: str) -> int:
    return 28 if variant == "thm1" else 30


@dataclass(frozen=True)
class ConstantInputs:
    r: int
    p0_exp: float
    variant: str
    k: float
    c_prime: float
    c_prev: float | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.r < 2:
            raise ValueError("r >= 2 required")
        if self.r >= 3 and self.c_prev is None:
            raise ValueError("r >= 3 needs the constant for r - 1")
        if self.c_prime <= 0:
            raise ValueError("c' must be positive")

    @property
    def log_p(self) -> float:
        return self.p0_exp * LN10

    @property
    def s(self) -> float:
        if self.r == 2:
            return 1.0
        return s_of(self.r, self.c_prev, self.c_prime)


@dataclass(frozen=True)
class BurgessConstantResult:
    inputs: ConstantInputs
    B: float
    A_min: float
    c: float
    feasible: bool
    reason: str = ""
    reference: float | None = None

    @property
    def delta(self) -> float | None:
        if self.reference is None or not self.feasible:
            return None
        return self.c - self.reference

    @property
    def s(self) -> float:
        return self.inputs.s

    def row(self) -> dict:
        i = self.inputs
        return {
            "variant": i.variant,
            "r": i.r,
            "p0_exponent": i.p0_exp,
            "k": float(i.k),
            "c_prime": i.c_prime,
            "s": self.s,
            "A_min": self.A_min,
            "B": self.B,
            "c": self.c if self.feasible else None,
            "reference": self.reference,
            "delta": self.delta,
        }


def s_of(r: int, c_prev: float, c_prime: float) -> float:
    """Smallest s >= 1 with c_prev <= s^(1/(r(r-1))) c'."""
    if c_prev <= 0 or c_prime <= 0:
        raise ValueError("constants must be positive")
    return max(1.0, (c_prev / c_prime) ** (r * (r - 1)))


def A_min_of(inputs: ConstantInputs) -> float:
    """Lower bound on A = kN/B from the lower end of the admissible N range."""
    r, L = inputs.r, inputs.log_p
    log_factor = L if inputs.variant == "thm1" else math.sqrt(L)
    return (
        float(inputs.k)
        * inputs.c_prime**r
        * math.exp(L * (0.25 - 0.25 / r) - log_D(r))
        * log_factor
    )


def _ratios(A: float, B: float, r: int) -> tuple[float, float]:
    shrink = A * B / ((A - 1) * (B - 1))
    grow = ((A + 1) * (B + 1) / (A * B)) ** (2 - 1 / r)
    return shrink, grow


def _check_k(inputs: ConstantInputs) -> None:
    lo, hi = k_interval(inputs.r, inputs.variant)
    k = float(inputs.k)
    if not lo <= k < hi:
        raise InadmissibleK(f"k={k} outside [{lo}, {hi}) for {inputs.variant}, r={inputs.r}")


def _evaluate(inputs: ConstantInputs, reference: float | None) -> BurgessConstantResult:
    _check_k(inputs)
    r, L, k = inputs.r, inputs.log_p, float(inputs.k)
    B = B_of_exp(r, inputs.p0_exp)
    A = A_min_of(inputs)
    D = math.exp(log_D(r))
    s = inputs.s

    def result(c: float, ok: bool, why: str = "") -> BurgessConstantResult:
        return BurgessConstantResult(inputs, B, A, c, ok, why, reference)

    if A - 1 < min_floor_A(inputs.variant):
        return result(math.inf, False, f"A_min - 1 = {A - 1:.3f} < {min_floor_A(inputs.variant)}")
    if B <= 1:
        return result(math.inf, False, "B <= 1")
    shrink, grow = _ratios(A, B, r)
    denom = 1 - 2 * r * r / (2 * r - 1) ** 2 * k ** (1 - 1 / r) * grow * shrink
    if denom <= 0:
        return result(math.inf, False, "non-positive denominator")

    if inputs.variant == "thm1":
        if r == 2:
            bracket = 1 + 3 / (8 * k * L) + math.log(1.85 * k * L) / (k * L * L)
            lead = 12**0.25
        else:
            bracket = (
                s * s / (D * math.exp(L * (0.5 - 0.5 / r - 0.5 / (r * (r - 1)))))
                + 1 / (4 * k * L)
                + 1 / (4 * r * (r - 1) * k * L)
                + math.log(1.85 * s * k * L / D) / (k * L * L)
            )
            lead = (2 * r * (2 * r - 1) * D / (r - 1)) ** (1 / (2 * r))
    else:
        if r == 2:
            bracket = 3 / (8 * k)
            lead = 12**0.25
        else:
            bracket = (
                math.log(1.85 * s * k * math.sqrt(L) / D) / (k * L)
                + 1 / (4 * k)
                + 1 / (4 * r * (r - 1) * k)
            )
            lead = (2 * r * (2 * r - 1) * D / (r - 1)) ** (1 / (2 * r))
    if bracket <= 0:
        return result(math.inf, False, "non-positive bracket")
    c = shrink * lead * bracket ** (1 / (2 * r)) / denom
    return result(c, True)


def _reference(inputs: ConstantInputs) -> float | None:
    table = C1_TABLE if inputs.variant == "thm1" else C2_TABLE
    return table.get((inputs.r, inputs.p0_exp))


def c1_eval(inputs: ConstantInputs) -> BurgessConstantResult:
    if inputs.variant != "thm1":
        raise ValueError("c1_eval expects variant thm1")
    return _evaluate(inputs, _reference(inputs))


def c2_eval(inputs: ConstantInputs) -> BurgessConstantResult:
    if inputs.variant != "thm2":
        raise ValueError("c2_eval expects variant thm2")
    return _evaluate(inputs, _reference(inputs))


def evaluate(inputs: ConstantInputs) -> BurgessConstantResult:
    return _evaluate(inputs, _reference(inputs))


def c_prime_floor(r: int, p0_exp: float, variant: str, k: float) -> float:
    """Smallest c' for which A_min - 1 reaches the floor(A) requirement at this k."""
    L = p0_exp * LN10
    log_factor = L if variant == "thm1" else math.sqrt(L)
    need = min_floor_A(variant) + 1
    return (need * math.exp(log_D(r) - L * (0.25 - 0.25 / r)) / (k * log_factor)) ** (1 / r)


def solve_fixed_point(
    r: int, p0_exp: float, variant: str, k: float, c_prev: float | None
) -> BurgessConstantResult | None:
    """Largest c' with c' <= c(c'), i.e. the fixed point of c' -> c(c').

    c(c') is strictly decreasing, so the fixed point is unique and bisection on
    [c'_floor, c(c'_floor)] always converges. Plain iteration c' <- c(c') is
    not used: the s-term makes the map steep enough to oscillate for r >= 8.
    Returns None when even the smallest feasible c' gives c < c'.
    """
    def at(cp: float) -> BurgessConstantResult:
        return evaluate(ConstantInputs(r, p0_exp, variant, k, cp, c_prev))

    lo = c_prime_floor(r, p0_exp, variant, k) * (1 + 1e-12)
    res_lo = at(lo)
    if not res_lo.feasible or res_lo.c < lo:
        return None
    hi = res_lo.c
    res_hi = at(hi)
    if res_hi.feasible and res_hi.c >= hi:
        return res_hi
    for _ in range(FIXED_POINT_MAX_ITER):
        if hi - lo < FIXED_POINT_TOL:
            break
        mid = 0.5 * (lo + hi)
        res = at(mid)
        if res.feasible and res.c >= mid:
            lo, res_lo = mid, res
        else:
            hi = mid
    else:
        return None
    return res_lo


def golden_section(f, a: float, b: float, tol: float = 1e-7) -> tuple[float, float]:
    """Minimise f on [a, b]; returns (argmin, min)."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def k_grid(r: int, variant: str) -> list[float]:
    lo, hi = k_interval(r, variant)
    j0 = math.ceil(Fraction(lo) / K_STEP)
    grid = [lo] if Fraction(lo) % K_STEP else []
    j = j0
    while float(j * K_STEP) < hi:
        grid.append(float(j * K_STEP))
        j += 1
    return grid


def optimize_constant(
    r: int, p0_exp: float, variant: str, c_prev: float | None = None
) -> BurgessConstantResult:
    """Minimal feasible constant: grid over k, golden-section refinement, fixed point in c'."""
    if r >= 3 and c_prev is None:
        raise ValueError("r >= 3 needs the optimised constant for r - 1")
    lo, hi = k_interval(r, variant)
    cache: dict[float, BurgessConstantResult | None] = {}

    def solve(k: float) -> BurgessConstantResult | None:
        if k not in cache:
            cache[k] = solve_fixed_point(r, p0_exp, variant, k, c_prev)
        return cache[k]

    def f(k: float) -> float:
        res = solve(k)
        return res.c if res is not None else math.inf

    grid = k_grid(r, variant)
    values = [f(k) for k in grid]
    i = min(range(len(grid)), key=values.__getitem__)
    if not math.isfinite(values[i]):
        k0 = grid[i]
        return BurgessConstantResult(
            ConstantInputs(r, p0_exp, variant, k0, 1.0, c_prev), B_of_exp(r, p0_exp), 0.0,
            math.inf, False, "no feasible k on the grid", _reference_for(r, p0_exp, variant),
        )
    a = grid[i - 1] if i > 0 else lo
    b = grid[i + 1] if i + 1 < len(grid) else math.nextafter(hi, lo)
    k_star, _ = golden_section(f, a, b)
    candidates = [r_ for r_ in (solve(grid[i]), solve(k_star)) if r_ is not None]
    return min(candidates, key=lambda res: res.c)


def _reference_for(r: int, p0_exp: float, variant: str) -> float | None:
    return (C1_TABLE if variant == "thm1" else C2_TABLE).get((r, p0_exp))


def optimize_table(variant: str, p0_exp: float, rs: Iterable[int]) -> list[BurgessConstantResult]:
    """Optimise rows in ascending r; each row feeds the next through s."""
    rs = sorted(rs)
    if rs and rs[0] > 2:
        rs = list(range(2, rs[0])) + rs
    wanted = set(rs)
    out = []
    prev = None
    for r in range(2, max(rs) + 1):
        res = optimize_constant(r, p0_exp, variant, prev)
        prev = res.c if res.feasible else None
        if r in wanted:
            out.append(res)
        if prev is None and r < max(rs):
            raise RuntimeError(f"row r={r} infeasible; later rows need it")
    return out


def floorA_lower_bound_c(r: int, p0_exp: float, variant: str) -> float:
    """Least constant for which floor(A) reaches 28 (thm1, k=1/30) or 30 (thm2, k=3/64)."""
    L = p0_exp * LN10
    lD = log_D(r)
    if variant == "thm1":
        x = 29 * 30 * math.exp(lD) / (math.exp(L * (0.25 - 0.25 / r)) * L)
    elif variant == "thm2":
        x = 31 * (64 / 3) * math.exp(lD) / (math.exp(L * (0.25 - 0.25 / r)) * math.sqrt(L))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return x ** (1 / r)


def verify_B_ge_15(r_max: int = 100, p0_exp: float = 7) -> list[InequalityReport]:
    if r_max < 21:
        raise ValueError("r_max >= 21 required")
    out = []
    for r in range(2, 21):
        out.append(InequalityReport("B_ge_15", {"r": r, "p0_exp": p0_exp}, 15.0, B_of_exp(r, p0_exp)))
    for r in range(21, r_max + 1):
        out.append(InequalityReport("D_ge_15", {"r": r}, 15.0, math.exp(log_D(r))))
    for r in range(2, r_max):
        out.append(
            InequalityReport("D_increasing", {"r": r}, log_D(r), log_D(r + 1), strict=True)
        )
    return out


def corollary12_constant(r: int, p0_exp: float, k: float = 11 / 64) -> float:
    """c(r) with B replaced by 15, s = 1 and A = k p^(1/4 - 1/(4r)) log p."""
    L = p0_exp * LN10
    D = math.exp(log_D(r))
    A = k * math.exp(L * (0.25 - 0.25 / r)) * L
    shrink = 15 * A / (14 * (A - 1))
    lead = (2 * r * (2 * r - 1) * D / (r - 1)) ** (1 / (2 * r))
    bracket = (
        1 / (D * math.exp(L * (0.5 - 0.5 / r - 0.5 / (r * (r - 1)))))
        + 1 / (4 * k * L)
        + 1 / (4 * r * (r - 1) * k * L)
        + math.log(1.85 * k * L / D) / (k * L * L)
    )
    denom = 1 - 2 * r * r / (2 * r - 1) ** 2 * k * (16 * (A + 1) / (15 * A)) ** 2 * shrink
    if denom <= 0:
        return math.inf
    return shrink * lead * bracket ** (1 / (2 * r)) / denom


def corollary12_check(p0_exp: float = 7, r_max: int = 100) -> list[InequalityReport]:
    if p0_exp < 7:
        raise ValueError("p0 >= 10^7 required")
    out = []
    for r in range(4, r_max + 1):
        out.append(
            InequalityReport(
                "corollary12_c", {"r": r, "p0_exp": p0_exp}, corollary12_constant(r, p0_exp),
                COROLLARY_CONSTANT,
            )
        )
    # r = 3 is only covered by the table (the closed form is stated for r >= 4)
    for r in (2, 3):
        out.append(
            InequalityReport(
                "corollary12_table", {"r": r, "p0_exp": 7}, C1_TABLE[(r, 7)], COROLLARY_CONSTANT
            )
        )
    for r in range(1, r_max + 1):
        lD = log_D(r) if r >= 2 else 0.0
        out.append(
            InequalityReport("corollary12_aux_2r", {"r": r}, math.log(2 * r), r * math.log(COROLLARY_CONSTANT), strict=True)
        )
        out.append(InequalityReport("corollary12_aux_D", {"r": r}, lD, math.log(2 * r)))
    return out


def corollary14_sides(r: int, log_p: float) -> tuple[float, float]:
    """log of both sides of the N-range comparison (2.6 bound versus 2 p^(1/2 + 1/(4r)))."""
    lhs = (
        2 * r / (r - 1) * math.log(COROLLARY14_C1_R2)
        + log_p * (3 / 8 - 1 / (8 * r) - 3 / (8 * r * (r - 1)))
        + 0.5 * math.log(log_p)
    )
    rhs = math.log(2) + log_p * (0.5 + 1 / (4 * r))
    return lhs, rhs


def corollary14_range_check(p0_exp: float = 10, r_max: int = 40) -> list[InequalityReport]:
    L0 = p0_exp * LN10
    out = []
    for r in range(3, r_max + 1):
        lhs, rhs = corollary14_sides(r, L0)
        out.append(InequalityReport("corollary14_range", {"r": r, "p0_exp": p0_exp}, lhs, rhs, strict=True))
        # gap rhs - lhs grows with p: check on a log-spaced sample above p0
        gaps = [corollary14_sides(r, L0 * t)[1] - corollary14_sides(r, L0 * t)[0] for t in (1, 1.5, 2, 4, 10, 100)]
        out.append(
            InequalityReport("corollary14_monotone_in_p", {"r": r}, 0.0, min(b - a for a, b in zip(gaps, gaps[1:])))
        )
        if r >= 22:
            simple = 44 / 21 * math.log(COROLLARY14_C1_R2) + 3 / 8 * L0 + 0.5 * math.log(L0)
            out.append(InequalityReport("corollary14_chain_step", {"r": r}, lhs, simple))
            out.append(
                InequalityReport("corollary14_chain_final", {"r": r}, simple, math.log(2) + 0.5 * L0, strict=True)
            )
    return out


def monotonicity_in_p(inputs: ConstantInputs, exps: Iterable[float]) -> InequalityReport:
    """Largest increase of c along increasing p0 exponents (should be <= 0).

    This is not true for every (k, c'): for thm2, when 1.85 s k sqrt(log p)/D < 1
    the log term is negative and c grows with p. It does hold at the published
    parameter choices.
    """
    exps = sorted(exps)
    cs = [evaluate(replace(inputs, p0_exp=e)).c for e in exps]
    rise = max(b - a for a, b in zip(cs, cs[1:]))
    return InequalityReport("c_nonincreasing_in_p0", {**asdict(inputs), "exps": list(exps)}, rise, 0.0)


def worst_case_check(res: BurgessConstantResult, factors=(1.0, 1.5, 3.0, 10.0)) -> InequalityReport:
    """The evaluated c should dominate the formula at larger A, B and p.

    Re-evaluates the raw expression with A, B and log p scaled up, keeping k, s fixed.
    """
    i = res.inputs
    worst = -math.inf
    for fa in factors:
        for fb in factors:
            for fp in factors:
                worst = max(worst, _raw_c(i, res.A_min * fa, res.B * fb, i.log_p * fp))
    return InequalityReport(
        "worst_case_dominates", {"variant": i.variant, "r": i.r, "p0_exp": i.p0_exp}, worst, res.c
    )


def _raw_c(inputs: ConstantInputs, A: float, B: float, L: float) -> float:
    r, k = inputs.r, float(inputs.k)
    D = math.exp(log_D(r))
    s = inputs.s
    shrink, grow = _ratios(A, B, r)
    denom = 1 - 2 * r * r / (2 * r - 1) ** 2 * k ** (1 - 1 / r) * grow * shrink
    lead = (2 * r * (2 * r - 1) * D / (r - 1)) ** (1 / (2 * r))
    if inputs.variant == "thm1":
        if r == 2:
            bracket = 1 + 3 / (8 * k * L) + math.log(1.85 * k * L) / (k * L * L)
        else:
            bracket = (
                s * s / (D * math.exp(L * (0.5 - 0.5 / r - 0.5 / (r * (r - 1)))))
                + 1 / (4 * k * L)
                + 1 / (4 * r * (r - 1) * k * L)
                + math.log(1.85 * s * k * L / D) / (k * L * L)
            )
    else:
        if r == 2:
            bracket = 3 / (8 * k)
        else:
            bracket = (
                math.log(1.85 * s * k * math.sqrt(L) / D) / (k * L) + 1 / (4 * k) + 1 / (4 * r * (r - 1) * k)
            )
    return shrink * lead * bracket ** (1 / (2 * r)) / denom
