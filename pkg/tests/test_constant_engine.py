import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from burgess import constant_engine as ce
from burgess.constant_engine import ConstantInputs
from burgess.reference import C1_CHOICES, C1_TABLE, C2_CHOICES, C2_TABLE


def test_B_examples():
    assert ce.B_of(2, 1e7) == pytest.approx(10**1.75)
    assert ce.B_of(2, 1) == pytest.approx(1.0)
    assert ce.B_of(3, 1e10) == pytest.approx(6 ** (1 / 3) * 10 ** (10 / 6))
    assert ce.B_of(3, 1e10) == pytest.approx(84.35, abs=0.01)
    assert ce.B_of_exp(5, 20) == pytest.approx(ce.B_of(5, 1e20))


def test_natural_log_is_required():
    # with base-10 logs the r = 2 row lands far from the published value
    res = ce.evaluate(ConstantInputs(2, 7, "thm1", F(2, 45), 2.738))
    assert res.c == pytest.approx(2.7381, abs=2e-3)
    L10 = 7.0
    bracket = 1 + 3 / (8 * (2 / 45) * L10) + math.log(1.85 * (2 / 45) * L10) / ((2 / 45) * L10**2)
    assert abs(12**0.25 * bracket**0.25 - 2.7381) > 0.05


def test_A_min_examples():
    a = ce.A_min_of(ConstantInputs(2, 7, "thm1", F(2, 45), 2.738))
    assert a == pytest.approx(40.3, abs=0.05)
    assert ce.A_min_of(ConstantInputs(2, 10, "thm2", 0.124, 3.65)) > 31
    assert ce.A_min_of(ConstantInputs(2, 7, "thm1", 1e-9, 2.738)) < 1e-6


def test_s_examples():
    assert ce.s_of(3, 1.5, 1.5) == 1.0
    assert ce.s_of(3, 2.7381, 2.019) == pytest.approx((2.7381 / 2.019) ** 6)
    assert ce.s_of(3, 2.7381, 2.019) == pytest.approx(6.22, abs=0.01)
    assert ce.s_of(4, 2.0197, 1.729) == pytest.approx((2.0197 / 1.729) ** 12)
    assert ce.s_of(4, 1.0, 2.0) == 1.0


def test_eval_examples():
    assert ce.c1_eval(ConstantInputs(3, 20, "thm1", F(2, 15), 1.369, 2.3549)).c <= 1.3695
    assert ce.c2_eval(ConstantInputs(2, 10, "thm2", 0.124, 3.65)).c <= 3.6529
    assert ce.c2_eval(ConstantInputs(10, 20, "thm2", 0.064, 1.52, 1.5654)).c <= 1.5216
    with pytest.raises(ValueError):
        ce.c1_eval(ConstantInputs(2, 10, "thm2", 0.124, 3.65))


def test_inadmissible_k():
    with pytest.raises(ce.InadmissibleK):
        ce.evaluate(ConstantInputs(2, 7, "thm1", 1.0, 2.7))
    with pytest.raises(ce.InadmissibleK):
        ce.evaluate(ConstantInputs(2, 7, "thm1", F(1, 31), 2.7))
    hi = ce.k_interval(2, "thm2")[1]
    with pytest.raises(ce.InadmissibleK):
        ce.evaluate(ConstantInputs(2, 10, "thm2", hi, 3.6))


def test_non_positive_denominator_reported():
    # at p0 >= 10^7 the denominator stays positive for all k < 1; small B forces it
    res = ce.evaluate(ConstantInputs(2, 2, "thm1", 0.99, 10.0))
    assert not res.feasible and "denominator" in res.reason
    assert ce.evaluate(ConstantInputs(2, 7, "thm1", 0.99, 10.0)).feasible


def test_floor_A_infeasible():
    res = ce.evaluate(ConstantInputs(2, 7, "thm1", F(1, 30), 1.0))
    assert not res.feasible and "A_min" in res.reason


@pytest.mark.parametrize("key", sorted(C1_CHOICES))
def test_published_choices_reproduce_c1(key):
    """Every published (k, c') choice, chained through the published c(r-1), lands on the table."""
    r, e = key
    k, cp = C1_CHOICES[key]
    prev = C1_TABLE.get((r - 1, e))
    res = ce.evaluate(ConstantInputs(r, e, "thm1", k, cp, prev))
    assert res.feasible
    assert res.c <= C1_TABLE[key] + 1e-3
    assert res.c >= cp - 1e-3


@pytest.mark.parametrize("key", sorted(C2_CHOICES))
def test_published_choices_reproduce_c2(key):
    r, e = key
    k, cp = C2_CHOICES[key]
    prev = C2_TABLE.get((r - 1, e))
    res = ce.evaluate(ConstantInputs(r, e, "thm2", k, cp, prev))
    assert res.feasible
    assert res.c <= C2_TABLE[key] + 1e-3


def test_k_grid_contains_table_fractions():
    grid = set(ce.k_grid(5, "thm1"))
    for k, _ in C1_CHOICES.values():
        if 600 % k.denominator == 0:
            assert float(k) in grid
    assert ce.k_grid(3, "thm1")[0] == pytest.approx(1 / 30)
    lo, hi = ce.k_interval(2, "thm2")
    g = ce.k_grid(2, "thm2")
    assert g[0] == pytest.approx(lo) and g[-1] < hi


def test_golden_section_quadratic():
    x, fx = ce.golden_section(lambda t: (t - 0.3) ** 2 + 1, 0, 1, tol=1e-9)
    assert x == pytest.approx(0.3, abs=1e-6) and fx == pytest.approx(1)


def test_fixed_point_consistency():
    res = ce.solve_fixed_point(9, 7, "thm1", 19 / 300, 1.4703)
    assert res is not None and res.feasible
    assert res.inputs.c_prime <= res.c <= res.inputs.c_prime + 1e-3


@pytest.mark.parametrize(
    "r,e,variant,ref",
    [(2, 7, "thm1", 2.7381), (5, 15, "thm2", 1.9231), (9, 10, "thm1", 1.3662)],
)
def test_optimize_examples(r, e, variant, ref):
    rows = ce.optimize_table(variant, e, [r])
    res = rows[-1]
    assert res.inputs.r == r
    assert res.c <= ref + 1e-3
    assert res.inputs.c_prime <= res.c
    if (r, e, variant) == (2, 7, "thm1"):
        assert abs(res.inputs.k - 2 / 45) < 0.01


def test_optimized_rows_are_worst_case_and_above_lower_bound():
    for res in ce.optimize_table("thm1", 10, range(2, 6)):
        assert ce.worst_case_check(res).holds
        assert res.A_min - 1 >= 28
        assert res.c > max(1.0, ce.floorA_lower_bound_c(res.inputs.r, 10, "thm1"))


@pytest.mark.parametrize("variant", ["thm1", "thm2"])
def test_monotone_in_p0_at_published_choices(variant):
    table, choices = (C1_TABLE, C1_CHOICES) if variant == "thm1" else (C2_TABLE, C2_CHOICES)
    for (r, e), (k, cp) in choices.items():
        inputs = ConstantInputs(r, e, variant, k, cp, table.get((r - 1, e)))
        rep = ce.monotonicity_in_p(inputs, {e, e + 1, e + 2, e + 5, e + 10, 2 * e, 100})
        assert rep.holds, rep


def test_monotone_in_p0_fails_when_log_term_negative():
    # 1.85 s k sqrt(L) / D < 1 here, so the thm2 bracket grows with p
    inputs = ConstantInputs(3, 10, "thm2", 0.0625, 2.0, 2.0)
    assert not ce.monotonicity_in_p(inputs, [10, 12, 15, 20, 30]).holds


@given(st.integers(3, 10), st.floats(1 / 30, 0.2), st.floats(1.3, 3.0), st.floats(1.0, 1.2))
def test_thm1_monotone_in_p0_when_log_term_positive(r, k, cp, ratio):
    inputs = ConstantInputs(r, 10, "thm1", k, cp, cp * ratio)
    if not ce.evaluate(inputs).feasible:
        return
    D = math.exp(ce.log_D(r))
    if 1.85 * inputs.s * k * inputs.log_p / D <= 1:
        return
    assert ce.monotonicity_in_p(inputs, [10, 12, 15, 20, 30]).holds


def test_lower_bound_examples():
    assert round(ce.floorA_lower_bound_c(2, 7, "thm1"), 5) == 2.68289
    assert round(ce.floorA_lower_bound_c(5, 20, "thm1"), 6) == 0.363232
    assert round(ce.floorA_lower_bound_c(2, 10, "thm2"), 5) == 2.78392


def test_B_ge_15_examples():
    reps = ce.verify_B_ge_15(100)
    by = {(r.name, r.params.get("r")): r for r in reps}
    assert by[("D_ge_15", 21)].holds
    assert by[("B_ge_15", 2)].rhs == pytest.approx(56.23, abs=0.01)
    assert by[("D_ge_15", 100)].holds
    with pytest.raises(ValueError):
        ce.verify_B_ge_15(20)


def test_corollary12_examples():
    assert ce.corollary12_constant(4, 7) <= 2.74
    assert ce.corollary12_constant(50, 7) <= 2.74
    for r in range(1, 101):
        D = math.exp(ce.log_D(r)) if r >= 2 else 1.0
        assert 2.74**r > 2 * r >= D


def test_corollary14_examples():
    lhs, rhs = ce.corollary14_sides(3, 10 * ce.LN10)
    assert lhs < rhs
    L = 10 * ce.LN10
    assert 44 / 21 * math.log(2.6) + 3 / 8 * L + 0.5 * math.log(L) < math.log(2) + 0.5 * L
