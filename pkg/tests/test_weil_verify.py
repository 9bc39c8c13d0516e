import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burgess.char_arith import DirichletCharacter, PrincipalCharacterError, char_eval
from burgess.weil_verify import (
    WeilPreconditionError,
    double_factorial,
    inner_sums,
    log_weil_bound,
    log_double_factorial,
    pairing_count,
    verify_weil_all,
    verify_weil_grid,
    verify_weil_range,
    verify_weil_sampled,
    weil_bound,
    weil_moment,
)


def brute_moment(chi, B, r):
    total = 0
    for x in range(chi.p):
        s = sum(char_eval(chi, x + b).value for b in range(1, B + 1))
        total += abs(s) ** (2 * r)
    return total


def test_quadratic_mod5_example():
    chi = DirichletCharacter(5)
    assert inner_sums(chi, 2).tolist() == [0, -2, 0, 1, 1]
    assert weil_moment(chi, 2, 2) == 18


def test_B1_r1_is_p_minus_1():
    for p in (5, 7, 13, 29):
        for chi in DirichletCharacter.all_nonprincipal(p):
            assert weil_moment(chi, 1, 1) == pytest.approx(p - 1, abs=1e-9)


def test_quadratic_mod7_B3_r1():
    # inner sums 1, 1, -1, -1, -2, 0, 2
    assert weil_moment(DirichletCharacter(7), 3, 1) == 12


@pytest.mark.parametrize("p", [7, 11, 13])
def test_moment_matches_brute_force(p):
    for chi in DirichletCharacter.all_nonprincipal(p):
        for B in (1, 2, 4):
            for r in (1, 2, 3):
                assert weil_moment(chi, B, r) == pytest.approx(brute_moment(chi, B, r), rel=1e-9)


def test_bound_examples():
    assert weil_bound(5, 2, 2) == pytest.approx(60 + 48 * math.sqrt(5))
    assert weil_bound(5, 2, 2) == pytest.approx(167.33, abs=0.01)
    assert weil_bound(5, 1, 1) == pytest.approx(5 + math.sqrt(5))
    with pytest.raises(WeilPreconditionError):
        weil_bound(7, 2, 19)


def test_bound_large_r_no_overflow():
    assert weil_bound(10**9, 50, 300) == math.inf
    lw = log_weil_bound(10**9, 50, 300)
    assert math.isfinite(lw) and lw > 709
    assert math.exp(log_weil_bound(101, 3, 27)) == pytest.approx(weil_bound(101, 3, 27), rel=1e-12)


def test_verify_all_examples():
    reps = verify_weil_all(5, 2, 2)
    assert len(reps) == 3 and all(r.holds for r in reps)
    reps = verify_weil_all(7, 1, 2)
    assert len(reps) == 5 and all(r.holds for r in reps)
    with pytest.raises(ValueError):
        verify_weil_all(4, 1, 1)
    with pytest.raises(WeilPreconditionError):
        verify_weil_all(7, 1, 10)


def test_cap_points_to_sampling():
    with pytest.raises(ValueError, match="sampled"):
        verify_weil_grid(10007, [1], [1], cap=10**4)
    reps = verify_weil_sampled(10007, 3, 2, samples=5, seed=1)
    assert reps and all(r.holds for r in reps)


def test_principal_rejected():
    with pytest.raises(PrincipalCharacterError):
        weil_moment(DirichletCharacter(7, 2, 0), 2, 1)


@pytest.mark.parametrize("r", range(0, 21))
def test_double_factorial_identity(r):
    if r == 0:
        assert double_factorial(-1) == 1
        return
    assert Fraction(double_factorial(2 * r - 1)) == pairing_count(r)
    assert log_double_factorial(2 * r - 1) == pytest.approx(math.log(pairing_count(r)), rel=1e-13)


def test_log_double_factorial_switch_is_continuous():
    for n in (27, 29, 31, 33):
        assert log_double_factorial(n) == pytest.approx(math.log(double_factorial(n)), rel=1e-13)


chars = st.sampled_from([7, 11, 13, 31, 61, 101]).flatmap(
    lambda p: st.integers(1, p - 2).map(lambda j: (p, j))
)


def _char(pj):
    p, j = pj
    g = math.gcd(j, p - 1)
    return DirichletCharacter(p, (p - 1) // g, j // g)


@given(chars, st.integers(1, 5), st.integers(1, 3))
def test_conjugate_invariance(pj, B, r):
    chi = _char(pj)
    a, b = weil_moment(chi, B, r), weil_moment(chi.conjugate(), B, r)
    assert a == pytest.approx(b, rel=1e-9)


@given(chars, st.integers(1, 5), st.integers(1, 3))
def test_moment_below_max_inner(pj, B, r):
    chi = _char(pj)
    inner = np.abs(inner_sums(chi, B))
    assert weil_moment(chi, B, r) <= float(inner.max()) ** (2 * r) * chi.p * (1 + 1e-9)


@given(chars, st.integers(1, 5), st.integers(1, 3))
def test_bound_holds(pj, B, r):
    chi = _char(pj)
    assert weil_moment(chi, B, r) <= weil_bound(chi.p, B, r) * (1 + 1e-6)


def test_range_is_ordered_and_parallel_equal():
    primes = [5, 7, 11, 13]
    serial = verify_weil_range(primes, [1, 2], [1, 2], workers=1)
    par = verify_weil_range(primes, [1, 2], [1, 2], workers=2)
    assert [m.as_dict() for m in serial] == [m.as_dict() for m in par]
    assert [m.p for m in serial] == sorted(m.p for m in serial)
