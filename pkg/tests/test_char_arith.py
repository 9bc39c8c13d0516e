import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burgess.char_arith import (
    DirichletCharacter,
    PrincipalCharacterError,
    char_eval,
    char_sum,
    find_primitive_root,
    index_table,
    max_partial_sums,
    polya_vinogradov_bound,
    verify_pv,
)
from burgess.sieve import primes_upto

SMALL_PRIMES = [p for p in primes_upto(400).tolist() if p >= 3]


def brute_root(p):
    for g in range(2, p):
        if len({pow(g, e, p) for e in range(p - 1)}) == p - 1:
            return g


def brute_char(p, d, m):
    """chi(n) from a discrete log found by scanning powers of the least generator."""
    g = brute_root(p)
    logs = {pow(g, e, p): e for e in range(p - 1)}

    def chi(n):
        n %= p
        if n == 0:
            return 0
        return cmath.exp(2j * math.pi * m * logs[n] / d)

    return chi


@pytest.mark.parametrize("p,g", [(3, 2), (5, 2), (7, 3), (23, 5), (41, 6), (71, 7), (191, 19)])
def test_primitive_root_examples(p, g):
    assert find_primitive_root(p) == g


@pytest.mark.parametrize("p", [1, 2, 4, 9, 15, -7])
def test_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        DirichletCharacter(p)


def test_primitive_root_matches_brute_force():
    for p in SMALL_PRIMES[:40]:
        assert find_primitive_root(p) == brute_root(p)


def test_index_table_is_inverse_of_powers():
    p = 101
    ind = index_table(p)
    g = find_primitive_root(p)
    assert ind[0] == -1
    for n in range(1, p):
        assert pow(g, int(ind[n]), p) == n


def test_eval_examples():
    q7 = DirichletCharacter(7)
    assert char_eval(q7, 3).exact == -1
    assert char_eval(q7, 7).exact == 0
    assert char_eval(DirichletCharacter(5), 4).exact == 1
    assert char_eval(DirichletCharacter(13, 3, 1), 13 * 5).value == 0


def test_sum_examples():
    q7 = DirichletCharacter(7)
    assert char_sum(q7, 0, 3).exact == 1
    assert char_sum(q7, 0, 7).exact == 0
    assert char_sum(q7, 5, 0).exact == 0
    chi = DirichletCharacter(13, 4, 1)
    assert abs(char_sum(chi, 0, 13)) < 1e-9 * 13
    assert char_sum(DirichletCharacter(11, 5, 0), 0, 22).exact == 20


def test_principal_rejected_where_required():
    with pytest.raises(PrincipalCharacterError):
        DirichletCharacter(7, 3, 3).require_nonprincipal()


def test_quadratic_matches_legendre_symbol():
    for p in SMALL_PRIMES[:30]:
        chi = DirichletCharacter(p)
        v = chi.values()
        for n in range(1, p):
            legendre = 1 if pow(n, (p - 1) // 2, p) == 1 else -1
            assert v[n] == legendre == char_eval(chi, n).exact


@pytest.mark.parametrize("p", [7, 13, 31, 37])
def test_values_match_brute_character(p):
    for d in [d for d in range(2, p) if (p - 1) % d == 0]:
        for m in range(d):
            ours = DirichletCharacter(p, d, m).values()
            ref = brute_char(p, d, m)
            assert np.allclose(ours, [ref(n) for n in range(p)], atol=1e-12)


def test_all_nonprincipal_count_and_distinct():
    p = 31
    chars = list(DirichletCharacter.all_nonprincipal(p))
    assert len(chars) == p - 2
    tables = {tuple(np.round(c.values(), 9)) for c in chars}
    assert len(tables) == p - 2
    assert all(not c.is_principal and c.order == c.exact_order for c in chars)


prime_st = st.sampled_from(SMALL_PRIMES)


@st.composite
def characters(draw):
    p = draw(prime_st)
    d = draw(st.sampled_from([d for d in range(1, p) if (p - 1) % d == 0]))
    m = draw(st.integers(0, d - 1))
    return DirichletCharacter(p, d, m)


@given(characters(), st.integers(1, 10**6), st.integers(1, 10**6))
def test_multiplicativity(chi, a, b):
    ea, eb, eab = chi.exponent(a), chi.exponent(b), chi.exponent(a * b)
    if a % chi.p == 0 or b % chi.p == 0:
        assert eab is None
        return
    assert eab == (ea + eb) % chi.order
    lhs = char_eval(chi, a * b).value
    assert abs(lhs - char_eval(chi, a).value * char_eval(chi, b).value) < 1e-12


@given(characters(), st.integers(0, 10**4))
def test_orthogonality_over_period(chi, M):
    s = char_sum(chi, M, chi.p)
    if chi.is_principal:
        assert s.exact == chi.p - 1
    elif s.exact is not None:
        assert s.exact == 0
    else:
        assert abs(s) < 1e-9 * chi.p


@given(characters(), st.integers(0, 10**4), st.integers(0, 2000))
def test_triangle_bound(chi, M, N):
    assert abs(char_sum(chi, M, N)) <= N + 1e-9 * max(N, 1)


@given(characters(), st.integers(0, 5000), st.integers(1, 800), st.data())
def test_shift_identity(chi, M, N, data):
    h = data.draw(st.integers(0, N - 1))
    shifted = sum(char_eval(chi, n + h).value for n in range(M + 1, M + N + 1))
    rhs = shifted + char_sum(chi, M, h).value - char_sum(chi, M + N, h).value
    lhs = char_sum(chi, M, N)
    if lhs.exact is not None:
        assert round(rhs.real) == lhs.exact and abs(rhs.imag) < 1e-9
    else:
        assert abs(lhs.value - rhs) < 1e-9 * N


@given(characters(), st.integers(0, 300), st.integers(0, 300))
def test_exact_and_float_paths_agree(chi, M, N):
    s = char_sum(chi, M, N)
    direct = sum(char_eval(chi, n).value for n in range(M + 1, M + N + 1))
    assert abs(s.value - direct) < 1e-9 * max(N, 1)
    if chi.is_real:
        assert s.exact is not None and s.value == complex(s.exact, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 29])
def test_max_partial_sums_matches_naive(p):
    for chi in DirichletCharacter.all_nonprincipal(p):
        naive = max(
            abs(sum(char_eval(chi, n).value for n in range(M + 1, M + N + 1)))
            for M in range(p)
            for N in range(1, p + 1)
        )
        assert max_partial_sums(chi) == pytest.approx(naive, abs=1e-9)


def test_pv_bound_values():
    assert polya_vinogradov_bound(7) == pytest.approx(math.sqrt(7) * math.log(7))
    assert polya_vinogradov_bound(7) == pytest.approx(5.1484, abs=1e-4)
    assert polya_vinogradov_bound(101) == pytest.approx(46.381, abs=1e-3)


def test_pv_101_exhaustive():
    reps = verify_pv(101)
    assert len(reps) == 99
    assert all(r.holds for r in reps)
    assert max(r.lhs for r in reps) <= 46.39
