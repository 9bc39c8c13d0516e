import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from burgess import nonresidue as nr
from burgess.char_arith import DirichletCharacter
from burgess.sieve import divisors, is_prime, primes_upto

PRIMES = [p for p in primes_upto(3000).tolist() if p >= 3]


def brute_g(p, k):
    residues = {pow(x, k, p) for x in range(1, p)}
    return next(n for n in range(2, p) if n not in residues)


def test_residue_examples():
    assert nr.is_kth_residue(1, 13, 3)
    assert nr.is_kth_residue(2, 7, 2)
    assert not nr.is_kth_residue(2, 13, 3)
    with pytest.raises(ValueError):
        nr.is_kth_residue(2, 13, 5)


def test_least_nonresidue_examples():
    assert nr.least_nonresidue(7, 2) == 3
    assert nr.least_nonresidue(13, 3) == 2
    assert nr.least_nonresidue(5, 2) == 2
    with pytest.raises(ValueError):
        nr.least_nonresidue(7, 1)


@given(st.sampled_from(PRIMES), st.data())
def test_least_nonresidue_against_power_set(p, data):
    k = data.draw(st.sampled_from([d for d in divisors(p - 1) if d > 1]))
    g = nr.least_nonresidue(p, k)
    assert g == brute_g(p, k)
    assert is_prime(g)
    assert all(nr.is_kth_residue(n, p, k) for n in range(1, g))


def test_batch_matches_single():
    for p in PRIMES[:200]:
        batch = nr.nonresidues_for_prime(p)
        assert set(batch) == {d for d in divisors(p - 1) if d > 1}
        for k, g in batch.items():
            assert g == nr.least_nonresidue(p, k)


def test_scan_small_range_no_violations():
    s = nr.scan_summary(5, 10**4, [2])
    assert s.ok and s.records == s.primes == len(primes_upto(10**4)) - 2
    recs = list(nr.scan_nonresidues(3, 50, [2]))
    assert recs[0].p == 3
    assert [r.p for r in nr.scan_nonresidues(5, 50, [2])][0] == 5


def test_p3_violates_small_bound():
    rec = next(nr.scan_nonresidues(3, 3))
    assert rec.g == 2 and rec.norton_bound == pytest.approx(1.1 * 3**0.25 * math.log(3))
    assert not rec.ok


def test_scan_records_sorted_and_csv_columns():
    recs = list(nr.scan_nonresidues(100, 200))
    assert recs == sorted(recs, key=lambda r: (r.p, r.k))
    assert list(recs[0].row()) == ["p", "k", "g", "norton_bound", "grh_bound", "ok"]


def test_scan_rejects_large_range():
    with pytest.raises(ValueError):
        next(nr.scan_nonresidues(10, 10**9 + 1))


def test_norton_bound_rule():
    assert nr.norton_bound(103, 2) == pytest.approx(1.1 * 103**0.25 * math.log(103))
    assert nr.norton_bound(101, 2) == pytest.approx(0.9 * 101**0.25 * math.log(101))
    assert nr.norton_bound(103, 3) == pytest.approx(0.9 * 103**0.25 * math.log(103))


def test_prime_recip_examples():
    lo, hi = nr.prime_recip_bounds(286)
    assert lo.holds and hi.holds and hi.margin > 0
    lo, hi = nr.prime_recip_bounds(2)
    assert hi is None and lo.holds
    assert lo.rhs == 0.5
    assert lo.lhs == pytest.approx(math.log(math.log(2)) + nr.MERTENS_B - 1 / (2 * math.log(2) ** 2))
    lo, hi = nr.prime_recip_bounds(10**6)
    assert lo.holds and hi.holds
    assert nr.prime_count_report(10**6).holds


def test_prime_recip_interval_examples():
    assert nr.prime_recip_interval(10, 286).holds
    assert nr.prime_recip_interval(100, 10**6).holds
    r = nr.prime_recip_interval(290.5, 292.9)  # no primes in (290.5, 292.9]
    assert r.lhs == 0 and r.holds
    with pytest.raises(ValueError):
        nr.prime_recip_interval(10, 200)


def test_rs_sweep_exhaustive_and_sensitivity():
    out = nr.rs_sweep(10**5)
    assert all(r.holds for r in out.values())
    # every margin dwarfs a 1e-10 change in the Mertens constant
    assert min(r.margin for r in out.values()) > 1e-6


@given(st.floats(min_value=1.0001, max_value=286))
def test_lower_bound_sampled_reals(x):
    lo, _ = nr.prime_recip_bounds(x)
    assert lo.holds
    assert nr.prime_count_report(x).holds


def test_prime_recip_sum_exact_small():
    assert nr.prime_recip_sum(10) == pytest.approx(1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, rel=1e-15)
    assert nr.prime_recip_sum(1.5) == 0.0


def test_vinogradov_lower_bound():
    assert nr.vinogradov_lower_bound(286, 0.5) > 0
    x = 10**6
    d = 0.01
    y = x ** (math.exp(-0.5) + d)
    expect = x * (2 * math.log(d * math.sqrt(math.e) + 1) - 1 / math.log(x) ** 2 - 1 / math.log(y) ** 2 - 1 / x)
    assert nr.vinogradov_lower_bound(x, d) == pytest.approx(expect)
    assert nr.vinogradov_lower_bound(1000, 1e-12) < 0
    with pytest.raises(ValueError):
        nr.vinogradov_lower_bound(100, 0.5)


def _prime_with_g(g_target):
    return next(p for p in primes_upto(10**6).tolist() if p > 3 and nr.least_nonresidue(p, 2) == g_target)


def test_chain_examples():
    p = _prime_with_g(11)
    chi = DirichletCharacter(p, 2, 1)
    assert nr.vinogradov_chain_check(chi, 10, 20).holds
    with pytest.raises(nr.HypothesisViolation):
        nr.vinogradov_chain_check(chi, 11, 20)
    r = nr.vinogradov_chain_check(chi, 10, 10)
    assert r.lhs == r.rhs == 10


def test_chain_sweep_small():
    reps = nr.vinogradov_chain_sweep(5000)
    assert reps and all(r.holds for r in reps)


def test_delta_examples():
    assert 0.00458 <= nr.delta_of(Fraction(1, 6), 22) < 0.00459
    with pytest.raises(ValueError):
        nr.delta_of(Fraction(1, 6), 20)
    a = 1 / (4 * math.sqrt(math.e)) + 0.01
    assert nr.delta_of(a, 10**7) == pytest.approx(4 * a - math.exp(-0.5), abs=1e-6)


def test_threshold_example():
    res = nr.threshold_solver(Fraction(1, 6), 22, 2.74)
    assert res.E == 4732
    assert res.holds_at_E and res.fails_below
    lhs, rhs = nr.threshold_sides(4731, Fraction(1, 6), 22, 2.74)
    assert lhs >= rhs


def test_threshold_huge_exponents_are_finite():
    lhs, rhs = nr.threshold_sides(10**6, Fraction(1, 6), 22, 2.74)
    assert math.isfinite(lhs) and math.isfinite(rhs) and rhs > lhs


def test_threshold_sweep_minimum_at_22():
    rows = nr.threshold_sweep(Fraction(1, 6), range(21, 41), 2.74)
    best = min((r for r in rows if r["E"] is not None), key=lambda r: r["E"])
    assert best["r"] == 22 and best["E"] == 4732
    rows = nr.threshold_sweep(Fraction(1, 6), [20], 2.74)
    assert rows[0]["E"] is None


def test_threshold_not_found():
    with pytest.raises(nr.NoThreshold):
        nr.threshold_solver(Fraction(1, 6), 22, 2.74, e_max=100)
