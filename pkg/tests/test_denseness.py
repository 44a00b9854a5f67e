from fractions import Fraction

import pytest

from padic_ratios.denseness import (
    Reason,
    Status,
    TwoAdicCylinder,
    closure_valuation_classes,
    coprime_pair,
    decide_poly,
    decide_power_sum,
    decide_s2,
    decide_split_poly,
    t_closure_membership,
    t_ratio_membership,
    t_ratio_search,
    valuation_spectrum,
    verify_verdict,
)
from padic_ratios.errors import InvalidArgument, PrecisionExhausted
from padic_ratios.oracle import enumerate_power_sums, ratio_ball_hit
from padic_ratios.padic import PAdicContext, padic_from_int, padic_from_rational
from padic_ratios.polynomials import DensePoly, parse_poly

D, ND, UNK = Status.DENSE, Status.NOT_DENSE, Status.UNKNOWN


@pytest.mark.parametrize(
    "n,p,threshold",
    [(6, 11, 3), (10, 2, 8), (16, 2, 64), (2, 2, 3), (4, 2, 8), (8, 2, 16), (4, 5, 5), (3, 3, 2)],
)
def test_power_sum_thresholds(n, p, threshold):
    for m in range(2, threshold + 3):
        v = decide_power_sum(m, n, p)
        assert v.status is (D if m >= threshold else ND), (m, n, p)
        assert verify_verdict(v)


def test_sum_of_two_squares_p_1_mod_4(primes):
    for p in primes(200):
        if p % 4 == 1:
            assert decide_power_sum(2, 2, p).status is D


def test_not_dense_certificate_shape():
    v = decide_power_sum(2, 6, 11)
    assert v.reason is Reason.MISSING_VALUATION_CLASS
    assert v.certificate["missing_class"] == 1 and v.certificate["allowed_classes"] == [0]
    assert v.to_json()["status"] == "NotDense"


def test_special_table_certificates():
    v = decide_power_sum(64, 16, 2)
    assert sum(x**16 for x in v.certificate["tuple"]) % 2**9 == 0
    assert (5**16 + 63) % 2**9 == 0
    assert decide_power_sum(7, 4, 2).certificate["non_member"] == 15
    assert decide_power_sum(2, 2, 2).certificate["excluded_ball"]["center"] == 3


def test_bad_power_sum_args():
    with pytest.raises(InvalidArgument):
        decide_power_sum(1, 4, 5)
    with pytest.raises(InvalidArgument):
        decide_power_sum(3, 4, 15)


def test_decide_s2():
    assert decide_s2(3, 7).status is D
    assert decide_s2(4, 17).status is D
    assert decide_s2(4, 13).status is ND
    assert decide_s2(2, 2).status is ND
    for n in range(2, 13):
        for p in (2, 3, 5, 7, 11, 13, 17):
            assert decide_s2(n, p).status is decide_power_sum(2, n, p).status


def test_decide_poly_low_degree():
    assert decide_poly(DensePoly([1, 0, 1]), 13).status is D
    assert decide_poly(DensePoly([1, 0, 1]), 7).status is ND
    v = decide_poly(parse_poly("(X-3)^2"), 5)
    assert v.status is ND and v.certificate["divisor"] == 2
    assert decide_poly(DensePoly([9, -6, 1]), 5).status is ND
    assert decide_poly(DensePoly([1, 2]), 2).status is ND
    assert decide_poly(DensePoly([5]), 3).status is ND
    for f, p in [(DensePoly([1, 0, 1]), 13), (DensePoly([1, 0, 1]), 7), (DensePoly([1, 2]), 2)]:
        assert verify_verdict(decide_poly(f, p))


def test_decide_poly_higher_degree():
    assert decide_poly(DensePoly([2, 0, 0, 1]), 3).status is ND
    assert decide_poly(DensePoly([-2, 0, 0, 1]), 5).status is D
    assert decide_poly(DensePoly([-1, 3, -3, 1]), 3).status is UNK  # (X-1)^3 as a dense poly
    assert verify_verdict(decide_poly(DensePoly([-2, 0, 0, 1]), 5))


def test_split_profiles():
    assert decide_split_poly([1, 1], 5).status is D
    assert decide_split_poly([2, 3], 7).status is D
    assert decide_split_poly([2, 4], 7).status is ND
    assert decide_split_poly([6, 10, 15], 5).status is UNK
    assert decide_split_poly([2, 4], 7, has_constant_valuation_cofactor=False).status is UNK
    assert coprime_pair([6, 10, 15]) is None
    assert coprime_pair([4, 6, 9]) == (0, 2)
    v = decide_poly(parse_poly("(X+1)^6(X+2)^10(X+3)^15"), 5)
    assert v.status is UNK and v.certificate["failed"] == "degree of split part <= 30"


def test_factored_with_cofactor():
    assert decide_poly(parse_poly("(X-1)^2*[1,0,1]"), 3).status is ND
    assert decide_poly(parse_poly("(X-1)^2*[1,0,1]"), 5).status is UNK


def test_cylinder():
    c = TwoAdicCylinder(1, 3, 4)
    assert c.contains(16 * 19) and not c.contains(16 * 5)


def _ctx():
    return PAdicContext(2, 64)


def test_closure_membership_examples():
    ctx = _ctx()
    assert t_closure_membership(padic_from_int(16, ctx), 1, 4, ctx)
    assert t_closure_membership(padic_from_int(5**16 + 63, ctx), 64, 16, ctx)
    assert not t_closure_membership(padic_from_rational("1/2", ctx), 8, 4, ctx)
    # 8 is not in T_7^4; every sum of 7 fourth powers is 0..7 mod 16
    assert not t_closure_membership(padic_from_int(8, ctx), 7, 4, ctx)
    assert all(s % 16 != 8 for s in enumerate_power_sums(7, 4, 6))
    assert t_closure_membership(padic_from_int(8, ctx), 8, 4, ctx)


def test_closure_membership_vs_power_sums():
    ctx = _ctx()
    sums = set(enumerate_power_sums(3, 4, 9))
    for x in range(1, 2000):
        if x in sums:
            assert t_closure_membership(padic_from_int(x, ctx), 3, 4, ctx)


def test_closure_precision_exhausted():
    ctx = PAdicContext(2, 2)
    with pytest.raises(PrecisionExhausted):
        t_closure_membership(padic_from_int(3, ctx), 3, 4, ctx)


def test_ratio_membership_examples():
    assert not t_ratio_membership(15, 7, 4)
    assert t_ratio_membership(15, 8, 4)
    w, j1, j2 = t_ratio_search(15, 8, 4)
    assert TwoAdicCylinder(0, j1, 4).contains(15 * j2) or w != 0


@pytest.mark.parametrize("m", [3, 5])
def test_ratio_membership_vs_enumeration(m):
    A = [a for a in enumerate_power_sums(m, 4, 14) if a]
    for q in range(1, 64):
        assert t_ratio_membership(q, m, 4) == ratio_ball_hit(A, q, 2, 7).found, q


def test_ratio_inversion_symmetry():
    for m in (3, 7, 8):
        for num in range(1, 40):
            for den in (1, 3, 5, 16, 48):
                q = Fraction(num, den)
                assert t_ratio_membership(q, m, 4) == t_ratio_membership(1 / q, m, 4)


def test_ratio_monotone_in_m():
    for num in range(1, 80):
        prev = False
        for m in range(1, 10):
            cur = t_ratio_membership(num, m, 8)
            assert cur or not prev
            prev = cur


def test_closure_valuation_classes():
    assert closure_valuation_classes(7, 4) == {0, 1, 2}
    assert closure_valuation_classes(16, 8) == {0, 1, 2, 3, 4}
    assert closure_valuation_classes(15, 8) == {0, 1, 2, 3}


def test_special_table_matches_closures():
    # n = 4: R(T_m^4) covers all odd classes exactly from m = 8
    for m in range(2, 10):
        full = all(t_ratio_membership(u, m, 4) for u in range(1, 32, 2))
        assert full == (decide_power_sum(m, 4, 2).status is D)
    for m in range(2, 18):
        classes = closure_valuation_classes(m, 8)
        diffs = {(a - b) % 8 for a in classes for b in classes}
        assert (diffs == set(range(8))) == (decide_power_sum(m, 8, 2).status is D)


def test_valuation_spectrum():
    rep = valuation_spectrum(parse_poly("(X)(X-1)"), 5, 200, modulus=2)
    assert rep.is_difference(1) and rep.covers_class(1)
    rep = valuation_spectrum(DensePoly([1, 0, 1]), 3, 500)
    assert set(rep.valuations) == {0}
    js = rep.to_json()
    assert js["differences"] == [0]


@pytest.mark.parametrize("m", range(2, 12))
def test_power_sum_monotone_in_m(m):
    for n, p in [(6, 11), (10, 2), (4, 5), (12, 13)]:
        if decide_power_sum(m, n, p).status is D:
            assert decide_power_sum(m + 1, n, p).status is D
