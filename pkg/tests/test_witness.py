from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_ratios.errors import InvalidArgument
from padic_ratios.padic import PAdicContext
from padic_ratios.polynomials import eval_factored, parse_factored
from padic_ratios.witness import (
    approximation_witness,
    bezout_exponents,
    power_sum_witness,
    quotient_exponent,
)


def v(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        return 10**9
    a, b, k = x.numerator, x.denominator, 0
    while a % p == 0:
        a //= p
        k += 1
    while b % p == 0:
        b //= p
        k -= 1
    return k


def test_bezout_examples():
    assert bezout_exponents(1, 1, 3, 1) == (4, 1)
    assert bezout_exponents(2, 3, 1, 5) == (8, 5)
    with pytest.raises(InvalidArgument):
        bezout_exponents(2, 4, 1, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(-20, 20), st.integers(0, 4))
def test_bezout_minimal(mu1, mu2, t, lo):
    if gcd(mu1, mu2) != 1:
        return
    k1, k2 = bezout_exponents(mu1, mu2, t, lo)
    assert k1 * mu1 - k2 * mu2 == t and min(k1, k2) >= lo
    # no smaller k1 works (scan)
    for c in range(lo, k1):
        assert (c * mu1 - t) % mu2 or (c * mu1 - t) // mu2 < lo


@pytest.mark.parametrize(
    "poly,roots,r,u,p",
    [
        ("(X)(X-1)", (0, 1), Fraction(5), 10, 5),
        ("(X-1)^2(X+1)^3", (0, 1), Fraction(49), 8, 7),
        ("(X-1)^2(X+1)^3", (1, 0), Fraction(3, 7), 6, 7),
        ("(X+1)^6(X+2)^5", (0, 1), Fraction(-2, 9), 5, 3),
    ],
)
def test_approximation_witness(poly, roots, r, u, p):
    f = parse_factored(poly)
    w = approximation_witness(f, *roots, r, u, PAdicContext(p, 64))
    assert w.x1 > 0 and w.x2 > 0
    q = Fraction(eval_factored(f, w.x1), eval_factored(f, w.x2))
    assert v(q - r, p) > u
    assert w.achieved_exponent == quotient_exponent(f, w.x1, w.x2, r, p)
    t = w.trace
    assert t["k1"] * t["mu1"] - t["k2"] * t["mu2"] == v(r, p)
    assert t["h1"] * t["mu1"] - t["h2"] * t["mu2"] == 1


def test_witness_rejects_noncoprime():
    with pytest.raises(InvalidArgument):
        approximation_witness(parse_factored("(X)^2(X-1)^4"), 0, 1, 3, 4, PAdicContext(5, 32))
    with pytest.raises(InvalidArgument):
        approximation_witness(parse_factored("(X)(X-1)"), 0, 1, 0, 4, PAdicContext(5, 32))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([3, 5, 7, 11]),
    st.integers(-200, 200).filter(bool),
    st.integers(1, 200),
    st.integers(0, 12),
)
def test_approximation_witness_property(p, num, den, u):
    f = parse_factored("(X-2)^3(X+5)^2")
    r = Fraction(num, den)
    w = approximation_witness(f, 0, 1, r, u, PAdicContext(p, 64))
    q = Fraction(eval_factored(f, w.x1), eval_factored(f, w.x2))
    assert v(q - r, p) > u


def _check_powersum(w, r, u, p):
    q = Fraction(sum(x**w.n for x in w.a), sum(x**w.n for x in w.b))
    assert q == w.quotient()
    assert v(q - r, p) > u
    assert all(x >= 0 for x in w.a + w.b)


def test_power_sum_witness_examples():
    w = power_sum_witness(2, 3, 3, 3, 5)
    _check_powersum(w, 3, 5, 3)
    assert (w.a, w.b) == ((721, 8), (235, 8))
    w = power_sum_witness(3, 6, 11, 11, 4)
    _check_powersum(w, 11, 4, 11)
    assert len(w.a) == 3


def test_power_sum_witness_rejects():
    with pytest.raises(InvalidArgument):
        power_sum_witness(2, 6, 11, 3, 4)  # not dense
    with pytest.raises(InvalidArgument):
        power_sum_witness(64, 16, 2, 3, 4)  # special table


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([(3, 6, 11), (2, 3, 7), (5, 4, 5), (8, 10, 2), (4, 2, 3)]),
    st.integers(-50, 50).filter(bool),
    st.integers(1, 50),
    st.integers(0, 10),
)
def test_power_sum_witness_property(mnp, num, den, u):
    m, n, p = mnp
    r = Fraction(num, den)
    w = power_sum_witness(m, n, p, r, u)
    _check_powersum(w, r, u, p)
    assert len(w.a) == len(w.b) == m
