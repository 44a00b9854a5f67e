"""Truncated p-adic arithmetic in valuation + unit form.

A nonzero element of Q_p is stored as ``p**valuation * unit`` where ``unit``
is a p-adic unit known modulo ``p**precision``.  Multiplication and division
are exact on the unit part; only addition can lose digits, and when every
known digit cancels the result is a zero flagged as ``exhausted``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from padic_ratios.errors import InvalidArgument, PrecisionExhausted

INF = math.inf

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

Rational = Fraction
RationalLike = Union[int, Fraction, str]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise InvalidArgument(f"{n} is beyond the deterministic primality range")
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


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"p = {p!r} is not a prime")


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"cannot parse rational {x!r}") from exc
    raise InvalidArgument(f"unsupported rational value {x!r}")


def _vp_unchecked(x: int, p: int) -> int:
    x = abs(x)
    v = 0
    # square the divisor while it keeps dividing: O(log v) big divisions
    while x % p == 0:
        q, e = p, 1
        while x % (q * q) == 0:
            q *= q
            e *= 2
        x //= q
        v += e
    return v


def vp_int(x: int, p: int) -> int | float:
    """Exponent of ``p`` in the integer ``x``; ``math.inf`` for ``x == 0``."""
    require_prime(p)
    if x == 0:
        return INF
    return _vp_unchecked(x, p)


def vp_rational(r: RationalLike, p: int) -> int | float:
    r = as_rational(r)
    require_prime(p)
    if r == 0:
        return INF
    return _vp_unchecked(r.numerator, p) - _vp_unchecked(r.denominator, p)


def centered_mod(a: int, m: int) -> int:
    """Representative of ``a`` modulo ``m`` in the interval ``(-m/2, m/2]``."""
    if m < 1:
        raise InvalidArgument("modulus must be positive")
    r = a % m
    if 2 * r > m:
        r -= m
    return r


@dataclass(frozen=True)
class PAdicContext:
    """A prime ``p`` and a working precision of ``N`` base-p digits."""

    p: int
    N: int = 64

    def __post_init__(self) -> None:
        require_prime(self.p)
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidArgument("precision N must be a positive integer")

    @property
    def modulus(self) -> int:
        return self.p**self.N


@dataclass(frozen=True)
class PAdicNumber:
    """``p**valuation * unit`` with ``unit`` known modulo ``p**precision``.

    Zeros have ``unit == 0``.  An exact zero has infinite valuation; a zero
    produced by cancellation has ``exhausted`` set and is only known to be
    divisible by ``p**precision``.
    """

    valuation: int | float
    unit: int
    precision: int
    exhausted: bool = False

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def absolute_precision(self) -> int | float:
        """Largest ``e`` such that the element is known modulo ``p**e``."""
        if self.is_zero:
            return self.precision if self.exhausted else INF
        return self.valuation + self.precision

    def residue(self, ctx: PAdicContext) -> int:
        """Integer representative in ``[0, p**N)`` of an element of Z_p."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise InvalidArgument("element is not a p-adic integer")
        if self.valuation >= ctx.N:
            return 0
        return (ctx.p**self.valuation * self.unit) % ctx.modulus

    def to_json(self) -> dict:
        if self.is_zero:
            return {"zero": True, "exhausted": self.exhausted, "known_mod_p_pow": self.precision if self.exhausted else None}
        return {"valuation": self.valuation, "unit": self.unit, "precision": self.precision}


ZERO = PAdicNumber(INF, 0, 0)


def exhausted_zero(bound: int) -> PAdicNumber:
    return PAdicNumber(INF, 0, bound, exhausted=True)


def unit_inverse(u: int, ctx: PAdicContext) -> int:
    """Inverse of the unit ``u`` modulo ``p**N``."""
    if u % ctx.p == 0:
        raise InvalidArgument(f"{u} is divisible by p = {ctx.p}")
    return pow(u, -1, ctx.modulus)


def padic_from_int(x: int, ctx: PAdicContext) -> PAdicNumber:
    if x == 0:
        return ZERO
    v = _vp_unchecked(x, ctx.p)
    return PAdicNumber(v, (x // ctx.p**v) % ctx.modulus, ctx.N)


def padic_from_rational(r: RationalLike, ctx: PAdicContext) -> PAdicNumber:
    r = as_rational(r)
    if r == 0:
        return ZERO
    p = ctx.p
    a = _vp_unchecked(r.numerator, p)
    b = _vp_unchecked(r.denominator, p)
    num = r.numerator // p**a
    den = r.denominator // p**b
    return PAdicNumber(a - b, num * pow(den, -1, ctx.modulus) % ctx.modulus, ctx.N)


def padic_from_residue(x: int, absolute: int, ctx: PAdicContext) -> PAdicNumber:
    """Element of Z_p known only modulo ``p**absolute``."""
    x %= ctx.p**absolute
    if x == 0:
        return exhausted_zero(absolute)
    v = _vp_unchecked(x, ctx.p)
    prec = min(absolute - v, ctx.N)
    return PAdicNumber(v, (x // ctx.p**v) % ctx.p**prec, prec)


def padic_neg(a: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    if a.is_zero:
        return a
    return PAdicNumber(a.valuation, (-a.unit) % ctx.p**a.precision, a.precision)


def padic_add(a: PAdicNumber, b: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    if a.is_zero and not a.exhausted:
        return b
    if b.is_zero and not b.exhausted:
        return a
    p = ctx.p
    absolute = min(a.absolute_precision, b.absolute_precision)
    live = [x for x in (a, b) if not x.is_zero]
    if not live:
        return exhausted_zero(absolute)
    vmin = min(x.valuation for x in live)
    rel = absolute - vmin
    if rel <= 0:
        return exhausted_zero(absolute)
    mod = p**rel
    s = 0
    for x in live:
        shift = x.valuation - vmin
        if shift < rel:
            s += x.unit * p**shift
    s %= mod
    if s == 0:
        return exhausted_zero(absolute)
    t = _vp_unchecked(s, p)
    prec = min(rel - t, ctx.N)
    return PAdicNumber(vmin + t, (s // p**t) % p**prec, prec)


def padic_sub(a: PAdicNumber, b: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    return padic_add(a, padic_neg(b, ctx), ctx)


def padic_mul(a: PAdicNumber, b: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    if (a.is_zero and not a.exhausted) or (b.is_zero and not b.exhausted):
        return ZERO
    if a.is_zero or b.is_zero:
        bound = 0
        for x in (a, b):
            bound += x.precision if x.is_zero else x.valuation
        return exhausted_zero(bound)
    prec = min(a.precision, b.precision)
    return PAdicNumber(a.valuation + b.valuation, a.unit * b.unit % ctx.p**prec, prec)


def padic_div(a: PAdicNumber, b: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    if b.is_zero:
        if b.exhausted:
            raise PrecisionExhausted("divisor is zero to the working precision")
        raise ZeroDivisionError("p-adic division by zero")
    if a.is_zero:
        return a if not a.exhausted else exhausted_zero(a.precision - b.valuation)
    prec = min(a.precision, b.precision)
    mod = ctx.p**prec
    return PAdicNumber(a.valuation - b.valuation, a.unit * pow(b.unit, -1, mod) % mod, prec)


def padic_valuation(a: PAdicNumber) -> int | float:
    """Valuation, or the known lower bound for an exhausted zero."""
    if a.is_zero:
        return a.precision if a.exhausted else INF
    return a.valuation
