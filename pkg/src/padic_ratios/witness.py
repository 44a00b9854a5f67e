"""Explicit approximation witnesses x1, x2 with f(x1)/f(x2) close to a target.

Given zeros z1, z2 of f with coprime multiplicities mu1, mu2, the points
``x_i = y_i p**k_i + z_i`` with ``k1 mu1 - k2 mu2 = v_p(r)``, ``y_i = s**h_i``,
``h1 mu1 - h2 mu2 = 1`` and ``s = p**-v_p(r) r G`` give
``f(x1)/f(x2) = r G g1(x1)/g2(x2)``, which tends to r as k1, k2 grow.
Every returned pair is re-checked with exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from padic_ratios.denseness import SPECIAL_2ADIC, Reason, Status, decide_power_sum
from padic_ratios.errors import InvalidArgument, PrecisionExhausted
from padic_ratios.padic import (
    INF,
    PAdicContext,
    RationalLike,
    as_rational,
    vp_int,
    vp_rational,
)
from padic_ratios.polynomials import DensePoly, FactoredPoly, cofactor_at_root, eval_at, eval_factored
from padic_ratios.roots import newton_root

# doubling rounds for the shift K before giving up
_MAX_ROUNDS = 24


def bezout_exponents(mu1: int, mu2: int, target: int, min_k: int) -> tuple[int, int]:
    """Least (k1, k2), both >= min_k, with k1*mu1 - k2*mu2 = target."""
    if mu1 < 1 or mu2 < 1:
        raise InvalidArgument("multiplicities must be positive")
    if gcd(mu1, mu2) != 1:
        raise InvalidArgument(f"multiplicities {mu1} and {mu2} are not coprime")
    cls = target * pow(mu1, -1, mu2) % mu2 if mu2 > 1 else 0
    lo = max(min_k, -((-(min_k * mu2 + target)) // mu1))
    k1 = lo + (cls - lo) % mu2
    k2, rem = divmod(k1 * mu1 - target, mu2)
    assert rem == 0 and k2 >= min_k
    return k1, k2


def padic_valuation_of(x: Fraction, p: int) -> int | float:
    return INF if x == 0 else vp_rational(x, p)


def _positive_rep(x: int, mod: int) -> int:
    x %= mod
    return x if x > 0 else mod


@dataclass(frozen=True)
class WitnessPair:
    x1: int
    x2: int
    p: int
    N: int
    achieved_exponent: int | float
    u: int
    r: Fraction
    trace: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "x1": self.x1,
            "x2": self.x2,
            "p": self.p,
            "N": self.N,
            "r": str(self.r),
            "u": self.u,
            "exponent": "inf" if self.achieved_exponent == INF else self.achieved_exponent,
            "trace": self.trace,
        }


def quotient_exponent(f: FactoredPoly | DensePoly, x1: int, x2: int, r: RationalLike, p: int) -> int | float:
    """Exact v_p(f(x1)/f(x2) - r)."""
    ev = eval_factored if isinstance(f, FactoredPoly) else eval_at
    den = ev(f, x2)
    if den == 0:
        raise InvalidArgument("f(x2) = 0")
    return padic_valuation_of(Fraction(ev(f, x1), den) - as_rational(r), p)


def approximation_witness(
    f: FactoredPoly, i: int, j: int, r: RationalLike, u: int, ctx: PAdicContext
) -> WitnessPair:
    """Positive integers x1, x2 with v_p(f(x1)/f(x2) - r) > u."""
    r = as_rational(r)
    if r == 0:
        raise InvalidArgument("target r must be nonzero")
    p, N = ctx.p, ctx.N
    mu1, mu2 = f.factors[i][1], f.factors[j][1]
    if gcd(mu1, mu2) != 1:
        raise InvalidArgument(f"multiplicities {mu1}, {mu2} are not coprime")
    g1, g1z = cofactor_at_root(f, i)
    g2, g2z = cofactor_at_root(f, j)
    swapped = vp_int(g1z, p) > vp_int(g2z, p)
    if swapped:
        i, j, mu1, mu2, g1, g2, g1z, g2z = j, i, mu2, mu1, g2, g1, g2z, g1z
    z1, z2 = f.factors[i][0], f.factors[j][0]
    G = Fraction(g2z, g1z)
    vr = vp_rational(r, p)
    h1, h2 = bezout_exponents(mu1, mu2, 1, 0)
    s = r * G / Fraction(p) ** vr
    vs = vp_rational(s, p)
    modN = p**N
    s_res = s.numerator * pow(s.denominator, -1, modN) % modN
    y1, y2 = pow(s_res, h1, modN), pow(s_res, h2, modN)
    needed = max(u - vr, 0) + max(h1, h2) * vs + vp_int(g2z, p) + 2
    if y1 == 0 or y2 == 0:
        raise PrecisionExhausted(f"precision N = {N} truncates y_i to zero", needed=needed)
    k1, k2 = bezout_exponents(mu1, mu2, vr, 1)
    # closeness of the cofactor ratio to 1; the floor at 0 keeps it a unit
    gate = max(u - vr, 0)
    K = 0
    for _ in range(_MAX_ROUNDS):
        a1, a2 = k1 + K * mu2, k2 + K * mu1
        x1 = _positive_rep(y1 * p**a1 + z1, p ** (N + a1))
        x2 = _positive_rep(y2 * p**a2 + z2, p ** (N + a2))
        g2x = eval_at(g2, x2)
        if g2x != 0:
            close = padic_valuation_of(G * Fraction(eval_at(g1, x1), g2x) - 1, p)
            if close > gate:
                exponent = quotient_exponent(f, x1, x2, r, p)
                if exponent > u:
                    trace = {
                        "k1": a1,
                        "k2": a2,
                        "h1": h1,
                        "h2": h2,
                        "mu1": mu1,
                        "mu2": mu2,
                        "roots": [z1, z2],
                        "indices": [i, j],
                        "swapped": swapped,
                        "K": K,
                        "s": s_res,
                        "G": str(G),
                    }
                    return WitnessPair(x1, x2, p, N, exponent, u, r, trace)
                if a1 > N + u + abs(vr) and a2 > N + u + abs(vr):
                    break  # further shifts cannot repair truncation error in y_i
        K = 1 if K == 0 else 2 * K
    raise PrecisionExhausted(f"could not certify exponent > {u} at precision N = {N}", needed=max(needed, N + 1))


@dataclass(frozen=True)
class PowerSumWitness:
    a: tuple[int, ...]
    b: tuple[int, ...]
    n: int
    p: int
    r: Fraction
    u: int
    achieved_exponent: int | float
    trace: dict = field(default_factory=dict)

    def quotient(self) -> Fraction:
        return Fraction(sum(x**self.n for x in self.a), sum(x**self.n for x in self.b))

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "m": len(self.a),
            "n": self.n,
            "p": self.p,
            "r": str(self.r),
            "u": self.u,
            "exponent": "inf" if self.achieved_exponent == INF else self.achieved_exponent,
            "trace": self.trace,
        }


def power_sum_witness(m: int, n: int, p: int, r: RationalLike, u: int, ctx: PAdicContext | None = None) -> PowerSumWitness:
    """Tuples a, b of m nonnegative integers with v_p(sum a_i^n / sum b_i^n - r) > u.

    Uses the theta certificate (x_1..x_g): f(X) = X^n + x_2^n + ... + x_g^n
    has a simple root z in Z_p, and the pair construction runs at z1 = z2 = z
    with mu1 = mu2 = 1.
    """
    r = as_rational(r)
    if r == 0:
        raise InvalidArgument("target r must be nonzero")
    if p == 2 and n in SPECIAL_2ADIC:
        raise InvalidArgument(f"(n, p) = ({n}, 2) is decided by the 2-adic table; witnesses unsupported")
    verdict = decide_power_sum(m, n, p)
    if verdict.status is not Status.DENSE or verdict.reason is not Reason.THETA_THRESHOLD:
        raise InvalidArgument(f"R(S_{m}^{n}) is not certified dense in Q_{p} via theta")
    N = ctx.N if ctx is not None else 64
    xs = verdict.certificate["tuple"]
    k = verdict.certificate["k"]
    rest = list(xs[1:]) + [0] * (m - len(xs))
    c = sum(x**n for x in rest)
    f = DensePoly([c] + [0] * (n - 1) + [1])
    vr = vp_rational(r, p)
    s = r / Fraction(p) ** vr
    k1, k2 = bezout_exponents(1, 1, vr, 1)
    K = 0
    for _ in range(_MAX_ROUNDS):
        a1, a2 = k1 + K, k2 + K
        # precision of the lifted root must cover the shift plus the target gap
        L = max(N, a1, a2) + u + abs(vr) + 2 * k + 4
        modL = p**L
        z = newton_root(f, xs[0], p, L)
        s_res = s.numerator * pow(s.denominator, -1, modL) % modL
        X1 = _positive_rep(s_res * p**a1 + z, modL)
        X2 = _positive_rep(p**a2 + z, modL)
        A = (X1, *rest)
        B = (X2, *rest)
        q = Fraction(sum(x**n for x in A), sum(x**n for x in B))
        exponent = padic_valuation_of(q - r, p)
        if exponent > u:
            trace = {
                "k1": a1,
                "k2": a2,
                "h1": 1,
                "h2": 0,
                "K": K,
                "root_residue": z,
                "root_precision": L,
                "theta_tuple": list(xs),
            }
            return PowerSumWitness(A, B, n, p, r, u, exponent, trace)
        K = 1 if K == 0 else 2 * K
    raise PrecisionExhausted(f"could not certify exponent > {u}")
