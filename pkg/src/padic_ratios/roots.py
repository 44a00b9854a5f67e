"""Zeros of integer polynomials in Z_p: residue search, Hensel lifting, degree <= 2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from padic_ratios.errors import BudgetExceeded, InvalidArgument, PrecisionExhausted
from padic_ratios.padic import (
    INF,
    PAdicContext,
    PAdicNumber,
    _vp_unchecked,
    padic_from_int,
    padic_from_rational,
    padic_from_residue,
    require_prime,
    vp_int,
)
from padic_ratios.polynomials import DensePoly, derivative, eval_at

DEFAULT_BUDGET = 10**7


def _check_budget(p: int, level: int, budget: int) -> None:
    size = p**level
    if size > budget:
        raise BudgetExceeded(f"residue scan mod {p}^{level} exceeds budget {budget}", needed=size, budget=budget)


def _roots_mod(f: DensePoly, p: int, level: int, budget: int) -> list[int]:
    """All residues r in [0, p**level) with f(r) = 0 mod p**level, by lifting level by level."""
    _check_budget(p, level, budget)
    layer = [0]
    mod = 1
    for _ in range(level):
        nxt = []
        new_mod = mod * p
        for r in layer:
            for t in range(p):
                c = r + t * mod
                if eval_at(f, c) % new_mod == 0:
                    nxt.append(c)
        layer, mod = nxt, new_mod
        if not layer:
            break
    return sorted(layer)


def has_zero_mod(f: DensePoly, p: int, M: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether f has a root modulo p**M.

    A "no" certifies that f has no zero in Z_p; a "yes" alone proves nothing.
    """
    require_prime(p)
    if M < 1:
        raise InvalidArgument("level M must be positive")
    return bool(_roots_mod(f, p, M, budget))


@dataclass(frozen=True)
class HenselSeed:
    """A residue ``a0`` with v_p(f(a0)) > 2 v_p(f'(a0)), found at level ``modulus_exponent``."""

    a0: int
    modulus_exponent: int
    f_valuation: int | float = field(default=None, compare=False)
    df_valuation: int = field(default=None, compare=False)

    def to_json(self) -> dict:
        fv = self.f_valuation
        return {
            "a0": self.a0,
            "level": self.modulus_exponent,
            "vp_f": "inf" if fv == INF else fv,
            "vp_df": self.df_valuation,
        }


def hensel_gap(f: DensePoly, a: int, p: int) -> tuple[int | float, int | float]:
    """Exact (v_p(f(a)), v_p(f'(a)))."""
    return vp_int(eval_at(f, a), p), vp_int(eval_at(derivative(f), a), p)


def make_seed(f: DensePoly, p: int, a0: int, level: int) -> HenselSeed:
    fv, dv = hensel_gap(f, a0, p)
    if not fv > 2 * dv:
        raise InvalidArgument(f"residue {a0} does not satisfy the Hensel gap for p = {p}")
    return HenselSeed(a0, level, fv, dv)


def find_hensel_seed(f: DensePoly, p: int, e: int, budget: int = DEFAULT_BUDGET) -> HenselSeed | None:
    """Least residue a0 in [0, p**e) whose class mod p**e forces the Hensel gap.

    The gap is witnessed at level e when, with d = v_p(f'(a0)), we have
    2d + 1 <= e and f(a0) = 0 mod p**(2d+1); both then depend only on a0 mod p**e.
    """
    require_prime(p)
    if e < 1:
        raise InvalidArgument("level e must be positive")
    _check_budget(p, e, budget)
    df = derivative(f)
    best = None
    layer = [0]
    mod = 1
    for j in range(1, e + 1):
        nxt = []
        new_mod = mod * p
        for r in layer:
            for t in range(p):
                c = r + t * mod
                if best is not None and c >= best:
                    continue
                if eval_at(f, c) % new_mod:
                    continue
                dfc = eval_at(df, c)
                d = _vp_unchecked(dfc, p) if dfc else INF
                if 2 * d + 1 <= j:
                    # every lift qualifies; c is the least of them
                    best = c if best is None else min(best, c)
                else:
                    nxt.append(c)
        layer, mod = nxt, new_mod
        if not layer:
            break
    if best is None:
        return None
    return make_seed(f, p, best, e)


def newton_root(f: DensePoly, a0: int, p: int, N: int) -> int:
    """Integer x in [0, p**N) with f(x) = 0 mod p**N, x = a0 near the seed.

    Raises when the iteration cap ceil(log2 N) + 4 is hit.
    """
    fv, d = hensel_gap(f, a0, p)
    if not fv > 2 * d:
        raise InvalidArgument(f"seed {a0} violates the Hensel gap")
    if fv >= N:
        return a0 % p**N
    work = p ** (N + d)
    pd = p**d
    df = derivative(f)
    x = a0 % work
    cap = math.ceil(math.log2(max(N, 2))) + 4
    for _ in range(cap):
        fx = eval_at(f, x)
        if fx % p**N == 0:
            return x % p**N
        dfx = eval_at(df, x)
        # fx is divisible by p**(2d+1), dfx exactly by p**d
        step = (fx // pd) * pow(dfx // pd, -1, work) % work
        x = (x - step) % work
    if eval_at(f, x) % p**N == 0:
        return x % p**N
    raise PrecisionExhausted(f"Newton iteration did not reach precision {N} within {cap} steps")


def hensel_lift(f: DensePoly, seed: HenselSeed, ctx: PAdicContext) -> PAdicNumber:
    """Lift a seed to a simple root of f in Z_p, known modulo p**N."""
    fv, _ = hensel_gap(f, seed.a0, ctx.p)
    if fv == INF:
        return padic_from_int(seed.a0, ctx)
    x = newton_root(f, seed.a0, ctx.p, ctx.N)
    return padic_from_residue(x, ctx.N, ctx)


class ZeroStatus(Enum):
    NO = "no"
    GAP = "yes-with-gap"
    INCONCLUSIVE = "inconclusive"


def zero_status(f: DensePoly, p: int, M: int, budget: int = DEFAULT_BUDGET) -> tuple[ZeroStatus, object]:
    """Three-valued zero check at level M: no root, Hensel seed found, or neither."""
    if not has_zero_mod(f, p, M, budget):
        return ZeroStatus.NO, M
    seed = find_hensel_seed(f, p, M, budget)
    if seed is not None:
        return ZeroStatus.GAP, seed
    return ZeroStatus.INCONCLUSIVE, M


# -- degree <= 2 ---------------------------------------------------------------


def sqrt_mod_prime(u: int, p: int) -> int:
    """A square root of the quadratic residue u modulo the odd prime p (Tonelli-Shanks)."""
    u %= p
    if u == 0:
        return 0
    if pow(u, (p - 1) // 2, p) != 1:
        raise InvalidArgument(f"{u} is not a square modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(u, q, p), pow(u, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def is_padic_square(D: int, p: int) -> bool:
    """Whether the nonzero integer D is a square in Q_p."""
    v = vp_int(D, p)
    if v % 2:
        return False
    u = D // p**v
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def sqrt_padic_unit(u: int, p: int, L: int) -> int:
    """Square root of the square unit u modulo p**L."""
    f = DensePoly([-u, 0, 1])
    seed = 1 if p == 2 else sqrt_mod_prime(u, p)
    return newton_root(f, seed, p, L)


@dataclass(frozen=True)
class SimpleZero:
    found: bool
    root: PAdicNumber | None
    reason: str
    discriminant: int | None = None
    seed: HenselSeed | None = None


def simple_zero_deg_le2(f: DensePoly, p: int, precision: int = 32) -> SimpleZero:
    """Decide whether a polynomial of degree 1 or 2 has a simple zero in Z_p."""
    require_prime(p)
    ctx = PAdicContext(p, precision)
    if f.degree == 1:
        b, a = f.coeffs
        if vp_int(b, p) >= vp_int(a, p):
            root = Fraction(-b, a)
            level = 2 * vp_int(a, p) + 1
            a0 = root.numerator * pow(root.denominator, -1, p**level) % p**level
            seed = make_seed(f, p, a0, level)
            return SimpleZero(True, padic_from_rational(root, ctx), "simple-zero", None, seed)
        return SimpleZero(False, None, "no-zero-in-Zp")
    if f.degree != 2:
        raise InvalidArgument("simple_zero_deg_le2 needs degree 1 or 2")
    c, b, a = f.coeffs
    D = b * b - 4 * a * c
    if D == 0:
        # f = a (X - z)^2 with z = -b/2a
        z_val = vp_int(b, p) - vp_int(2 * a, p) if b else INF
        reason = "double-root" if z_val >= 0 else "no-zero-in-Zp"
        return SimpleZero(False, None, reason, D)
    if not is_padic_square(D, p):
        return SimpleZero(False, None, "no-zero-in-Zp", D)
    vD = vp_int(D, p)
    t = vD // 2
    u = D // p**vD
    v2a = vp_int(2 * a, p)
    L = v2a + precision + 2
    s = sqrt_padic_unit(u, p, L)
    mod = p ** (t + L)
    for sign in (1, -1):
        w = (-b + sign * p**t * s) % mod
        if w % p**v2a == 0:
            unit_2a = (2 * a) // p**v2a
            known = t + L - v2a
            root_res = (w // p**v2a) * pow(unit_2a, -1, p**known) % p**known
            root = padic_from_residue(root_res, min(known, precision), ctx)
            level = 2 * t + 1
            seed = make_seed(f, p, root_res % p**level, level)
            return SimpleZero(True, root, "simple-zero", D, seed)
    return SimpleZero(False, None, "no-zero-in-Zp", D)

