"""Brute-force ground truth, deliberately independent of the decision code.

Nothing here imports the Waring layering, the Hensel machinery or the
p-adic number type; valuations are recomputed with plain integer loops.
Every scan has a budget and reports exhaustion instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from padic_ratios.errors import BudgetExceeded, InvalidArgument


def _val(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def enumerate_power_sums(m: int, n: int, x_bound: int, budget: int = 10**7) -> list[int]:
    """Sorted distinct values of x_1^n + ... + x_m^n with 0 <= x_i <= x_bound."""
    if m < 1 or n < 1 or x_bound < 0:
        raise InvalidArgument("need m, n >= 1 and x_bound >= 0")
    powers = sorted({x**n for x in range(x_bound + 1)})
    sums = [0]
    for _ in range(m):
        if len(sums) * len(powers) > budget:
            raise BudgetExceeded("power-sum enumeration exceeds budget", needed=len(sums) * len(powers), budget=budget)
        merged: set[int] = set()
        for s in sums:
            for q in powers:
                merged.add(s + q)
        sums = sorted(merged)
    return sums


def power_sums_up_to(m: int, n: int, value_bound: int, budget: int = 10**7) -> list[int]:
    """Power sums built from bases with x^n <= value_bound."""
    x = 0
    while (x + 1) ** n <= value_bound:
        x += 1
    return enumerate_power_sums(m, n, x, budget)


@dataclass(frozen=True)
class BallHit:
    pair: tuple[int, int] | None
    scanned: int
    exhausted: bool

    @property
    def found(self) -> bool:
        return self.pair is not None


def ratio_ball_hit(
    A: list[int], r: Fraction | int, p: int, u: int, budget: int = 10**8
) -> BallHit:
    """First (a, b), scanning b then a in ascending order, with v_p(a/b - r) > u.

    For each b the admissible a form one residue class, so each b costs a
    dictionary lookup rather than a pass over A.
    """
    r = Fraction(r)
    c, d = r.numerator, r.denominator
    e = _val(d, p)
    d_unit = d // p**e
    avals = sorted(set(A))
    bvals = [b for b in avals if b != 0]
    scanned = 0
    buckets: dict[int, dict[int, int]] = {}
    for b in bvals:
        scanned += 1
        if scanned > budget:
            return BallHit(None, scanned - 1, True)
        # v(a d - b c) > u + v(b) + v(d)  <=>  a d = b c  mod p^T
        T = u + _val(b, p) + e + 1
        if T <= 0:
            return BallHit((avals[0], b), scanned, False)
        bc = b * c
        if e and bc % p**e:
            continue
        level = T - e
        if level <= 0:
            return BallHit((avals[0], b), scanned, False)
        mod = p**level
        target = (bc // p**e) * pow(d_unit, -1, mod) % mod
        table = buckets.get(level)
        if table is None:
            table = {}
            for a in avals:
                table.setdefault(a % mod, a)
            buckets[level] = table
        a = table.get(target)
        if a is not None:
            return BallHit((a, b), scanned, False)
    return BallHit(None, scanned, False)


def ratio_ball_hit_naive(A: list[int], r: Fraction | int, p: int, u: int) -> tuple[int, int] | None:
    """Plain double loop with exact rationals; the reference for ``ratio_ball_hit``."""
    r = Fraction(r)
    avals = sorted(set(A))
    for b in avals:
        if b == 0:
            continue
        for a in avals:
            diff = Fraction(a, b) - r
            if diff == 0 or _val(diff.numerator, p) - _val(diff.denominator, p) > u:
                return a, b
    return None


@dataclass(frozen=True)
class BruteTheta:
    value: int | None
    certificate: tuple[int, ...] | None
    g_max: int


def brute_force_theta(n: int, b: int, g_max: int, budget: int = 10**7) -> BruteTheta:
    """theta(n, b) by depth-first search over nondecreasing tuples of power residues.

    Dead states (terms left, residue still needed, smallest allowed index)
    are remembered so each is explored once; ``budget`` bounds node visits.
    """
    if n < 1 or b < 2 or g_max < 1:
        raise InvalidArgument("need n >= 1, b >= 2, g_max >= 1")
    base_of: dict[int, int] = {}
    unit_base_of: dict[int, int] = {}
    for x in range(b):
        v = pow(x, n, b)
        base_of.setdefault(v, x)
        if gcd(x, b) == 1:
            unit_base_of.setdefault(v, x)
    powers = sorted(base_of)
    unit_powers = sorted(unit_base_of)
    dead: set[tuple[int, int, int]] = set()
    visits = 0

    def search(left: int, need: int, start: int) -> list[int] | None:
        nonlocal visits
        if left == 0:
            return [] if need == 0 else None
        key = (left, need, start)
        if key in dead:
            return None
        visits += 1
        if visits > budget:
            raise BudgetExceeded("brute-force theta exceeds budget", needed=visits, budget=budget)
        for idx in range(start, len(powers)):
            tail = search(left - 1, (need - powers[idx]) % b, idx)
            if tail is not None:
                return [powers[idx], *tail]
        dead.add(key)
        return None

    for g in range(1, g_max + 1):
        for first in unit_powers:
            rest = search(g - 1, (-first) % b, 0)
            if rest is not None:
                cert = (unit_base_of[first], *(base_of[v] for v in rest))
                return BruteTheta(g, cert, g_max)
    return BruteTheta(None, None, g_max)


def quotient_valuation_classes(values: list[int], p: int, n: int) -> set[int]:
    """Centred residues mod n of v_p(a) - v_p(b) over nonzero a, b in ``values``."""
    vals = {_val(a, p) for a in values if a}
    out = set()
    for x in vals:
        for y in vals:
            r = (x - y) % n
            out.add(r - n if 2 * r > n else r)
    return out
