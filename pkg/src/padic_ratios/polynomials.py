"""Integer polynomials in coefficient form and in root-factored form."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from padic_ratios.errors import InvalidArgument
from padic_ratios.padic import PAdicContext, PAdicNumber, padic_from_residue


@dataclass(frozen=True)
class DensePoly:
    """Coefficients with the constant term first; no trailing zeros."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return eval_at(self, x)

    def __mul__(self, other: DensePoly) -> DensePoly:
        return poly_mul(self, other)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs or (0,)) + "]"

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


ONE = DensePoly([1])


def poly_mul(f: DensePoly, g: DensePoly) -> DensePoly:
    if f.is_zero() or g.is_zero():
        return DensePoly()
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return DensePoly(out)


def poly_pow(f: DensePoly, e: int) -> DensePoly:
    result = ONE
    base = f
    while e:
        if e & 1:
            result = poly_mul(result, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    return result


def linear(z: int) -> DensePoly:
    """The monic linear polynomial X - z."""
    return DensePoly([-z, 1])


@dataclass(frozen=True)
class FactoredPoly:
    """``leading * prod (X - z_i)**mu_i * cofactor`` with distinct integer roots."""

    leading: int
    factors: tuple[tuple[int, int], ...]
    cofactor: DensePoly = field(default=ONE)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple((int(z), int(mu)) for z, mu in self.factors))
        if self.leading == 0:
            raise InvalidArgument("leading coefficient must be nonzero")
        roots = [z for z, _ in self.factors]
        if len(set(roots)) != len(roots):
            raise InvalidArgument("roots must be pairwise distinct")
        if any(mu < 1 for _, mu in self.factors):
            raise InvalidArgument("multiplicities must be positive")
        if self.cofactor.is_zero():
            raise InvalidArgument("cofactor must be nonzero")
        for z in roots:
            if eval_at(self.cofactor, z) == 0:
                raise InvalidArgument(f"cofactor vanishes at listed root {z}")

    @property
    def multiplicities(self) -> list[int]:
        return [mu for _, mu in self.factors]

    @property
    def roots(self) -> list[int]:
        return [z for z, _ in self.factors]

    @property
    def degree(self) -> int:
        return sum(self.multiplicities) + self.cofactor.degree

    def __str__(self) -> str:
        parts = [] if self.leading == 1 else [f"{self.leading}*"]
        for z, mu in self.factors:
            lin = "(X)" if z == 0 else f"(X{-z:+d})"
            parts.append(lin if mu == 1 else f"{lin}^{mu}")
        if self.cofactor != ONE:
            parts.append(f"*{self.cofactor}")
        return "".join(parts)


def expand(f: FactoredPoly) -> DensePoly:
    """Coefficient form of a factored polynomial."""
    out = poly_mul(DensePoly([f.leading]), f.cofactor)
    for z, mu in f.factors:
        out = poly_mul(out, poly_pow(linear(z), mu))
    return out


def eval_at(f: DensePoly, x: int) -> int:
    """Exact Horner evaluation at an integer."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def eval_factored(f: FactoredPoly, x: int) -> int:
    acc = f.leading * eval_at(f.cofactor, x)
    for z, mu in f.factors:
        acc *= (x - z) ** mu
    return acc


def eval_padic(f: DensePoly, x: PAdicNumber, ctx: PAdicContext) -> PAdicNumber:
    """Evaluate at a p-adic integer, to the precision with which ``x`` is known."""
    if not x.is_zero and x.valuation < 0:
        raise InvalidArgument("eval_padic needs an argument of valuation >= 0")
    absolute = min(x.absolute_precision, ctx.N)
    mod = ctx.p**absolute
    xr = x.residue(ctx) % mod
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * xr + c) % mod
    return padic_from_residue(acc, absolute, ctx)


def derivative(f: DensePoly) -> DensePoly:
    return DensePoly([i * c for i, c in enumerate(f.coeffs)][1:])


def cofactor_at_root(f: FactoredPoly, i: int) -> tuple[DensePoly, int]:
    """``g_i = f / (X - z_i)**mu_i`` and its (nonzero) value at ``z_i``."""
    if not 0 <= i < len(f.factors):
        raise InvalidArgument(f"factor index {i} out of range")
    rest = FactoredPoly(f.leading, f.factors[:i] + f.factors[i + 1 :], f.cofactor)
    g = expand(rest)
    return g, eval_at(g, f.factors[i][0])


# -- text grammar -------------------------------------------------------------

_INT = r"[+-]?\d+"
_DENSE_RE = re.compile(rf"^\[\s*{_INT}\s*(?:,\s*{_INT}\s*)*\]$")
_FACTOR_RE = re.compile(r"\(\s*X\s*(?:([+-])\s*(\d+))?\s*\)(?:\s*\^\s*(\d+))?")
_LEAD_RE = re.compile(rf"^\s*({_INT})\s*\*")


def parse_dense(text: str) -> DensePoly:
    s = text.strip()
    if not _DENSE_RE.match(s):
        raise InvalidArgument(f"not a dense polynomial: {text!r}")
    return DensePoly(int(c) for c in s[1:-1].split(","))


def parse_factored(text: str) -> FactoredPoly:
    """Parse ``[int '*'] ('(' 'X' [(+|-) uint] ')' ['^' uint])+ ['*' dense]``."""
    s = text.strip()
    leading = 1
    m = _LEAD_RE.match(s)
    if m:
        leading = int(m.group(1))
        s = s[m.end() :].strip()
    cofactor = ONE
    if "[" in s:
        head, _, tail = s.partition("*[")
        if not tail:
            raise InvalidArgument(f"malformed cofactor in {text!r}")
        cofactor = parse_dense("[" + tail)
        s = head.strip()
    mults: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _FACTOR_RE.match(s, pos)
        if not m:
            raise InvalidArgument(f"cannot parse factor at {s[pos:]!r} in {text!r}")
        sign, mag, exp = m.groups()
        # (X + c) has root -c
        z = 0 if mag is None else (-int(mag) if sign == "+" else int(mag))
        mu = int(exp) if exp else 1
        if mu < 1:
            raise InvalidArgument("exponents must be positive")
        mults[z] = mults.get(z, 0) + mu
        pos = m.end()
    if not mults:
        raise InvalidArgument(f"no linear factors in {text!r}")
    return FactoredPoly(leading, tuple(mults.items()), cofactor)


def parse_poly(text: str) -> DensePoly | FactoredPoly:
    """Dense form for ``[...]`` input, factored form otherwise."""
    if text.strip().startswith("["):
        return parse_dense(text)
    return parse_factored(text)
