"""Waring numbers modulo b: gamma(n, b), theta(n, b) and the -1 test.

Reachable residue sets are Python ints used as bitsets of length b, so a
sumset step ``S + R (mod b)`` is one rotate-and-or per element of R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from padic_ratios.errors import BudgetExceeded, InvalidArgument
from padic_ratios.padic import require_prime, vp_int

DEFAULT_BUDGET = 10**7


def nth_power_residues(n: int, b: int) -> frozenset[int]:
    """``{x**n mod b : x in Z/b}``."""
    _check(n, b)
    return frozenset(pow(x, n, b) for x in range(b))


def unit_nth_power_residues(n: int, b: int) -> frozenset[int]:
    """nth powers of the units of Z/b."""
    _check(n, b)
    return frozenset(pow(x, n, b) for x in range(b) if gcd(x, b) == 1)


def _check(n: int, b: int) -> None:
    if n < 1:
        raise InvalidArgument("exponent n must be >= 1")
    if b < 2:
        raise InvalidArgument("modulus b must be >= 2")


def _bits(residues) -> int:
    out = 0
    for r in residues:
        out |= 1 << r
    return out


def _members(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def _sumset(S: int, R: list[int], b: int, mask: int) -> int:
    out = 0
    for r in R:
        out |= ((S << r) | (S >> (b - r))) & mask
    return out


@dataclass(frozen=True)
class WaringResult:
    """Outcome of a gamma or theta computation.

    ``value`` is None when no g <= cap works; for gamma, ``unreached`` then
    lists the residues missing from the last layer.
    """

    kind: str
    n: int
    b: int
    value: int | None
    cap: int
    certificate: tuple[int, ...] | None = None
    unreached: tuple[int, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.value is not None

    def verify(self) -> bool:
        """Re-check the certificate by direct modular evaluation."""
        if self.kind != "theta" or self.certificate is None:
            return self.found
        xs = self.certificate
        return (
            len(xs) == self.value
            and gcd(xs[0], self.b) == 1
            and sum(pow(x, self.n, self.b) for x in xs) % self.b == 0
        )

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "b": self.b,
            "value": self.value,
            "found": self.found,
            "cap": self.cap,
        }
        if self.certificate is not None:
            out["certificate"] = list(self.certificate)
        if not self.found and self.unreached:
            out["unreached"] = list(self.unreached)
        return out


class _Layers:
    """S_0 = {0}, S_{g+1} = S_g + P where P are the nth power residues."""

    def __init__(self, n: int, b: int):
        self.n, self.b = n, b
        self.mask = (1 << b) - 1
        self.powtab = [pow(x, n, b) for x in range(b)]
        self.powers = sorted(set(self.powtab))
        self.layers = [1]

    def get(self, g: int) -> int:
        while len(self.layers) <= g:
            self.layers.append(_sumset(self.layers[-1], self.powers, self.b, self.mask))
        return self.layers[g]

    def decompose(self, target: int, count: int, first_unit: bool = False) -> tuple[int, ...]:
        """Lexicographically least (x_1..x_count) in [0, b) with sum x_i**n = target."""
        xs = []
        t = target % self.b
        for pos in range(count):
            rest = self.get(count - pos - 1)
            for x in range(self.b):
                if pos == 0 and first_unit and gcd(x, self.b) != 1:
                    continue
                if rest >> ((t - self.powtab[x]) % self.b) & 1:
                    xs.append(x)
                    t = (t - self.powtab[x]) % self.b
                    break
            else:  # pragma: no cover - layers guarantee a hit
                raise AssertionError("decomposition failed")
        return tuple(xs)


@lru_cache(maxsize=512)
def _layers(n: int, b: int) -> _Layers:
    return _Layers(n, b)


@lru_cache(maxsize=4096)
def gamma(n: int, b: int, cap: int | None = None) -> WaringResult:
    """Least g such that every residue mod b is a sum of g nth powers."""
    _check(n, b)
    cap = b if cap is None else cap
    if cap < 1:
        raise InvalidArgument("cap must be >= 1")
    lay = _layers(n, b)
    for g in range(1, cap + 1):
        if lay.get(g) == lay.mask:
            return WaringResult("gamma", n, b, g, cap)
        if g > 1 and lay.get(g) == lay.get(g - 1):
            break  # layers stabilised below the full set
    missing = lay.mask & ~lay.get(min(cap, len(lay.layers) - 1))
    return WaringResult("gamma", n, b, None, cap, unreached=tuple(_members(missing)))


def gamma_witness(n: int, b: int, a: int, g: int | None = None) -> tuple[int, ...]:
    """Lexicographically least g-tuple whose nth powers sum to a mod b."""
    if g is None:
        res = gamma(n, b)
        if not res.found:
            raise InvalidArgument(f"gamma({n}, {b}) not found within cap")
        g = res.value
    lay = _layers(n, b)
    if not lay.get(g) >> (a % b) & 1:
        raise InvalidArgument(f"{a} is not a sum of {g} {n}th powers mod {b}")
    return lay.decompose(a, g)


@lru_cache(maxsize=4096)
def theta(n: int, b: int, cap: int | None = None) -> WaringResult:
    """Least g with x_1**n + ... + x_g**n = 0 mod b and x_1 coprime to b.

    U_1 is the set of unit nth powers and U_{g+1} = U_g + P.  The
    certificate is the lexicographically least tuple of minimal length.
    """
    _check(n, b)
    cap = b if cap is None else cap
    if cap < 1:
        raise InvalidArgument("cap must be >= 1")
    lay = _layers(n, b)
    units = sorted(unit_nth_power_residues(n, b))
    for g in range(1, cap + 1):
        # U_g = U_1 + S_{g-1}
        U = _sumset(lay.get(g - 1), units, b, lay.mask)
        if U & 1:
            cert = lay.decompose(0, g, first_unit=True)
            return WaringResult("theta", n, b, g, cap, cert)
    return WaringResult("theta", n, b, None, cap)


@dataclass(frozen=True)
class Neg1Result:
    answer: bool
    witness: int | None
    modulus: int
    k: int

    def to_json(self) -> dict:
        return {"answer": self.answer, "witness": self.witness, "modulus": self.modulus, "k": self.k}


def is_neg1_nth_power(n: int, p: int, k: int | None = None, budget: int = DEFAULT_BUDGET) -> Neg1Result:
    """Whether -1 is an nth power modulo p**(2k+1), with k = v_p(n) by default."""
    if n < 2:
        raise InvalidArgument("n must be >= 2")
    require_prime(p)
    if k is None:
        k = vp_int(n, p)
    q = p ** (2 * k + 1)
    if q > budget:
        raise BudgetExceeded(f"exhaustive scan mod {q} exceeds budget {budget}", needed=q, budget=budget)
    for x in range(1, q):
        if x % p and pow(x, n, q) == q - 1:
            return Neg1Result(True, x, q, k)
    return Neg1Result(False, None, q, k)
