"""Decision procedures for denseness of quotient sets in Q_p.

Every Dense or NotDense verdict carries a certificate that ``verify_verdict``
can re-check; inputs outside the hypotheses of the underlying theorems give
Unknown rather than an extrapolated answer.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from padic_ratios.errors import BudgetExceeded, InvalidArgument, PrecisionExhausted
from padic_ratios.padic import (
    PAdicContext,
    PAdicNumber,
    RationalLike,
    _vp_unchecked,
    as_rational,
    centered_mod,
    require_prime,
    vp_int,
    vp_rational,
)
from padic_ratios.polynomials import DensePoly, FactoredPoly, eval_at, expand, parse_dense
from padic_ratios.roots import (
    DEFAULT_BUDGET,
    ZeroStatus,
    has_zero_mod,
    hensel_gap,
    simple_zero_deg_le2,
    zero_status,
)
from padic_ratios.waring import is_neg1_nth_power, theta

# Dense exactly from these m on, for p = 2.
SPECIAL_2ADIC = {2: 3, 4: 8, 8: 16, 16: 64}
_SPECIAL_LABEL = {2: "1.7(c)", 4: "1.7(d)", 8: "1.7(e)", 16: "1.7(f)"}

THETA_MODULUS_BUDGET = 10**7


class Status(str, Enum):
    DENSE = "Dense"
    NOT_DENSE = "NotDense"
    UNKNOWN = "Unknown"


class Reason(str, Enum):
    THETA_THRESHOLD = "theta-threshold"
    SPECIAL_2ADIC = "special-2adic-threshold"
    SIMPLE_ZERO = "simple-zero"
    GCD_MULTIPLICITY = "gcd-multiplicity"
    MISSING_VALUATION_CLASS = "missing-valuation-class"
    NO_ZERO = "no-zero-in-Zp"
    OUT_OF_SCOPE = "out-of-theorem-scope"


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: Reason
    certificate: dict
    inputs: dict
    theorem: str

    @property
    def dense(self) -> bool:
        return self.status is Status.DENSE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "reason": self.reason.value,
            "certificate": self.certificate,
            "inputs": self.inputs,
            "theorem": self.theorem,
        }


def _check_mn(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 2 or n < 2:
        raise InvalidArgument("m and n must be integers >= 2")


# -- sums of powers -------------------------------------------------------------


def decide_power_sum(m: int, n: int, p: int, cap: int | None = None) -> Verdict:
    """Denseness of R(S_m^n) in Q_p."""
    _check_mn(m, n)
    require_prime(p)
    inputs = {"m": m, "n": n, "p": p}
    if p == 2 and n in SPECIAL_2ADIC:
        return _special_2adic(m, n, inputs)
    k = vp_int(n, p)
    b = p ** (2 * k + 1)
    if b > THETA_MODULUS_BUDGET:
        raise BudgetExceeded(f"theta modulus {b} exceeds budget", needed=b, budget=THETA_MODULUS_BUDGET)
    res = theta(n, b, cap)
    if not res.found:
        return Verdict(
            Status.UNKNOWN,
            Reason.OUT_OF_SCOPE,
            {"failed": f"theta({n}, {b}) not found within cap {res.cap}", "modulus": b},
            inputs,
            "1.7",
        )
    if m >= res.value:
        return Verdict(
            Status.DENSE,
            Reason.THETA_THRESHOLD,
            {"theta": res.value, "modulus": b, "k": k, "tuple": list(res.certificate)},
            inputs,
            "1.7(a)",
        )
    # valuations of quotients lie in the centred classes -2k..2k mod n, and 4k+1 < n
    if not 4 * k + 1 < n:
        raise AssertionError(f"expected 4k+1 < n for (n, p) = ({n}, {p})")
    return Verdict(
        Status.NOT_DENSE,
        Reason.MISSING_VALUATION_CLASS,
        {
            "theta": res.value,
            "modulus": b,
            "k": k,
            "n": n,
            "allowed_classes": list(range(-2 * k, 2 * k + 1)),
            "missing_class": 2 * k + 1,
        },
        inputs,
        "1.7(b)",
    )


def _special_2adic(m: int, n: int, inputs: dict) -> Verdict:
    threshold = SPECIAL_2ADIC[n]
    label = _SPECIAL_LABEL[n]
    cert: dict = {"threshold": threshold, "n": n}
    if m >= threshold:
        if n == 16:
            cert["tuple"] = [5] + [1] * 63
            cert["modulus"] = 2**9
        elif n in (4, 8):
            cert["closure"] = f"T_{threshold}^{n}"
        return Verdict(Status.DENSE, Reason.SPECIAL_2ADIC, cert, inputs, label)
    if n == 2:
        # odd part of a nonzero x^2 + y^2 is 1 mod 4, so 3 + 4Z_2 is missed
        cert["excluded_ball"] = {"center": 3, "radius_exponent": 2}
    elif n == 4:
        cert["non_member"] = 15
        cert["closure"] = "T_7^4"
    else:
        top = max(m, 1).bit_length() - 1
        cert["allowed_classes"] = list(range(-top, top + 1))
        cert["missing_class"] = top + 1
    return Verdict(Status.NOT_DENSE, Reason.SPECIAL_2ADIC, cert, inputs, label)


def decide_s2(n: int, p: int) -> Verdict:
    """Denseness of R(S_2^n): decided by whether -1 is an nth power mod p^(2k+1)."""
    if not isinstance(n, int) or n < 2:
        raise InvalidArgument("n must be an integer >= 2")
    require_prime(p)
    res = is_neg1_nth_power(n, p)
    inputs = {"m": 2, "n": n, "p": p}
    cert = {"modulus": res.modulus, "k": res.k, "witness": res.witness}
    if res.answer:
        verdict = Verdict(Status.DENSE, Reason.THETA_THRESHOLD, cert, inputs, "1.9")
    elif p == 2 and n in SPECIAL_2ADIC:
        verdict = Verdict(Status.NOT_DENSE, Reason.SPECIAL_2ADIC, cert, inputs, "1.9")
    else:
        k = res.k
        cert.update(allowed_classes=list(range(-2 * k, 2 * k + 1)), missing_class=2 * k + 1, n=n)
        verdict = Verdict(Status.NOT_DENSE, Reason.MISSING_VALUATION_CLASS, cert, inputs, "1.9")
    other = decide_power_sum(2, n, p)
    if other.status is not verdict.status:
        raise AssertionError(f"decide_s2 and decide_power_sum disagree for n={n}, p={p}")
    return verdict


# -- polynomials ------------------------------------------------------------------


def _no_root_level(f: DensePoly, p: int, max_level: int, budget: int) -> int | None:
    for M in range(1, max_level + 1):
        if p**M > budget:
            return None
        if not has_zero_mod(f, p, M, budget):
            return M
    return None


def decide_poly_deg_le2(f: DensePoly, p: int, budget: int = DEFAULT_BUDGET) -> Verdict:
    """R_f for deg f in {1, 2}: dense iff f has a simple zero in Z_p."""
    require_prime(p)
    if f.degree not in (1, 2):
        raise InvalidArgument("decide_poly_deg_le2 needs degree 1 or 2")
    inputs = {"poly": str(f), "p": p}
    sz = simple_zero_deg_le2(f, p)
    if sz.found:
        cert = {"seed": sz.seed.to_json(), "discriminant": sz.discriminant}
        return Verdict(Status.DENSE, Reason.SIMPLE_ZERO, cert, inputs, "1.4")
    cert: dict = {"discriminant": sz.discriminant}
    if sz.reason == "double-root":
        cert["divisor"] = 2
        cert["multiplicities"] = [2]
        return Verdict(Status.NOT_DENSE, Reason.GCD_MULTIPLICITY, cert, inputs, "1.4")
    span = sum(vp_int(c, p) for c in f.coeffs if c) + 2 * f.degree + 2
    cert["no_root_level"] = _no_root_level(f, p, span, budget)
    return Verdict(Status.NOT_DENSE, Reason.NO_ZERO, cert, inputs, "1.4")


def coprime_pair(profile: list[int]) -> tuple[int, int] | None:
    """First (i, j), i <= j, with gcd(mu_i, mu_j) = 1; i == j only for a simple root."""
    for i in range(len(profile)):
        for j in range(i, len(profile)):
            if gcd(profile[i], profile[j]) == 1:
                return i, j
    return None


def decide_split_poly(profile: list[int], p: int, has_constant_valuation_cofactor: bool = True) -> Verdict:
    """Denseness for f = g h with g split in Z_p with root multiplicities ``profile``."""
    profile = list(profile)
    if not profile:
        raise InvalidArgument("empty multiplicity profile")
    if any(not isinstance(mu, int) or mu < 1 for mu in profile):
        raise InvalidArgument("multiplicities must be positive integers")
    require_prime(p)
    inputs = {"profile": profile, "p": p, "constant_valuation_cofactor": has_constant_valuation_cofactor}
    degree = sum(profile)
    divisor = 0
    for mu in profile:
        divisor = gcd(divisor, mu)
    pair = coprime_pair(profile)
    if pair is not None:
        cert = {"pair": list(pair), "multiplicities": [profile[pair[0]], profile[pair[1]]]}
        return Verdict(Status.DENSE, Reason.SIMPLE_ZERO if profile[pair[0]] == 1 else Reason.GCD_MULTIPLICITY,
                       cert, inputs, "1.2")
    if divisor > 1 and has_constant_valuation_cofactor:
        cert = {"divisor": divisor, "multiplicities": profile}
        return Verdict(Status.NOT_DENSE, Reason.GCD_MULTIPLICITY, cert, inputs, "1.5")
    if divisor == 1 and degree <= 30:  # pragma: no cover - a coprime pair always exists here
        raise AssertionError("gcd 1 profile of degree <= 30 without a coprime pair")
    failed = "degree of split part <= 30" if divisor == 1 else "cofactor has constant valuation"
    return Verdict(Status.UNKNOWN, Reason.OUT_OF_SCOPE, {"failed": failed, "degree": degree}, inputs, "1.5")


def cofactor_has_constant_valuation(h: DensePoly, p: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Sufficient test: the primitive part of h has no root mod p."""
    if h.degree <= 0:
        return True
    prim = DensePoly(c // h.content() for c in h.coeffs)
    if p > budget:
        return False
    return not has_zero_mod(prim, p, 1, budget)


def decide_factored(f: FactoredPoly, p: int, budget: int = DEFAULT_BUDGET) -> Verdict:
    flag = cofactor_has_constant_valuation(f.cofactor, p, budget)
    v = decide_split_poly(f.multiplicities, p, flag)
    return Verdict(v.status, v.reason, v.certificate, {**v.inputs, "poly": str(f)}, v.theorem)


def decide_poly(f: DensePoly | FactoredPoly, p: int, budget: int = DEFAULT_BUDGET, level: int | None = None) -> Verdict:
    """Dispatch: exact for degree <= 2 and split forms, residue search otherwise."""
    require_prime(p)
    if isinstance(f, FactoredPoly):
        return decide_factored(f, p, budget)
    if f.is_zero():
        raise InvalidArgument("the zero polynomial has no quotient set")
    inputs = {"poly": str(f), "p": p}
    if f.degree == 0:
        return Verdict(Status.NOT_DENSE, Reason.NO_ZERO, {"constant": f.coeffs[0]}, inputs, "Lemma 1.1")
    if f.degree <= 2:
        return decide_poly_deg_le2(f, p, budget)
    if level is None:
        level = 1
        while p ** (level + 1) <= min(budget, 10**5):
            level += 1
    status, info = zero_status(f, p, level, budget)
    if status is ZeroStatus.NO:
        return Verdict(Status.NOT_DENSE, Reason.NO_ZERO, {"no_root_level": info}, inputs, "Lemma 1.1")
    if status is ZeroStatus.GAP:
        return Verdict(Status.DENSE, Reason.SIMPLE_ZERO, {"seed": info.to_json()}, inputs, "1.3")
    return Verdict(Status.UNKNOWN, Reason.OUT_OF_SCOPE,
                   {"failed": f"no root-free level or Hensel seed up to level {level}"}, inputs, "1.12")


# -- 2-adic closures T_m^n ----------------------------------------------------------


@dataclass(frozen=True)
class TwoAdicCylinder:
    """The set 2^(n v) (j + 4n Z_2)."""

    v: int
    j: int
    n: int

    @property
    def modulus(self) -> int:
        return 4 * self.n

    def contains(self, x: RationalLike) -> bool:
        x = as_rational(x)
        shifted = x / 2 ** (self.n * self.v) - self.j
        return shifted == 0 or vp_rational(shifted, 2) >= vp_int(self.modulus, 2)


def _check_closure_args(m: int, n: int) -> None:
    if n not in (4, 8, 16):
        raise InvalidArgument("closure machinery needs n in {4, 8, 16}")
    if m < 1:
        raise InvalidArgument("m must be >= 1")


def t_closure_membership(value: PAdicNumber, m: int, n: int, ctx: PAdicContext) -> bool:
    """Whether a 2-adic number lies in T_m^n, the closure of S_m^n in Q_2."""
    _check_closure_args(m, n)
    if ctx.p != 2:
        raise InvalidArgument("closure membership is 2-adic")
    if value.is_zero:
        if value.exhausted:
            raise PrecisionExhausted("value is zero only to working precision")
        return True
    if value.valuation < 0:
        return False
    mod = 4 * n
    need = _vp_unchecked(mod, 2)
    classes = {j % mod for j in range(1, m + 1)}
    v = value.valuation
    for w in range(v // n + 1):
        shift = v - n * w
        if shift + value.precision < need:
            raise PrecisionExhausted(f"need the value modulo 2^{n * w + need}", needed=n * w + need)
        if (value.unit << shift) % mod in classes:
            return True
    return False


def t_ratio_search(q: RationalLike, m: int, n: int) -> tuple[int, int, int] | None:
    """A triple (w, j1, j2) with q in 2^(n w) C_{j1} / C_{j2}, C_j = j + 4n Z_2, or None.

    Q C_{j2} and C_{j1} are 2-adic balls, which meet iff the distance of their
    centres is at most the larger radius.  Outside a window of w the test is
    constant in w, so a finite scan decides membership exactly.
    """
    _check_closure_args(m, n)
    q = as_rational(q)
    if q == 0:
        raise InvalidArgument("q must be nonzero")
    K = _vp_unchecked(4 * n, 2)
    J = max(_vp_unchecked(j, 2) for j in range(1, m + 1))
    vq = vp_rational(q, 2)
    lo = -((J + K + 1 + n - vq) // n)
    hi = (vq + J + 1 + n) // n
    for w in range(lo, hi + 1):
        Q = q / Fraction(2) ** (n * w)
        vQ = vq - n * w
        bound = min(vQ, 0) + K
        for j1 in range(1, m + 1):
            for j2 in range(1, m + 1):
                d = Q * j2 - j1
                if d == 0 or vp_rational(d, 2) >= bound:
                    return w, j1, j2
    return None


def t_ratio_membership(q: RationalLike, m: int, n: int) -> bool:
    """Whether the nonzero rational q lies in R(T_m^n)."""
    return t_ratio_search(q, m, n) is not None


def closure_valuation_classes(m: int, n: int) -> set[int]:
    """Residues mod n of 2-adic valuations of nonzero elements of T_m^n."""
    _check_closure_args(m, n)
    K = _vp_unchecked(4 * n, 2)
    out = set()
    for j in range(1, m + 1):
        vj = _vp_unchecked(j, 2)
        if vj >= K:
            # j + 4n Z_2 = 4n Z_2 holds elements of every valuation >= K
            out.update(range(n))
        else:
            out.add(vj % n)
    return out


# -- valuation spectrum ---------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    p: int
    x_max: int
    valuations: Counter
    differences: frozenset[int]
    modulus: int | None = None
    classes: frozenset[int] = field(default=frozenset())

    def is_difference(self, d: int) -> bool:
        return d in self.differences

    def covers_class(self, c: int) -> bool:
        if self.modulus is None:
            raise InvalidArgument("no modulus was supplied")
        return c % self.modulus in self.classes

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "x_max": self.x_max,
            "valuations": {str(v): c for v, c in sorted(self.valuations.items())},
            "differences": sorted(d for d in self.differences if d >= 0),
        }
        if self.modulus is not None:
            out["modulus"] = self.modulus
            out["classes"] = sorted(self.classes)
            out["missing_classes"] = sorted(set(range(self.modulus)) - self.classes)
        return out


def valuation_spectrum(
    f: FactoredPoly | DensePoly, p: int, x_max: int, modulus: int | None = None, budget: int = 10**6
) -> SpectrumReport:
    """v_p(f(x)) for x = 1..x_max and the differences of those valuations."""
    require_prime(p)
    if x_max < 1:
        raise InvalidArgument("x_max must be >= 1")
    if x_max > budget:
        raise BudgetExceeded(f"x_max {x_max} exceeds budget {budget}", needed=x_max, budget=budget)
    if modulus is not None and modulus < 1:
        raise InvalidArgument("modulus must be positive")
    dense = expand(f) if isinstance(f, FactoredPoly) else f
    counts: Counter = Counter()
    for x in range(1, x_max + 1):
        y = eval_at(dense, x)
        if y:
            counts[_vp_unchecked(y, p)] += 1
    vals = list(counts)
    diffs = frozenset(a - b for a in vals for b in vals)
    classes = frozenset(d % modulus for d in diffs) if modulus else frozenset()
    return SpectrumReport(p, x_max, counts, diffs, modulus, classes)


# -- certificate checking ---------------------------------------------------------------


def verify_verdict(v: Verdict) -> bool:
    """Re-check a verdict's certificate from scratch."""
    c = v.certificate
    if v.status is Status.UNKNOWN:
        return "failed" in c
    if v.reason is Reason.THETA_THRESHOLD:
        if "tuple" in c:
            xs, b, n = c["tuple"], c["modulus"], v.inputs["n"]
            return (
                len(xs) <= v.inputs["m"]
                and any(x % v.inputs["p"] for x in xs)
                and sum(pow(x, n, b) for x in xs) % b == 0
            )
        x, q = c["witness"], c["modulus"]
        return x is not None and pow(x, v.inputs["n"], q) == q - 1
    if v.reason is Reason.MISSING_VALUATION_CLASS:
        n, k = c["n"], c["k"]
        allowed = {centered_mod(a, n) for a in range(-2 * k, 2 * k + 1)}
        return centered_mod(c["missing_class"], n) not in allowed
    if v.reason is Reason.SIMPLE_ZERO and "seed" in c:
        return _verify_seed(v.inputs["poly"], v.inputs["p"], c["seed"])
    if v.reason in (Reason.SIMPLE_ZERO, Reason.GCD_MULTIPLICITY):
        if v.status is Status.DENSE:
            return gcd(*c["multiplicities"]) == 1
        return c["divisor"] > 1 and all(mu % c["divisor"] == 0 for mu in c["multiplicities"])
    if v.reason is Reason.NO_ZERO:
        level = c.get("no_root_level")
        if "constant" in c:
            return c["constant"] != 0
        if level is None:
            return c.get("discriminant") is not None
        return not has_zero_mod(parse_dense(v.inputs["poly"]), v.inputs["p"], level)
    if v.reason is Reason.SPECIAL_2ADIC:
        return _verify_special(v)
    return False


def _verify_seed(poly: str, p: int, seed: dict) -> bool:
    fv, dv = hensel_gap(parse_dense(poly), seed["a0"], p)
    return fv > 2 * dv


def _verify_special(v: Verdict) -> bool:
    m, n = v.inputs["m"], v.inputs["n"]
    c = v.certificate
    if v.status is Status.DENSE:
        if n == 16:
            return sum(x**16 for x in c["tuple"]) % c["modulus"] == 0 and len(c["tuple"]) <= m
        if n == 2:
            return m >= 3
        # every 2-adic integer class lands in R(T_m^n)
        return all(t_ratio_membership(Fraction(2**r * u), m, n) for r in range(n) for u in range(1, 8 * n, 2))
    if n == 2:
        return m == 2
    if n == 4:
        return not t_ratio_membership(c["non_member"], m, n)
    classes = closure_valuation_classes(m, n)
    diffs = {(a - b) % n for a in classes for b in classes}
    return c["missing_class"] % n not in diffs

