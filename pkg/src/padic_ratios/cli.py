"""Command-line front end; prints JSON (or prose with --human) on stdout.

Exit status: 0 on a computed answer (NotDense included), 1 on bad usage,
2 when a budget or the working precision is exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from padic_ratios import denseness, oracle, waring, witness
from padic_ratios.errors import BudgetExceeded, InvalidArgument, PrecisionExhausted
from padic_ratios.padic import PAdicContext, as_rational, padic_from_rational
from padic_ratios.polynomials import DensePoly, FactoredPoly, parse_factored, parse_poly

MAX_PRIME = 2**64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _prime(text: str) -> int:
    p = int(text)
    if p >= MAX_PRIME:
        raise argparse.ArgumentTypeError("primes >= 2^64 are not supported")
    return p


def _emit(obj: dict, human: bool, prose: str | None = None) -> None:
    if human and prose is not None:
        print(prose)
    else:
        print(json.dumps(obj, sort_keys=True, default=str))


def _verdict_prose(v: denseness.Verdict) -> str:
    return f"{v.status.value} ({v.reason.value}, theorem {v.theorem}); certificate: {json.dumps(v.certificate, default=str)}"


def cmd_theta(a) -> dict:
    res = waring.theta(a.n, a.b, a.cap)
    out = res.to_json()
    if not a.certificate:
        out.pop("certificate", None)
    return out


def cmd_gamma(a) -> dict:
    return waring.gamma(a.n, a.b, a.cap).to_json()


def cmd_dense(a) -> denseness.Verdict:
    if a.what == "powersum":
        return denseness.decide_power_sum(a.m, a.n, a.p, a.cap)
    if a.what == "s2":
        return denseness.decide_s2(a.n, a.p)
    f = parse_poly(a.poly)
    return denseness.decide_poly(f, a.p, budget=a.budget)


def cmd_witness(a) -> dict:
    ctx = PAdicContext(a.p, a.precision)
    r = as_rational(a.r)
    if a.what == "poly":
        f = parse_factored(a.poly)
        try:
            i, j = (int(t) for t in a.roots.split(","))
        except ValueError as exc:
            raise InvalidArgument("--roots expects two comma-separated factor indices") from exc
        return witness.approximation_witness(f, i, j, r, a.u, ctx).to_json()
    return witness.power_sum_witness(a.m, a.n, a.p, r, a.u, ctx).to_json()


def cmd_oracle(a) -> dict:
    if a.what == "theta":
        res = oracle.brute_force_theta(a.n, a.b, a.gmax, budget=a.budget)
        return {
            "n": a.n,
            "b": a.b,
            "value": res.value,
            "found": res.value is not None,
            "g_max": res.g_max,
            "certificate": list(res.certificate) if res.certificate else None,
        }
    f = parse_poly(a.poly)
    report = denseness.valuation_spectrum(f, a.p, a.xmax, a.modulus, budget=a.budget)
    return report.to_json()


def cmd_closure(a) -> dict:
    q = as_rational(a.value)
    out = {"m": a.m, "n": a.n, "value": str(q)}
    if a.what == "ratio":
        hit = denseness.t_ratio_search(q, a.m, a.n)
        out["member"] = hit is not None
        if hit is not None:
            out["witness"] = {"w": hit[0], "j1": hit[1], "j2": hit[2]}
        return out
    ctx = PAdicContext(2, a.precision)
    out["member"] = denseness.t_closure_membership(padic_from_rational(q, ctx), a.m, a.n, ctx)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="padic-ratios", description=__doc__.splitlines()[0])
    parser.add_argument("--human", action="store_true", help="prose instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("theta", help="theta(n, b) by sumset layering")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--certificate", action="store_true")

    p = sub.add_parser("gamma", help="Waring number gamma(n, b) modulo b")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--cap", type=int)

    dense = sub.add_parser("dense", help="denseness verdicts").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = dense.add_parser("powersum")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=_prime, required=True)
    p.add_argument("--cap", type=int)
    p = dense.add_parser("s2")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=_prime, required=True)
    p = dense.add_parser("poly")
    p.add_argument("--poly", required=True)
    p.add_argument("-p", type=_prime, required=True)
    p.add_argument("--budget", type=int, default=10**7, help="residue scan budget (p^M)")

    wit = sub.add_parser("witness", help="explicit approximation witnesses").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = wit.add_parser("poly")
    p.add_argument("--poly", required=True)
    p.add_argument("--roots", required=True, help="factor indices i,j")
    p.add_argument("-r", required=True, help="target NUM/DEN")
    p.add_argument("-u", type=int, required=True)
    p.add_argument("-p", type=_prime, required=True)
    p.add_argument("--precision", type=int, default=64)
    p = wit.add_parser("powersum")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=_prime, required=True)
    p.add_argument("-r", required=True)
    p.add_argument("-u", type=int, required=True)
    p.add_argument("--precision", type=int, default=64)

    orc = sub.add_parser("oracle", help="brute-force checks").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = orc.add_parser("spectrum")
    p.add_argument("--poly", required=True)
    p.add_argument("-p", type=_prime, required=True)
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--modulus", type=int)
    p.add_argument("--budget", type=int, default=10**5)
    p = orc.add_parser("theta")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7)

    p = sub.add_parser("closure", help="membership in the 2-adic closures T_m^n")
    p.add_argument("what", choices=["member", "ratio"])
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True, choices=[4, 8, 16])
    p.add_argument("--value", required=True)
    p.add_argument("--precision", type=int, default=64)
    return parser


_COMMANDS = {
    "theta": cmd_theta,
    "gamma": cmd_gamma,
    "dense": cmd_dense,
    "witness": cmd_witness,
    "oracle": cmd_oracle,
    "closure": cmd_closure,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else 1
    try:
        result = _COMMANDS[args.command](args)
    except (InvalidArgument, ZeroDivisionError) as exc:
        print(json.dumps({"error": "invalid-argument", "message": str(exc)}), file=sys.stderr)
        return 1
    except (BudgetExceeded, PrecisionExhausted) as exc:
        kind = "budget-exceeded" if isinstance(exc, BudgetExceeded) else "precision-exhausted"
        print(json.dumps({"error": kind, "message": str(exc), "needed": exc.needed}), file=sys.stderr)
        return 2
    if isinstance(result, denseness.Verdict):
        _emit(result.to_json(), args.human, _verdict_prose(result))
    else:
        _emit(result, args.human, None if not args.human else _prose(args, result))
    return 0


def _prose(args, result: dict) -> str:
    if args.command in ("theta", "gamma"):
        val = result["value"]
        head = f"{args.command}({args.n}, {args.b}) = {val}" if val is not None else f"{args.command}({args.n}, {args.b}) not found within cap {result['cap']}"
        if result.get("certificate"):
            head += f"; certificate {result['certificate']}"
        return head
    if args.command == "closure":
        return f"{result['value']} {'is' if result['member'] else 'is not'} in {'R(T' if args.what == 'ratio' else '(T'}_{args.m}^{args.n})"
    return json.dumps(result, sort_keys=True, indent=2, default=str)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
