"""Command-line front end.

Subcommands:

    verify       check one identity instance (or a --grid of them) exactly
    ct           exact constant term of a user-supplied factored rational
    oracle       numeric contour estimate of an identity's constant term
    chain        numeric check of the four-form substitution chain
    gamma-check  exact Gamma-product identities (Catalan form and 2^n ratio)

Exit codes: 0 verified/agreed, 1 computed but mismatched or unconverged,
2 usage or engine errors.  CT_FORGE_MAX_N (default 5) bounds the number of
variables accepted for exact computations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from .contour import (
    QuadratureConfig,
    chain_spread,
    chain_values,
    contour_ct,
    converged,
    default_epsilon,
    oracle_report,
)
from .ctengine import CTOrder, ct_iterated, factored_loads
from .errors import CTForgeError
from .exactarith import thm_rhs
from .identities import (
    IdentitySpec,
    check_cat_identity,
    check_ratio_identity,
    spec_from_json,
    verify,
)

CHAIN_TOL = 1e-5


def _max_n() -> int:
    raw = os.environ.get("CT_FORGE_MAX_N", "5")
    try:
        return int(raw)
    except ValueError:
        raise CTForgeError(f"CT_FORGE_MAX_N must be an integer, got {raw!r}") from None


def _parse_order(text: Optional[str]) -> Optional[CTOrder]:
    """Comma list of 1-based variable numbers, e.g. '2,1'."""
    if text is None:
        return None
    try:
        seq = tuple(int(part) - 1 for part in text.split(","))
        order = CTOrder(seq)
    except ValueError as exc:
        raise CTForgeError(f"bad --order {text!r}: {exc}") from None
    if not order.is_default():
        print("warning: non-default extraction order corresponds to a different "
              "contour nesting; results are exploratory", file=sys.stderr)
    return order


def _spec_from_args(args) -> IdentitySpec:
    if args.family is None or args.n is None:
        raise CTForgeError("--family and --n are required")
    return IdentitySpec.create(args.family, args.n, a=args.a, b=args.b, twoc=args.twoc)


def _report_line(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json())
    s = report.spec
    flag = "equal" if report.equal else "MISMATCH"
    return (f"{s.family.value} n={s.n} a={s.a} b={s.b} twoc={s.twoc}: "
            f"lhs={report.lhs} rhs={report.rhs} {flag} ({report.elapsed_ms:.1f} ms)")


def _verify_json_entry(obj: dict) -> dict:
    return verify(spec_from_json(obj)).to_json()


def _cmd_verify(args) -> int:
    if args.grid:
        with open(args.grid, "r", encoding="utf-8") as fh:
            entries = json.load(fh)
        if not isinstance(entries, list):
            raise CTForgeError("--grid file must hold a JSON list of identity specs")
        specs = [spec_from_json(entry) for entry in entries]
        for spec in specs:
            if spec.n > _max_n():
                raise CTForgeError(
                    f"n={spec.n} exceeds CT_FORGE_MAX_N={_max_n()}")
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(verify, specs))
        else:
            reports = [verify(spec) for spec in specs]
        all_equal = True
        for report in reports:
            print(_report_line(report, args.format))
            all_equal = all_equal and report.equal
        return 0 if all_equal else 1
    if args.family is None or args.n is None:
        raise CTForgeError("verify needs --family and --n (or --grid)")
    spec = _spec_from_args(args)
    if spec.n > _max_n():
        raise CTForgeError(f"n={spec.n} exceeds CT_FORGE_MAX_N={_max_n()}")
    report = verify(spec, order=_parse_order(args.order))
    print(_report_line(report, args.format))
    return 0 if report.equal else 1


def _cmd_ct(args) -> int:
    with open(args.spec_file, "r", encoding="utf-8") as fh:
        rational = factored_loads(fh.read())
    n_vars = len(rational.variables())
    if n_vars > _max_n():
        raise CTForgeError(f"{n_vars} variables exceed CT_FORGE_MAX_N={_max_n()}")
    value = ct_iterated(rational, _parse_order(args.order))
    if args.format == "json":
        print(json.dumps({"ct": str(value)}))
    else:
        print(value)
    return 0


def _cmd_oracle(args) -> int:
    spec = _spec_from_args(args)
    epsilon = args.epsilon if args.epsilon is not None else default_epsilon(spec.n)
    cfg = QuadratureConfig(epsilon, args.points)
    coarse = contour_ct(spec, cfg)
    fine_cfg = cfg.doubled()
    fine = contour_ct(spec, fine_cfg)
    is_converged = converged(coarse, fine, 1e-6)
    payload = oracle_report(fine, fine_cfg, is_converged)
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"{spec.family.value} n={spec.n} a={spec.a} b={spec.b} twoc={spec.twoc}: "
              f"re={fine.real!r} im={fine.imag!r} N={fine_cfg.points} "
              f"epsilon={epsilon} converged={'yes' if is_converged else 'no'}")
    return 0 if is_converged else 1


def _cmd_chain(args) -> int:
    epsilon = args.epsilon if args.epsilon is not None else default_epsilon(args.n, shifted=True)
    cfg = QuadratureConfig(epsilon, args.points)
    values = chain_values(args.n, args.a, args.twoc, cfg)
    exact = thm_rhs(args.n, args.a, args.twoc)
    scale = max(1.0, abs(float(exact)))
    spread = chain_spread(values)
    worst_vs_exact = max(abs(v - float(exact)) / scale for v in values.values())
    ok = spread < CHAIN_TOL and worst_vs_exact < CHAIN_TOL
    if args.format == "json":
        print(json.dumps({
            "forms": {f.value: {"re": v.real, "im": v.imag} for f, v in values.items()},
            "spread": spread,
            "vs_exact": worst_vs_exact,
            "exact": str(exact),
            "N": cfg.points,
            "epsilon": epsilon,
            "within_tolerance": ok,
        }))
    else:
        for form, v in values.items():
            print(f"  {form.value}: re={v.real!r} im={v.imag!r}")
        print(f"pairwise spread={spread:.3e} vs exact {exact}: {worst_vs_exact:.3e} "
              f"N={cfg.points} epsilon={epsilon} -> "
              f"{'within tolerance' if ok else 'OUT OF TOLERANCE'}")
    return 0 if ok else 1


def _cmd_gamma_check(args) -> int:
    cat = [check_cat_identity(n) for n in range(1, args.n + 1)]
    ratio = [check_ratio_identity(n) for n in range(1, args.n + 1)]
    all_ok = all(cat) and all(ratio)
    if args.format == "json":
        print(json.dumps({"cat": cat, "ratio": ratio, "all_ok": all_ok}))
    else:
        for i in range(args.n):
            print(f"n={i + 1}: cat={'ok' if cat[i] else 'FAIL'} "
                  f"ratio={'ok' if ratio[i] else 'FAIL'}")
    return 0 if all_ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ct-forge",
        description="exact and numeric verification of constant-term identities")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p):
        p.add_argument("--family", choices=["cry", "mm", "morris", "thm"])
        p.add_argument("--n", type=int)
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        p.add_argument("--twoc", type=int)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("verify", help="exact check of an identity instance")
    add_spec_flags(p)
    p.add_argument("--order", help="extraction order as 1-based comma list, e.g. 2,1")
    p.add_argument("--grid", help="JSON file with a list of identity specs")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --grid")
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ct", help="exact constant term of a factored rational")
    p.add_argument("spec_file", help="JSON file: {\"num\": ..., \"den\": [[poly, exp], ...]}")
    p.add_argument("--order", help="extraction order as 1-based comma list")
    add_format(p)
    p.set_defaults(func=_cmd_ct)

    p = sub.add_parser("oracle", help="numeric contour estimate of an identity")
    add_spec_flags(p)
    p.add_argument("--epsilon", type=float, help="base contour radius (default 0.05/n)")
    p.add_argument("--points", type=int, default=1024,
                   help="samples per circle; the estimate is refined at twice this")
    add_format(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("chain", help="numeric check of the substitution chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--twoc", type=int, required=True)
    p.add_argument("--epsilon", type=float, help="base radius (default 0.0125/n)")
    p.add_argument("--points", type=int, default=1024)
    add_format(p)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("gamma-check", help="exact Gamma-product identity checks")
    p.add_argument("--n", type=int, default=10, help="check 1..n (default 10)")
    add_format(p)
    p.set_defaults(func=_cmd_gamma_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except CTForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
