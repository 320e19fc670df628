"""Command line interface: ``confgrowth <command> [options]``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import characters as ch
from . import conformal as cf
from . import diffops as dops
from . import glinf as gl
from . import schur_weyl as sw
from .checks import CHECKS, RunConfig, run_checks
from .parsing import ParseError, parse_diffop, parse_gc

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, float) and math.isinf(v):
        return "infinite"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _cell(v) -> str:
    return str(v).lower() if isinstance(v, bool) else str(v)


def _emit(result: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(_jsonable(result), sort_keys=True, indent=2, ensure_ascii=False) + "\n")
        return
    data = _jsonable(result)
    width = max((len(k) for k in data), default=0)
    for key in sorted(data):
        val = data[key]
        if isinstance(val, list) and val and isinstance(val[0], dict):
            out.write(f"{key}:\n")
            for row in val:
                out.write("  " + "  ".join(f"{k}={_cell(row[k])}" for k in sorted(row)) + "\n")
        elif isinstance(val, list):
            out.write(f"{key.ljust(width)}  {' '.join(_cell(x) for x in val)}\n")
        else:
            out.write(f"{key.ljust(width)}  {_cell(val)}\n")


def _series(s) -> list:
    return list(s.coeffs)


def _partition(text: str | None) -> ch.Partition:
    if text is None:
        return ch.Partition(())
    try:
        return ch.Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from exc


def _negpartition(text: str | None) -> ch.NegPartition:
    """Accepts the mirror partition ``2,1`` or the non-positive labels ``-1,-2``."""
    if text is None:
        return ch.NegPartition()
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad negative partition {text!r}") from exc
    if all(v <= 0 for v in vals) and any(v < 0 for v in vals):
        # labels listed as (..., l_{-1}, l_0)
        return ch.NegPartition.from_labels({1 - len(vals) + i: v for i, v in enumerate(vals)})
    return ch.NegPartition(_partition(text))


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_bracket(args, cfg: RunConfig) -> int:
    a, b = parse_gc(args.a), parse_gc(args.b)
    br = cf.lambda_bracket(a, b)
    result = {
        "a": str(a),
        "b": str(b),
        "bracket": cf.render_bracket(br),
        "formula": "[a_l b] = a(-l, l+d+x) b(l+d, x) - b(l+d, -l+x) a(-l, x)",
    }
    if args.tag:
        tag = cf.SubalgebraTag(args.tag)
        try:
            result["closed"] = cf.closure_check(tag, a, b)
        except cf.NotAMemberError as exc:
            raise UsageError(str(exc)) from exc
        result["subalgebra"] = tag.value
    if cfg.fmt == "table" and not args.tag:
        print(result["bracket"])
    else:
        _emit(result, cfg.fmt)
    return EXIT_OK if result.get("closed", True) else EXIT_CHECK


def cmd_selftest(args, cfg: RunConfig) -> int:
    names = args.only or None
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}; available: {', '.join(CHECKS)}")
    rows = run_checks(cfg, names)
    ok = all(r["passed"] for r in rows)
    _emit({"checks": rows, "all_passed": ok, "seed": cfg.seed, "samples": cfg.samples, "N": cfg.N}, cfg.fmt)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_char(args, cfg: RunConfig) -> int:
    N = cfg.N
    if args.bc:
        try:
            w = ch.BCWeight.parse(args.bc)
            fn = ch.ch_binf if w.family == "B" else ch.ch_cinf
            closed = fn(w, N)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        oracle = ch.ch_bc_coroot_oracle(w, N)
        conv = ch.resolve_convention(w.family)
        result = {
            "weight": str(w),
            "series": _series(closed),
            "oracle_agrees": closed == oracle,
            "convention": conv.describe(),
            "formula": "finite Weyl factor times q-Pochhammer inverses",
        }
        _emit(result, cfg.fmt)
        return EXIT_OK if result["oracle_agrees"] else EXIT_CHECK
    plus, minus = _partition(args.plus), _negpartition(args.minus)
    series = ch.ch_Lplus(plus, N) * ch.ch_Lminus(minus, N)
    result = {
        "lambda_plus": list(plus.parts),
        "lambda_minus": str(minus),
        "series": _series(series),
        "formula": "prod_{i<j} (1-q^{l_i-l_j+j-i})/(1-q^{j-i}) * prod_j 1/(1-q^j)_q^{l_{d-j+1}}",
    }
    if not minus.size:
        result["tableau_oracle_agrees"] = series == ch.ch_ssyt_oracle(plus, N)
    _emit(result, cfg.fmt)
    return EXIT_OK if result.get("tableau_oracle_agrees", True) else EXIT_CHECK


def cmd_growth(args, cfg: RunConfig) -> int:
    if args.weight:
        try:
            w = ch.GenWeight.parse(args.weight)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad weight {args.weight!r}") from exc
    else:
        w = ch.GenWeight(tuple(_partition(args.plus).parts))
    g = ch.growth_exact(w)
    result = {"weight": str(w), "growth": g, "in_par_plus": w.in_par_plus(), "formula": "|lambda| on partitions, infinite otherwise"}
    if w.in_par_plus() and args.estimate:
        N = max(cfg.N, 2)
        result["estimate"] = round(ch.growth_estimate(ch.ch_Lplus(w.to_partition(), N)), 6)
        result["estimate_N"] = N
    if cfg.fmt == "table" and not args.estimate:
        print("infinite" if g == math.inf else g)
    else:
        _emit(result, cfg.fmt)
    return EXIT_OK


def cmd_span(args, cfg: RunConfig) -> int:
    plus, minus = _partition(args.plus), _negpartition(args.minus)
    dims = sw.cyclic_span_dims(plus, minus, cfg.N, args.gens)
    target = ch.ch_Lplus(plus, cfg.N) * ch.ch_Lminus(minus, cfg.N)
    result = {
        "lambda_plus": list(plus.parts),
        "lambda_minus": str(minus),
        "generator_set": args.gens,
        "dims": _series(dims),
        "matches_character": dims == target,
    }
    _emit(result, cfg.fmt)
    return EXIT_OK if result["matches_character"] else EXIT_CHECK


def cmd_cocycle(args, cfg: RunConfig) -> int:
    a, b = parse_diffop(args.a), parse_diffop(args.b)
    s, m = _rat(args.s), args.m
    A, B = gl.phi_s_m(s, m, a), gl.phi_s_m(s, m, b)
    br = dops.diffop_bracket(a, b)
    result = {
        "a": str(a),
        "b": str(b),
        "s": s,
        "m": m,
        "psi": dops.cocycle_psi(a, b),
        "alpha": gl.cocycle_alpha(A, B).to_json(),
        "correction": gl.phi_hat_correction(s, m, br.coeff(0)).to_json(),
        "homomorphism": gl.homomorphism_check(s, m, a, b),
        "formula": "Psi(a,b) - kappa_s([a,b]_0) = alpha(phi_s a, phi_s b)",
    }
    _emit(result, cfg.fmt)
    return EXIT_OK if result["homomorphism"] else EXIT_CHECK


def cmd_phi(args, cfg: RunConfig) -> int:
    a = parse_diffop(args.a)
    s, m = _rat(args.s), args.m
    A = gl.phi_s_m(s, m, a)
    if args.project is not None:
        A = gl.p_s_project(args.project, A)
    lo, hi = args.window
    result = {
        "operator": str(a),
        "s": s,
        "m": m,
        "diagonals": A.render(),
        "entries": [{"i": i, "j": j, "entry": v.render()} for i, j, v in A.window(lo, hi)],
        "in_binf": gl.in_binf(A),
        "in_cinf": gl.in_cinf(A),
        "in_dinf": gl.in_dinf(A),
        "formula": "t^k f(D) -> sum_j f(-j+s+u) E_{j-k,j}",
    }
    _emit(result, cfg.fmt)
    return EXIT_OK


def cmd_schurweyl(args, cfg: RunConfig) -> int:
    M, Md = args.M, args.Mdual
    ok = sw.cauchy_check(M, cfg.N) if Md == 0 else sw.mixed_cauchy_check(M, Md, cfg.N)
    total = sw.cauchy_sum(M, cfg.N) if Md == 0 else sw.mixed_cauchy_sum(M, Md, cfg.N)
    result = {
        "M": M,
        "M_dual": Md,
        "N": cfg.N,
        "sum": _series(total),
        "identity_holds": ok,
        "formula": "sum f^l f^m q^{n(l)+n(m)} ch L+(l) ch L-(m) = (1-q)^{-(M+M')}",
    }
    if cfg.fmt == "table":
        print(f"identity holds: {str(ok).lower()}")
    else:
        _emit(result, cfg.fmt)
    return EXIT_OK if ok else EXIT_CHECK


# ---------------------------------------------------------------------------


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("window must be LO,HI") from exc
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", "--truncate", type=int, default=12, help="truncation order (default 12)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20, help="random instances per randomized check")
    common.add_argument("--format", choices=("json", "table"), default="table")

    p = argparse.ArgumentParser(prog="confgrowth", description="Exact computations with gc1, differential operators and infinite matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", parents=[common], help="lambda-bracket of two elements of Q[d,x]")
    b.add_argument("a")
    b.add_argument("b")
    b.add_argument("--tag", choices=[t.value for t in cf.SubalgebraTag], help="also check closure in a subalgebra")
    b.set_defaults(fn=cmd_bracket)

    s = sub.add_parser("selftest", parents=[common], help="run the named invariant checks")
    s.add_argument("--only", nargs="*", help="subset of check names")
    s.set_defaults(fn=cmd_selftest)

    c = sub.add_parser("char", parents=[common], help="q-character of a highest weight module")
    c.add_argument("--plus", help="partition, e.g. 2,1")
    c.add_argument("--minus", help="negative partition as its mirror (1,1) or labels (-1,-1)")
    c.add_argument("--bc", help='b/c weight, e.g. "B c=1 l=1"')
    c.set_defaults(fn=cmd_char)

    g = sub.add_parser("growth", parents=[common], help="growth of a highest weight module")
    g.add_argument("--plus", help="partition")
    g.add_argument("--weight", help="general weight as comma list of rationals")
    g.add_argument("--estimate", action="store_true", help="also estimate from the character up to -N")
    g.set_defaults(fn=cmd_growth)

    sp = sub.add_parser("span", parents=[common], help="graded dimensions of a cyclic span")
    sp.add_argument("--plus")
    sp.add_argument("--minus")
    sp.add_argument("--gens", choices=sw.GENERATOR_SETS, default="Dminus")
    sp.set_defaults(fn=cmd_span)

    co = sub.add_parser("cocycle", parents=[common], help="compare Psi with alpha through phi_s")
    co.add_argument("a")
    co.add_argument("b")
    co.add_argument("--s", default="0")
    co.add_argument("--m", type=int, default=0)
    co.set_defaults(fn=cmd_cocycle)

    ph = sub.add_parser("phi", parents=[common], help="matrix image of an operator")
    ph.add_argument("a")
    ph.add_argument("--s", default="0")
    ph.add_argument("--m", type=int, default=0)
    ph.add_argument("--project", type=int, help="apply p_s for this integer s")
    ph.add_argument("--window", type=_window, default=(-3, 3), help="index window LO,HI for display")
    ph.set_defaults(fn=cmd_phi)

    w = sub.add_parser("schurweyl", parents=[common], help="Cauchy-type identity for tensor powers")
    w.add_argument("--M", type=int, default=2)
    w.add_argument("--Mdual", type=int, default=0)
    w.set_defaults(fn=cmd_schurweyl)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(N=args.truncate, seed=args.seed, samples=args.samples, fmt=args.format)
        return args.fn(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
