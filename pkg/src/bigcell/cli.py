"""Command-line front end: ``bigcell <subcommand> ...``.

Exit codes: 0 success, 1 an identity failed (counterexample in the report),
2 usage or input error, 3 the bit-length guard tripped.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .cell import NotInBigCell, UnsupportedDatum, big_cell_factor, f_minor, verify_lemma_f
from .duality import duality_suite
from .exactfield import BitLengthExceeded, bit_guard
from .groups import ParabolicDatum, build_parabolic
from .reps import RationalRep, parse_rep, sigma_s
from .sampling import Sampler
from .serialize import InputError, dumps, load_matrix, load_reps, loads, matrix_to_obj
from .symmspace import (
    automorphy_factor,
    covering_constants,
    enumerate_reps,
    omega_bound,
    omega_violations,
    star_action,
)

DEFAULT_GUARD_BITS = 1_000_000
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_GROUP_RE = re.compile(r"^(gl|sl|sp)(\d+)(?:-(borel|siegel))?$", re.IGNORECASE)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_group(group_text: str | None, partition: str | None, family=None, n=None) -> ParabolicDatum:
    """``sl2-borel``, ``sl3``, ``gl4``, ``sp4-siegel`` plus an optional ``--partition "2,1"``."""
    selector = None
    if group_text is not None:
        m = _GROUP_RE.match(group_text.strip())
        if not m:
            raise UsageError(f"unrecognised group {group_text!r} (try sl2-borel, sl3, gl4, sp4-siegel)")
        fam = {"gl": "GL", "sl": "SL", "sp": "Sp"}[m.group(1).lower()]
        size = int(m.group(2))
        selector = m.group(3)
        if family is not None and (fam != family or size != n):
            raise UsageError(f"--group {group_text} does not match the input matrix {family}({n})")
        family, n = fam, size
    if family is None:
        raise UsageError("--group is required")
    if partition:
        try:
            selector = tuple(int(x) for x in partition.split(","))
        except ValueError:
            raise UsageError(f"bad partition {partition!r}") from None
    if selector is None:
        selector = "siegel" if family == "Sp" else "composition"
    try:
        return build_parabolic(family, n, selector)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_sigma(text: str | None, datum: ParabolicDatum) -> RationalRep:
    """JSON descriptor, or shorthand ``det_power:0,2`` / ``sym:k:block`` / ``sigma_s:s``."""
    try:
        if text is None:
            return sigma_s(datum, 1)
        text = text.strip()
        if text.startswith("{"):
            return parse_rep(datum, loads(text, "--sigma"))
        kind, _, rest = text.partition(":")
        if kind == "det_power":
            return RationalRep(datum, "det_power", weights=tuple(int(x) for x in rest.split(",")))
        if kind == "sym":
            k, _, block = rest.partition(":")
            return RationalRep(datum, "sym", k=int(k), block=int(block or 0))
        if kind == "sigma_s":
            return sigma_s(datum, int(rest))
    except InputError:
        raise
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad --sigma {text!r}: {exc}") from None
    raise UsageError(f"bad --sigma {text!r}")


def _guard_bits(args) -> int:
    if args.guard_bits is not None:
        return args.guard_bits
    env = os.environ.get("BIGCELL_GUARD_BITS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"BIGCELL_GUARD_BITS must be an integer, got {env!r}") from None
    return DEFAULT_GUARD_BITS


def _datum_for(args, g=None) -> ParabolicDatum:
    if g is None:
        return parse_group(args.group, args.partition)
    return parse_group(args.group, args.partition, g.family, g.n)


def _sampler(args) -> Sampler:
    return Sampler(args.p, args.e, seed=args.seed, window=args.window)


def _report(rep) -> tuple[dict, int]:
    out = rep.to_json()
    return out, EXIT_OK if rep.ok else EXIT_VIOLATION


# -- subcommands ----------------------------------------------------------------


def cmd_f_eval(args):
    g = load_matrix(args.matrix)
    datum = _datum_for(args, g)
    val = f_minor(g, datum)
    return {"value": str(val), "valuation": _val(val.valuation())}, EXIT_OK


def _val(v) -> str:
    return "inf" if v == float("inf") else str(v)


def cmd_factorize(args):
    g = load_matrix(args.matrix)
    datum = _datum_for(args, g)
    try:
        F = big_cell_factor(g, datum)
    except NotInBigCell as exc:
        return {"error": "not in the big cell", "detail": str(exc), "f": "0"}, EXIT_USAGE
    return {"u_minus": matrix_to_obj(F.u_minus), "levi": matrix_to_obj(F.levi),
            "u_plus": matrix_to_obj(F.u_plus)}, EXIT_OK


def cmd_lemma_suite(args):
    datum = _datum_for(args)
    return _report(verify_lemma_f(datum, _sampler(args), per_w=args.samples or 50, pairs=args.samples or 50))


def cmd_cocycle_test(args):
    from .symmspace import verify_cocycle

    datum = _datum_for(args)
    return _report(verify_cocycle(datum, _sampler(args), trials=args.samples or 200))


def _pair_inputs(args):
    g = load_matrix(args.matrix)
    u = load_matrix(args.point)
    datum = _datum_for(args, g)
    if not datum.in_u_minus(u):
        raise InputError(f"{args.point}: the point must lie in U- (block upper unipotent)")
    return g, u, datum


def cmd_star(args):
    g, u, datum = _pair_inputs(args)
    try:
        return {"star": matrix_to_obj(star_action(g, u, datum))}, EXIT_OK
    except NotInBigCell as exc:
        return {"error": "g u is not in the big cell", "detail": str(exc)}, EXIT_USAGE


def cmd_jfactor(args):
    g, u, datum = _pair_inputs(args)
    try:
        return {"j": matrix_to_obj(automorphy_factor(g, u, datum))}, EXIT_OK
    except NotInBigCell as exc:
        return {"error": "g u is not in the big cell", "detail": str(exc)}, EXIT_USAGE


def cmd_omega_check(args):
    u = load_matrix(args.point)
    datum = _datum_for(args, u)
    if not datum.in_u_minus(u):
        raise InputError(f"{args.point}: the point must lie in U- (block upper unipotent)")
    if args.m is None or args.m < 0:
        raise UsageError("--m must be a non-negative integer")
    if args.reps:
        reps = load_reps(args.reps)
        source = args.reps
    else:
        try:
            reps = list(enumerate_reps(datum, args.m, u.p, u.e))
        except UnsupportedDatum as exc:
            raise UsageError(f"{exc}; pass --reps FILE") from None
        source = "enumerated"
    consts = covering_constants(datum)
    bad = omega_violations(u, args.m, reps, datum, consts)
    return {
        "member": not bad,
        "m": args.m,
        "N": consts.N,
        "M": consts.M,
        "bound": str(omega_bound(u, args.m, consts)),
        "reps": len(reps),
        "reps_source": source,
        "violations": [{"rep": g.to_strings(), "valuation": _val(v)} for g, v, _ in bad[:10]],
    }, EXIT_OK


def cmd_duality_suite(args):
    datum = _datum_for(args)
    sigma = parse_sigma(args.sigma, datum)
    return _report(duality_suite(datum, sigma, _sampler(args), samples=args.samples or 20))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", help="sl2-borel, sl3, gl4, sp4-siegel, ...")
    common.add_argument("--partition", help='block composition, e.g. "2,1"')
    common.add_argument("--p", type=int, default=3)
    common.add_argument("--e", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int)
    common.add_argument("--window", type=int, default=3, help="valuation window [-w, w]")
    common.add_argument("--guard-bits", type=int, dest="guard_bits")

    parser = _Parser(prog="bigcell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("f-eval", parents=[common], help="evaluate f on a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_f_eval)
    p = sub.add_parser("factorize", parents=[common], help="big-cell factorisation")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_factorize)
    for name, func in (("star", cmd_star), ("jfactor", cmd_jfactor)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("matrix")
        p.add_argument("point")
        p.set_defaults(func=func)
    p = sub.add_parser("omega-check", parents=[common], help="Omega(m) membership")
    p.add_argument("point")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--reps")
    p.set_defaults(func=cmd_omega_check)
    for name, func in (("lemma-suite", cmd_lemma_suite), ("cocycle-test", cmd_cocycle_test)):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(func=func)
    p = sub.add_parser("duality-suite", parents=[common])
    p.add_argument("--sigma")
    p.set_defaults(func=cmd_duality_suite)
    return parser


def run(argv=None) -> tuple[dict, int]:
    try:
        args = build_parser().parse_args(argv)
        if args.p < 2 or args.e < 1:
            raise UsageError("--p must be a prime and --e positive")
        with bit_guard(_guard_bits(args)):
            return args.func(args)
    except (UsageError, InputError, UnsupportedDatum) as exc:
        return {"error": str(exc)}, EXIT_USAGE
    except BitLengthExceeded as exc:
        return {"error": "bit-length guard tripped", "detail": str(exc)}, EXIT_GUARD
    except ValueError as exc:
        return {"error": str(exc)}, EXIT_USAGE


def main(argv=None) -> int:
    out, code = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_VIOLATION) else sys.stderr
    stream.write(dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
