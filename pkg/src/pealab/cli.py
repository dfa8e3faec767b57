"""Command-line front end: ``pealab <subcommand> ...`` prints a JSON report.

The exit status is 1 if any check fails, 2 on bad input, and 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .parser import TermSyntaxError, parse_term_file
from .seqalg import CapacityError, ElementSet, SetAlgebra, Signature, SignatureError
from .subalgebra import ClosureBudgetError
from .terms import UnboundVariable, evaluate, to_text
from .verify.axioms import run_axiom_suite
from .verify.chain import verify_pigozzi_chain
from .verify.exclusion import interpolant_exclusion
from .verify.report import CheckReport, Verdict, emit_report, exit_status, stopwatch
from .verify.witnesses import (WitnessError, admissible_gammas, build_witnesses, normalize_gamma,
                               sigma_witness_report, verify_p7, x_id)


class EnvError(ValueError):
    pass


def _coords(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algebra(args, signature: Signature | None = None) -> SetAlgebra:
    return SetAlgebra.of(args.alpha, args.base, signature)


def _gamma(args) -> frozenset[int]:
    return normalize_gamma(args.gamma or (), args.alpha)


# -- environment files ---------------------------------------------------------

_NAMED = re.compile(r"^(?P<name>X_Id|d|c_gamma_of_iota)\s*(?:\((?P<args>[\d,\s]*)\))?$")


def resolve_binding(algebra: SetAlgebra, value) -> ElementSet:
    """One env-file value: a rank list, a sequence list, or a named construction.

    Named constructions are ``"0"``, ``"1"``, ``"X_Id"``, ``"d(i,j)"`` and
    ``"c_gamma_of_iota(i,...)"``; the bare ``"c_gamma_of_iota"`` uses ``{0,1}``.
    """
    if isinstance(value, list):
        if all(isinstance(v, int) for v in value):
            return algebra.from_ranks(value)
        if all(isinstance(v, list) for v in value):
            return algebra.from_sequences([tuple(v) for v in value])
        raise EnvError(f"cannot mix ranks and sequences: {value!r}")
    if value in ("0", 0):
        return algebra.zero
    if value in ("1", 1):
        return algebra.one
    if not isinstance(value, str):
        raise EnvError(f"unsupported binding {value!r}")
    m = _NAMED.match(value.strip())
    if not m:
        raise EnvError(f"unknown construction {value!r}")
    name = m["name"]
    args = [int(v) for v in (m["args"] or "").split(",") if v.strip()]
    if name == "X_Id":
        if args:
            raise EnvError("X_Id takes no arguments")
        return x_id(algebra)
    if name == "d":
        if len(args) != 2:
            raise EnvError(f"d needs two coordinates: {value!r}")
        return algebra.diag_pair(*args)
    gamma = frozenset(args) if args else frozenset({0, 1})
    iota = tuple(range(algebra.alpha))
    if algebra.base < algebra.alpha:
        raise EnvError("c_gamma_of_iota needs base >= alpha")
    return algebra.cyl(gamma, algebra.from_sequences([iota]))


def load_env(algebra: SetAlgebra, text: str) -> dict[str, ElementSet]:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise EnvError("the environment file must hold a JSON object")
    return {name: resolve_binding(algebra, v) for name, v in data.items()}


# -- subcommands ---------------------------------------------------------------

def cmd_axioms(args) -> list[CheckReport]:
    signature = Signature.named(args.fragment)
    return run_axiom_suite(_algebra(args, signature), args.samples, args.seed)


def cmd_pigozzi(args) -> list[CheckReport]:
    return [verify_pigozzi_chain(_algebra(args), args.samples, args.seed)]


def cmd_p6(args) -> list[CheckReport]:
    algebra = _algebra(args)
    return [sigma_witness_report(algebra, g) for g in _gammas(args)]


def cmd_p7(args) -> list[CheckReport]:
    algebra = _algebra(args)
    return [verify_p7(build_witnesses(algebra, g, require_sigma=False), algebra) for g in _gammas(args)]


def cmd_exclusion(args) -> list[CheckReport]:
    return [interpolant_exclusion(args.alpha, args.base, _gamma(args))]


def cmd_eval(args) -> list[CheckReport]:
    algebra = _algebra(args)
    env = load_env(algebra, Path(args.env).read_text())
    reports = []
    cache: dict = {}
    for line, term in parse_term_file(Path(args.term).read_text()):
        with stopwatch() as clock:
            value = evaluate(term, env, algebra, cache)
        reports.append(CheckReport(
            f"eval-line-{line}", Verdict.REPORTED, {**algebra.config.as_dict()},
            observation={"term": to_text(term), "size": len(value), "ranks": value.ranks()},
            millis=clock[0]))
    return reports


def _gammas(args) -> list[frozenset[int]]:
    if args.all_gammas:
        return admissible_gammas(args.alpha)
    return [_gamma(args)]


def _witness(args) -> int:
    base = args.base if args.base is not None else args.alpha + 1
    algebra = SetAlgebra.of(args.alpha, base)
    pack = build_witnesses(algebra, _gamma(args), require_sigma=False)
    print(json.dumps(pack.as_dict(), sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pealab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true",
                        help="omit wall times so reruns are byte-identical")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, base=True, samples=None, gamma=False, all_gammas=False):
        p = sub.add_parser(name, help=help, parents=[common])
        p.add_argument("--alpha", type=int, required=True)
        if base:
            p.add_argument("--base", type=int, required=True)
        if samples is not None:
            p.add_argument("--samples", type=int, default=samples)
            p.add_argument("--seed", type=int, default=0)
        if gamma:
            p.add_argument("--gamma", type=_coords, default=[0, 1],
                           help="comma-separated coordinates; 0 and 1 are always added")
        if all_gammas:
            p.add_argument("--all-gammas", action="store_true",
                           help="run every gamma containing 0 and 1")
        p.set_defaults(func=func)
        return p

    p = add("axioms", cmd_axioms, "check the fourteen postulates", samples=500)
    p.add_argument("--fragment", choices=["full", "quasipolyadic", "lucas"], default="full")
    add("pigozzi", cmd_pigozzi, "check every line of the r <= s*t derivation", samples=1000)
    p = add("witness", _witness, "print the witness sets", base=False, gamma=True)
    p.add_argument("--base", type=int, default=None, help="defaults to alpha + 1")
    add("p6", cmd_p6, "the sigma witness for X_Id * r != 0", gamma=True, all_gammas=True)
    add("p7", cmd_p7, "the emptiness equations for s*t", gamma=True, all_gammas=True)
    add("exclusion", cmd_exclusion, "search Sg{X_Id} for an interpolant", gamma=True)
    p = add("eval", cmd_eval, "evaluate the terms of a file")
    p.add_argument("--env", required=True, help="JSON object binding variable names")
    p.add_argument("--term", required=True, help="one term per line, # comments")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.func is _witness:
            return _witness(args)
        reports = args.func(args)
    except (ValueError, IndexError, KeyError, OSError, CapacityError, SignatureError,
            ClosureBudgetError, WitnessError, TermSyntaxError, UnboundVariable, EnvError) as exc:
        print(f"pealab: error: {exc}", file=sys.stderr)
        return 2
    config = {k: v for k, v in vars(args).items() if k not in ("func", "output", "no_timing")}
    if "gamma" in config and config["gamma"] is not None:
        config["gamma"] = sorted(normalize_gamma(config["gamma"], args.alpha))
    document = emit_report(reports, config, timing=not args.no_timing)
    if args.output:
        Path(args.output).write_text(document)
    else:
        sys.stdout.write(document)
    return exit_status(reports)


if __name__ == "__main__":
    sys.exit(main())
