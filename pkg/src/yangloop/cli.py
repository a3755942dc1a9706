"""Command-line entry point: run verification suites, reconstruct classifying
polynomials from highest-weight data, and expand named series.

Exit codes: 0 all checks pass, 1 verification failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cartan, drinfeld, qloop, suites, yangian
from .series import Series, VarSpec


def _suite_kwargs(name: str, args) -> dict:
    kw: dict = {}
    if name in ("kernel", "reconstruct", "prop41"):
        kw["seed"] = args.seed
    if name == "borel":
        kw["order"] = args.order if args.order is not None else 12
    if name in ("prop41", "gamma"):
        if args.order is not None:
            kw["order"] = args.order
    if name in ("lemma41", "eq414"):
        kw["roots"] = tuple(range(1, args.roots + 1))
        deg = args.order if args.order is not None else 4
        kw["root_deg"] = deg
        kw["hbar_deg"] = deg
        if name == "eq414":
            kw["bound"] = args.module_bound
        span = args.loop_order if args.loop_order is not None else 2
        ks = tuple(range(-span, span + 1))
        if name == "lemma41":
            kw["k_values"] = ks
            if args.mutation:
                kw["mutation"] = args.mutation
        else:
            kw["r_values"] = ks
            kw["l_values"] = ks
    if name == "lemma42":
        kw["bidegree"] = args.order if args.order is not None else 10
    if name == "rel217":
        if args.m is not None and args.n is not None:
            kw["data"] = ((args.m, args.n),)
        kw["bound"] = args.module_bound
        if args.degree_bound is not None:
            kw["degree"] = args.degree_bound
    if name == "prop44":
        kw["level_bound"] = args.level_bound
        if args.order is not None:
            kw["sigma_deg"] = args.order
    if name == "serre":
        kw["level_max"] = min(args.level_bound, 3)
    return kw


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in suites.SUITES for n in names):
        print(f"unknown suite {args.suite!r}; choose from "
              f"{', '.join(suites.SUITES)} or 'all'", file=sys.stderr)
        return 2
    code = 0
    for name in names:
        report = suites.SUITES[name](**_suite_kwargs(name, args))
        if args.report == "json":
            print(report.to_json())
        else:
            print(report.to_text())
        if not report.all_pass:
            code = 1
    return code


def cmd_reconstruct(args) -> int:
    try:
        if args.input == "-":
            obj = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                obj = json.load(fh)
        datum = cartan.build(int(obj["m"]), int(obj["n"]))
        hw = drinfeld.HighestWeight.from_json(obj)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return 2
    try:
        result = drinfeld.classify(hw, datum, args.max_deg)
    except ValueError as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return 2
    text = json.dumps(result.to_json(), sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _expand_table(series: Series) -> str:
    spec = series.spec
    names = list(spec.graded) + ([spec.loop] if spec.loop else [])
    lines = []
    for key in sorted(series.terms, key=lambda k: (spec.weight(k), k)):
        mon = " ".join(f"{names[j]}^{e}" for j, e in enumerate(key) if e) or "1"
        lines.append(f"{mon}\t{series.terms[key]}")
    return "\n".join(lines) if lines else "0"


def cmd_expand(args) -> int:
    order = args.order if args.order is not None else 6
    name = args.name
    if name == "G":
        spec = VarSpec(("v",), order)
        out = yangian.cartan_kernel(spec)
    elif name == "q_number":
        spec = VarSpec(("hbar",), order)
        datum = cartan.build(0, 1)
        node = 1 if args.d == 1 else 2
        out = cartan.q_number(args.n, datum, node, spec)
    elif name == "g":
        spec = VarSpec(("hbar",), max(order, 0) + 2)
        datum = cartan.build(0, 1)
        node = 1 if args.d == 1 else 2
        out = yangian.sqrt_prefactor(datum, node, spec).restrict(
            [(("hbar",), order)])
    elif name in ("gamma", "borel_t", "psi", "phi"):
        T = 2 * order + 2
        spec = VarSpec(("hbar", "v", "a", "b"), T, loop="z",
                       loop_order=order + 1, hbar_floor=-1)
        ctx = yangian.YContext(cartan.build(0, 0), spec,
                               {1: yangian.NodeRoots(("a",), ("b",))})
        if name == "gamma":
            out = yangian.gamma_series(ctx, 1).restrict(
                [(("v", "a", "b"), order)])
        elif name == "borel_t":
            t = yangian.t_from_h(yangian.h_from_roots(
                yangian.YContext(cartan.build(0, 0),
                                 VarSpec(("hbar", "v", "a", "b"), T, loop="u",
                                         loop_order=order + 1, hbar_floor=-1),
                                 {1: yangian.NodeRoots(("a",), ("b",))}), 1))
            out = yangian.borel_t(t).restrict([(("v", "a", "b"), order)])
        else:
            nru = qloop.NodeRootsU(("a",), ("b",))
            uspec = VarSpec(("hbar", "a", "b"), order + 2, loop="z",
                            loop_order=order + 1)
            build = qloop.psi_from_roots if name == "psi" else qloop.phi_from_roots
            out = build(uspec, nru).restrict([(("a", "b"), order)])
    else:
        print(f"unknown series name {name!r}", file=sys.stderr)
        return 2
    print(_expand_table(out))
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="yangloop",
        description="exact truncated-series identity checks for the "
                    "current/loop superalgebra correspondence")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="suite name or 'all'")
    v.add_argument("--m", type=int, default=None)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--roots", type=int, default=2,
                   help="largest number of formal roots per node")
    v.add_argument("--order", type=int, default=None,
                   help="degree window / order bound of the suite")
    v.add_argument("--loop-order", type=int, default=None,
                   help="level span for two-sided checks")
    v.add_argument("--module-bound", type=int, default=8,
                   help="index truncation of the shift module")
    v.add_argument("--level-bound", type=int, default=4)
    v.add_argument("--degree-bound", type=int, default=None)
    v.add_argument("--hbar", default="1")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mutation", choices=("kernel_sign", "drop_prefactor"),
                   default=None, help="run the suite with a planted defect")
    v.add_argument("--report", choices=("json", "text"), default="text")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reconstruct",
                       help="classify highest-weight data from JSON")
    r.add_argument("input", help="input file or '-' for stdin")
    r.add_argument("-o", "--output", default=None)
    r.add_argument("--max-deg", type=int, default=4)
    r.set_defaults(func=cmd_reconstruct)

    e = sub.add_parser("expand", help="print exact coefficients of a series")
    e.add_argument("name",
                   help="one of: G gamma g psi phi borel_t q_number")
    e.add_argument("--order", type=int, default=None)
    e.add_argument("--d", type=int, choices=(1, -1), default=1)
    e.add_argument("--n", type=int, default=2)
    e.set_defaults(func=cmd_expand)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
