"""Command-line front end: ``quadjordan <command> ...``.

Exit codes: 0 success, 1 a verification entry failed, 2 bad input,
3 a size or lattice budget was exceeded, 4 the question is undecidable from
the given data (missing field predicate, odd permutation).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .classifier import (InconsistentProfile, InsufficientProfile, Target, WitnessUnavailable,
                         certify, classify, load_profile)
from .constructions import ResultTooLarge, WitnessInvalid
from .exactfield import FieldError, make_tower
from .groupcore import (DEFAULT_CAP, DEFAULT_LATTICE_BUDGET, BudgetExceeded, CapExceeded,
                        jordan_constant, recognize)
from .groupspec import GroupSpecError, parse_group
from .permgroup import (CycleNotationError, CycleType, DegreeTooLarge, OddPermutation,
                        Permutation, class_splits_in_alternating, cycle_type, parity)
from .projgroup import parse_matrix, trace_sq_over_det
from .suite import DEFAULT_SEED, render_json, render_text, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_UNDECIDABLE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_jordan(args) -> int:
    G = parse_group(args.spec, max_order=args.max_order)
    cert = jordan_constant(G, args.max_lattice_steps)
    gens = [str(G.elements[i]) for i in cert.witness_generators]
    payload = {"group": args.spec, "order": G.order, "recognized": recognize(G),
               "jordan_constant": cert.constant, "witness_order": cert.witness_order,
               "witness_generators": gens, "normal_abelian_subgroups_examined": cert.audit}
    text = (f"J({args.spec}) = {cert.constant}\n"
            f"  |G| = {G.order}, recognized as {recognize(G)}\n"
            f"  witness: normal abelian subgroup of order {cert.witness_order}\n"
            f"  witness generators: {', '.join(gens) if gens else '(trivial)'}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    profile = load_profile(args.profile)
    results = classify(profile)
    payload = {"profile": profile.name, "predicates": profile.resolved().predicates(), "results": {}}
    lines = [f"{profile.name}: " + ", ".join(f"{k}={v}" for k, v in profile.resolved().predicates().items())]
    labels = {Target.M: "M(K)", Target.AUT: "J(Aut(P1 x P1))", Target.PGL2: "J(PGL2(K))"}
    status = EXIT_OK
    for target, res in results.items():
        if isinstance(res, InsufficientProfile):
            payload["results"][target.value] = {"value": None, "missing": list(res.missing)}
            lines.append(f"  {labels[target]} undetermined: missing {', '.join(res.missing)}")
            if target is Target.M:
                status = EXIT_UNDECIDABLE
            continue
        entry = {"value": res.value, "basis": res.basis, "certified": False}
        line = f"  {labels[target]} = {res.value}  ({res.basis})"
        if args.certify:
            try:
                cert = certify(profile, target, budget=args.max_lattice_steps)
                entry.update(certified=True, measured=cert.measured, realizer=cert.realizer)
                line += f"\n      certified: {cert.realizer} measures {cert.measured}"
            except WitnessUnavailable as exc:
                entry["not_certified"] = str(exc)
                line += f"\n      not certified: {exc}"
        payload["results"][target.value] = entry
        lines.append(line)
    _emit(args, payload, "\n".join(lines))
    if status == EXIT_UNDECIDABLE:
        missing = results[Target.M].missing
        sys.stderr.write(f"error: M(K) needs {', '.join(missing)}\n")
    return status


def cmd_verify_paper(args) -> int:
    report = run_suite(args.scope, fixture=args.fixture, seed=args.seed,
                       budget=args.max_lattice_steps)
    if args.format == "json":
        sys.stdout.write(render_json(report, args.timings))
    else:
        sys.stdout.write(render_text(report, args.timings))
    return EXIT_OK if report["failed"] == 0 else EXIT_FAIL


def _parse_cycle_type(text: str, degree) -> CycleType:
    try:
        parts = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise CliError(f"cycle type must look like 3,1,1: {text!r}", EXIT_INPUT) from None
    if not parts or min(parts) < 1:
        raise CliError(f"cycle lengths must be positive: {text!r}", EXIT_INPUT)
    if degree is not None:
        if sum(parts) > degree:
            raise CliError(f"cycle type {text} does not fit in degree {degree}", EXIT_INPUT)
        parts += [1] * (degree - sum(parts))
    return CycleType(parts)


def cmd_splits(args) -> int:
    t = _parse_cycle_type(args.cycle_type, args.deg)
    verdict = class_splits_in_alternating(t)
    payload = {"cycle_type": list(t), "degree": t.degree, "splits": verdict,
               "class_size_in_S_n": t.class_size()}
    word = "splits" if verdict else "does not split"
    _emit(args, payload, f"cycle type {list(t)} in A{t.degree}: {word}")
    return EXIT_OK


def cmd_trace_invariant(args) -> int:
    radicands = [r for r in args.tower.split(",") if r.strip()] if args.tower else []
    tower = make_tower(radicands)
    m = parse_matrix(args.matrix, tower)
    value = trace_sq_over_det(m)
    payload = {"matrix": str(m), "tower": str(tower), "tr2_over_det": value.to_expr()}
    _emit(args, payload, value.to_expr())
    return EXIT_OK


def cmd_perm(args) -> int:
    p = Permutation.from_cycles(args.cycles, args.deg)
    order, q = 1, p
    while not q.is_identity():
        q, order = q * p, order + 1
    payload = {"permutation": str(p), "degree": p.degree, "cycle_type": list(cycle_type(p)),
               "parity": parity(p), "order": order, "inverse": str(p.inverse())}
    text = (f"{p} in S{p.degree}: cycle type {list(cycle_type(p))}, {parity(p)}, "
            f"order {order}, inverse {p.inverse()}")
    _emit(args, payload, text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="output format (default text)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized sampling (default {DEFAULT_SEED})")
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS,
                        help=f"largest group to build (default {DEFAULT_CAP})")
    common.add_argument("--max-lattice-steps", type=int, default=argparse.SUPPRESS,
                        help=f"normal-subgroup search budget (default {DEFAULT_LATTICE_BUDGET})")

    parser = argparse.ArgumentParser(prog="quadjordan", parents=[common],
                                     description="Jordan constants of rational quadric automorphism groups.")
    parser.add_argument("--version", action="version", version=f"quadjordan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jordan", parents=[common], help="Jordan constant of a named group")
    p.add_argument("spec", help="group spec, e.g. A5, wreath2(S4), prod(A4,Cyc(3))")
    p.set_defaults(func=cmd_jordan)

    p = sub.add_parser("classify", parents=[common], help="decision tables for a field profile")
    p.add_argument("profile", help="builtin name (Q, R, C, Q(i), ...) or a JSON profile path")
    p.add_argument("--certify", action="store_true", help="build realizing groups and re-measure")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    p.add_argument("scope", nargs="?", choices=("fast", "all"), default="fast")
    p.add_argument("--fixture", help="alternative witnesses JSON file")
    p.add_argument("--timings", action="store_true", help="include wall times (not byte-stable)")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("splits", parents=[common], help="does an S_n class split in A_n?")
    p.add_argument("cycle_type", help="cycle lengths, e.g. 3,1,1")
    p.add_argument("--deg", type=int, help="degree n; missing points are fixed")
    p.set_defaults(func=cmd_splits)

    p = sub.add_parser("trace-invariant", parents=[common], help="tr^2/det of a 2x2 matrix")
    p.add_argument("matrix", help="e.g. [[0,1],[-1,0]]")
    p.add_argument("--tower", default="", help="comma-separated radicands, e.g. 5 or --tower=-1,5")
    p.set_defaults(func=cmd_trace_invariant)

    p = sub.add_parser("perm", parents=[common], help="inspect a permutation in cycle notation")
    p.add_argument("cycles", help="e.g. '(1 2 3)(4 5)'")
    p.add_argument("--deg", type=int, help="degree (default: largest point)")
    p.set_defaults(func=cmd_perm)
    return parser


_DEFAULTS = {"format": "text", "seed": DEFAULT_SEED, "max_order": DEFAULT_CAP,
             "max_lattice_steps": DEFAULT_LATTICE_BUDGET}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except (CapExceeded, BudgetExceeded, ResultTooLarge, DegreeTooLarge) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InsufficientProfile, OddPermutation) as exc:
        sys.stderr.write(f"undecidable: {exc}\n")
        return EXIT_UNDECIDABLE
    except (GroupSpecError, FieldError, CycleNotationError, InconsistentProfile,
            WitnessInvalid, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
