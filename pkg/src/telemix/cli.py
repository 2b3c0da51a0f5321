"""``telemix`` command line.

Exit codes: 0 success, 1 verification failure, 2 parse failure,
3 validation failure (message names the violated invariant).
"""
import argparse
import json
import sys

from . import constants, metrics, states, tables
from .closedform import closed_form
from .errors import BadShape, TelemixError

EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3

FAMILY_PARAMS = {"werner": ("fw",), "mems": ("c",), "wd": ("fw", "a"), "new": ("p",)}


class _ParseFailure(Exception):
    pass


def _add_family_flags(p):
    p.add_argument("--family", choices=sorted(FAMILY_PARAMS))
    for flag in ("fw", "a", "c", "p"):
        p.add_argument(f"--{flag}", type=float)


def _add_output_flags(p, formats=("csv", "json")):
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="telemix",
        description="Entanglement, Bell-CHSH and teleportation-fidelity metrics of two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="metrics of one family member or a matrix file (JSON)")
    _add_family_flags(p)
    p.add_argument("--matrix", help="path to a density matrix in {dim, entries} JSON")
    p.add_argument("--out")

    for name, text in (("table1", "Werner derivative vs GHZ/W mixture at printed points"),
                       ("table2", "all four families at equal linear entropy")):
        _add_output_flags(sub.add_parser(name, help=text))

    p = sub.add_parser("fig1", help="Werner and MEMS fidelity against linear entropy")
    p.add_argument("--step", type=float, default=0.01)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="definitional vs closed-form metrics along one family")
    p.add_argument("--family", choices=sorted(FAMILY_PARAMS), required=True)
    p.add_argument("--a", type=float, help="fixed a for the wd family")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--simulate", action="store_true",
                   help="add the standard-protocol six-state average fidelity")
    _add_output_flags(p)

    p = sub.add_parser("constants", help="named thresholds with exact expressions")
    _add_output_flags(p, formats=("json", "csv"))

    p = sub.add_parser("verify", help="run the cross-pipeline invariant suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples (full level)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slin", type=float, default=None, help=argparse.SUPPRESS)
    p.add_argument("--out")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
        return states.matrix_from_json(raw)
    except (OSError, json.JSONDecodeError, BadShape) as exc:
        raise _ParseFailure(f"cannot read matrix file {path!r}: {exc}") from exc


def cmd_analyze(args):
    if (args.family is None) == (args.matrix is None):
        raise _ParseFailure("give exactly one of --family or --matrix")
    if args.matrix is not None:
        rho = states.validate_density(_load_matrix(args.matrix))
        spec = None
    else:
        missing = [k for k in FAMILY_PARAMS[args.family] if getattr(args, k) is None]
        if missing:
            raise _ParseFailure(f"--family {args.family} needs " + ", ".join(f"--{k}" for k in missing))
        spec = states.family_from_tag(
            args.family, **{k: getattr(args, k) for k in FAMILY_PARAMS[args.family]})
        rho = states.make_state(spec)
    report = metrics.analyze(rho).to_json()
    if spec is not None:
        report = {"family": spec.tag, "params": {k: getattr(spec, k) for k in FAMILY_PARAMS[spec.tag]},
                  **report, "closed_form": closed_form(spec).to_json()}
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def cmd_table(builder):
    def run(args):
        _emit(builder().render(args.format), args.out)
        return 0
    return run


def cmd_fig1(args):
    _emit(tables.fig1(args.step).render(args.format), args.out)
    return 0


def cmd_sweep(args):
    if args.family == "wd" and args.a is None:
        raise _ParseFailure("--family wd needs --a")
    t = tables.sweep(args.family, args.step, a=args.a, simulate=args.simulate)
    _emit(t.render(args.format), args.out)
    return 0


def cmd_constants(args):
    data = constants.as_dict()
    if args.format == "json":
        text = json.dumps(data, indent=2) + "\n"
    else:
        lines = ["name,expr,value"] + [f"{k},{v['expr']},{v['value']:.17g}" for k, v in data.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args):
    from .verify import run_checks

    report = run_checks(args.level, samples=args.samples, seed=args.seed)
    _emit(report.render(), args.out)
    return 0 if report.ok else EXIT_VERIFY_FAILED


COMMANDS = {
    "analyze": cmd_analyze,
    "table1": cmd_table(tables.table1),
    "table2": cmd_table(tables.table2),
    "fig1": cmd_fig1,
    "sweep": cmd_sweep,
    "constants": cmd_constants,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        return COMMANDS[args.command](args)
    except _ParseFailure as exc:
        parser.print_usage(sys.stderr)
        print(f"telemix: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TelemixError as exc:
        print(f"telemix: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
