"""Command line driver.

Exit codes: 0 the run completed, 1 a lemma check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .errors import ListAgreementError
from .generators import complete_complex, spherical_building
from .harness import ExperimentConfig, Report, emit_report, run_experiment
from .representation import build_representation


def _add_io(parser, needs_complex=True, needs_input=True):
    if needs_complex:
        parser.add_argument("--complex", required=True, help="complex JSON path")
    if needs_input:
        parser.add_argument("--input", required=True, help="input JSON path")
    parser.add_argument("--out", help="report path (stdout if omitted)")


def _add_mode(parser):
    parser.add_argument(
        "--mode",
        choices=("exhaustive", "montecarlo", "single"),
        default="exhaustive",
    )
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--csv", help="per-trial CSV path (montecarlo mode)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="listagreement",
        description="Testers and oracles for list agreement on weighted complexes",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a complex as JSON")
    gen.add_argument("family", choices=("complete", "building"))
    gen.add_argument("--n", type=int)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--p", type=int)
    gen.add_argument("--out")

    rep = sub.add_parser("represent", help="emit a representation complex")
    rep.add_argument("--complex", required=True)
    rep.add_argument("--k", type=int, required=True)
    rep.add_argument("--out")

    tla = sub.add_parser("test-list-agreement", help="run the agreement tester")
    _add_io(tla)
    _add_mode(tla)
    tla.add_argument("--oracle", action="store_true", help="also run the distance oracle")
    tla.add_argument(
        "--measure-constants",
        action="store_true",
        help="measure gamma and the tester constant (exhaustive Cheeger, slow)",
    )

    tds = sub.add_parser("test-direct-sum", help="run the direct-sum tester")
    _add_io(tds)
    _add_mode(tds)
    tds.add_argument("--k", type=int, required=True)
    tds.add_argument("--oracle", action="store_true")

    tcb = sub.add_parser("test-coboundary", help="run the empty-triangle tester")
    _add_io(tcb)
    _add_mode(tcb)
    tcb.add_argument("--k", type=int, required=True)
    tcb.add_argument(
        "--check",
        action="store_true",
        help="verify the tester distance bound against the exhaustive oracle",
    )

    orc = sub.add_parser("oracle", help="exact distance oracles")
    orc.add_argument(
        "which", choices=("dist-agreeing", "dist-coboundary", "dist-direct-sum")
    )
    _add_io(orc)
    orc.add_argument("--k", type=int)

    demo = sub.add_parser("demo", help="lemma-level demonstrations")
    demo_sub = demo.add_subparsers(dest="demo_command", required=True)
    bc = demo_sub.add_parser("building-cycle")
    bc.add_argument("--p", type=int, required=True)
    bc.add_argument("--d", type=int, default=1)
    bc.add_argument("--out")
    lb = demo_sub.add_parser("lower-bound")
    lb.add_argument("--l", type=int, required=True)
    lb.add_argument("--seed", type=int, default=0)
    lb.add_argument("--out")
    return ap


def _finish(report: Report, args) -> int:
    emit = emit_report(report, "json", getattr(args, "out", None))
    if getattr(args, "out", None) is None:
        sys.stdout.write(emit)
    if getattr(args, "csv", None) and report.trial_rows is not None:
        emit_report(report, "csv", args.csv)
    return 0 if report.all_passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            if args.family == "complete":
                if args.n is None:
                    raise ListAgreementError("gen complete needs --n")
                X = complete_complex(args.n, args.d)
            else:
                if args.p is None:
                    raise ListAgreementError("gen building needs --p")
                X = spherical_building(args.p, args.d).complex
            text = jsonio.dump_json(jsonio.complex_to_json(X), args.out)
            if args.out is None:
                sys.stdout.write(text)
            return 0
        if args.command == "represent":
            X = jsonio.complex_from_json(jsonio.load_json(args.complex))
            rep = build_representation(X, args.k)
            payload = jsonio.complex_to_json(rep)
            payload["vertex_k_faces"] = [list(f) for f in rep.kfaces]
            text = jsonio.dump_json(payload, args.out)
            if args.out is None:
                sys.stdout.write(text)
            return 0
        if args.command == "test-list-agreement":
            config = ExperimentConfig(
                kind="list-agreement",
                complex_json=jsonio.load_json(args.complex),
                input_json=jsonio.load_json(args.input),
                mode=args.mode,
                trials=args.trials,
                seed=args.seed,
                run_oracle=args.oracle,
                measure_constants=args.measure_constants,
            )
            return _finish(run_experiment(config), args)
        if args.command == "test-direct-sum":
            config = ExperimentConfig(
                kind="direct-sum",
                complex_json=jsonio.load_json(args.complex),
                input_json=jsonio.load_json(args.input),
                k=args.k,
                mode=args.mode,
                trials=args.trials,
                seed=args.seed,
                run_oracle=args.oracle,
            )
            return _finish(run_experiment(config), args)
        if args.command == "test-coboundary":
            config = ExperimentConfig(
                kind="coboundary",
                complex_json=jsonio.load_json(args.complex),
                input_json=jsonio.load_json(args.input),
                k=args.k,
                mode=args.mode,
                trials=args.trials,
                seed=args.seed,
                run_oracle=args.check,
            )
            return _finish(run_experiment(config), args)
        if args.command == "oracle":
            config = ExperimentConfig(
                kind="oracle-%s" % args.which,
                complex_json=jsonio.load_json(args.complex),
                input_json=jsonio.load_json(args.input),
                k=args.k,
            )
            return _finish(run_experiment(config), args)
        if args.command == "demo":
            if args.demo_command == "building-cycle":
                config = ExperimentConfig(
                    kind="demo-building-cycle", p=args.p, d=args.d
                )
            else:
                config = ExperimentConfig(
                    kind="demo-lower-bound", l=args.l, seed=args.seed
                )
            return _finish(run_experiment(config), args)
        raise ListAgreementError("unknown command")
    except ListAgreementError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
