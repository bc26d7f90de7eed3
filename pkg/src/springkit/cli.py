"""``spring`` command line: run, test, bless, graph, numdiff."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from springkit import harness, numdiff, pipeline
from springkit.ode import IntegrationError
from springkit.scenario import ScenarioError, format_trajectory


def _tolerance(parser, args) -> numdiff.Tolerance:
    try:
        return numdiff.Tolerance(args.absolute, args.relative)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_run(parser, args) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
        output, traj = pipeline.simulate(text, time_step=args.dt)
    except (OSError, ScenarioError) as exc:
        print(f"spring: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"spring: invalid scenario: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"spring: integration failed: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(output)
    if args.trajectory:
        Path(args.trajectory).write_text(format_trajectory(traj), encoding="utf-8")
    return 0


def cmd_test(parser, args) -> int:
    report, code = harness.run_all(args.directory, _tolerance(parser, args), jobs=args.jobs)
    (sys.stderr if code == 2 else sys.stdout).write(report)
    return code


def cmd_bless(parser, args) -> int:
    summary, code = harness.bless(args.directory, args.names or None)
    (sys.stderr if code == 2 else sys.stdout).write(summary)
    return code


def cmd_graph(parser, args) -> int:
    try:
        graph = harness.lineage_graph(args.directory)
    except (OSError, ValueError) as exc:
        print(f"spring: {exc}", file=sys.stderr)
        return 2
    dot = graph.to_dot()
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
    else:
        sys.stdout.write(dot)
    if args.matrix:
        Path(args.matrix).write_text(graph.matrix_csv(), encoding="utf-8")
    return 0


def cmd_numdiff(parser, args) -> int:
    return numdiff.run(args.reference, args.candidate, _tolerance(parser, args))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spring", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one scenario and print the final state")
    p.add_argument("input", metavar="INPUT.json")
    p.add_argument("--trajectory", metavar="OUT.csv", help="also write sampled trajectory as CSV")
    p.add_argument("--dt", type=float, help="override the scenario's time step")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("test", help="run every testcase in DIR against its reference")
    p.add_argument("directory", metavar="DIR")
    numdiff.add_tolerance_arguments(p)
    p.add_argument("-j", "--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("bless", help="overwrite references with current output")
    p.add_argument("directory", metavar="DIR")
    p.add_argument("names", nargs="*", metavar="NAME", help="input file names (default: all)")
    p.set_defaults(func=cmd_bless)

    p = sub.add_parser("graph", help="write the test lineage graph as DOT")
    p.add_argument("directory", metavar="DIR")
    p.add_argument("-o", "--output", metavar="GRAPH.dot", help="default: stdout")
    p.add_argument("--matrix", metavar="OUT.csv", help="also write the full distance matrix")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("numdiff", help="compare two files with numeric tolerances")
    numdiff.add_tolerance_arguments(p)
    p.add_argument("reference", metavar="REF")
    p.add_argument("candidate", metavar="OUT")
    p.set_defaults(func=cmd_numdiff)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
