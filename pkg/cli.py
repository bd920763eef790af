import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from app import app, configure_logging
from models import (
    NilcoverError,
    Orbit,
    OutputEnvelope,
    ParseError,
    Partition,
    ReportWriteError,
    Series,
)
from cover import cover_report
from induction import (
    induction_steps,
    is_birationally_rigid_orbit,
    namikawa_orbit,
    rigid_levi_orbit,
)
from oracle import run_suite
from orbit import (
    dim_orbit,
    enumerate_orbits,
    h2_orbit,
    h2_universal_cover,
    orbit_table,
    pi1_adjoint,
)
from partition import (
    diagram,
    parse_algebra,
    parse_blocks,
    parse_partition,
    singular_set,
    special_indices,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CONSISTENCY = 4
EXIT_IO = 5

COMMANDS = ("orbit", "degenerations", "induce", "enumerate", "check", "report")

DEGENERATION_COLUMNS = {
    'child': 'beta',
    'q': 'q',
    'case': 'case',
    'k': 'k',
    'd_m': 'd_m',
    'closure': 'closure',
    'hm': 'H_m',
    'cover': 'cover',
    'dim_orbit_leaf': 'dim P_m (orbit)',
    'dim_cover_leaf': 'dim P_m (cover)',
    'etale': 'etale',
}


def _algebra_warnings(g) -> List[str]:
    warnings = []
    if not g.is_simple:
        warnings.append(f"{g.name} is not simple; results are reported for the partition combinatorics only")
    return warnings


def _load_orbit(args) -> Orbit:
    g = parse_algebra(args.algebra)
    p = Partition.from_text(args.partition)
    return Orbit.from_parts(g, p.parts)


def orbit_payload(o: Orbit) -> Dict[str, Any]:
    """Everything cmd_orbit reports, in plain JSON types"""
    levi, source = rigid_levi_orbit(o)
    pi1 = pi1_adjoint(o)
    return {
        'algebra': o.algebra.name,
        'partition': o.partition.to_list(),
        'valid': True,
        'very_even': o.very_even,
        'dimension': dim_orbit(o),
        'pi1_exponent': pi1.exponent,
        'pi1': str(pi1),
        'h2_orbit': h2_orbit(o),
        'h2_universal_cover': h2_universal_cover(o),
        'h2_universal_cover_derived': True,
        'special_at': special_indices(o.partition, o.algebra),
        'singular_set': [sd.to_dict() for sd in singular_set(o.partition)],
        'rigid_levi': dict(levi.to_dict(), source=source.to_list()),
        'birationally_rigid': is_birationally_rigid_orbit(o),
        'namikawa': namikawa_orbit(o).to_dict(),
    }


def degeneration_rows(o: Orbit) -> List[Dict[str, Any]]:
    rows = []
    for leaf in cover_report(o).leaves:
        record = leaf.to_dict()
        record['closure'] = str(leaf.closure)
        record['cover'] = str(leaf.cover)
        record['hm'] = str(leaf.hm)
        rows.append(record)
    return rows


def cmd_orbit(args) -> Tuple[Dict[str, Any], List[str]]:
    o = _load_orbit(args)
    result = orbit_payload(o)
    if args.diagram:
        result['diagram'] = diagram(o.partition).splitlines()
    warnings = _algebra_warnings(o.algebra)
    warnings.append("h2_universal_cover is derived from the centre of the reductive centralizer")
    return result, warnings


def cmd_degenerations(args) -> Tuple[Dict[str, Any], List[str]]:
    o = _load_orbit(args)
    result = {
        'algebra': o.algebra.name,
        'partition': o.partition.to_list(),
        'children': degeneration_rows(o),
    }
    if args.diagram:
        result['diagram'] = diagram(o.partition).splitlines()
    return result, _algebra_warnings(o.algebra)


def cmd_induce(args) -> Tuple[Dict[str, Any], List[str]]:
    g = parse_algebra(args.algebra)
    p0 = parse_partition(args.partition)
    blocks = parse_blocks(args.blocks)
    steps = induction_steps(p0, blocks, g)
    induced = steps[-1].after if steps else p0
    result = {
        'target': g.name,
        'source_algebra': g.with_size(g.size - 2 * sum(blocks)).name,
        'source': p0.to_list(),
        'blocks': blocks,
        'induced': induced.to_list(),
        'steps': [step.to_dict() for step in steps],
        'birational': all(step.birational for step in steps),
    }
    return result, _algebra_warnings(g)


def cmd_enumerate(args) -> Tuple[Dict[str, Any], List[str]]:
    g = parse_algebra(args.algebra)
    return {'algebra': g.name, 'count': len(enumerate_orbits(g)), 'orbits': orbit_table(g)}, _algebra_warnings(g)


def cmd_check(args) -> Tuple[Dict[str, Any], List[str]]:
    try:
        series = Series(args.series.lower())
    except ValueError:
        raise ParseError(f"Unknown series {args.series!r}; expected so or sp")
    bound = args.bound_flag or args.bound
    if bound is None:
        bound = app.suite_bound_sp if series is Series.SP else app.suite_bound_so
    jobs = args.jobs if args.jobs is not None else app.jobs
    report = run_suite(series, bound, n_jobs=jobs)
    result = dict(report.to_dict(), series=series.value, bound=bound)
    return result, []


def cmd_report(args) -> Tuple[Dict[str, Any], List[str]]:
    from report_generator import generate_pdf_report

    o = _load_orbit(args)
    content = {
        'orbit': orbit_payload(o),
        'children': degeneration_rows(o),
        'cover': cover_report(o).namikawa.to_dict(),
    }
    title = f"Orbit {o.partition or '0'} in {o.algebra.name}"
    path = generate_pdf_report(title, 'orbit', content, output_path=args.output)
    return {'algebra': o.algebra.name, 'partition': o.partition.to_list(), 'path': path}, _algebra_warnings(o.algebra)


class _UsageParser(argparse.ArgumentParser):
    """Usage errors raise ParseError instead of exiting"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _UsageParser(
        prog="nilcover",
        description="Nilpotent orbits of so_N and sp_N: codimension 2 leaves, universal covers and induction",
    )
    # Flags shared by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print one JSON envelope on stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log to stderr (-vv for debug)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    # Orbit queries
    orbit_parser = subparsers.add_parser("orbit", parents=[common], help="Invariants of one orbit")
    orbit_parser.add_argument("algebra", help="so<N> or sp<N>")
    orbit_parser.add_argument("partition", help="Comma separated parts, \"\" or 0 for the zero orbit")
    orbit_parser.add_argument("--diagram", action="store_true", help="Include the Young diagram")
    orbit_parser.set_defaults(handler=cmd_orbit)

    degen_parser = subparsers.add_parser("degenerations", parents=[common], help="Codimension 2 children")
    degen_parser.add_argument("algebra")
    degen_parser.add_argument("partition")
    degen_parser.add_argument("--diagram", action="store_true")
    degen_parser.set_defaults(handler=cmd_degenerations)

    # Induction and enumeration
    induce_parser = subparsers.add_parser("induce", parents=[common], help="Induce through gl blocks")
    induce_parser.add_argument("algebra", help="Target algebra")
    induce_parser.add_argument("partition", help="Source partition in the residual algebra")
    induce_parser.add_argument("--blocks", required=True, help="Comma separated gl block sizes, applied left to right")
    induce_parser.set_defaults(handler=cmd_induce)

    enumerate_parser = subparsers.add_parser("enumerate", parents=[common], help="List all orbits")
    enumerate_parser.add_argument("algebra")
    enumerate_parser.set_defaults(handler=cmd_enumerate)

    # Consistency suite and reports
    check_parser = subparsers.add_parser("check", parents=[common], help="Run the consistency suite")
    check_parser.add_argument("series", help="so or sp")
    check_parser.add_argument("bound", nargs="?", type=int, default=None, help="Largest N to check")
    check_parser.add_argument("--bound", dest="bound_flag", type=int, default=None)
    check_parser.add_argument("--jobs", type=int, default=None, help="joblib workers")
    check_parser.set_defaults(handler=cmd_check)

    report_parser = subparsers.add_parser("report", parents=[common], help="Write a PDF orbit report")
    report_parser.add_argument("algebra")
    report_parser.add_argument("partition")
    report_parser.add_argument("--output", default=None, help="PDF path, defaults to the reports directory")
    report_parser.set_defaults(handler=cmd_report)
    return parser


def _render_human(command: str, result: Dict[str, Any]) -> str:
    # Tables for list-shaped results
    if command == "degenerations":
        lines = []
        if result.get('diagram'):
            lines.extend(result['diagram'])
        if not result['children']:
            lines.append("no codimension 2 children")
            return "\n".join(lines)
        frame = pd.DataFrame(result['children'])
        frame['child'] = frame['child'].map(lambda parts: ",".join(map(str, parts)) or "0")
        frame = frame[list(DEGENERATION_COLUMNS)].rename(columns=DEGENERATION_COLUMNS)
        lines.append(frame.to_string(index=False))
        return "\n".join(lines)
    if command == "enumerate":
        frame = pd.DataFrame(result['orbits'])
        return f"{result['algebra']}: {result['count']} orbits\n{frame.to_string(index=False)}"
    if command == "induce":
        lines = [f"{result['source_algebra']} ({','.join(map(str, result['source'])) or '0'}) -> "
                 f"{result['target']} ({','.join(map(str, result['induced']))})"]
        if result['steps']:
            frame = pd.DataFrame(result['steps'])
            for column in ('before', 'raised', 'after'):
                frame[column] = frame[column].map(lambda parts: ",".join(map(str, parts)) or "0")
            lines.append(frame.to_string(index=False))
        lines.append(f"birational: {str(result['birational']).lower()}")
        return "\n".join(lines)
    if command == "check":
        lines = [f"{result['series']} up to {result['bound']}: {result['checks_run']} checks, "
                 f"{len(result['failures'])} failures"]
        if result['failures']:
            lines.append(pd.DataFrame(result['failures']).to_string(index=False))
        return "\n".join(lines)
    # Key: value lines for a single orbit
    if command == "orbit":
        lines = []
        for key, value in result.items():
            if key == 'diagram':
                continue
            if key == 'namikawa':
                leaves = ", ".join(f"{leaf['m']}: {leaf['dim']}" for leaf in value['leaves']) or "none"
                value = f"total {value['dim_total']} = smooth {value['dim_smooth']} + leaves {{{leaves}}}"
            elif key == 'singular_set':
                value = "{" + ", ".join(f"{sd['m']} (d={sd['d_m']})" for sd in value) + "}"
            elif key == 'rigid_levi':
                value = f"{value['notation']} from ({','.join(map(str, value['source'])) or '0'})"
            lines.append(f"{key}: {value}")
        if result.get('diagram'):
            lines.extend(result['diagram'])
        return "\n".join(lines)
    return "\n".join(f"{key}: {value}" for key, value in result.items())


def _emit(envelope: OutputEnvelope, as_json: bool):
    for warning in envelope.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if as_json:
        print(json.dumps(envelope.to_dict(), indent=2, sort_keys=False))
    elif 'error' not in envelope.result:
        print(_render_human(envelope.command, envelope.result))


def _failure(command: str, error: Exception, code: int) -> Dict[str, Any]:
    logging.error(f"{command or 'nilcover'} failed with exit code {code}: {error}")
    print(f"error: {error}", file=sys.stderr)
    return {'error': str(error), 'exit_code': code}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_PARSE
    except ParseError as e:
        command = next((token for token in argv if token in COMMANDS), "")
        result = _failure(command, e, EXIT_PARSE)
        _emit(OutputEnvelope(command=command, result=result), "--json" in argv)
        return EXIT_PARSE

    if args.verbose:
        configure_logging(logging.DEBUG if args.verbose > 1 else logging.INFO)

    warnings: List[str] = []
    try:
        result, warnings = args.handler(args)
        code = EXIT_OK
        if args.command == "check" and not result['passed']:
            code = EXIT_CONSISTENCY
    except ParseError as e:
        code = EXIT_PARSE
        result = _failure(args.command, e, code)
    except ReportWriteError as e:
        code = EXIT_IO
        result = _failure(args.command, e, code)
    except NilcoverError as e:
        code = EXIT_DOMAIN
        result = _failure(args.command, e, code)
    except Exception as e:
        logging.exception(f"Unexpected error in {args.command}")
        code = EXIT_INTERNAL
        result = _failure(args.command, e, code)

    _emit(OutputEnvelope(command=args.command, result=result, warnings=tuple(warnings)), args.json)
    logging.debug(f"{args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
