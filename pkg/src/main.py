"""
Main Application for the Equivariant Operad Workbench
Command-line entry point: enumerations, property checks, extension runs and the worked examples.

To run this application:
1. Make sure you're in the project root directory
2. Run: python -m src.main --help

Exit codes: 0 when every check passed, 1 when a check failed, 2 on invalid input.
"""

import argparse
import logging
import sys
import time
from typing import List, Optional

from src.components.report_view import RunReport
from src.core.colors import Signature
from src.core.groups import named_group
from src.services.serialization import decode_colors, decode_signature, load_document
from src.services.verification_service import trivial_colors, verification_service
from src.services.worked_examples import worked_example_service
from src.utils.config import CLI_CONFIG, ENGINE_CONFIG, EXIT_CODES
from src.utils.helpers import OperadWorkbenchError, parse_arity_range, parse_int_list, safe_int, setup_logging

logger = logging.getLogger(__name__)

# ==================== ARGUMENT PARSING ====================

def build_parser() -> argparse.ArgumentParser:
    """Subcommand parser; the shared flags are accepted after every subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=CLI_CONFIG['formats'], default=CLI_CONFIG['default_format'])
    common.add_argument('--seed', type=int, default=CLI_CONFIG['default_seed'])
    common.add_argument('--bound', type=int, default=None)
    common.add_argument('--arity-range', default=CLI_CONFIG['default_arity_range'])
    common.add_argument('--timing', action='store_true', default=CLI_CONFIG['show_timing'])
    common.add_argument('--log-level', default=None)

    parser = argparse.ArgumentParser(prog=CLI_CONFIG['prog'],
                                     description='Equivariant colored operads over finite sets')
    commands = parser.add_subparsers(dest='command', required=True)

    enumerate_cmd = commands.add_parser('enumerate', parents=[common], help='list subgroups or trees')
    enumerate_cmd.add_argument('kind', choices=['subgroups', 'graph-subgroups', 'trees', 'alternating'])
    enumerate_cmd.add_argument('--group', default='trivial')
    enumerate_cmd.add_argument('--arity', type=int, default=None)
    enumerate_cmd.add_argument('--vertex-arities', default=None, help="comma separated, e.g. '2' for binary trees")
    enumerate_cmd.add_argument('--max-vertex-arity', type=int, default=ENGINE_CONFIG['default_max_arity'])
    enumerate_cmd.add_argument('--equivariant', action='store_true')
    enumerate_cmd.add_argument('--input', default=None, help='JSON file with a "colors" entry')
    enumerate_cmd.add_argument('--signature', default=None, help="signature such as 'a,b;c' (with --input)")

    check_cmd = commands.add_parser('check', parents=[common], help='verify a property of an input file')
    check_cmd.add_argument('kind', choices=['family', 'pseudo-indexing', 'operad-laws', 'f-equivalence'])
    check_cmd.add_argument('input')

    extend_cmd = commands.add_parser('extend', parents=[common], help='compute a free operad extension')
    extend_cmd.add_argument('problem')
    extend_cmd.add_argument('--export', default=None, help='write the extension as a table operad JSON file')

    commands.add_parser('examples', parents=[common], help='replay the worked examples')
    return parser

# ==================== COMMANDS ====================

def _target_signature(args):
    """Colors and target signature from --input/--signature or one trivial color"""
    if args.input:
        doc = load_document(args.input)
        colors = decode_colors(doc, doc.require(doc.data, 'colors', 'document'))
        if not args.signature:
            doc.fail('--signature is required with --input')
        return colors, decode_signature(doc, colors, args.signature)
    colors = trivial_colors(args.group)
    arity = args.arity if args.arity is not None else 2
    return colors, Signature((0,) * arity, 0)


def run_enumerate(args, report: RunReport) -> RunReport:
    if args.kind == 'subgroups':
        return verification_service.enumerate_subgroups(report, named_group(args.group))
    if args.kind == 'graph-subgroups':
        arities = [args.arity] if args.arity is not None else list(parse_arity_range(args.arity_range))
        return verification_service.enumerate_graph_subgroups(report, named_group(args.group), arities)
    colors, target = _target_signature(args)
    if args.kind == 'trees':
        if args.vertex_arities:
            vertex_arities = parse_int_list(args.vertex_arities)
        else:
            vertex_arities = list(range(2, max(target.arity, 2) + 1))
        bound = args.bound if args.bound is not None else ENGINE_CONFIG['default_bound']
        return verification_service.enumerate_trees(report, colors, target, bound, vertex_arities, args.equivariant)
    k = args.bound if args.bound is not None else 1
    return verification_service.enumerate_alternating(report, colors, target, k, args.max_vertex_arity)


def run_check(args, report: RunReport) -> RunReport:
    doc = load_document(args.input)
    if args.kind == 'family':
        return verification_service.check_family(report, doc)
    if args.kind == 'pseudo-indexing':
        bound = args.bound if args.bound is not None else ENGINE_CONFIG['default_tree_bound']
        return verification_service.check_pseudo_indexing(report, doc, bound)
    if args.kind == 'operad-laws':
        return verification_service.check_operad_laws(report, doc, args.seed)
    return verification_service.check_f_equivalence(report, doc)


def run_extend(args, report: RunReport) -> RunReport:
    return verification_service.extend(report, load_document(args.problem), args.bound, args.export)


def run_examples(args, report: RunReport) -> RunReport:
    return worked_example_service.replay_all(report)


COMMANDS = {
    'enumerate': run_enumerate,
    'check': run_check,
    'extend': run_extend,
    'examples': run_examples,
}

# ==================== MAIN ====================

def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return safe_int(e.code, EXIT_CODES['input_error'])
    setup_logging(args.log_level)

    report = RunReport(command=[CLI_CONFIG['prog']] + argv)
    started = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except OperadWorkbenchError as e:
        print(str(e), file=sys.stderr)
        return EXIT_CODES['input_error']
    report.wall_time = time.perf_counter() - started

    print(report.render(args.format, timing=args.timing))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
