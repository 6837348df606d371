'''
Command line front end.

    nf <expr>                                   print the normal form of an expression
    verify --suite NAME [--pmax N] [--sig R,S] [--deg D] [--trials T] [--seed S]
    solve --parity even|odd --p P [--max-order K] [--generic-w]
    constants --parity even|odd --pmax P

Every subcommand accepts --json PATH, which writes the run's Report as one JSON document, and
--verbose. The exit code is 0 when no case failed, 1 when some case failed and 2 on bad input.
'''

import logging
import sys

from argparse import SUPPRESS, ArgumentParser

from ambient_dirac.base import (
    DEFAULT_PMAX,
    DEFAULT_SEED,
    CaseStatus,
    EngineError,
    NotProportional,
    Parity,
    UsageError
)
from ambient_dirac.clifford import Signature
from ambient_dirac.expressions import format_element, normal_form
from ambient_dirac.reports import Report
from ambient_dirac.solvers import (
    critical_weight,
    even_extend,
    make_symbol,
    odd_extend,
    op_L,
    op_R
)
from ambient_dirac.suites import SUITES, run_suite, verify_constants
from ambient_dirac.weighted import W, scalar_to_string


EXIT_FAILED = 1
EXIT_USAGE = 2
LOG_FORMAT = '%(levelname)s %(module)s: %(message)s'


def build_parser() -> ArgumentParser:
    # --json and --verbose are accepted before or after the subcommand
    common = ArgumentParser(add_help=False)
    common.add_argument('--json', dest='json_path', metavar='PATH', default=SUPPRESS,
        help='Write the report as JSON to this file')
    common.add_argument('--verbose', '-v', action='store_true', default=SUPPRESS,
        help='Log debugging output to stderr')

    parser = ArgumentParser(prog='ambient_dirac', parents=[common],
        description='Exact verification engine for ambient Dirac operator identities')
    subparsers = parser.add_subparsers(dest='command', required=True)

    nf = subparsers.add_parser('nf', parents=[common], help='Print the normal form of an expression')
    nf.add_argument('expression', help='An expression such as "[Q,y] + 1/2*x*y^2"')

    verify = subparsers.add_parser('verify', parents=[common], help='Run a verification suite')
    verify.add_argument('--suite', required=True, choices=list(SUITES))
    verify.add_argument('--pmax', type=int)
    verify.add_argument('--sig', action='append', metavar='R,S',
        help='Signature for the flat suites; may be repeated')
    verify.add_argument('--deg', type=int)
    verify.add_argument('--trials', type=int)
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED)

    solve = subparsers.add_parser('solve', parents=[common], help='Run an extension solver')
    solve.add_argument('--parity', required=True)
    solve.add_argument('--p', type=int, required=True)
    solve.add_argument('--max-order', type=int)
    solve.add_argument('--generic-w', action='store_true',
        help='Solve at a generic weight instead of the critical one')

    constants = subparsers.add_parser('constants', parents=[common],
        help='Tabulate proportionality constants')
    constants.add_argument('--parity', required=True)
    constants.add_argument('--pmax', type=int, default=DEFAULT_PMAX)

    return parser


def command_nf(args) -> Report:
    element = normal_form(args.expression)
    text = format_element(element)
    print(text)
    report = Report('nf')
    report.add_case(args.expression, CaseStatus.PASS, computed=text)
    return report

def command_verify(args) -> Report:
    signatures = [Signature.from_string(sig) for sig in args.sig] if args.sig else None
    report = run_suite(args.suite, pmax=args.pmax, seed=args.seed, signatures=signatures,
        deg=args.deg, trials=args.trials)
    print(report.table())
    return report

def command_solve(args) -> Report:
    parity = Parity.from_string(args.parity)
    if args.p < 1:
        raise UsageError(f'--p must be a positive integer, got {args.p}')
    weight = W if args.generic_w else critical_weight(parity, args.p)
    sigma = make_symbol(weight)
    max_order = args.max_order or 2 * args.p + 2
    solver = even_extend if parity == Parity.EVEN else odd_extend
    result = solver(sigma, max_order=max_order)

    report = Report('solve', name=f'{parity.name.lower()} p={args.p}')
    report.add_case('weight', CaseStatus.PASS, computed=scalar_to_string(result.weight))
    report.add_case('representative', CaseStatus.PASS, computed=str(result.representative))
    report.add_case('solvable_to', CaseStatus.PASS, computed=str(result.solvable_to))
    report.add_case('denominators', CaseStatus.PASS,
        computed=', '.join(scalar_to_string(d) for d in result.denominators))
    if result.obstructed:
        report.add_case('obstruction', CaseStatus.PASS, computed=str(result.top_obstruction()),
            note=f'defect slot {result.obstruction_slot}')
    else:
        report.add_case('obstruction', CaseStatus.PASS, computed='none')
    if not args.generic_w:
        report.add_case('L', CaseStatus.PASS, computed=str(op_L(parity, args.p, sigma)))
        report.add_case('R', CaseStatus.PASS, computed=str(op_R(parity, args.p, sigma)))

    for case in report.cases:
        line = f'{case.id}: {case.computed}'
        print(f'{line}  ({case.note})' if case.note else line)
    return report

def command_constants(args) -> Report:
    parity = Parity.from_string(args.parity)
    if args.pmax < 1:
        raise UsageError(f'--pmax must be at least 1, got {args.pmax}')
    report = verify_constants(pmax=args.pmax, parity=parity)
    name = parity.name.lower()
    print('p  c')
    for p in range(1, args.pmax + 1):
        for case in report.cases:
            if case.id == f'constants/{name}/p={p}':
                print(f'{p}  {case.computed}')
    failed = [case for case in report.cases if case.status == CaseStatus.FAIL]
    for case in failed:
        print(f'FAIL {case.id}: expected {case.expected}, computed {case.computed}', file=sys.stderr)
    return report


COMMANDS = {
    'nf': command_nf,
    'verify': command_verify,
    'solve': command_solve,
    'constants': command_constants,
}


def main(argv: list[str] = None) -> int:
    '''
    Runs the command line and returns the exit code.
    '''

    parser = build_parser()
    args = parser.parse_args(argv)
    verbose = getattr(args, 'verbose', False)
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format=LOG_FORMAT)

    try:
        report = COMMANDS[args.command](args)
    except NotProportional as error:
        print(f'error: {error.message}', file=sys.stderr)
        return EXIT_FAILED
    except EngineError as error:
        print(f'error: {error.message}', file=sys.stderr)
        return EXIT_USAGE

    json_path = getattr(args, 'json_path', None)
    if json_path:
        report.save(json_path)
    return report.exit_code

if __name__ == '__main__':
    sys.exit(main())
