'''Command-line entrypoint for zh-bilinear.

Every subcommand prints one JSON document (sorted keys, no whitespace) or,
where a family or table is produced, CSV with ``--format csv``. Exit codes:
0 success, 1 a verification failed, 2 usage error, 3 budget exceeded.
'''

import csv
import sys
from argparse import ArgumentParser

import numpy as np

from framework.datastore.file_dao import JsonFileDecoder
from framework.log.logger import Logger, LogLevel
from framework.utils.sys_utils import get_default_thread_count
from services.zhbil import matrix_io
from services.zhbil.algebra.matrix_core import from_index
from services.zhbil.algebra.oracle import (
    exact_clique, exact_mis, inner_rank_by_factorization, omega_via_minors,
    reference_graph)
from services.zhbil.algebra.orbit_census import (
    census_by_enumeration, verify_orbit_product)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import (
    inner_rank, omega, rank_via_projections, snf)
from services.zhbil.budget import (
    check_budget, get_budget, reset_budget_conf, use_budget_conf)
from services.zhbil.errors import InvalidParameterError, NotIntersectingError
from services.zhbil.graph.bilgraph import (
    BilGraph, GraphSpec, adjacent, check_connectivity,
    check_vertex_transitivity, exact_clique_number,
    exact_independence_number, sandwich_inequality)
from services.zhbil.graph.clique_theory import (
    CanonicalCliqueSpec, build_canonical_clique, classify_max_clique,
    transform_family, verify_ekr)
from services.zhbil.graph.rankcodes import (
    RankCode, clique_cover_complement, color_graph, core_certificate,
    mrd_code, verify_distance)
from services.zhbil.selftest import LEVELS, run_selftest
from services.zhbil.status import EXIT_VERIFICATION_FAILED, context

CSV_COMMANDS = ('orbits', 'build-clique', 'build-mrd')


class Cli:  # pylint: disable=R0903
    '''Per-invocation state shared by the command handlers.'''

    def __init__(self, args, log, stdout, stderr):
        self.args = args
        self.log = log
        self.stdout = stdout
        self.stderr = stderr
        self.threads = args.threads or get_default_thread_count()
        self.budget = args.budget

    @property
    def seed(self):
        '''The --seed value; 0 with a notice when omitted.'''

        if self.args.seed is None:
            self.notice('--seed not given, using 0')
            self.args.seed = 0
        return self.args.seed

    def notice(self, message):
        self.stderr.write('notice: {}\n'.format(message))

    def emit(self, payload):
        self.stdout.write(JsonFileDecoder().dumps(payload))
        self.stdout.write('\n')

    def emit_rows(self, rows, header=None):
        writer = csv.writer(self.stdout, lineterminator='\n')
        if header:
            writer.writerow(header)
        writer.writerows(rows)


# -- helpers ------------------------------------------------------------------

def _ring(cli):
    return RingSpec.of(cli.args.h)


def _graph_spec(cli):
    args = cli.args
    return GraphSpec.of(args.h, args.m, args.n, args.r)


def _load_matrix(cli):
    A = matrix_io.load_matrix(cli.args.matrix)
    if cli.args.h is not None and A.ring.h != cli.args.h:
        raise InvalidParameterError('matrix is over Z_{}, --h is {}'.format(
            A.ring.h, cli.args.h))
    return A


def _load_family(cli, spec):
    ring, m, n, family = matrix_io.load_family(
        cli.args.family, spec.ring, spec.m, spec.n)
    if (ring.h, m, n) != (spec.ring.h, spec.m, spec.n):
        raise InvalidParameterError(
            'family holds {}x{} matrices over Z_{}'.format(m, n, ring.h))
    return family


def _entries(A):
    return None if A is None else A.tolist()


def _form_record(form):
    if form is None:
        return None
    return {'tag': form.tag, 'S': _entries(form.S), 'T': _entries(form.T),
            'alpha': None if form.alpha is None else list(form.alpha),
            'B0': _entries(form.B0)}


def _omega_record(om):
    return [list(row) for row in om]


def _label_text(label):
    return ';'.join(' '.join(str(a) for a in row) for row in label)


def _parse_alpha(text):
    try:
        return tuple(int(a) for a in text.split(','))
    except ValueError as err:
        raise InvalidParameterError(
            'bad --alpha {!r}: expected a1,...,at'.format(text)) from err


# -- commands -----------------------------------------------------------------

def cmd_snf(cli):
    A = _load_matrix(cli)
    form = snf(A)
    cli.emit({'h': A.ring.h, 'S': form.S.tolist(), 'D': form.D.tolist(),
              'T': form.T.tolist(), 'omega': _omega_record(form.omega),
              'inner_rank': form.inner_rank})
    return True


def cmd_rank(cli):
    A = _load_matrix(cli)
    via_pi, via_theta = rank_via_projections(A)
    rho = inner_rank(A)
    cli.emit({'h': A.ring.h, 'inner_rank': rho,
              'omega': _omega_record(omega(A)), 'pi_rank': via_pi,
              'theta_rank': via_theta})
    return via_pi == rho == via_theta


def cmd_orbits(cli):
    args = cli.args
    ring = _ring(cli)
    report = census_by_enumeration(ring, args.m, args.n, cli.budget,
                                   cli.threads, cli.log)
    summary = {'label_count': report.label_count,
               'expected_label_count': report.expected_label_count,
               'total': report.total}
    ok = report.label_count == report.expected_label_count
    if args.verify_product:
        product = verify_orbit_product(ring, args.m, args.n, cli.budget,
                                       cli.threads, cli.log)
        summary['product_holds'] = product.holds
        ok = ok and product.holds

    if args.format == 'csv':
        cli.emit_rows([(_label_text(label), length)
                       for label, length in report.entries],
                      header=('omega_label', 'length'))
        cli.stderr.write('summary: {}\n'.format(
            JsonFileDecoder().dumps(summary)))
    else:
        summary['orbits'] = [{'omega': _omega_record(label),
                              'length': length}
                             for label, length in report.entries]
        cli.emit(summary)
    return ok


def _certificates(cli, spec):
    clique = build_canonical_clique(
        CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    code = mrd_code(spec, cli.budget, cli.log)
    return {
        'clique_size': len(clique),
        'code_size': code.size,
        'code_distance': matrix_io.distance_value(
            verify_distance(code, cli.budget)),
        'core': core_certificate(spec, cli.budget, cli.budget, cli.log),
    }


def cmd_graph_stats(cli):
    args = cli.args
    spec = _graph_spec(cli)
    graph = BilGraph(spec, cli.budget, cli.threads, cli.log)
    stats = {'vertices': spec.vertex_count,
             'degree': graph.degree if graph.materialized else None}
    ok = True

    if args.exact:
        prebuilt = graph if graph.materialized else None
        omega_value = exact_clique_number(spec, cli.budget, cli.log,
                                          prebuilt, cli.threads)
        alpha_value = exact_independence_number(spec, cli.budget, cli.log,
                                                prebuilt, cli.threads)
        stats['method'] = 'exact'
    else:
        certificates = _certificates(cli, spec)
        core = certificates['core']
        omega_value = certificates['clique_size']
        alpha_value = certificates['code_size']
        stats['method'] = 'certificate'
        stats['chi_certificates'] = certificates
        stats['chi'] = core['chi']
        ok = core['chi'] == omega_value
    stats['omega'] = omega_value
    stats['alpha'] = alpha_value
    sandwich = sandwich_inequality(spec, alpha_value, omega_value)
    stats['sandwich'] = {'chi_lower_bound': sandwich.chi_lower_bound,
                         'equality': sandwich.equality}
    ok = ok and sandwich.holds

    if args.connectivity:
        stats['connected'] = check_connectivity(spec, cli.budget, cli.log,
                                                graph if graph.materialized
                                                else None)
        ok = ok and stats['connected']
    if args.transitivity_samples:
        report = check_vertex_transitivity(spec, args.transitivity_samples,
                                           cli.seed, cli.log)
        stats['transitivity'] = {'holds': report.holds,
                                 'checked': report.checked}
        ok = ok and report.holds
    cli.emit(stats)
    return ok


def _write_family(cli, spec, family):
    args = cli.args
    if args.out:
        matrix_io.save_family(args.out, spec.ring, spec.m, spec.n, family,
                              args.format)
        cli.emit({'size': len(family), 'out': args.out})
    elif args.format == 'csv':
        cli.emit_rows(matrix_io.family_to_rows(family))
    else:
        cli.emit(matrix_io.family_to_record(spec.ring, spec.m, spec.n,
                                            family))


def cmd_build_clique(cli):
    args = cli.args
    spec = _graph_spec(cli)
    cspec = CanonicalCliqueSpec(spec, _parse_alpha(args.alpha))
    S = matrix_io.load_matrix(args.S) if args.S else None
    T = matrix_io.load_matrix(args.T) if args.T else None
    B0 = matrix_io.load_matrix(args.B0) if args.B0 else None
    family = transform_family(spec, build_canonical_clique(cspec), S, T, B0)
    _write_family(cli, spec, family)
    return True


def cmd_classify_clique(cli):
    spec = _graph_spec(cli)
    form = classify_max_clique(spec, _load_family(cli, spec), cli.log)
    cli.emit(_form_record(form))
    return True


def cmd_verify_ekr(cli):
    spec = _graph_spec(cli)
    family = _load_family(cli, spec)
    try:
        report = verify_ekr(spec, family, cli.log)
    except NotIntersectingError as err:
        cli.log.error('verify-ekr: %s', err)
        cli.emit({'size': len(set(family)), 'bound': spec.clique_number,
                  'intersecting': False, 'within_bound': False,
                  'extremal': False, 'form': None, 'reason': str(err)})
        return False
    cli.emit({'size': report.size, 'bound': report.bound,
              'intersecting': True,
              'within_bound': report.within_bound,
              'extremal': report.extremal,
              'form': _form_record(report.form)})
    return report.within_bound


def cmd_build_mrd(cli):
    args = cli.args
    spec = _graph_spec(cli)
    code = mrd_code(spec, cli.budget, cli.log)
    distance = verify_distance(code, cli.budget)
    if args.format == 'csv':
        _write_family(cli, spec, code.matrices())
    elif args.out:
        matrix_io.save_code(args.out, code, distance)
        cli.emit({'size': code.size, 'out': args.out})
    else:
        cli.emit(matrix_io.code_to_record(code, distance))
    return distance > spec.r


def cmd_verify_code(cli):
    args = cli.args
    ring = RingSpec.of(args.h) if args.h else None
    ring, m, n, family = matrix_io.load_family(args.family, ring, args.m,
                                               args.n)
    members = matrix_io.family_to_rows(family)
    stack = np.array(members, dtype=np.int64).reshape(len(members), m, n)
    code = RankCode(ring, m, n, stack, args.d, False)
    distance = verify_distance(code, cli.budget)
    passes = distance >= args.d
    cli.emit({'size': code.size,
              'verified_min_distance': matrix_io.distance_value(distance),
              'd': args.d, 'passes': passes})
    return passes


def cmd_color(cli):
    spec = _graph_spec(cli)
    if cli.args.complement:
        cover = clique_cover_complement(spec, cli.budget, cli.budget, cli.log)
        colors = [0] * spec.vertex_count
        for part, vertices in enumerate(cover.parts.tolist()):
            for v in vertices:
                colors[v] = part
        proper = cover.disjoint and cover.covers and cover.parts_are_cliques
        cli.emit({'colors': colors, 'color_count': cover.part_count,
                  'proper': proper, 'edges_checked': True})
        return proper
    coloring = color_graph(spec, cli.budget, cli.budget, cli.log)
    cli.emit({'colors': None if coloring.colors is None
              else coloring.colors.tolist(),
              'color_count': coloring.color_count,
              'proper': coloring.proper,
              'edges_checked': coloring.edges_checked})
    return coloring.proper


def cmd_cover_complement(cli):
    spec = _graph_spec(cli)
    cover = clique_cover_complement(spec, cli.budget, cli.budget, cli.log)
    ok = cover.disjoint and cover.covers and cover.parts_are_cliques
    cli.emit({'parts': cover.parts.tolist(), 'part_count': cover.part_count,
              'part_size': cover.part_size, 'disjoint': cover.disjoint,
              'covers': cover.covers,
              'parts_are_cliques': cover.parts_are_cliques})
    return ok


def cmd_oracle_minors(cli):
    A = _load_matrix(cli)
    cli.emit({'h': A.ring.h,
              'omega': _omega_record(omega_via_minors(A, cli.budget))})
    return True


def cmd_oracle_factor_rank(cli):
    A = _load_matrix(cli)
    cli.emit({'h': A.ring.h,
              'inner_rank': inner_rank_by_factorization(A, cli.budget)})
    return True


def cmd_oracle_clique(cli):
    spec = _graph_spec(cli)
    budget = get_budget('graph', 'exact_search_budget', override=cli.budget)
    check_budget('reference graph', spec.vertex_count, budget)
    matrices = [from_index(spec.ring, spec.m, spec.n, v)
                for v in range(spec.vertex_count)]
    graph = reference_graph(
        range(spec.vertex_count),
        lambda u, v: adjacent(spec, matrices[u], matrices[v]))
    if cli.args.mis:
        found = exact_mis(graph, budget)
        expected = spec.independence_number
    else:
        found = exact_clique(graph, budget)
        expected = spec.clique_number
    cli.emit({'size': len(found), 'vertices': sorted(found),
              'expected': expected})
    return len(found) == expected


def cmd_selftest(cli):
    args = cli.args
    results = run_selftest(args.level, cli.seed, cli.threads, cli.log,
                           args.only)
    cli.emit({'level': args.level,
              'results': [{'criterion': r.criterion, 'title': r.title,
                           'passed': r.passed, 'detail': r.detail}
                          for r in results]})
    return all(r.passed for r in results)


# -- parser -------------------------------------------------------------------

def _common_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument('--budget', type=int,
                        help='cap for every enumeration of the command '
                             '(defaults: config/budget_conf.yaml)')
    common.add_argument('--threads', type=int,
                        help='worker threads (default: $ZHBIL_THREADS or 1)')
    common.add_argument('--seed', type=int,
                        help='random seed for randomized checks (default 0)')
    common.add_argument('--format', choices=('json', 'csv'), default='json',
                        help='output format; csv for ' +
                             ', '.join(CSV_COMMANDS))
    common.add_argument('--config', help='alternative budget YAML file')
    common.add_argument('--verbose', action='store_true',
                        help='debug log on standard error')
    return common


def _add_shape(parser, with_r=True, required=True):
    parser.add_argument('--h', type=int, required=required,
                        help='modulus of Z_h')
    parser.add_argument('--m', type=int, required=required, help='rows')
    parser.add_argument('--n', type=int, required=required, help='columns')
    if with_r:
        parser.add_argument('--r', type=int, required=required,
                            help='adjacency rank bound of Bil_r')


def _add_matrix(parser):
    parser.add_argument('--h', type=int,
                        help='expected modulus; must match the file')
    parser.add_argument('--matrix', required=True,
                        help='matrix JSON {"h","rows","cols","entries"}')


def build_parser():
    '''The argparse tree of every subcommand.'''

    common = _common_parser()
    parser = ArgumentParser(prog='zhbil', description=(
        'Smith forms, inner rank and bilinear forms graphs over Z_h.'))
    sub = parser.add_subparsers(dest='command', required=True)

    cmd = sub.add_parser('snf', parents=[common],
                         help='Smith form A = S . D . T and Omega')
    _add_matrix(cmd)
    cmd.set_defaults(handler=cmd_snf)

    cmd = sub.add_parser('rank', parents=[common],
                         help='inner rank, also via the CRT projections')
    _add_matrix(cmd)
    cmd.set_defaults(handler=cmd_rank)

    cmd = sub.add_parser('orbits', parents=[common],
                         help='orbit census of Z_h^(m x n); CSV rows '
                              'omega_label,length with --format csv')
    _add_shape(cmd, with_r=False)
    cmd.add_argument('--verify-product', action='store_true',
                     help='check orbit lengths against the prime components')
    cmd.set_defaults(handler=cmd_orbits)

    cmd = sub.add_parser('graph-stats', parents=[common],
                         help='vertices, degree, omega, alpha, chi of Bil_r')
    _add_shape(cmd)
    cmd.add_argument('--exact', action='store_true',
                     help='branch and bound instead of certificates')
    cmd.add_argument('--connectivity', action='store_true',
                     help='breadth-first connectivity check')
    cmd.add_argument('--transitivity-samples', type=int, default=0,
                     help='sampled automorphism checks (0 skips them)')
    cmd.set_defaults(handler=cmd_graph_stats)

    cmd = sub.add_parser('build-clique', parents=[common],
                         help='S . C_r(alpha) . T + B0 as a family file')
    _add_shape(cmd)
    cmd.add_argument('--alpha', required=True,
                     help='a1,...,at with each ai in {0, s_i}')
    cmd.add_argument('--S', help='matrix JSON, m x m invertible')
    cmd.add_argument('--T', help='matrix JSON, n x n invertible')
    cmd.add_argument('--B0', help='matrix JSON, m x n translate')
    cmd.add_argument('--out', help='write the family here')
    cmd.set_defaults(handler=cmd_build_clique)

    for name, handler, text in (
            ('classify-clique', cmd_classify_clique,
             'form of a maximum clique'),
            ('verify-ekr', cmd_verify_ekr,
             'EKR bound for an r-intersecting family')):
        cmd = sub.add_parser(name, parents=[common], help=text)
        _add_shape(cmd)
        cmd.add_argument('--family', required=True,
                         help='family JSON, or CSV (one matrix per line)')
        cmd.set_defaults(handler=handler)

    cmd = sub.add_parser('build-mrd', parents=[common],
                         help='verified (r+1)-distance code of Bil_r')
    _add_shape(cmd)
    cmd.add_argument('--out', help='write the code JSON here')
    cmd.set_defaults(handler=cmd_build_mrd)

    cmd = sub.add_parser('verify-code', parents=[common],
                         help='exact minimum rank distance of a family')
    _add_shape(cmd, with_r=False, required=False)
    cmd.add_argument('--family', required=True,
                     help='family JSON, or CSV with --h --m --n')
    cmd.add_argument('--d', type=int, required=True,
                     help='required minimum distance')
    cmd.set_defaults(handler=cmd_verify_code)

    cmd = sub.add_parser('color', parents=[common],
                         help='coset coloring of Bil_r, or with '
                              '--complement the clique-cover coloring')
    _add_shape(cmd)
    cmd.add_argument('--complement', action='store_true',
                     help='color the complement graph by the clique cover')
    cmd.set_defaults(handler=cmd_color)

    cmd = sub.add_parser('cover-complement', parents=[common],
                         help='partition of V into maximum cliques')
    _add_shape(cmd)
    cmd.set_defaults(handler=cmd_cover_complement)

    oracle = sub.add_parser('oracle', help='brute-force cross checks')
    oracle_sub = oracle.add_subparsers(dest='oracle_command', required=True)
    cmd = oracle_sub.add_parser('minors', parents=[common],
                                help='Omega from determinantal divisors')
    _add_matrix(cmd)
    cmd.set_defaults(handler=cmd_oracle_minors)
    cmd = oracle_sub.add_parser('factor-rank', parents=[common],
                                help='inner rank by factorization search')
    _add_matrix(cmd)
    cmd.set_defaults(handler=cmd_oracle_factor_rank)
    cmd = oracle_sub.add_parser('clique', parents=[common],
                                help='networkx clique or MIS of Bil_r')
    _add_shape(cmd)
    cmd.add_argument('--mis', action='store_true',
                     help='maximum independent set instead of a clique')
    cmd.set_defaults(handler=cmd_oracle_clique)

    cmd = sub.add_parser('selftest', parents=[common],
                         help='acceptance criteria 1-10')
    cmd.add_argument('--level', choices=LEVELS, default='desk',
                     help='desk sizes, or the full acceptance sizes')
    cmd.add_argument('--only', type=int, nargs='+',
                     help='criterion numbers to run')
    cmd.set_defaults(handler=cmd_selftest)
    return parser


def run(argv=None, stdout=None, stderr=None):
    '''Parse ``argv``, run the subcommand and return the exit code.'''

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2

    log = Logger(level=LogLevel.LV_DEBUG if args.verbose else LogLevel.LV_INFO,
                 console=args.verbose)
    cli = Cli(args, log, stdout, stderr)
    log.info('zhbil %s', ' '.join(argv if argv is not None else sys.argv[1:]))
    try:
        with context(log, stderr) as status:
            if args.format == 'csv' and args.command not in CSV_COMMANDS:
                raise InvalidParameterError(
                    '--format csv is not available for {}'.format(
                        args.command))
            if args.config:
                use_budget_conf(args.config)
            if not args.handler(cli):
                status.fail(EXIT_VERIFICATION_FAILED,
                            '{} reported a failed check'.format(args.command))
    finally:
        if args.config:
            reset_budget_conf()
    return status.code


def main():
    '''Console entrypoint.'''

    sys.exit(run())


if __name__ == '__main__':
    main()
