# -*- coding: utf-8 -*-
""" Acceptance suite behind `selftest`

`desk` runs every criterion on reduced instances in seconds; `full` runs the
stated sizes. Each check returns (passed, detail); a VerificationError raised
inside a check marks it failed instead of aborting the run.
"""
# pylint: disable=unused-argument
import itertools
from collections import namedtuple

import numpy as np

from framework.log.logger import Logger
from services.zhbil.algebra.matrix_core import (
    from_index, random_matrix, to_index)
from services.zhbil.algebra.oracle import omega_via_minors
from services.zhbil.algebra.orbit_census import (
    census_by_enumeration, verify_orbit_product)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import (
    check_smith_form, inner_rank, rank_via_projections, snf)
from services.zhbil.errors import (
    InvalidParameterError, NotIntersectingError, VerificationError)
from services.zhbil.graph.bilgraph import (
    BilGraph, GraphSpec, check_connectivity, check_vertex_transitivity,
    exact_clique_number, exact_independence_number, sandwich_inequality)
from services.zhbil.graph.clique_theory import (
    CanonicalCliqueSpec, COL_FORM, MIXED_FORM, ROW_FORM,
    build_canonical_clique, classify_max_clique, enumerate_max_cliques,
    is_clique, random_max_clique, verify_ekr)
from services.zhbil.graph.rankcodes import (
    clique_cover_complement, color_graph, mrd_code, verify_distance)

LEVELS = ('desk', 'full')

CriterionResult = namedtuple('CriterionResult',
                             ['criterion', 'title', 'passed', 'detail'])

# per-level sizes
SIZES = {
    'desk': {
        'snf_exhaustive': ((4, 2, 2), (6, 2, 2)),
        'snf_samples': 200,
        'census': ((4, 2, 2, 6), (6, 2, 2, 9), (12, 2, 2, 18)),
        'product': ((6, 2, 2),),
        'projections': ((6, 2, 2),),
        'certificates': (6,),
        'roundtrips': 5,
        'ekr_samples': 50,
        'transitivity': 100,
    },
    'full': {
        'snf_exhaustive': ((4, 2, 2), (6, 2, 2), (6, 2, 3)),
        'snf_samples': 10000,
        'census': ((4, 2, 2, 6), (6, 2, 2, 9), (6, 2, 3, 9),
                   (12, 2, 2, 18)),
        'product': ((6, 2, 2), (12, 2, 2)),
        'projections': ((6, 2, 2), (12, 2, 2)),
        'certificates': (6, 12),
        'roundtrips': 100,
        'ekr_samples': 1000,
        'transitivity': 1000,
    },
}


def _all_matrices(ring, m, n):
    for idx in range(ring.h ** (m * n)):
        yield from_index(ring, m, n, idx)


def _snf_ok(A):
    form = snf(A)
    return check_smith_form(A, form) and form.omega == omega_via_minors(A)


def check_snf_soundness(sizes, seed, threads, log):
    checked = 0
    for h, m, n in sizes['snf_exhaustive']:
        ring = RingSpec.of(h)
        for A in _all_matrices(ring, m, n):
            checked += 1
            if not _snf_ok(A):
                return False, 'Z_{} {}x{}: {}'.format(h, m, n, A.tolist())
    ring = RingSpec.of(12)
    rng = np.random.default_rng(seed)
    for _ in range(sizes['snf_samples']):
        A = random_matrix(ring, 3, 3, rng)
        checked += 1
        if not _snf_ok(A):
            return False, 'Z_12 3x3: {}'.format(A.tolist())
    return True, '{} matrices'.format(checked)


def check_orbit_counts(sizes, seed, threads, log):
    counts = []
    for h, m, n, expected in sizes['census']:
        report = census_by_enumeration(RingSpec.of(h), m, n,
                                       thread_num=threads, log=log)
        counts.append('Z_{} {}x{}: {}'.format(h, m, n, report.label_count))
        if report.label_count != expected or \
                report.expected_label_count != expected or \
                report.total != h ** (m * n):
            return False, counts[-1] + ' (expected {})'.format(expected)
    return True, '; '.join(counts)


def check_orbit_product(sizes, seed, threads, log):
    checked = 0
    for h, m, n in sizes['product']:
        report = verify_orbit_product(RingSpec.of(h), m, n,
                                      thread_num=threads, log=log)
        checked += report.checked
        if not report.holds:
            return False, 'Z_{}: label {}'.format(h, report.first_violation)
    return True, '{} labels'.format(checked)


def check_rank_projections(sizes, seed, threads, log):
    checked = 0
    for h, m, n in sizes['projections']:
        for A in _all_matrices(RingSpec.of(h), m, n):
            checked += 1
            rho = inner_rank(A)
            if rank_via_projections(A) != (rho, rho):
                return False, 'Z_{}: {}'.format(h, A.tolist())
    return True, '{} matrices'.format(checked)


def _certify_numbers(spec, log):
    """Canonical clique, verified code and a proper h^(nr)-coloring."""
    clique = build_canonical_clique(
        CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    code = mrd_code(spec, log=log)
    coloring = color_graph(spec, log=log)
    sandwich = sandwich_inequality(spec, code.size, len(clique))
    return (is_clique(spec, clique) and
            len(clique) == spec.clique_number and
            code.size == spec.independence_number and
            verify_distance(code) > spec.r and
            coloring.proper and
            coloring.color_count == spec.clique_number and
            sandwich.equality)


def check_graph_numbers(sizes, seed, threads, log):
    details = []
    for h in (2, 3):
        spec = GraphSpec.of(h, 2, 2, 1)
        graph = BilGraph(spec, thread_num=threads, log=log)
        omega = exact_clique_number(spec, log=log, graph=graph,
                                    thread_num=threads)
        alpha = exact_independence_number(spec, log=log, graph=graph,
                                          thread_num=threads)
        details.append('Z_{}: omega={} alpha={}'.format(h, omega, alpha))
        if (omega, alpha) != (h ** 2, h ** 2):
            return False, details[-1]
    for h in sizes['certificates']:
        spec = GraphSpec.of(h, 2, 2, 1)
        if not _certify_numbers(spec, log):
            return False, 'Z_{}: certificates failed'.format(h)
        details.append('Z_{}: certified {}'.format(h, spec.clique_number))
    return True, '; '.join(details)


def check_mrd_codes(sizes, seed, threads, log):
    details = []
    for h, m, n in ((2, 2, 2), (3, 2, 2), (4, 2, 2), (6, 2, 2), (12, 2, 2),
                    (4, 2, 3)):
        spec = GraphSpec.of(h, m, n, 1)
        code = mrd_code(spec, log=log)
        distance = verify_distance(code)
        details.append('Z_{} {}x{}: {}'.format(h, m, n, code.size))
        if code.size != spec.independence_number or distance != 2:
            return False, details[-1] + ' distance {}'.format(distance)
    return True, '; '.join(details)


def check_coloring_and_cover(sizes, seed, threads, log):
    spec = GraphSpec.of(6, 2, 2, 1)
    coloring = color_graph(spec, log=log)
    if not (coloring.proper and coloring.edges_checked and
            coloring.color_count == 36):
        return False, 'coloring: {} colors, proper={}'.format(
            coloring.color_count, coloring.proper)
    cover = clique_cover_complement(spec, log=log)
    if not (cover.disjoint and cover.covers and cover.parts_are_cliques and
            cover.part_count == 36 and cover.part_size == 36):
        return False, 'cover: {} parts of {}'.format(cover.part_count,
                                                      cover.part_size)
    return True, '36 colors; 36 disjoint 36-cliques'


def _classification_families(sizes, seed, log):
    """(spec, family, expected tag or None) for every criterion-8 case."""
    cases = []
    for h in (2, 3):
        spec = GraphSpec.of(h, 2, 2, 1)
        cases.extend((spec, family, None)
                     for family in enumerate_max_cliques(spec, log=log))

    forms = {6: [(ROW_FORM, None), (COL_FORM, None), (MIXED_FORM, (0, 1)),
                 (MIXED_FORM, (1, 0))],
             12: [(ROW_FORM, None), (COL_FORM, None), (MIXED_FORM, (0, 1)),
                  (MIXED_FORM, (2, 0))]}
    count = sizes['roundtrips']
    for h, choices in forms.items():
        spec = GraphSpec.of(h, 2, 2, 1)
        for (tag, alpha), k in itertools.product(choices, range(count)):
            family, _ = random_max_clique(spec, tag, alpha, seed + k)
            cases.append((spec, family, tag))
    spec = GraphSpec.of(6, 2, 3, 1)
    for k in range(count):
        family, _ = random_max_clique(spec, ROW_FORM, None, seed + k)
        cases.append((spec, family, ROW_FORM))
    return cases


def check_classification(sizes, seed, threads, log):
    cases = _classification_families(sizes, seed, log)
    for spec, family, tag in cases:
        form = classify_max_clique(spec, family, log)
        if spec.ring.t == 1 and form.tag == MIXED_FORM:
            return False, 'mixed form over Z_{}'.format(spec.ring.h)
        if tag is not None and form.tag != tag:
            return False, 'Z_{}: {} classified as {}'.format(
                spec.ring.h, tag, form.tag)
    return True, '{} cliques'.format(len(cases))


def _rejected(spec, family, extra):
    try:
        report = verify_ekr(spec, family | {extra})
    except NotIntersectingError:
        return True
    return not report.within_bound


def check_ekr(sizes, seed, threads, log):
    cases = _classification_families(sizes, seed, log)
    for spec, family, _ in cases:
        report = verify_ekr(spec, family, log)
        if not (report.extremal and report.form is not None):
            return False, 'Z_{}: extremal family not classified'.format(
                spec.ring.h)

    spec = GraphSpec.of(2, 2, 2, 1)
    clique = build_canonical_clique(CanonicalCliqueSpec(spec, (0,)))
    outside = [A for A in _all_matrices(spec.ring, 2, 2) if A not in clique]
    rejected = sum(_rejected(spec, clique, A) for A in outside)
    if rejected != spec.vertex_count - spec.clique_number:
        return False, 'Z_2: {} of {} additions rejected'.format(
            rejected, len(outside))

    spec = GraphSpec.of(6, 2, 2, 1)
    clique = build_canonical_clique(CanonicalCliqueSpec(spec, (0, 0)))
    members = {to_index(A) for A in clique}
    rng = np.random.default_rng(seed)
    tried = 0
    while tried < sizes['ekr_samples']:
        idx = int(rng.integers(0, spec.vertex_count))
        if idx in members:
            continue
        tried += 1
        if not _rejected(spec, clique, from_index(spec.ring, 2, 2, idx)):
            return False, 'Z_6: addition of vertex {} accepted'.format(idx)
    return True, '{} families; {} + {} additions rejected'.format(
        len(cases), len(outside), tried)


def check_transitivity(sizes, seed, threads, log):
    for h in (2, 3, 6):
        spec = GraphSpec.of(h, 2, 2, 1)
        if not check_connectivity(spec, log=log):
            return False, 'Bil_1(Z_{}) is disconnected'.format(h)
        report = check_vertex_transitivity(spec, sizes['transitivity'], seed,
                                           log)
        if not report.holds:
            return False, 'Z_{}: {}'.format(h, report.first_failure[0])
    return True, 'connected; {} samples per ring'.format(sizes['transitivity'])


CRITERIA = (
    (1, 'SNF soundness', check_snf_soundness),
    (2, 'orbit counts', check_orbit_counts),
    (3, 'orbit length product', check_orbit_product),
    (4, 'rank projections', check_rank_projections),
    (5, 'graph numbers', check_graph_numbers),
    (6, 'MRD codes', check_mrd_codes),
    (7, 'coloring and complement cover', check_coloring_and_cover),
    (8, 'clique classification', check_classification),
    (9, 'EKR theorem', check_ekr),
    (10, 'transitivity and connectivity', check_transitivity),
)


def run_selftest(level='desk', seed=0, threads=1, log=None, only=None):
    """Run the acceptance criteria.

    Args:
        level: 'desk' or 'full'.
        only: optional collection of criterion numbers.

    Returns:
        list of CriterionResult in criterion order.
    """
    if level not in LEVELS:
        raise InvalidParameterError('unknown selftest level {}'.format(level))
    log = log or Logger()
    sizes = SIZES[level]
    results = []
    for number, title, check in CRITERIA:
        if only is not None and number not in only:
            continue
        log.info('selftest %s: criterion %d (%s)', level, number, title)
        try:
            passed, detail = check(sizes, seed, threads, log)
        except VerificationError as err:
            passed, detail = False, str(err)
        if not passed:
            log.error('criterion %d (%s) failed: %s', number, title, detail)
        results.append(CriterionResult(number, title, bool(passed), detail))
    return results