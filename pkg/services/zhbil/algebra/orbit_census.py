# -*- coding: utf-8 -*-
""" Census of GL_m x GL_n equivalence orbits of Z_h^(m x n) """
import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb, prod

from framework.log.logger import Logger
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import omega_of_rows
from services.zhbil.budget import check_budget, get_budget
from services.zhbil.process_threading import run_partitioned


@dataclass(frozen=True)
class CensusReport:
    ring: RingSpec
    m: int
    n: int
    entries: tuple  # ((label, length), ...) in label enumeration order
    total: int
    expected_label_count: int

    @property
    def label_count(self):
        return len(self.entries)

    def lengths(self):
        return dict(self.entries)


@dataclass(frozen=True)
class OrbitProductReport:
    holds: bool
    rows: tuple  # ((label, length, (per-prime lengths...)), ...)
    first_violation: object = None
    checked: int = field(default=0)


def expected_label_count(ring, m, n):
    """prod_i C(s_i + k, k) with k = min(m, n)."""
    k = min(m, n)
    return prod(comb(s + k, k) for _, s in ring.primes)


def enumerate_orbit_labels(ring, m, n):
    """Every admissible invariant-factor array, one per orbit.

    A label holds one nondecreasing exponent vector in [0, s_i] of length
    min(m, n) per prime.
    """
    k = min(m, n)
    per_prime = [list(itertools.combinations_with_replacement(range(s + 1), k))
                 for _, s in ring.primes]
    return [tuple(label) for label in itertools.product(*per_prime)]


def _tally_range(ring, m, n):
    h = ring.h
    size = m * n

    def tally(start, stop):
        counts = Counter()
        for idx in range(start, stop):
            digits = [0] * size
            rest = idx
            for k in range(size - 1, -1, -1):
                rest, digits[k] = divmod(rest, h)
            rows = [digits[r * n:(r + 1) * n] for r in range(m)]
            counts[omega_of_rows(ring, rows)] += 1
        return counts

    return tally


def census_by_enumeration(ring, m, n, budget=None, thread_num=1, log=None):
    """Omega of every matrix of Z_h^(m x n), tallied per label.

    The index range is split across worker threads; chunk tallies are merged
    in chunk order.
    """
    log = log or Logger()
    budget = get_budget('census', 'enumeration_budget', override=budget)
    total = ring.h ** (m * n)
    check_budget('census of Z_{}^({}x{})'.format(ring.h, m, n), total, budget)

    log.info('census Z_%d^(%dx%d): %d matrices, %d threads',
             ring.h, m, n, total, thread_num)
    merged = Counter()
    for chunk in run_partitioned(_tally_range(ring, m, n), total,
                                 thread_num, log):
        merged.update(chunk)

    labels = enumerate_orbit_labels(ring, m, n)
    order = {label: k for k, label in enumerate(labels)}
    # labels outside the admissible list would sort last and be reported
    entries = tuple(sorted(merged.items(),
                           key=lambda item: (order.get(item[0], len(order)),
                                             item[0])))
    report = CensusReport(ring, m, n, entries, sum(merged.values()),
                          expected_label_count(ring, m, n))
    log.info('census Z_%d^(%dx%d): %d labels (expected %d)', ring.h, m, n,
             report.label_count, report.expected_label_count)
    return report


def verify_orbit_product(ring, m, n, budget=None, thread_num=1, log=None):
    """Check |orbit over Z_h| = prod_i |orbit over Z_{p_i^s_i}| per label.

    Every length comes from an exhaustive census.
    """
    log = log or Logger()
    whole = census_by_enumeration(ring, m, n, budget, thread_num, log)
    parts = [census_by_enumeration(ring.component(i), m, n, budget,
                                   thread_num, log).lengths()
             for i in range(ring.t)]

    rows = []
    first_violation = None
    for label, length in whole.entries:
        factors = tuple(part.get((label[i],), 0)
                        for i, part in enumerate(parts))
        rows.append((label, length, factors))
        if first_violation is None and length != prod(factors):
            first_violation = label
            log.error('orbit %s: length %d but factor product %d',
                      label, length, prod(factors))

    return OrbitProductReport(first_violation is None, tuple(rows),
                              first_violation, len(rows))
