# -*- coding: utf-8 -*-
""" Canonical maximum cliques, maximum-clique classification and the
Erdos-Ko-Rado bound for r-intersecting families """
import itertools
from dataclasses import dataclass
from math import prod

import networkx as nx
import numpy as np

from framework.log.logger import Logger
from services.zhbil.algebra.matrix_core import (
    Mat, batch_transform, crt_lift_mat, digits_index, index_digits,
    random_invertible, random_matrix)
from services.zhbil.algebra.smith import rank_of_index, snf_kernel
from services.zhbil.budget import check_budget, get_budget
from services.zhbil.errors import (
    InvalidParameterError, NotIntersectingError, NotMaximumCliqueError,
    TheoremViolationError)
from services.zhbil.graph.bilgraph import BilGraph

ROW_FORM = 'RowForm'
COL_FORM = 'ColForm'
MIXED_FORM = 'MixedForm'
FORM_TAGS = (ROW_FORM, COL_FORM, MIXED_FORM)


@dataclass(frozen=True)
class CanonicalCliqueSpec:
    """C_r(alpha): [[X1, X2], [X3, 0]] with X1 free, X2 in J(alpha) and X3 in
    J(s - alpha); each alpha_i is 0 or s_i."""
    spec: object
    alpha: tuple

    def __post_init__(self):
        ring = self.spec.ring
        alpha = tuple(int(a) for a in self.alpha)
        object.__setattr__(self, 'alpha', alpha)
        if len(alpha) != ring.t or any(
                a not in (0, s) for a, s in zip(alpha, ring.saturated)):
            raise InvalidParameterError(
                'alpha must pick 0 or s_i per prime, got {}'.format(alpha))
        if any(alpha) and self.spec.m < self.spec.n:
            raise InvalidParameterError(
                'alpha != 0 needs m = n, otherwise the family is not maximum')

    @property
    def ideal_generator(self):
        """g = prod p_i^alpha_i as an integer divisor of h."""
        return prod(p ** a for (p, _), a in zip(self.spec.ring.primes,
                                                self.alpha))


@dataclass(frozen=True)
class CliqueForm:
    """S . C_r(alpha) . T + B0, with alpha = 0 for RowForm and alpha = s
    for ColForm."""
    tag: str
    S: object
    T: object
    alpha: object
    B0: Mat

    def effective_alpha(self, ring):
        if self.tag == ROW_FORM:
            return (0,) * ring.t
        if self.tag == COL_FORM:
            return ring.saturated
        return self.alpha


@dataclass(frozen=True)
class EkrReport:
    size: int
    bound: int
    within_bound: bool
    extremal: bool
    form: object = None


# -- family plumbing ----------------------------------------------------------

def family_array(spec, family):
    """(k, m, n) residues of the distinct members by ascending index."""
    members = list(family)
    if not members:
        return np.zeros((0, spec.m, spec.n), dtype=np.int64)
    for member in members:
        spec.check_matrix(member)
    stack = np.stack([member.entries for member in members])
    indices = digits_index(spec.ring.h, stack.reshape(len(members), -1))
    _, first = np.unique(indices, return_index=True)
    return stack[first]


def family_indices(spec, stack):
    return digits_index(spec.ring.h, np.asarray(stack).reshape(len(stack), -1))


def to_family(spec, stack):
    return frozenset(Mat.from_residues(spec.ring, x) for x in stack)


def _first_far_pair(spec, stack):
    """First pair (i, j) whose difference has inner rank above r."""
    k = len(stack)
    if k < 2:
        return None
    h = spec.ring.h
    flat = stack.reshape(k, -1)
    first, second = np.triu_indices(k, 1)
    diffs = digits_index(h, (flat[first] - flat[second]) % h)
    unique, inverse = np.unique(diffs, return_inverse=True)
    far = np.array([rank_of_index(spec.ring, spec.m, spec.n, int(idx)) > spec.r
                    for idx in unique.tolist()], dtype=bool)
    hits = np.nonzero(far[inverse])[0]
    if hits.size == 0:
        return None
    return int(first[hits[0]]), int(second[hits[0]])


def is_clique(spec, family):
    """Every pairwise difference has inner rank <= r."""
    return _first_far_pair(spec, family_array(spec, family)) is None


# -- canonical cliques -------------------------------------------------------

def canonical_clique_array(cspec):
    spec = cspec.spec
    h = spec.ring.h
    g = cspec.ideal_generator
    g_dual = h // g
    choices = []
    for i in range(spec.m):
        for j in range(spec.n):
            if i < spec.r and j < spec.r:
                choices.append(range(h))
            elif i < spec.r:
                choices.append(range(0, h, g))
            elif j < spec.r:
                choices.append(range(0, h, g_dual))
            else:
                choices.append((0,))
    stack = np.array(list(itertools.product(*choices)), dtype=np.int64)
    return stack.reshape(len(stack), spec.m, spec.n)


def build_canonical_clique(cspec):
    """The set C_r(alpha), of size h^(nr)."""
    return to_family(cspec.spec, canonical_clique_array(cspec))


def transform_family(spec, family, S=None, T=None, B0=None):
    """{S . X . T + B0 : X in family}."""
    return to_family(spec, batch_transform(
        spec.ring, family_array(spec, family), S, T, B0))


def rebuild(spec, form):
    """The family described by a CliqueForm."""
    cspec = CanonicalCliqueSpec(spec, form.effective_alpha(spec.ring))
    return to_family(spec, batch_transform(
        spec.ring, canonical_clique_array(cspec), form.S, form.T, form.B0))


def random_max_clique(spec, tag, alpha=None, seed=0):
    """A maximum clique of the given form with random S, T and B0."""
    rng = np.random.default_rng(seed)
    ring = spec.ring
    B0 = random_matrix(ring, spec.m, spec.n, rng)
    if tag == ROW_FORM:
        form = CliqueForm(ROW_FORM, random_invertible(ring, spec.m, rng=rng),
                          None, None, B0)
    elif tag in (COL_FORM, MIXED_FORM) and spec.m == spec.n:
        S = random_invertible(ring, spec.m, rng=rng) \
            if tag == MIXED_FORM else None
        T = random_invertible(ring, spec.n, rng=rng)
        if tag == MIXED_FORM:
            alpha = tuple(alpha) if alpha is not None else None
            if alpha is None or not any(alpha) or \
                    alpha == ring.saturated:
                raise InvalidParameterError(
                    'a mixed form needs alpha outside {0, s}')
        form = CliqueForm(tag, S, T, alpha if tag == MIXED_FORM else None, B0)
    else:
        raise InvalidParameterError(
            '{} needs m = n (got {}x{})'.format(tag, spec.m, spec.n))
    return rebuild(spec, form), form


# -- classification ----------------------------------------------------------

def _spans_free_summand(exps, r, s):
    """Exactly r unit invariant factors, every other one zero."""
    return all(e == 0 for e in exps[:r]) and all(e == s for e in exps[r:])


def _stacked_left(stack, p, s):
    """Left transform and exponents of the members placed side by side."""
    wide = np.concatenate(list(stack), axis=1)
    left, exps, _ = snf_kernel(wide.tolist(), p, s, track_right=False)
    return left, exps


def classify_max_clique(spec, family, log=None):
    """Identify the form of a maximum clique.

    Every maximum clique of Bil_r is S . C_r(alpha) . T + B0; alpha = 0 is
    the row form and for m = n alpha = s is the column form. Per prime,
    the translated members are stacked side by side: the clique is
    row-type there exactly when the stack has r unit invariant factors and
    no other nonzero one; the left transform then gives S_i. The column
    test does the same on transposes.

    Raises:
        NotMaximumCliqueError: wrong size or not a clique.
        TheoremViolationError: no form reproduces the family.
    """
    log = log or Logger()
    ring = spec.ring
    stack = family_array(spec, family)
    if len(stack) != spec.clique_number:
        raise NotMaximumCliqueError('family has {} members, a maximum clique '
                                    'has {}'.format(len(stack),
                                                    spec.clique_number))
    pair = _first_far_pair(spec, stack)
    if pair is not None:
        raise NotMaximumCliqueError(
            'members {} and {} are not adjacent'.format(*pair))

    B0 = Mat.from_residues(ring, stack[0])
    shifted = (stack - stack[0]) % ring.h

    row_primes = []
    lefts = []
    rights = []
    for i, ((p, s), q) in enumerate(zip(ring.primes, ring.moduli)):
        component = shifted % q
        left, exps = _stacked_left(component, p, s)
        if _spans_free_summand(exps, spec.r, s):
            row_primes.append(i)
            lefts.append(left)
            rights.append(np.eye(spec.n, dtype=np.int64))
            continue
        if spec.m == spec.n:
            left_t, exps_t = _stacked_left(component.transpose(0, 2, 1), p, s)
            if _spans_free_summand(exps_t, spec.r, s):
                lefts.append(np.eye(spec.m, dtype=np.int64))
                rights.append(np.array(left_t, dtype=np.int64).T)
                continue
        log.error('prime %d: clique is neither row nor column type', p)
        raise TheoremViolationError(
            'maximum clique matches no form at prime {}'.format(p))

    if len(row_primes) == ring.t:
        form = CliqueForm(ROW_FORM, crt_lift_mat(ring, lefts), None, None, B0)
    elif not row_primes:
        form = CliqueForm(COL_FORM, None, crt_lift_mat(ring, rights), None, B0)
    else:
        alpha = tuple(0 if i in row_primes else s
                      for i, s in enumerate(ring.saturated))
        form = CliqueForm(MIXED_FORM, crt_lift_mat(ring, lefts),
                          crt_lift_mat(ring, rights), alpha, B0)

    rebuilt = family_indices(spec, family_array(spec, rebuild(spec, form)))
    if not np.array_equal(np.sort(rebuilt), family_indices(spec, stack)):
        log.error('%s parameters do not reproduce the clique', form.tag)
        raise TheoremViolationError(
            '{} parameters do not reproduce the clique'.format(form.tag))
    log.debug('classified clique of %d members as %s', len(stack), form.tag)
    return form


def verify_ekr(spec, family, log=None):
    """|F| <= h^(nr) for an r-intersecting F; the extremal case is classified.

    Raises:
        NotIntersectingError: some pair differs by rank above r.
    """
    log = log or Logger()
    stack = family_array(spec, family)
    pair = _first_far_pair(spec, stack)
    if pair is not None:
        raise NotIntersectingError(
            'members {} and {} differ by inner rank above {}'.format(
                pair[0], pair[1], spec.r))
    size = len(stack)
    bound = spec.clique_number
    if size > bound:
        log.error('r-intersecting family of size %d exceeds %d', size, bound)
        return EkrReport(size, bound, False, False)
    if size < bound:
        return EkrReport(size, bound, True, False)
    return EkrReport(size, bound, True, True,
                     classify_max_clique(spec, to_family(spec, stack), log))


def enumerate_max_cliques(spec, budget=None, log=None, graph=None):
    """Every clique of size h^(nr), found by maximal-clique enumeration.

    Returns:
        list of families, ordered by their sorted vertex indices.
    """
    budget = get_budget('graph', 'exact_search_budget', override=budget)
    check_budget('maximum clique enumeration', spec.vertex_count, budget)
    graph = graph or BilGraph(spec, max(budget, spec.vertex_count), log=log)

    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(graph.vertex_count))
    for v, row in enumerate(graph.neighbor_table.tolist()):
        nx_graph.add_edges_from((v, u) for u in row if u > v)

    target = spec.clique_number
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(nx_graph)
                     if len(c) == target)
    families = []
    for clique in cliques:
        digits = index_digits(spec.ring.h, spec.m * spec.n, clique)
        families.append(to_family(spec, digits.reshape(-1, spec.m, spec.n)))
    return families
