# -*- coding: utf-8 -*-
""" Maximum rank distance codes over Z_h and the colorings they induce

Field codes come from linearized polynomials (Gabidulin). Over Z_{p^s} the
Z_{p^s}-span of the integer lift of a field basis is used, and component
codes are glued with the CRT. Every code is distance-verified before it is
returned.
"""
import itertools
from dataclasses import dataclass, field
from math import inf

import numpy as np

from framework.log.logger import Logger
from services.zhbil.algebra.matrix_core import (
    Mat, digits_index, index_digits, needs_object_dtype)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import rank_of_index
from services.zhbil.budget import check_budget, get_budget
from services.zhbil.errors import (
    BudgetExceededError, ConstructionInvalidError, InvalidParameterError)
from services.zhbil.graph.bilgraph import BilGraph
from services.zhbil.graph.clique_theory import (
    CanonicalCliqueSpec, canonical_clique_array, is_clique, to_family)
from services.zhbil.graph.finite_field import FieldSpec


@dataclass(frozen=True, eq=False)
class RankCode:
    """A set of m x n matrices over Z_h.

    members: (size, m, n) residues. generators: (g, m, n) residues whose
    Z_h-span is the code when linear, else None.
    """
    ring: RingSpec
    m: int
    n: int
    members: np.ndarray = field(repr=False)
    claimed_min_distance: int
    linear: bool
    generators: object = field(default=None, repr=False)

    @property
    def size(self):
        return len(self.members)

    def matrices(self):
        return [Mat.from_residues(self.ring, x) for x in self.members]

    def indices(self):
        return digits_index(self.ring.h, self.members.reshape(self.size, -1))


@dataclass(frozen=True, eq=False)
class Coloring:
    colors: object  # vertex -> color id, or None above the vertex budget
    color_count: int
    proper: bool
    edges_checked: bool


@dataclass(frozen=True, eq=False)
class CliqueCover:
    parts: object  # (alpha, omega) vertex ids, or None above the budget
    part_count: int
    part_size: int
    disjoint: bool
    covers: bool
    parts_are_cliques: bool


def _span(ring, generators, pair_budget=None):
    """All Z_h-combinations of the generators, (size, m, n)."""
    h = ring.h
    count, m, n = generators.shape
    if count == 0:
        return np.zeros((1, m, n), dtype=np.int64)
    check_budget('code span', h ** count,
                 get_budget('codes', 'pair_budget', override=pair_budget))
    coeffs = np.array(list(itertools.product(range(h), repeat=count)),
                      dtype=object if needs_object_dtype(h, count) else
                      np.int64)
    flat = generators.reshape(count, -1).astype(coeffs.dtype)
    members = (coeffs @ flat) % h
    members = np.asarray(members, dtype=np.int64).reshape(-1, m, n)
    order = np.argsort(digits_index(h, members.reshape(len(members), -1)),
                       kind='stable')
    return members[order]


def gabidulin_code(field_spec, m, n, d):
    """Gabidulin code over Z_p of m x n matrices with rank distance d.

    Codewords are the linearized polynomials f(x) = sum a_j x^(p^j) with
    j < m - d + 1, evaluated at x^0, ..., x^(m-1); row i holds the base-p
    coordinates of f(x^i). The F_p-generators a_j = x^e span p^(n(m-d+1))
    codewords.
    """
    if n != field_spec.n or not 1 <= d <= m <= n:
        raise InvalidParameterError(
            'need 1 <= d <= m <= n = {} (got d={} m={} n={})'.format(
                field_spec.n, d, m, n))
    p = field_spec.p
    ring = RingSpec.of(p)
    k = m - d + 1
    basis = field_spec.basis()
    points = basis[:m]

    generators = []
    for j in range(k):
        for scale in basis:
            rows = [field_spec.coordinates(scale * point ** (p ** j))
                    for point in points]
            generators.append(rows)
    generators = np.array(generators, dtype=np.int64).reshape(-1, m, n)
    code = RankCode(ring, m, n, _span(ring, generators), d, True, generators)
    return _gate(code)


def lift_code(code, s, pair_budget=None):
    """Z_{p^s}-span of the integer lift of a linear code over Z_p.

    A nonzero member is p^j times a combination with some unit coefficient,
    whose reduction mod p is a nonzero field codeword; the distance is still
    re-verified.
    """
    if not code.linear or not code.ring.is_prime_power or \
            code.ring.saturated != (1,):
        raise InvalidParameterError('lift_code needs a linear code over Z_p')
    if s == 1:
        return code
    p = code.ring.primes[0][0]
    ring = RingSpec.of(p ** s)
    generators = np.asarray(code.generators, dtype=np.int64)
    lifted = RankCode(ring, code.m, code.n,
                      _span(ring, generators, pair_budget),
                      code.claimed_min_distance, True, generators)
    return _gate(lifted, pair_budget)


def crt_combine(codes, ring=None, pair_budget=None):
    """Cartesian product of one code per prime component, glued by CRT."""
    if not codes:
        raise InvalidParameterError('no component codes')
    ring = ring or RingSpec.of(int(np.prod([c.ring.h for c in codes])))
    if len(codes) != ring.t or \
            tuple(c.ring.h for c in codes) != ring.moduli:
        raise InvalidParameterError(
            'component codes must follow the primes of Z_{}'.format(ring.h))
    first = codes[0]
    if any((c.m, c.n, c.claimed_min_distance) !=
           (first.m, first.n, first.claimed_min_distance) for c in codes):
        raise InvalidParameterError('component codes differ in (m, n, d)')
    if len(codes) == 1:
        return codes[0]

    h = ring.h
    big = needs_object_dtype(h)
    members = np.zeros((1, first.m * first.n),
                       dtype=object if big else np.int64)
    for code, e in zip(codes, ring.idempotents):
        part = code.members.reshape(code.size, -1).astype(members.dtype)
        members = ((members[:, None, :] + part[None, :, :] * e) % h) \
            .reshape(-1, first.m * first.n)
    members = np.asarray(members, dtype=np.int64).reshape(-1, first.m,
                                                          first.n)
    order = np.argsort(digits_index(h, members.reshape(len(members), -1)),
                       kind='stable')

    linear = all(c.linear for c in codes)
    generators = None
    if linear:
        generators = np.concatenate(
            [(np.asarray(c.generators, dtype=object) * e) % h
             for c, e in zip(codes, ring.idempotents)]).astype(np.int64)
    combined = RankCode(ring, first.m, first.n, members[order],
                        first.claimed_min_distance, linear, generators)
    return _gate(combined, pair_budget)


def verify_distance(code, pair_budget=None):
    """Exact minimum inner rank over nonzero differences (inf if none).

    For a linear code this is the least rank of a nonzero member.
    """
    budget = get_budget('codes', 'pair_budget', override=pair_budget)
    ring = code.ring
    flat = code.members.reshape(code.size, -1)
    if code.size < 2:
        return inf
    if code.linear:
        check_budget('distance check', code.size - 1, budget)
        indices = digits_index(ring.h, flat)
    else:
        pairs = code.size * (code.size - 1) // 2
        check_budget('pairwise distance check', pairs, budget)
        first, second = np.triu_indices(code.size, 1)
        indices = digits_index(ring.h, (flat[first] - flat[second]) % ring.h)
    indices = np.unique(indices)
    ranks = [rank_of_index(ring, code.m, code.n, int(idx))
             for idx in indices.tolist() if idx != 0]
    return min(ranks) if ranks else inf


def _gate(code, pair_budget=None):
    distance = verify_distance(code, pair_budget)
    if distance < code.claimed_min_distance:
        raise ConstructionInvalidError(
            'code over Z_{} has distance {}, claimed {}'.format(
                code.ring.h, distance, code.claimed_min_distance))
    return code


def zero_code(ring, m, n, d):
    """The singleton {0}; every distance holds vacuously."""
    return RankCode(ring, m, n, np.zeros((1, m, n), dtype=np.int64), d, True,
                    np.zeros((0, m, n), dtype=np.int64))


def mrd_code(spec, pair_budget=None, log=None):
    """Linear (r+1)-distance code of size h^(n(m-r)) for Bil_r."""
    log = log or Logger()
    ring = spec.ring
    d = spec.r + 1
    if spec.r == spec.m:
        return zero_code(ring, spec.m, spec.n, d)

    parts = []
    for p, s in ring.primes:
        field_spec = FieldSpec.least(p, spec.n)
        field_code = gabidulin_code(field_spec, spec.m, spec.n, d)
        parts.append(lift_code(field_code, s, pair_budget))
    code = crt_combine(parts, ring, pair_budget)
    log.info('MRD code over Z_%d (%dx%d, d=%d): %d members', ring.h, spec.m,
             spec.n, d, code.size)
    return code


def independent_set_from_code(spec, pair_budget=None, log=None):
    """A largest independent set of Bil_r: the members of mrd_code."""
    return frozenset(mrd_code(spec, pair_budget, log).matrices())


def _coset_colors(spec, code):
    h = spec.ring.h
    size = spec.m * spec.n
    vertices = np.arange(spec.vertex_count, dtype=np.int64)
    digits = index_digits(h, size, vertices)
    shifts = code.members.reshape(code.size, -1)
    labels = np.full(spec.vertex_count, np.iinfo(np.int64).max,
                     dtype=np.int64)
    for shift in shifts:
        labels = np.minimum(labels, digits_index(h, (digits + shift) % h))
    _, colors = np.unique(labels, return_inverse=True)
    return colors.astype(np.int64)


def color_graph(spec, vertex_budget=None, pair_budget=None, log=None,
                graph=None):
    """Color each vertex by its coset of the MRD code.

    Two vertices in one coset differ by a nonzero codeword, of rank > r,
    so each coset is independent; there are h^(nr) cosets. Within the
    vertex budget the coloring is also checked on every edge.
    """
    log = log or Logger()
    code = mrd_code(spec, pair_budget, log)
    color_count = spec.vertex_count // code.size
    proper = verify_distance(code, pair_budget) > spec.r

    budget = get_budget('graph', 'vertex_budget', override=vertex_budget)
    if spec.vertex_count > budget:
        log.info('coloring of %d vertices certified by code distance only',
                 spec.vertex_count)
        return Coloring(None, color_count, proper, False)

    colors = _coset_colors(spec, code)
    graph = graph or BilGraph(spec, budget, log=log)
    clashes = int((colors[graph.neighbor_table] == colors[:, None]).sum())
    if clashes:
        log.error('coset coloring has %d monochromatic arcs', clashes)
    color_count = int(colors.max()) + 1
    return Coloring(colors, color_count, proper and clashes == 0, True)


def clique_cover_complement(spec, vertex_budget=None, pair_budget=None,
                            log=None):
    """Partition V into the translates c + C_r(0), c in the MRD code.

    Each part is a maximum clique of Bil_r, so the parts color the
    complement with alpha(Bil_r) colors.
    """
    log = log or Logger()
    budget = get_budget('graph', 'vertex_budget', override=vertex_budget)
    check_budget('clique cover', spec.vertex_count, budget)

    h = spec.ring.h
    code = mrd_code(spec, pair_budget, log)
    base = canonical_clique_array(
        CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    base_flat = base.reshape(len(base), -1)
    parts = np.stack([digits_index(h, (base_flat + shift) % h)
                      for shift in code.members.reshape(code.size, -1)])
    hits = np.bincount(parts.ravel(), minlength=spec.vertex_count)
    disjoint = bool((hits <= 1).all())
    covers = bool((hits >= 1).all())
    parts_are_cliques = is_clique(spec, to_family(spec, base))
    if not (disjoint and covers and parts_are_cliques):
        log.error('clique cover failed: disjoint=%s covers=%s cliques=%s',
                  disjoint, covers, parts_are_cliques)
    return CliqueCover(parts, len(parts), len(base), disjoint, covers,
                       parts_are_cliques)


def core_certificate(spec, vertex_budget=None, pair_budget=None, log=None):
    """chi = omega certificates for Bil_r and its complement.

    A graph with chi = omega has the complete graph K_omega as its core, so
    Bil_r is a core exactly when it is complete (r = m). The complement is
    colored by the clique cover with alpha = omega(complement) colors and is
    never complete, hence never a core.
    """
    log = log or Logger()
    coloring = color_graph(spec, vertex_budget, pair_budget, log)
    clique = canonical_clique_array(
        CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    clique_ok = is_clique(spec, to_family(spec, clique))
    omega = len(clique) if clique_ok else None
    core_is_complete = coloring.proper and omega == coloring.color_count

    code_size = mrd_code(spec, pair_budget, log).size
    try:
        cover = clique_cover_complement(spec, vertex_budget, pair_budget, log)
        complement_chi = cover.part_count if cover.disjoint and \
            cover.covers and cover.parts_are_cliques else None
    except BudgetExceededError:
        # the translates of C_r(0) by a verified code still partition V
        complement_chi = code_size if clique_ok else None
    return {
        'omega': omega,
        'chi': coloring.color_count if coloring.proper else None,
        'core_is_complete': bool(core_is_complete),
        'graph_is_core': bool(core_is_complete and
                              omega == spec.vertex_count),
        'complement_omega': code_size,
        'complement_chi': complement_chi,
        'complement_is_core': bool(complement_chi is not None and
                                   code_size == spec.vertex_count),
    }
