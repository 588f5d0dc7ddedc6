# -*- coding: utf-8 -*-
""" The generalized bilinear forms graph Bil_r(Z_h^(m x n))

Bil_r is the Cayley graph of the additive group Z_h^(m x n) whose
connection set holds the nonzero matrices of inner rank at most r. The
connection set is computed once; neighbors of a vertex are its translates.
"""
import threading
from dataclasses import dataclass
from math import ceil

import numpy as np

from framework.log.logger import Logger
from services.zhbil.algebra.matrix_core import (
    digits_index, index_digits, mat_inverse, mat_mul, mat_sub,
    random_invertible, random_low_rank, random_matrix)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import inner_rank, rank_of_index
from services.zhbil.budget import check_budget, get_budget
from services.zhbil.errors import DimensionMismatchError, InvalidParameterError
from services.zhbil.process_threading import run_partitioned

# set bits of every byte value
_POPCOUNT = np.array([bin(v).count('1') for v in range(256)], dtype=np.uint8)


@dataclass(frozen=True)
class GraphSpec:
    ring: RingSpec
    m: int
    n: int
    r: int

    def __post_init__(self):
        if not 1 <= self.r <= self.m <= self.n:
            raise InvalidParameterError(
                'need 1 <= r <= m <= n, got r={} m={} n={}'.format(
                    self.r, self.m, self.n))

    @classmethod
    def of(cls, h, m, n, r):
        return cls(RingSpec.of(h), m, n, r)

    @property
    def vertex_count(self):
        return self.ring.h ** (self.m * self.n)

    @property
    def clique_number(self):
        """h^(nr)."""
        return self.ring.h ** (self.n * self.r)

    @property
    def independence_number(self):
        """h^(n(m - r))."""
        return self.ring.h ** (self.n * (self.m - self.r))

    def check_matrix(self, A):
        if A.ring != self.ring or A.shape != (self.m, self.n):
            raise DimensionMismatchError(
                'expected a {}x{} matrix over Z_{}, got {}x{} over Z_{}'
                .format(self.m, self.n, self.ring.h, A.rows, A.cols,
                        A.ring.h))


@dataclass(frozen=True)
class TransitivityReport:
    holds: bool
    checked: int
    first_failure: object = None


@dataclass(frozen=True)
class SandwichReport:
    vertices: int
    alpha: int
    omega: int
    chi_lower_bound: int
    holds: bool
    equality: bool


def adjacent(spec, A, B):
    """A != B and rho(A - B) <= r."""
    spec.check_matrix(A)
    spec.check_matrix(B)
    if A == B:
        return False
    return inner_rank(mat_sub(A, B)) <= spec.r


def connection_set(spec, budget=None, thread_num=1, log=None):
    """Vertex indices of the nonzero matrices with inner rank <= r.

    The set is closed under negation and under X -> S X T for invertible
    S, T, which makes Bil_r a normal Cayley graph.
    """
    budget = get_budget('graph', 'vertex_budget', override=budget)
    total = spec.vertex_count
    check_budget('connection set of Bil_{}'.format(spec.r), total, budget)

    def scan(start, stop):
        return [idx for idx in range(max(start, 1), stop)
                if rank_of_index(spec.ring, spec.m, spec.n, idx) <= spec.r]

    found = []
    for chunk in run_partitioned(scan, total, thread_num, log):
        found.extend(chunk)
    return np.array(found, dtype=np.int64)


class BilGraph:
    """Bil_r(Z_h^(m x n)) with materialized adjacency when small enough.

    Materialized mode keeps the neighbor table (vertex x degree) and packed
    bit rows; above the vertex budget only on-demand adjacency queries are
    answered.
    """

    def __init__(self, spec, vertex_budget=None, thread_num=1, log=None):
        self.spec = spec
        self.log = log or Logger()
        self.vertex_budget = get_budget('graph', 'vertex_budget',
                                        override=vertex_budget)
        self.thread_num = thread_num
        self.materialized = spec.vertex_count <= self.vertex_budget
        self.connection = None
        self.neighbor_table = None
        self._bit_rows = None
        self._bitsets = None

        if self.materialized:
            self._materialize()
        else:
            self.log.info('Bil_%d(Z_%d^(%dx%d)): %d vertices above budget %d, '
                          'adjacency on demand', spec.r, spec.ring.h, spec.m,
                          spec.n, spec.vertex_count, self.vertex_budget)

    def _materialize(self):
        spec = self.spec
        h = spec.ring.h
        size = spec.m * spec.n
        self.connection = connection_set(spec, self.vertex_budget,
                                         self.thread_num, self.log)
        vertices = np.arange(spec.vertex_count, dtype=np.int64)
        digits = index_digits(h, size, vertices)
        steps = index_digits(h, size, self.connection)
        # neighbor_table[v, k] = v + connection[k]
        self.neighbor_table = digits_index(
            h, (digits[:, None, :] + steps[None, :, :]) % h)
        self.log.info('Bil_%d(Z_%d^(%dx%d)): %d vertices, degree %d',
                      spec.r, h, spec.m, spec.n, spec.vertex_count,
                      self.degree)

    @property
    def vertex_count(self):
        return self.spec.vertex_count

    @property
    def degree(self):
        """Common vertex degree (the size of the connection set)."""
        if self.connection is None:
            self.connection = connection_set(self.spec, None, self.thread_num,
                                             self.log)
        return int(len(self.connection))

    def degrees(self):
        """Per-vertex degrees, from the bit rows."""
        self._require_materialized('degrees')
        return _POPCOUNT[self.bit_rows].sum(axis=1, dtype=np.int64)

    def _require_materialized(self, what):
        if not self.materialized:
            check_budget(what, self.vertex_count, self.vertex_budget)

    @property
    def bit_rows(self):
        """Packed adjacency rows, uint8 (vertex x ceil(N / 8))."""
        self._require_materialized('bit rows')
        if self._bit_rows is None:
            count = self.vertex_count
            packed = np.zeros((count, (count + 7) // 8), dtype=np.uint8)
            rows = np.repeat(np.arange(count), self.neighbor_table.shape[1])
            cols = self.neighbor_table.ravel()
            # big-endian bit order within a byte, as np.packbits
            np.bitwise_or.at(packed, (rows, cols >> 3),
                             (0x80 >> (cols & 7)).astype(np.uint8))
            self._bit_rows = packed
        return self._bit_rows

    def bitsets(self):
        """Adjacency as Python int bitsets, one per vertex."""
        self._require_materialized('bitsets')
        if self._bitsets is None:
            self._bitsets = []
            for row in self.neighbor_table.tolist():
                bits = 0
                for v in row:
                    bits |= 1 << v
                self._bitsets.append(bits)
        return self._bitsets

    def is_adjacent(self, u, v):
        """Adjacency of two vertex indices."""
        if u == v:
            return False
        if self.materialized:
            return bool(self.bit_rows[u, v >> 3] & (0x80 >> (v & 7)))
        spec = self.spec
        h = spec.ring.h
        diff = (index_digits(h, spec.m * spec.n, [u])[0] -
                index_digits(h, spec.m * spec.n, [v])[0]) % h
        return rank_of_index(spec.ring, spec.m, spec.n,
                             int(digits_index(h, diff))) <= spec.r

    def neighbors(self, v):
        self._require_materialized('neighbor lists')
        return np.sort(self.neighbor_table[v])

    def is_connected(self):
        """Breadth-first search from vertex 0 reaches every vertex."""
        self._require_materialized('connectivity check')
        visited = np.zeros(self.vertex_count, dtype=bool)
        visited[0] = True
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            reached = np.unique(self.neighbor_table[frontier].ravel())
            frontier = reached[~visited[reached]]
            visited[frontier] = True
        return bool(visited.all())


def build_graph(spec, vertex_budget=None, thread_num=1, log=None):
    """BilGraph in materialized or on-demand mode."""
    return BilGraph(spec, vertex_budget, thread_num, log)


# -- exact maximum clique ----------------------------------------------------

def _color_sort(candidates, adjacency):
    """Greedy coloring of the candidate bitset.

    Returns vertices in color order with the color number of each, so that
    a clique inside the first k vertices has at most color[k-1] members.
    """
    order = []
    colors = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adjacency[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


class _Incumbent:
    """Largest clique found so far, shared by the search workers.

    The size only grows; reads without the lock see a lower bound.
    """

    def __init__(self):
        self.lock = threading.Lock()
        self.members = []
        self.size = 0

    def offer(self, clique):
        if len(clique) <= self.size:
            return
        with self.lock:
            if len(clique) > self.size:
                self.members = list(clique)
                self.size = len(clique)


def max_clique_bitset(adjacency, thread_num=1, log=None):
    """Exact maximum clique of a graph given as int bitsets.

    Branch and bound with a greedy coloring bound. Vertices are relabelled
    by decreasing degree, ties by index. The root branches are split over
    `thread_num` workers sharing one incumbent; the clique size does not
    depend on the thread count, and with one thread the members are
    deterministic too.

    Returns:
        sorted list of original vertex indices.
    """
    count = len(adjacency)
    if count == 0:
        return []
    ranking = sorted(range(count),
                     key=lambda v: (-bin(adjacency[v]).count('1'), v))
    position = {v: k for k, v in enumerate(ranking)}
    relabelled = []
    for v in ranking:
        bits = 0
        rest = adjacency[v]
        while rest:
            low = rest & -rest
            bits |= 1 << position[low.bit_length() - 1]
            rest ^= low
        relabelled.append(bits)

    best = _Incumbent()

    def expand(clique, candidates):
        order, colors = _color_sort(candidates, relabelled)
        for k in range(len(order) - 1, -1, -1):
            if len(clique) + colors[k] <= best.size:
                return
            v = order[k]
            clique.append(v)
            narrowed = candidates & relabelled[v]
            if narrowed:
                expand(clique, narrowed)
            else:
                best.offer(clique)
            clique.pop()
            candidates &= ~(1 << v)

    order, colors = _color_sort((1 << count) - 1, relabelled)
    # earlier[k]: the root candidates still open when order[k] is branched on
    earlier = []
    seen = 0
    for v in order:
        earlier.append(seen)
        seen |= 1 << v

    def search(start, stop):
        for k in range(stop - 1, start - 1, -1):
            # colors grow with k, so lower branches of the range prune too
            if 1 + colors[k] <= best.size:
                return
            v = order[k]
            narrowed = earlier[k] & relabelled[v]
            if narrowed:
                expand([v], narrowed)
            else:
                best.offer([v])

    run_partitioned(search, count, thread_num, log)
    return sorted(ranking[v] for v in best.members)


def complement_bitsets(adjacency):
    full = (1 << len(adjacency)) - 1
    return [full & ~bits & ~(1 << v) for v, bits in enumerate(adjacency)]


def _exact_graph(spec, budget, log, graph, thread_num):
    """The graph to search, after the exact-search budget check.

    The check applies to a prebuilt graph as well.
    """
    budget = get_budget('graph', 'exact_search_budget', override=budget)
    check_budget('exact search on Bil_{}'.format(spec.r), spec.vertex_count,
                 budget)
    if graph is None:
        graph = BilGraph(spec, max(budget, spec.vertex_count), thread_num,
                         log)
    return graph


def exact_clique_number(spec, budget=None, log=None, graph=None,
                        thread_num=1):
    """omega(Bil_r) by branch and bound."""
    graph = _exact_graph(spec, budget, log, graph, thread_num)
    return len(max_clique_bitset(graph.bitsets(), thread_num, log))


def exact_independence_number(spec, budget=None, log=None, graph=None,
                              thread_num=1):
    """alpha(Bil_r) as the clique number of the complement."""
    graph = _exact_graph(spec, budget, log, graph, thread_num)
    return len(max_clique_bitset(complement_bitsets(graph.bitsets()),
                                 thread_num, log))


# -- structural checks --------------------------------------------------------

def _sample_pair(spec, rng):
    """A random X and a partner Y, adjacent roughly half of the time."""
    ring = spec.ring
    X = random_matrix(ring, spec.m, spec.n, rng)
    if rng.integers(0, 2):
        Y = X + random_low_rank(ring, spec.m, spec.n, spec.r, rng)
    else:
        Y = random_matrix(ring, spec.m, spec.n, rng)
    return X, Y


def check_vertex_transitivity(spec, samples=None, seed=0, log=None):
    """Sampled check of the automorphisms behind vertex transitivity.

    For each sample, X -> S^-1 X T + A must keep adjacency of a random pair
    and X -> X + (B - A) must send A to B and keep adjacency of a pair.
    """
    log = log or Logger()
    samples = get_budget('transitivity', 'samples', override=samples)
    rng = np.random.default_rng(seed)
    ring = spec.ring

    for k in range(samples):
        S_inv = mat_inverse(random_invertible(ring, spec.m, rng=rng))
        T = random_invertible(ring, spec.n, rng=rng)
        A = random_matrix(ring, spec.m, spec.n, rng)
        X, Y = _sample_pair(spec, rng)
        before = adjacent(spec, X, Y)
        after = adjacent(spec, mat_mul(mat_mul(S_inv, X), T) + A,
                         mat_mul(mat_mul(S_inv, Y), T) + A)
        if before != after:
            log.error('sample %d: S^-1 X T + A broke adjacency', k)
            return TransitivityReport(False, k + 1, ('affine', X, Y))

        B = random_matrix(ring, spec.m, spec.n, rng)
        shift = mat_sub(B, A)
        X, Y = _sample_pair(spec, rng)
        if A + shift != B or \
                adjacent(spec, X, Y) != adjacent(spec, X + shift, Y + shift):
            log.error('sample %d: translation broke adjacency', k)
            return TransitivityReport(False, k + 1, ('translation', X, Y))

    log.info('vertex transitivity: %d samples preserved', samples)
    return TransitivityReport(True, samples)


def check_connectivity(spec, budget=None, log=None, graph=None):
    """BFS connectivity of the materialized graph."""
    graph = graph or BilGraph(spec, budget, log=log)
    return graph.is_connected()


def sandwich_inequality(spec, alpha=None, omega=None):
    """chi >= |V| / alpha >= omega, with alpha and omega defaulting to
    h^(n(m-r)) and h^(nr)."""
    alpha = spec.independence_number if alpha is None else alpha
    omega = spec.clique_number if omega is None else omega
    vertices = spec.vertex_count
    return SandwichReport(vertices, alpha, omega, ceil(vertices / alpha),
                          vertices >= alpha * omega,
                          vertices == alpha * omega)
