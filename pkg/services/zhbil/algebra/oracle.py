# -*- coding: utf-8 -*-
""" Brute-force oracles

Nothing here calls the Smith-form or clique code it is used to check:
invariant factors come from minors of the integer lift, inner rank from
an exhaustive factorization search, and cliques from networkx.
"""
import itertools

import networkx as nx
import numpy as np
from sympy import Matrix, multiplicity

from services.zhbil.budget import check_budget, get_budget


def _int_det(rows):
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return int(Matrix(rows).det(method='bareiss'))


def minor_valuations(rows, p):
    """mu_j = least p-valuation over all j x j minors of the integer lift.

    Returns a list indexed by j = 0..min(m, n); None stands for "every minor
    of that size is zero".
    """
    m = len(rows)
    n = len(rows[0])
    mus = [0]
    for j in range(1, min(m, n) + 1):
        best = None
        for row_set in itertools.combinations(range(m), j):
            for col_set in itertools.combinations(range(n), j):
                value = _int_det([[rows[r][c] for c in col_set]
                                  for r in row_set])
                if value == 0:
                    continue
                v = multiplicity(p, abs(value))
                if best is None or v < best:
                    best = v
                    if v == 0:
                        break
            if best == 0:
                break
        mus.append(best)
    return mus


def omega_via_minors(A, minor_size_budget=None):
    """Invariant-factor array from determinantal divisors.

    Over Z_{p^s} the k-th determinantal divisor of A is that of the integer
    matrix [A | p^s I], i.e. delta_k = min_j (s (k - j) + mu_j) with mu_j the
    least valuation of the j x j minors of A. Exponents are the successive
    differences of delta.
    """
    budget = get_budget('oracle', 'minor_size_budget',
                        override=minor_size_budget)
    m, n = A.shape
    k_max = min(m, n)
    check_budget('minor enumeration of size {}'.format(k_max), k_max, budget)

    rows = A.tolist()
    result = []
    for p, s in A.ring.primes:
        mus = minor_valuations(rows, p)
        deltas = [0]
        for k in range(1, k_max + 1):
            deltas.append(min(s * (k - j) + mus[j]
                              for j in range(0, k + 1)
                              if mus[j] is not None))
        result.append(tuple(deltas[k] - deltas[k - 1]
                            for k in range(1, k_max + 1)))
    return tuple(result)


def inner_rank_by_factorization(A, budget=None):
    """Least r with A = B . C (B m x r, C r x n), found by exhaustive search.

    Search for each r below min(m, n) covers h^((m + n) r) candidate pairs
    and is checked against the factorization budget. min(m, n) itself always
    works (A = A . I or I . A).
    """
    budget = get_budget('oracle', 'factorization_budget', override=budget)
    h = A.ring.h
    m, n = A.shape
    target = A.entries.astype(np.int64)
    if not target.any():
        return 0

    for r in range(1, min(m, n)):
        check_budget('factorization search with r={}'.format(r),
                     h ** ((m + n) * r), budget)
        # every candidate column c of C, and B . c for each B
        columns = np.array(list(itertools.product(range(h), repeat=r)),
                           dtype=object)
        for b_flat in itertools.product(range(h), repeat=m * r):
            B = np.array(b_flat, dtype=object).reshape(m, r)
            images = (columns @ B.T) % h  # (h^r, m)
            if all((images == target[:, c]).all(axis=1).any()
                   for c in range(n)):
                return r
    return min(m, n)


def reference_graph(vertices, adjacent):
    """networkx graph on `vertices` with edges where adjacent(u, v)."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from((u, v) for u, v in itertools.combinations(vertices, 2)
                         if adjacent(u, v))
    return graph


def _check_vertices(graph, budget):
    budget = get_budget('graph', 'exact_search_budget', override=budget)
    check_budget('exact search', graph.number_of_nodes(), budget)


def exact_clique(graph, budget=None):
    """A maximum clique of a networkx graph."""
    _check_vertices(graph, budget)
    clique, _ = nx.max_weight_clique(graph, weight=None)
    return set(clique)


def exact_mis(graph, budget=None):
    """A maximum independent set: a maximum clique of the complement."""
    _check_vertices(graph, budget)
    clique, _ = nx.max_weight_clique(nx.complement(graph), weight=None)
    return set(clique)
