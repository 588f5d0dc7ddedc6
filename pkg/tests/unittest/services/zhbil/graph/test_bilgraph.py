'''Unit test for bilgraph module.'''

import logging
import unittest

import numpy as np

from services.zhbil.algebra.matrix_core import (
    diag, digits_index, from_index, identity, index_digits, zeros)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.errors import (
    BudgetExceededError, DimensionMismatchError, InvalidParameterError)
from services.zhbil.graph.bilgraph import (
    BilGraph, GraphSpec, adjacent, build_graph, check_connectivity,
    check_vertex_transitivity, complement_bitsets, connection_set,
    exact_clique_number, exact_independence_number, max_clique_bitset,
    sandwich_inequality)


def _cycle(count):
    return [(1 << ((v + 1) % count)) | (1 << ((v - 1) % count))
            for v in range(count)]


class GraphSpecTestCase(unittest.TestCase):
    '''Unit test for GraphSpec class.'''

    def test_parameters(self):
        for args in ((2, 2, 2, 0), (2, 3, 2, 1), (2, 2, 2, 3)):
            with self.assertRaises(InvalidParameterError):
                GraphSpec.of(*args)

    def test_numbers(self):
        spec = GraphSpec.of(6, 2, 3, 1)
        self.assertEqual(spec.vertex_count, 6 ** 6)
        self.assertEqual(spec.clique_number, 6 ** 3)
        self.assertEqual(spec.independence_number, 6 ** 3)

    def test_check_matrix(self):
        spec = GraphSpec.of(6, 2, 2, 1)
        with self.assertRaises(DimensionMismatchError):
            spec.check_matrix(zeros(RingSpec.of(6), 2, 3))
        with self.assertRaises(DimensionMismatchError):
            spec.check_matrix(zeros(RingSpec.of(4), 2, 2))

    def test_adjacent(self):
        spec = GraphSpec.of(6, 2, 2, 1)
        ring = spec.ring
        self.assertFalse(adjacent(spec, identity(ring, 2), identity(ring, 2)))
        self.assertFalse(adjacent(spec, identity(ring, 2), zeros(ring, 2, 2)))
        # diag(2, 3) is zero mod 2 in one place and mod 3 in the other
        self.assertTrue(adjacent(spec, diag(ring, [2, 3]), zeros(ring, 2, 2)))
        self.assertFalse(adjacent(spec, identity(ring, 2) * 2,
                                  identity(ring, 2) * 5))


class BilGraphTestCase(unittest.TestCase):
    '''Unit test for BilGraph class.'''

    def setUp(self):
        logging.disable(logging.CRITICAL)
        self.spec = GraphSpec.of(2, 2, 2, 1)
        self.graph = BilGraph(self.spec)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_small_graph(self):
        '''Test on Bil_1(Z_2^(2x2)).

        Test target:
            16 vertices of degree 9 (the rank one matrices), connected.
        '''

        self.assertTrue(self.graph.materialized)
        self.assertEqual(self.graph.degree, 9)
        self.assertEqual(self.graph.degrees().tolist(), [9] * 16)
        self.assertTrue(self.graph.is_connected())
        self.assertTrue(check_connectivity(self.spec))

    def test_degree_is_constant(self):
        '''Test on degrees() function.

        Test target:
            The bit-row degree of every vertex of Bil_1(Z_3^(2x2)) equals
            a count of adjacent() over all other vertices.
        '''

        spec = GraphSpec.of(3, 2, 2, 1)
        graph = BilGraph(spec)
        vertices = [from_index(spec.ring, 2, 2, v) for v in range(81)]
        counted = [sum(adjacent(spec, X, Y) for Y in vertices)
                   for X in vertices]
        self.assertEqual(graph.degrees().tolist(), counted)
        self.assertEqual(len(set(counted)), 1)
        self.assertEqual(counted[0], graph.degree)

    def test_bit_rows_match_neighbor_table(self):
        dense = np.zeros((16, 16), dtype=bool)
        for v in range(16):
            dense[v, self.graph.neighbors(v)] = True
        self.assertTrue((np.packbits(dense, axis=1) ==
                         self.graph.bit_rows).all())
        for u in range(16):
            for v in range(16):
                self.assertEqual(self.graph.is_adjacent(u, v), dense[u, v])

    def test_symmetric(self):
        dense = np.unpackbits(self.graph.bit_rows, axis=1, count=16)
        self.assertTrue((dense == dense.T).all())
        self.assertFalse(dense.diagonal().any())

    def test_connection_set_is_symmetric(self):
        spec = GraphSpec.of(6, 2, 2, 1)
        connection = connection_set(spec)
        digits = index_digits(6, 4, connection)
        negated = digits_index(6, (-digits) % 6)
        self.assertEqual(sorted(negated.tolist()), connection.tolist())
        self.assertNotIn(0, connection.tolist())

    def test_threads_do_not_change_connection_set(self):
        spec = GraphSpec.of(4, 2, 2, 1)
        self.assertEqual(connection_set(spec, thread_num=1).tolist(),
                         connection_set(spec, thread_num=3).tolist())

    def test_on_demand(self):
        lazy = build_graph(self.spec, vertex_budget=10)
        self.assertFalse(lazy.materialized)
        self.assertEqual(lazy.degree, 9)
        for u in range(16):
            for v in range(16):
                self.assertEqual(lazy.is_adjacent(u, v),
                                 self.graph.is_adjacent(u, v))
        with self.assertRaises(BudgetExceededError):
            lazy.neighbors(0)

    def test_exact_numbers(self):
        self.assertEqual(exact_clique_number(self.spec, graph=self.graph), 4)
        self.assertEqual(exact_independence_number(self.spec), 4)

    def test_exact_search_budget(self):
        with self.assertRaises(BudgetExceededError):
            exact_clique_number(GraphSpec.of(3, 2, 2, 1), budget=50)

    def test_exact_search_budget_with_prebuilt_graph(self):
        '''Test on exact_clique_number() given a materialized graph.

        Test target:
            The exact search budget still applies when the caller passes
            a graph it built itself.
        '''

        spec = GraphSpec.of(3, 2, 3, 1)
        graph = BilGraph(spec)
        self.assertTrue(graph.materialized)
        with self.assertRaises(BudgetExceededError):
            exact_clique_number(spec, budget=50, graph=graph)
        with self.assertRaises(BudgetExceededError):
            exact_independence_number(spec, budget=50, graph=graph)
        with self.assertRaises(BudgetExceededError):
            exact_clique_number(spec, graph=graph)

    def test_threads_do_not_change_exact_numbers(self):
        spec = GraphSpec.of(3, 2, 2, 1)
        graph = BilGraph(spec)
        for threads in (1, 2, 5):
            self.assertEqual(exact_clique_number(spec, graph=graph,
                                                 thread_num=threads), 9)
            self.assertEqual(exact_independence_number(
                spec, graph=graph, thread_num=threads), 9)


class MaxCliqueTestCase(unittest.TestCase):
    '''Unit test for max_clique_bitset() function.'''

    def test_cycle(self):
        cycle = _cycle(5)
        self.assertEqual(len(max_clique_bitset(cycle)), 2)
        self.assertEqual(len(max_clique_bitset(complement_bitsets(cycle))), 2)

    def test_complete_and_empty(self):
        complete = complement_bitsets([0] * 4)
        self.assertEqual(max_clique_bitset(complete), [0, 1, 2, 3])
        self.assertEqual(len(max_clique_bitset([0] * 3)), 1)
        self.assertEqual(max_clique_bitset([]), [])

    def test_clique_members_are_adjacent(self):
        # triangle 0-1-2 with a pendant path 2-3-4
        edges = ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4))
        adjacency = [0] * 5
        for u, v in edges:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        self.assertEqual(max_clique_bitset(adjacency), [0, 1, 2])

    def test_root_branches_over_threads(self):
        '''Test on max_clique_bitset() with several workers.

        Test target:
            Splitting the root branches gives the same clique size for
            every thread count, and the members form a clique.
        '''

        # two disjoint 5-cycles joined to a K4 through vertex 10
        adjacency = [0] * 14
        edges = [(v, (v + 1) % 5) for v in range(5)]
        edges += [(5 + v, 5 + (v + 1) % 5) for v in range(5)]
        edges += [(u, v) for u in range(10, 14) for v in range(u + 1, 14)]
        edges += [(0, 10), (5, 10)]
        for u, v in edges:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u

        single = max_clique_bitset(adjacency)
        self.assertEqual(single, [10, 11, 12, 13])
        for threads in (2, 3, 14, 20):
            clique = max_clique_bitset(adjacency, thread_num=threads)
            self.assertEqual(len(clique), 4)
            for u in clique:
                for v in clique:
                    if u != v:
                        self.assertTrue(adjacency[u] >> v & 1)


class StructureTestCase(unittest.TestCase):
    '''Unit test for the structural checks.'''

    def setUp(self):
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_vertex_transitivity(self):
        for h, m, n in ((6, 2, 2), (12, 2, 3)):
            report = check_vertex_transitivity(GraphSpec.of(h, m, n, 1),
                                               samples=40, seed=3)
            self.assertTrue(report.holds)
            self.assertEqual(report.checked, 40)
            self.assertIsNone(report.first_failure)

    def test_sandwich(self):
        report = sandwich_inequality(GraphSpec.of(6, 2, 2, 1))
        self.assertEqual(report.vertices, 1296)
        self.assertEqual((report.alpha, report.omega), (36, 36))
        self.assertEqual(report.chi_lower_bound, 36)
        self.assertTrue(report.holds and report.equality)

        report = sandwich_inequality(GraphSpec.of(2, 2, 2, 1), alpha=3)
        self.assertEqual(report.chi_lower_bound, 6)
        self.assertFalse(report.equality)


if __name__ == '__main__':
    unittest.main(verbosity=2)
