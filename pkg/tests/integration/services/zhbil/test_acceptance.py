'''Acceptance criteria run end to end.'''

import logging
import os
import unittest

from services.zhbil.graph.bilgraph import BilGraph, GraphSpec
from services.zhbil.graph.rankcodes import (
    clique_cover_complement, color_graph, core_certificate)
from services.zhbil.selftest import CRITERIA, run_selftest

FULL_ENV = 'ZHBIL_FULL_SELFTEST'


class AcceptanceTestCase(unittest.TestCase):
    '''The selftest suite at both levels.'''

    def setUp(self):
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def _assert_passed(self, results):
        for result in results:
            with self.subTest(criterion=result.criterion):
                self.assertTrue(result.passed,
                                '{}: {}'.format(result.title, result.detail))

    def test_desk(self):
        results = run_selftest('desk', seed=0, threads=2)
        self.assertEqual([r.criterion for r in results],
                         [number for number, _, _ in CRITERIA])
        self._assert_passed(results)

    def test_desk_other_seed(self):
        self._assert_passed(run_selftest('desk', seed=17, only=(1, 8, 9)))

    @unittest.skipUnless(os.environ.get(FULL_ENV),
                         'set {} to run the full sizes'.format(FULL_ENV))
    def test_full(self):
        self._assert_passed(run_selftest('full', seed=0, threads=4))


class ColoringTestCase(unittest.TestCase):
    '''Colorings checked edge by edge on Bil_1(Z_6^(2x2)).'''

    def setUp(self):
        logging.disable(logging.CRITICAL)
        self.spec = GraphSpec.of(6, 2, 2, 1)
        self.graph = BilGraph(self.spec)

    def tearDown(self):
        logging.disable(logging.NOTSET)

    def test_coset_coloring(self):
        coloring = color_graph(self.spec, graph=self.graph)
        self.assertTrue(coloring.edges_checked)
        self.assertTrue(coloring.proper)
        self.assertEqual(coloring.color_count, self.spec.clique_number)

    def test_complement_cover(self):
        cover = clique_cover_complement(self.spec)
        self.assertEqual(cover.part_count, self.spec.independence_number)
        self.assertEqual(cover.part_size, self.spec.clique_number)
        self.assertTrue(cover.disjoint and cover.covers and
                        cover.parts_are_cliques)
        for part in cover.parts[:3].tolist():
            for k, u in enumerate(part):
                for v in part[k + 1:]:
                    self.assertTrue(self.graph.is_adjacent(u, v))

    def test_core(self):
        certificate = core_certificate(self.spec)
        self.assertEqual((certificate['omega'], certificate['chi']), (36, 36))
        self.assertEqual(certificate['complement_chi'], 36)
        self.assertFalse(certificate['graph_is_core'])


if __name__ == '__main__':
    unittest.main(verbosity=2)
