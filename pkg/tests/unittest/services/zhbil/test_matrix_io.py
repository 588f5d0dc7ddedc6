'''Unit test for matrix_io module.'''

import json
import logging
import os
import shutil
import tempfile
import unittest
from math import inf

from services.zhbil import matrix_io
from services.zhbil.algebra.matrix_core import Mat, diag, identity
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.errors import InvalidParameterError
from services.zhbil.graph.finite_field import FieldSpec
from services.zhbil.graph.rankcodes import gabidulin_code


class RecordTestCase(unittest.TestCase):
    '''Unit test for the JSON records.'''

    def test_matrix_record(self):
        A = Mat(RingSpec.of(6), [[2, 0, 5], [1, 3, 4]])
        record = matrix_io.matrix_to_record(A)
        self.assertEqual(record, {'h': 6, 'rows': 2, 'cols': 3,
                                  'entries': [[2, 0, 5], [1, 3, 4]]})
        self.assertEqual(matrix_io.matrix_from_record(record), A)

    def test_bad_matrix_records(self):
        base = {'h': 6, 'rows': 1, 'cols': 2, 'entries': [[1, 2]]}
        bad = (dict(base, entries=[[1, 6]]), dict(base, entries=[[1, -1]]),
               dict(base, entries=[[1, 2.0]]), dict(base, entries=[[1]]),
               dict(base, rows=2), {'h': 6, 'entries': [[1]]}, [1, 2])
        for record in bad:
            with self.assertRaises(InvalidParameterError):
                matrix_io.matrix_from_record(record)

    def test_family_record(self):
        ring = RingSpec.of(6)
        family = {identity(ring, 2), diag(ring, [2, 3])}
        record = matrix_io.family_to_record(ring, 2, 2, family)
        self.assertEqual(record['members'], [[[1, 0], [0, 1]],
                                             [[2, 0], [0, 3]]])
        self.assertEqual(matrix_io.family_from_record(record),
                         (ring, 2, 2, frozenset(family)))

    def test_family_rows(self):
        ring = RingSpec.of(4)
        family = {identity(ring, 2), diag(ring, [2, 0])}
        rows = matrix_io.family_to_rows(family)
        self.assertEqual(rows, [[1, 0, 0, 1], [2, 0, 0, 0]])
        self.assertEqual(matrix_io.family_from_rows(ring, 2, 2, rows),
                         frozenset(family))
        with self.assertRaises(InvalidParameterError):
            matrix_io.family_from_rows(ring, 2, 2, [[1, 0, 0]])
        with self.assertRaises(InvalidParameterError):
            matrix_io.family_from_rows(ring, 2, 2, [[1, 0, 0, 4]])

    def test_code_record(self):
        code = gabidulin_code(FieldSpec.least(2, 2), 2, 2, 2)
        record = matrix_io.code_to_record(code, 2)
        self.assertEqual(record['size'], 4)
        self.assertEqual(record['verified_min_distance'], 2)
        self.assertTrue(record['linear'])
        self.assertEqual(len(record['members']), 4)
        self.assertIsNone(matrix_io.distance_value(inf))


class FileTestCase(unittest.TestCase):
    '''Unit test for the file helpers.'''

    def setUp(self):
        logging.disable(logging.CRITICAL)
        self.temp_dir = tempfile.mkdtemp()
        self.ring = RingSpec.of(6)
        self.family = {identity(self.ring, 2), diag(self.ring, [2, 3])}

    def tearDown(self):
        logging.disable(logging.NOTSET)
        shutil.rmtree(self.temp_dir)

    def _path(self, name):
        return os.path.join(self.temp_dir, name)

    def test_matrix_file(self):
        A = diag(self.ring, [2, 3])
        matrix_io.save_matrix(self._path('a.json'), A)
        self.assertEqual(matrix_io.load_matrix(self._path('a.json')), A)
        with open(self._path('a.json')) as f:
            self.assertEqual(json.load(f)['entries'], [[2, 0], [0, 3]])

    def test_family_files(self):
        for name, fmt in (('f.json', 'json'), ('f.csv', 'csv')):
            path = self._path(name)
            matrix_io.save_family(path, self.ring, 2, 2, self.family, fmt)
            loaded = matrix_io.load_family(path, self.ring, 2, 2)
            self.assertEqual(loaded, (self.ring, 2, 2,
                                      frozenset(self.family)))

    def test_csv_needs_shape(self):
        path = self._path('f.csv')
        matrix_io.save_family(path, self.ring, 2, 2, self.family, 'csv')
        with self.assertRaises(InvalidParameterError):
            matrix_io.load_family(path)

    def test_unreadable(self):
        with self.assertRaises(InvalidParameterError):
            matrix_io.load_matrix(self._path('absent.json'))
        with open(self._path('broken.json'), 'w') as f:
            f.write('{"h": 6,')
        with self.assertRaises(InvalidParameterError):
            matrix_io.load_matrix(self._path('broken.json'))

    def test_save_code(self):
        code = gabidulin_code(FieldSpec.least(3, 2), 2, 2, 2)
        path = self._path('code.json')
        matrix_io.save_code(path, code, 2)
        ring, m, n, family = matrix_io.load_family(path)
        self.assertEqual((ring.h, m, n, len(family)), (3, 2, 2, 9))


if __name__ == '__main__':
    unittest.main(verbosity=2)
