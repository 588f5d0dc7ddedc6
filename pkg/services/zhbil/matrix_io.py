''' Mat, family and code records <-> JSON and CSV files. '''

from math import inf

import numpy as np

from framework.datastore.file_dao import (
    CsvFileDecoder, FileDataStore, JsonFileDecoder)
from services.zhbil.algebra.matrix_core import Mat
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.errors import InvalidParameterError


def _require(record, keys, what):
    if not isinstance(record, dict):
        raise InvalidParameterError('{} must be a JSON object'.format(what))
    missing = [k for k in keys if k not in record]
    if missing:
        raise InvalidParameterError(
            '{} is missing {}'.format(what, ', '.join(missing)))


def _checked_entries(ring, rows, cols, entries, what):
    array = np.array(entries, dtype=object)
    if array.shape != (rows, cols):
        raise InvalidParameterError('{}: entries are not {}x{}'.format(
            what, rows, cols))
    if any(not isinstance(v, int) or isinstance(v, bool) or
           not 0 <= v < ring.h for v in array.ravel().tolist()):
        raise InvalidParameterError(
            '{}: entries must be integers in [0, {})'.format(what, ring.h))
    return Mat.from_residues(ring, array.astype(np.int64))


# -- records ------------------------------------------------------------------

def matrix_to_record(A):
    return {'h': A.ring.h, 'rows': A.rows, 'cols': A.cols,
            'entries': A.tolist()}


def matrix_from_record(record):
    _require(record, ('h', 'rows', 'cols', 'entries'), 'matrix')
    ring = RingSpec.of(int(record['h']))
    return _checked_entries(ring, int(record['rows']), int(record['cols']),
                            record['entries'], 'matrix')


def family_to_record(ring, m, n, family):
    """Members listed by ascending vertex index."""
    members = sorted(A.tolist() for A in family)
    return {'h': ring.h, 'rows': m, 'cols': n, 'members': members}


def family_from_record(record):
    _require(record, ('h', 'rows', 'cols', 'members'), 'family')
    ring = RingSpec.of(int(record['h']))
    m, n = int(record['rows']), int(record['cols'])
    family = frozenset(_checked_entries(ring, m, n, entries, 'member')
                       for entries in record['members'])
    return ring, m, n, family


def distance_value(distance):
    """JSON form of a code distance; null for the no-pair sentinel."""
    return None if distance == inf else int(distance)


def code_to_record(code, verified_min_distance):
    record = family_to_record(code.ring, code.m, code.n, code.matrices())
    record.update({
        'size': code.size,
        'verified_min_distance': distance_value(verified_min_distance),
        'linear': bool(code.linear),
        'claimed_min_distance': int(code.claimed_min_distance),
    })
    return record


def family_to_rows(family):
    """CSV rows: one matrix per line, row-major."""
    return sorted(A.entries.ravel().tolist() for A in family)


def family_from_rows(ring, m, n, rows):
    family = set()
    for number, row in enumerate(rows, 1):
        if len(row) != m * n:
            raise InvalidParameterError(
                'line {}: expected {} entries, got {}'.format(
                    number, m * n, len(row)))
        family.add(_checked_entries(ring, m, n,
                                    np.array(row, dtype=object).reshape(m, n)
                                    .tolist(), 'line {}'.format(number)))
    return frozenset(family)


# -- files --------------------------------------------------------------------

def _read(path, decoder):
    data = FileDataStore(path, decoder).read_data()
    if data is None:
        raise InvalidParameterError('cannot read {}'.format(path))
    return data


def _write(path, data, decoder):
    ok, err = FileDataStore(path, decoder).write_data(data)
    if not ok:
        raise OSError('cannot write {}: {}'.format(path, err))


def load_matrix(path):
    return matrix_from_record(_read(path, JsonFileDecoder()))


def save_matrix(path, A):
    _write(path, matrix_to_record(A), JsonFileDecoder())


def load_family(path, ring=None, m=None, n=None):
    """Family from JSON, or from CSV when (ring, m, n) are given.

    Returns:
        (ring, m, n, frozenset of Mat)
    """
    if path.endswith('.csv'):
        if ring is None or m is None or n is None:
            raise InvalidParameterError(
                'a CSV family needs --h, --m and --n')
        rows = _read(path, CsvFileDecoder())
        return ring, m, n, family_from_rows(ring, m, n, rows)
    return family_from_record(_read(path, JsonFileDecoder()))


def save_family(path, ring, m, n, family, fmt='json'):
    if fmt == 'csv':
        _write(path, family_to_rows(family), CsvFileDecoder())
    else:
        _write(path, family_to_record(ring, m, n, family), JsonFileDecoder())


def save_code(path, code, verified_min_distance):
    _write(path, code_to_record(code, verified_min_distance),
           JsonFileDecoder())
