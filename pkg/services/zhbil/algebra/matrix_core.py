# -*- coding: utf-8 -*-
""" Matrices over Z_h """
import numpy as np

from services.zhbil.algebra.ring_core import RingSpec, valuation
from services.zhbil.errors import (
    DimensionMismatchError, InvalidParameterError)

INT64_MAX = 2 ** 63 - 1


def needs_object_dtype(h, terms=1):
    """True when `terms` products of two residues may overflow int64."""
    return terms * (h - 1) * (h - 1) > INT64_MAX


class Mat:
    """Immutable m x n matrix over Z_h.

    Entries are stored as a read-only int64 array of canonical residues.
    Equality and hashing use (h, shape, entries).
    """

    __slots__ = ('ring', '_data', '_hash')

    def __init__(self, ring, entries):
        if not isinstance(ring, RingSpec):
            ring = RingSpec.of(int(ring))
        data = np.array(entries, dtype=object)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise InvalidParameterError(
                'a matrix needs a nonempty 2-D entry array, got shape {}'
                .format(data.shape))
        data = np.mod(data, ring.h).astype(np.int64)
        data.setflags(write=False)
        self.ring = ring
        self._data = data
        self._hash = None

    @classmethod
    def from_residues(cls, ring, array):
        """Trusted constructor: `array` already holds canonical residues."""
        obj = cls.__new__(cls)
        array = np.ascontiguousarray(array, dtype=np.int64)
        array.setflags(write=False)
        obj.ring = ring
        obj._data = array
        obj._hash = None
        return obj

    @property
    def rows(self):
        return self._data.shape[0]

    @property
    def cols(self):
        return self._data.shape[1]

    @property
    def shape(self):
        return self._data.shape

    @property
    def entries(self):
        """Read-only int64 view of the residues."""
        return self._data

    def tolist(self):
        return self._data.tolist()

    def __getitem__(self, key):
        return int(self._data[key])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.ring == other.ring and \
            self.shape == other.shape and np.array_equal(self._data,
                                                         other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.h, self.shape,
                               self._data.tobytes()))
        return self._hash

    def __repr__(self):
        return 'Mat(h={}, {})'.format(self.ring.h, self.tolist())

    def _check_same(self, other):
        if not isinstance(other, Mat):
            raise DimensionMismatchError('operand is not a matrix')
        if other.ring != self.ring:
            raise DimensionMismatchError(
                'matrices over Z_{} and Z_{} do not mix'.format(
                    self.ring.h, other.ring.h))

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __neg__(self):
        return Mat.from_residues(self.ring, (-self._data) % self.ring.h)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, scalar):
        scalar = int(scalar) % self.ring.h
        if needs_object_dtype(self.ring.h):
            out = (self._data.astype(object) * scalar) % self.ring.h
        else:
            out = (self._data * scalar) % self.ring.h
        return Mat.from_residues(self.ring, out)

    __rmul__ = __mul__

    @property
    def T(self):  # pylint: disable=invalid-name
        return Mat.from_residues(self.ring, self._data.T)

    def is_zero(self):
        return not self._data.any()


def identity(ring, n):
    return Mat.from_residues(ring, np.eye(n, dtype=np.int64) % ring.h)


def zeros(ring, m, n):
    return Mat.from_residues(ring, np.zeros((m, n), dtype=np.int64))


def diag(ring, values, m=None, n=None):
    """m x n matrix with `values` on the main diagonal."""
    values = [int(v) for v in values]
    m = len(values) if m is None else m
    n = m if n is None else n
    if len(values) > min(m, n):
        raise InvalidParameterError('too many diagonal values for the shape')
    data = np.zeros((m, n), dtype=object)
    for c, v in enumerate(values):
        data[c, c] = v
    return Mat(ring, data)


def transpose(A):
    return A.T


def mat_add(A, B):
    A._check_same(B)  # pylint: disable=protected-access
    if A.shape != B.shape:
        raise DimensionMismatchError(
            'cannot add {} and {}'.format(A.shape, B.shape))
    if needs_object_dtype(A.ring.h):
        out = (A.entries.astype(object) + B.entries) % A.ring.h
    else:
        out = (A.entries + B.entries) % A.ring.h
    return Mat.from_residues(A.ring, out)


def mat_sub(A, B):
    A._check_same(B)  # pylint: disable=protected-access
    if A.shape != B.shape:
        raise DimensionMismatchError(
            'cannot subtract {} and {}'.format(A.shape, B.shape))
    return Mat.from_residues(A.ring, (A.entries - B.entries) % A.ring.h)


def mat_mul(A, B):
    A._check_same(B)  # pylint: disable=protected-access
    if A.cols != B.rows:
        raise DimensionMismatchError(
            'cannot multiply {} by {}'.format(A.shape, B.shape))
    h = A.ring.h
    if needs_object_dtype(h, A.cols):
        out = A.entries.astype(object).dot(B.entries.astype(object)) % h
    else:
        out = (A.entries @ B.entries) % h
    return Mat.from_residues(A.ring, out)


def block_matrix(blocks):
    """Assemble a matrix from a 2-D list of conformable blocks."""
    ring = blocks[0][0].ring
    for row in blocks:
        for block in row:
            if block.ring != ring:
                raise DimensionMismatchError('blocks over different rings')
    try:
        data = np.block([[b.entries for b in row] for row in blocks])
    except ValueError as err:
        raise DimensionMismatchError(str(err)) from err
    return Mat.from_residues(ring, data)


def batch_transform(ring, stack, S=None, T=None, B0=None):
    """S . X . T + B0 for every X of a (k, m, n) residue stack."""
    h = ring.h
    out = np.asarray(stack, dtype=np.int64)
    big = needs_object_dtype(h, max(out.shape[1:]))
    if big:
        out = out.astype(object)
    if S is not None:
        left = S.entries.astype(object) if big else S.entries
        out = np.matmul(left, out) % h
    if T is not None:
        right = T.entries.astype(object) if big else T.entries
        out = np.matmul(out, right) % h
    if B0 is not None:
        out = (out + B0.entries) % h
    return np.asarray(out, dtype=np.int64)


# -- prime-power kernels on nested lists -----------------------------------

def det_prime_power(rows, p, s):
    """Exact determinant over Z_{p^s} by minimal-valuation pivoting."""
    q = p ** s
    work = [[v % q for v in row] for row in rows]
    n = len(work)
    sign = 1
    det = 1
    for k in range(n):
        best = None
        for i in range(k, n):
            v = valuation(work[i][k], p, s)
            if best is None or v < best[0]:
                best = (v, i)
        v, i = best
        if v == s:
            return 0
        if i != k:
            work[k], work[i] = work[i], work[k]
            sign = -sign
        pivot = work[k][k]
        unit_inv = pow(pivot // p ** v, -1, q)
        for i in range(k + 1, n):
            b = work[i][k]
            if b:
                c = (b // p ** v) * unit_inv % q
                work[i] = [(x - c * y) % q for x, y in zip(work[i], work[k])]
        det = det * pivot % q
    return sign * det % q


def inverse_prime_power(rows, p, s):
    """Gauss-Jordan inverse over Z_{p^s}; None when singular."""
    q = p ** s
    n = len(rows)
    aug = [[v % q for v in row] + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(rows)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if aug[i][k] % p), None)
        if pivot_row is None:
            return None
        aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        inv = pow(aug[k][k], -1, q)
        aug[k] = [x * inv % q for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                c = aug[i][k]
                aug[i] = [(x - c * y) % q for x, y in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]


# -- Z_h operations --------------------------------------------------------

def _check_square(A):
    if A.rows != A.cols:
        raise DimensionMismatchError(
            'square matrix required, got {}'.format(A.shape))


def det(A):
    """Determinant in Z_h, per prime power then CRT."""
    _check_square(A)
    ring = A.ring
    rows = A.tolist()
    residues = [det_prime_power([[v % q for v in row] for row in rows], p, s)
                for (p, s), q in zip(ring.primes, ring.moduli)]
    total = sum(r * e for r, e in zip(residues, ring.idempotents))
    return ring.elem(total)


def is_invertible(A):
    """det(A) is a unit."""
    _check_square(A)
    rows = A.tolist()
    return all(det_prime_power([[v % q for v in row] for row in rows], p, s)
               % p != 0
               for (p, s), q in zip(A.ring.primes, A.ring.moduli))


def mat_inverse(A):
    """Two-sided inverse over Z_h."""
    _check_square(A)
    ring = A.ring
    rows = A.tolist()
    parts = []
    for (p, s), q in zip(ring.primes, ring.moduli):
        inv = inverse_prime_power([[v % q for v in row] for row in rows], p, s)
        if inv is None:
            raise InvalidParameterError('matrix is not invertible over Z_{}'
                                        .format(ring.h))
        parts.append(inv)
    return crt_lift_mat(ring, parts)


def project_mat(A, i):
    """pi_i(A) over Z_{p_i^s_i}."""
    sub = A.ring.component(i)
    return Mat.from_residues(sub, A.entries % sub.h)


def coproject_mat(A, i):
    """theta_i(A) over Z_{h / p_i^s_i}."""
    sub = A.ring.cocomponent(i)
    return Mat.from_residues(sub, A.entries % sub.h)


def crt_lift_mat(ring, components):
    """Entrywise CRT of one matrix per prime component."""
    if len(components) != ring.t:
        raise DimensionMismatchError(
            'expected {} components, got {}'.format(ring.t, len(components)))
    arrays = [np.array(c.entries if isinstance(c, Mat) else c, dtype=object)
              for c in components]
    shape = arrays[0].shape
    if any(a.shape != shape for a in arrays) or len(shape) != 2:
        raise DimensionMismatchError('component matrices differ in shape')
    total = np.zeros(shape, dtype=object)
    for a, q, e in zip(arrays, ring.moduli, ring.idempotents):
        total = total + (a % q) * e
    return Mat(ring, total)


def random_matrix(ring, m, n, rng):
    """Uniform m x n matrix drawn from a numpy Generator."""
    return Mat.from_residues(
        ring, rng.integers(0, ring.h, size=(m, n), dtype=np.int64))


def random_invertible(ring, n, seed=None, rng=None):
    """Uniform element of GL_n(Z_h) by rejection sampling.

    Deterministic for a given seed (numpy PCG64 via default_rng).
    """
    if n < 1:
        raise InvalidParameterError('n must be positive')
    rng = rng if rng is not None else np.random.default_rng(seed)
    while True:
        candidate = random_matrix(ring, n, n, rng)
        if is_invertible(candidate):
            return candidate


def random_low_rank(ring, m, n, r, rng):
    """B . C with B m x r and C r x n uniform; inner rank at most r."""
    if r == 0:
        return zeros(ring, m, n)
    return mat_mul(random_matrix(ring, m, r, rng),
                   random_matrix(ring, r, n, rng))


# -- vertex encoding --------------------------------------------------------

def to_index(A):
    """Row-major base-h number of A, first entry most significant."""
    idx = 0
    h = A.ring.h
    for v in A.entries.ravel().tolist():
        idx = idx * h + v
    return idx


def from_index(ring, m, n, idx):
    """Inverse of to_index."""
    idx = int(idx)
    if idx < 0 or idx >= ring.h ** (m * n):
        raise InvalidParameterError('vertex index {} out of range'.format(idx))
    digits = [0] * (m * n)
    for k in range(m * n - 1, -1, -1):
        idx, digits[k] = divmod(idx, ring.h)
    digits = np.array(digits, dtype=np.int64).reshape(m, n)
    return Mat.from_residues(ring, digits)


def place_values(h, length):
    """h^(length-1), ..., h, 1 as int64; requires h^length < 2^63."""
    if h ** length > INT64_MAX:
        raise InvalidParameterError(
            'h^{} does not fit vertex indices in int64'.format(length))
    return h ** np.arange(length - 1, -1, -1, dtype=np.int64)


def index_digits(h, length, indices):
    """(N, length) digit array of vertex indices."""
    indices = np.asarray(indices, dtype=np.int64)
    return (indices[:, None] // place_values(h, length)[None, :]) % h


def digits_index(h, digits):
    """Vertex indices of an (..., length) digit array."""
    digits = np.asarray(digits, dtype=np.int64)
    return digits @ place_values(h, digits.shape[-1])
