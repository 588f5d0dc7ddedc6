# -*- coding: utf-8 -*-
""" Smith normal form over Z_{p^s} and Z_h, invariant factors, inner rank

Over Z_{p^s} the form is reached by minimal-valuation pivoting. Over Z_h
the per-prime forms are glued through the CRT and the residual units of
the diagonal are absorbed into S.
"""
import functools
from dataclasses import dataclass
from math import prod

import numpy as np

from services.zhbil.algebra.matrix_core import (
    Mat, block_matrix, crt_lift_mat, diag, index_digits, is_invertible,
    mat_inverse, mat_mul, project_mat, coproject_mat)
from services.zhbil.algebra.ring_core import RingSpec, valuation
from services.zhbil.errors import InvalidParameterError


@dataclass(frozen=True)
class SmithForm:
    """A = S . D . T with D = diag(prod_i p_i^omega[i][c])."""
    S: Mat
    D: Mat
    T: Mat
    omega: tuple

    @property
    def inner_rank(self):
        return rank_from_omega(self.D.ring, self.omega)


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf_kernel(rows, p, s, track_left=True, track_right=True):
    """Diagonalize a matrix over Z_{p^s} given as nested lists.

    Pivot: least valuation among the trailing block, ties to the smallest
    (row, col). Invariant kept throughout: input = U . W . V.

    Args:
        rows: m x n residues.
        p, s: the ring Z_{p^s}.
        track_left/track_right: skip U or V when False.

    Returns:
        (U or None, exponents of length min(m, n), V or None)
    """
    q = p ** s
    m = len(rows)
    n = len(rows[0])
    work = [[v % q for v in row] for row in rows]
    left = _eye(m) if track_left else None
    right = _eye(n) if track_right else None
    k_max = min(m, n)
    exps = []

    for k in range(k_max):
        # [1] pivot search
        best = None
        for i in range(k, m):
            row = work[i]
            for j in range(k, n):
                x = row[j]
                if x:
                    v = valuation(x, p, s)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            exps.extend([s] * (k_max - k))
            break
        v, i, j = best

        # [2] move the pivot to (k, k)
        if i != k:
            work[k], work[i] = work[i], work[k]
            if left is not None:
                for row in left:
                    row[k], row[i] = row[i], row[k]
        if j != k:
            for row in work:
                row[k], row[j] = row[j], row[k]
            if right is not None:
                right[k], right[j] = right[j], right[k]

        pk = p ** v
        unit = work[k][k] // pk
        unit_inv = pow(unit, -1, q)
        pivot_row = work[k]

        # [3] clear column k below the pivot
        for i in range(k + 1, m):
            b = work[i][k]
            if b:
                c = (b // pk) * unit_inv % q
                work[i] = [(x - c * y) % q for x, y in zip(work[i], pivot_row)]
                if left is not None:
                    for row in left:
                        row[k] = (row[k] + c * row[i]) % q

        # [4] clear row k right of the pivot; column k is zero elsewhere
        for j in range(k + 1, n):
            b = pivot_row[j]
            if b:
                c = (b // pk) * unit_inv % q
                pivot_row[j] = 0
                if right is not None:
                    right[k] = [(x + c * y) % q
                                for x, y in zip(right[k], right[j])]

        # [5] move the unit into U
        pivot_row[k] = pk % q
        if left is not None:
            for row in left:
                row[k] = row[k] * unit % q
        exps.append(v)

    return left, exps, right


def rank_from_omega(ring, omega):
    """Number of columns of omega that differ from (s_1, ..., s_t)."""
    if not omega or not omega[0]:
        return 0
    return sum(1 for c in range(len(omega[0]))
               if tuple(row[c] for row in omega) != ring.saturated)


def omega_of_rows(ring, rows):
    """Invariant-factor array of a nested-list matrix, no transforms."""
    return tuple(
        tuple(snf_kernel([[v % q for v in row] for row in rows], p, s,
                         track_left=False, track_right=False)[1])
        for (p, s), q in zip(ring.primes, ring.moduli))


def omega(A):
    """Invariant-factor array Omega(A), t rows of min(m, n) exponents."""
    return omega_of_rows(A.ring, A.tolist())


def snf_prime_power(A):
    """Smith form over Z_{p^s}: A = U . diag(p^alpha_c) . V."""
    ring = A.ring
    if not ring.is_prime_power:
        raise InvalidParameterError(
            'Z_{} is not a prime-power ring'.format(ring.h))
    p, s = ring.primes[0]
    left, exps, right = snf_kernel(A.tolist(), p, s)
    D = diag(ring, [p ** a for a in exps], A.rows, A.cols)
    return SmithForm(Mat(ring, left), D, Mat(ring, right), (tuple(exps),))


def snf(A, track_right=True):
    """Smith form over Z_h assembled from the per-prime forms.

    For m > n the form of the transpose is computed and transposed back.
    With track_right=False the returned T is None.
    """
    ring = A.ring
    m, n = A.shape
    if m > n:
        form = snf(A.T)
        return SmithForm(form.T.T, form.D.T, form.S.T, form.omega)

    rows = A.tolist()
    lefts, rights, omegas = [], [], []
    for (p, s), q in zip(ring.primes, ring.moduli):
        left, exps, right = snf_kernel(
            [[v % q for v in row] for row in rows], p, s,
            track_right=track_right)
        lefts.append(left)
        rights.append(right)
        omegas.append(tuple(exps))

    # d_c = prod_j p_j^alpha_jc; the lifted diagonal differs from it by the
    # unit y_c^-1 with pi_i(y_c) = (prod_{j != i} p_j^alpha_jc)^-1 mod q_i
    diagonal = []
    scales = []
    for c in range(m):
        diagonal.append(prod(p ** om[c] for (p, _), om in
                             zip(ring.primes, omegas)) % ring.h)
        residues = []
        for i, q in enumerate(ring.moduli):
            w = prod(pow(p, omegas[j][c], q)
                     for j, (p, _) in enumerate(ring.primes) if j != i) % q
            residues.append(pow(w, -1, q) if q > 1 else 0)
        scales.append(sum(r * e for r, e in zip(residues, ring.idempotents))
                      % ring.h)

    S = crt_lift_mat(ring, lefts)
    S = Mat(ring, np.array(S.entries, dtype=object) *
            np.array(scales, dtype=object)[None, :])
    D = diag(ring, diagonal, m, n)
    T = crt_lift_mat(ring, rights) if track_right else None
    return SmithForm(S, D, T, tuple(omegas))


@functools.lru_cache(maxsize=1 << 18)
def _cached_rank(h, m, n, key):
    ring = RingSpec.of(h)
    rows = np.frombuffer(key, dtype=np.int64).reshape(m, n).tolist()
    return rank_from_omega(ring, omega_of_rows(ring, rows))


def inner_rank(A):
    """rho(A): the number of nonzero invariant factors."""
    m, n = A.shape
    return _cached_rank(A.ring.h, m, n, A.entries.tobytes())


def rank_of_index(ring, m, n, index):
    """rho of the matrix with vertex index `index`."""
    digits = index_digits(ring.h, m * n, [index])[0]
    return _cached_rank(ring.h, m, n,
                        np.ascontiguousarray(digits, dtype=np.int64).tobytes())


def rank_cache_clear():
    _cached_rank.cache_clear()


def rank_via_projections(A):
    """(max_i rho(pi_i(A)), max_i rho(theta_i(A))).

    For a prime-power ring the theta value repeats the pi value.
    """
    ring = A.ring
    via_pi = max(inner_rank(project_mat(A, i)) for i in range(ring.t))
    if ring.t < 2:
        return via_pi, via_pi
    via_theta = max(inner_rank(coproject_mat(A, i)) for i in range(ring.t))
    return via_pi, via_theta


def find_equivalence(A, B):
    """Invertible (P, Q) with P . A . Q = B.

    Raises InvalidParameterError when Omega(A) != Omega(B).
    """
    if A.ring != B.ring or A.shape != B.shape:
        raise InvalidParameterError('matrices differ in ring or shape')
    form_a = snf(A)
    form_b = snf(B)
    if form_a.omega != form_b.omega:
        raise InvalidParameterError(
            'matrices lie in different orbits: {} vs {}'.format(
                form_a.omega, form_b.omega))
    P = mat_mul(form_b.S, mat_inverse(form_a.S))
    Q = mat_mul(mat_inverse(form_a.T), form_b.T)
    return P, Q


def check_product_rank(A, B):
    """rho(AB) <= min(rho(A), rho(B))."""
    return inner_rank(mat_mul(A, B)) <= min(inner_rank(A), inner_rank(B))


def check_block_rank(blocks):
    """rho of the assembled block matrix dominates every block's rho."""
    whole = inner_rank(block_matrix(blocks))
    return all(whole >= inner_rank(b) for row in blocks for b in row)


def check_smith_form(A, form):
    """S . D . T == A with S, T invertible and each omega row monotone."""
    if mat_mul(mat_mul(form.S, form.D), form.T) != A:
        return False
    if not (is_invertible(form.S) and is_invertible(form.T)):
        return False
    return all(list(row) == sorted(row) for row in form.omega)

