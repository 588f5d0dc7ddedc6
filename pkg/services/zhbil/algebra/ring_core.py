# -*- coding: utf-8 -*-
""" Exact arithmetic in Z_h and its prime-power components """
import functools
from dataclasses import dataclass
from math import gcd, prod

from sympy import factorint

from services.zhbil.errors import (
    ComponentIndexError, ElementIsZeroError, InvalidParameterError)

# Entries and products of two entries must stay inside int64 for the
# numpy kernels; larger moduli fall back to object arrays.
MAX_MODULUS = 2 ** 63 - 1


class RingSpec:
    """The ring Z_h with h = p_1^s_1 ... p_t^s_t, primes ascending.

    Use ``RingSpec.of(h)``; instances are shared per modulus.
    """

    def __init__(self, h):
        if isinstance(h, bool) or not isinstance(h, int):
            raise InvalidParameterError('modulus must be an integer')
        if h < 2 or h > MAX_MODULUS:
            raise InvalidParameterError(
                'modulus must lie in [2, 2^63 - 1], got {}'.format(h))

        self.h = h
        self.primes = tuple(sorted(factorint(h).items()))
        self.t = len(self.primes)
        self.moduli = tuple(p ** s for p, s in self.primes)
        self.saturated = tuple(s for _, s in self.primes)
        self.cofactors = tuple(h // q for q in self.moduli)
        # e_i = 1 mod q_i, 0 mod q_j (j != i)
        self.idempotents = tuple(
            (c * pow(c % q, -1, q)) % h if q != h else 1
            for c, q in zip(self.cofactors, self.moduli))

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def of(h):
        """Shared RingSpec for modulus h."""
        return RingSpec(h)

    def __repr__(self):
        return 'RingSpec(h={})'.format(self.h)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and other.h == self.h

    def __hash__(self):
        return hash(('RingSpec', self.h))

    @property
    def is_prime_power(self):
        return self.t == 1

    def check_index(self, i):
        """Validate a 0-based component index."""
        if isinstance(i, bool) or not isinstance(i, int) or \
                not 0 <= i < self.t:
            raise ComponentIndexError(
                'component index {} outside [0, {})'.format(i, self.t))

    def component(self, i):
        """Z_{p_i^s_i}."""
        self.check_index(i)
        return RingSpec.of(self.moduli[i])

    def cocomponent(self, i):
        """Z_{h / p_i^s_i}; only meaningful when t >= 2."""
        self.check_index(i)
        if self.t < 2:
            raise InvalidParameterError(
                'Z_{} has no nontrivial coprojection'.format(self.h))
        return RingSpec.of(self.cofactors[i])

    def elem(self, value):
        return Elem(int(value) % self.h, self)

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    def unit_count(self):
        """|Z_h^*| = h * prod(1 - 1/p_i)."""
        return prod(q - q // p for (p, _), q in zip(self.primes, self.moduli))


@dataclass(frozen=True)
class Elem:
    """Canonical residue of Z_h."""
    value: int
    ring: RingSpec

    def __post_init__(self):
        object.__setattr__(self, 'value', int(self.value) % self.ring.h)

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.ring != self.ring:
                raise InvalidParameterError(
                    'elements of Z_{} and Z_{} do not mix'.format(
                        self.ring.h, other.ring.h))
            return other.value
        return int(other)

    def __add__(self, other):
        return Elem(self.value + self._coerce(other), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.value - self._coerce(other), self.ring)

    def __rsub__(self, other):
        return Elem(self._coerce(other) - self.value, self.ring)

    def __mul__(self, other):
        return Elem(self.value * self._coerce(other), self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(-self.value, self.ring)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return '{} (mod {})'.format(self.value, self.ring.h)


@dataclass(frozen=True)
class ElemFactorization:
    """x = unit * prod p_i^exponents_i."""
    unit: Elem
    exponents: tuple
    is_zero: bool


@dataclass(frozen=True)
class IdealLabel:
    """Exponent vector of the principal ideal (prod p_i^exponents_i)."""
    exponents: tuple

    def generator(self, ring):
        """prod p_i^exponents_i reduced mod h."""
        return prod(p ** a for (p, _), a in zip(ring.primes, self.exponents)) \
            % ring.h


def valuation(value, p, cap):
    """p-adic valuation of a nonnegative integer, capped at cap (0 -> cap)."""
    if value == 0:
        return cap
    v = 0
    while v < cap and value % p == 0:
        value //= p
        v += 1
    return v


def exponent_vector(ring, value):
    """(min(v_{p_i}(value), s_i))_i for a canonical residue."""
    value = int(value) % ring.h
    return tuple(valuation(value, p, s) for p, s in ring.primes)


def _as_elem(x, ring=None):
    if isinstance(x, Elem):
        return x
    if ring is None:
        raise InvalidParameterError('a ring is required for a bare integer')
    return ring.elem(x)


def _smallest_unit_in_class(residue, modulus, h):
    """Least u in [0, h) with u = residue (mod modulus) and gcd(u, h) = 1."""
    u = residue % modulus
    while u < h:
        if gcd(u, h) == 1:
            return u
        u += modulus
    # the class always contains a unit for the callers in this module
    raise InvalidParameterError('no unit congruent to {} mod {}'.format(
        residue, modulus))


def is_unit(x):
    """True iff gcd(x, h) = 1."""
    x = _as_elem(x)
    return gcd(x.value, x.ring.h) == 1


def inverse(x):
    """Multiplicative inverse of a unit."""
    x = _as_elem(x)
    if not is_unit(x):
        raise InvalidParameterError('{} is not a unit'.format(x))
    return x.ring.elem(pow(x.value, -1, x.ring.h) if x.ring.h > 1 else 0)


def units(ring):
    """Sorted unit residues of Z_h."""
    return [u for u in range(ring.h) if gcd(u, ring.h) == 1]


def factor_element(x):
    """Write x = u * prod p_i^alpha_i with the least admissible unit u.

    alpha_i = min(v_{p_i}(x), s_i). The zero element reports is_zero with
    alpha = (s_1, ..., s_t) and unit 1.
    """
    x = _as_elem(x)
    ring = x.ring
    alpha = exponent_vector(ring, x.value)
    if alpha == ring.saturated:
        return ElemFactorization(ring.one, alpha, True)

    g = IdealLabel(alpha).generator(ring)
    # u is fixed modulo h / g, the annihilator-free part
    modulus = ring.h // g
    u = _smallest_unit_in_class(x.value // g, modulus, ring.h)
    return ElemFactorization(ring.elem(u), alpha, False)


def absorb_saturated_exponents(ring, beta):
    """Find a unit u with u * prod p_i^beta_i = prod p_i^min(beta_i, s_i).

    Returns:
        (Elem, tuple): the least such unit and the capped exponents.
    """
    beta = tuple(int(b) for b in beta)
    if len(beta) != ring.t or any(b < 0 for b in beta):
        raise InvalidParameterError(
            'exponent vector must have {} nonnegative entries'.format(ring.t))
    if all(b >= s for b, s in zip(beta, ring.saturated)):
        raise ElementIsZeroError('element is zero')

    alpha = tuple(min(b, s) for b, s in zip(beta, ring.saturated))
    x = prod(pow(p, b, ring.h) for (p, _), b in zip(ring.primes, beta)) \
        % ring.h
    unit_part = factor_element(ring.elem(x)).unit
    g = IdealLabel(alpha).generator(ring)
    modulus = ring.h // g
    u = _smallest_unit_in_class(
        pow(unit_part.value, -1, modulus) if modulus > 1 else 0,
        modulus, ring.h)
    return ring.elem(u), alpha


def are_associates(a, b):
    """True iff a and b share their exponent vector."""
    a = _as_elem(a)
    b = _as_elem(b)
    if a.ring != b.ring:
        raise InvalidParameterError('elements live in different rings')
    return exponent_vector(a.ring, a.value) == exponent_vector(b.ring, b.value)


def project(x, i):
    """pi_i(x) = x mod p_i^s_i, 0-based component index."""
    x = _as_elem(x)
    x.ring.check_index(i)
    return x.value % x.ring.moduli[i]


def coproject(x, i):
    """theta_i(x) = x mod h / p_i^s_i."""
    x = _as_elem(x)
    x.ring.check_index(i)
    return x.value % x.ring.cofactors[i]


def crt_lift(ring, residues):
    """The unique x in Z_h with x = residues[i] mod p_i^s_i."""
    residues = [int(r) for r in residues]
    if len(residues) != ring.t:
        raise InvalidParameterError(
            'expected {} residues, got {}'.format(ring.t, len(residues)))
    return ring.elem(sum(r * e for r, e in zip(residues, ring.idempotents)))


def ideal_of(x):
    """Label of the principal ideal (x)."""
    return IdealLabel(factor_element(_as_elem(x)).exponents)


def ideal_contains(ring, label, y):
    """y lies in J_label iff its exponents dominate the label."""
    exps = exponent_vector(ring, int(y))
    return all(e >= a for e, a in zip(exps, label.exponents))


def ideal_members(ring, label):
    """Sorted residues of J_label: the multiples of prod p_i^alpha_i."""
    if len(label.exponents) != ring.t or any(
            not 0 <= a <= s for a, s in zip(label.exponents, ring.saturated)):
        raise InvalidParameterError(
            'ideal label {} not within (s_1..s_t)'.format(label.exponents))
    g = prod(p ** a for (p, _), a in zip(ring.primes, label.exponents))
    return list(range(0, ring.h, g))
