# -*- coding: utf-8 -*-
""" GF(p^n) as needed by the Gabidulin construction """
import functools
from dataclasses import dataclass

import galois
from sympy import isprime

from services.zhbil.errors import InvalidParameterError


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) = F_p[x] / (modulus); modulus coefficients highest first."""
    p: int
    n: int
    modulus: tuple

    @classmethod
    def least(cls, p, n):
        """Field built on the lexicographically least monic irreducible."""
        if not isprime(p) or n < 1:
            raise InvalidParameterError(
                'need a prime p and n >= 1, got p={} n={}'.format(p, n))
        poly = galois.irreducible_poly(p, n, method='min')
        return cls(p, n, tuple(int(c) for c in poly.coeffs))

    def verify(self):
        """Degree n, monic and irreducible over F_p."""
        poly = galois.Poly(list(self.modulus), field=galois.GF(self.p))
        return poly.degree == self.n and int(poly.coeffs[0]) == 1 and \
            poly.is_irreducible()

    @property
    def order(self):
        return self.p ** self.n

    def field(self):
        return _field_class(self.p, self.n, self.modulus)

    def element(self, value):
        """Element whose integer form sum c_i p^i lists coefficients of x^i."""
        return self.field()(int(value))

    def basis(self):
        """x^0, ..., x^(n-1): the polynomial basis over F_p."""
        return [self.element(self.p ** e) for e in range(self.n)]

    def coordinates(self, element):
        """Base-p digits of an element, lowest power first."""
        value = int(element)
        digits = []
        for _ in range(self.n):
            value, digit = divmod(value, self.p)
            digits.append(digit)
        return digits


@functools.lru_cache(maxsize=None)
def _field_class(p, n, modulus):
    if n == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p))
    return galois.GF(p ** n, irreducible_poly=poly)
