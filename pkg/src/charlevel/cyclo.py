"""Exact cyclotomic numbers.

A value of order e is kept as a vector over the power basis 1, z, ..., z^(phi(e)-1)
of Q(z), z = exp(2 pi i / e). Vectors of length e in the redundant basis
{z^k : 0 <= k < e} are reduced through a cached integer matrix.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

import numpy as np

Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the e-th cyclotomic polynomial."""
    from .qcomb import QPoly

    num = QPoly([-1] + [0] * (e - 1) + [1])
    for d in range(1, e):
        if e % d == 0:
            num = num.exact_div(QPoly(cyclotomic_poly(d)))
    return num.coeffs


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row k holds z^k in the power basis of length phi(e) (object dtype ints)."""
    phi = cyclotomic_poly(e)
    m = len(phi) - 1
    rows = []
    cur = [0] * m
    cur[0] = 1
    for _ in range(e):
        rows.append(list(cur))
        # multiply by z and reduce with the monic relation z^m = -sum phi_i z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return np.array(rows, dtype=object)


def reduce_vector(vec: Sequence[Number], e: int) -> tuple:
    """Map a length-e vector in the basis {z^k} to canonical power-basis coordinates."""
    r = reduction_matrix(e)
    out = [0] * r.shape[1]
    for k, c in enumerate(vec):
        if c:
            row = r[k]
            for i in range(len(out)):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclo:
    """Element of Q(z_e) in canonical power-basis form."""

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs: Sequence[Number]):
        self.e = e
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_powers(cls, e: int, vec: Sequence[Number]) -> "Cyclo":
        return cls(e, reduce_vector(vec, e))

    @classmethod
    def rational(cls, a: Number, e: int = 1) -> "Cyclo":
        vec = [0] * e
        vec[0] = a
        return cls.from_powers(e, vec)

    def powers(self) -> list:
        """Coefficients in the redundant basis {z^k}, length e."""
        out = list(self.coeffs) + [0] * (self.e - len(self.coeffs))
        return out

    def lift(self, e2: int) -> "Cyclo":
        if e2 % self.e:
            raise ValueError("target order must be a multiple")
        step = e2 // self.e
        vec = [0] * e2
        for k, c in enumerate(self.coeffs):
            vec[k * step] += c
        return Cyclo.from_powers(e2, vec)

    def _common(self, other) -> tuple["Cyclo", "Cyclo"]:
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other, self.e)
        if other.e == self.e:
            return self, other
        e = self.e * other.e // gcd(self.e, other.e)
        return self.lift(e), other.lift(e)

    def __add__(self, other) -> "Cyclo":
        a, b = self._common(other)
        return Cyclo(a.e, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.e, [-x for x in self.coeffs])

    def __sub__(self, other) -> "Cyclo":
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        return (-self) + other

    def __mul__(self, other) -> "Cyclo":
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.e, [x * other for x in self.coeffs])
        a, b = self._common(other)
        vec = [0] * a.e
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        vec[(i + j) % a.e] += x * y
        return Cyclo.from_powers(a.e, vec)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Cyclo":
        return Cyclo(self.e, [Fraction(x) / other for x in self.coeffs])

    def conj(self) -> "Cyclo":
        vec = [0] * self.e
        for k, c in enumerate(self.coeffs):
            vec[(-k) % self.e] += c
        return Cyclo.from_powers(self.e, vec)

    def abs2(self) -> "Cyclo":
        return self * self.conj()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.e)
        return complex(sum(complex(float(c)) * z ** k for k, c in enumerate(self.coeffs)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Cyclo, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.e, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclo({self.rational_value()})"
        return f"Cyclo(e={self.e}, {list(map(str, self.coeffs))})"

    def to_json(self) -> dict:
        return {"order": self.e, "coeffs": [str(c) for c in self.coeffs]}
