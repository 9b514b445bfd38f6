"""Finite fields, matrices over them, and small classical matrix groups.

Field elements are ints 0..Q-1 encoding the coefficient vector of a polynomial
in t (constant term = least significant base-p digit). Matrices are numpy int
arrays of element codes; batches have shape (N, n, n).
"""
from __future__ import annotations

import hashlib
import itertools
import json
import os
import pickle
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .cyclo import Cyclo

ELEMENT_GUARD = 3 * 10 ** 5


class GuardExceeded(RuntimeError):
    """A resource guard refused a computation."""


# --- small number theory ------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """(p, f) with q = p^f, or ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            f, r = 0, q
            while r % p == 0:
                r //= p
                f += 1
            if r != 1 or not is_prime(p):
                break
            return p, f
    raise ValueError(f"{q} is not a prime power")


def prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# --- fields -------------------------------------------------------------------------

def _prime_poly_irreducible(p: int, coeffs: tuple[int, ...]) -> bool:
    """Irreducibility over F_p by trial division by monic polys of degree <= deg/2."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(coeffs)
            for k in range(deg, d - 1, -1):
                c = rem[k] % p
                if c:
                    for i, y in enumerate(div):
                        rem[k - d + i] = (rem[k - d + i] - c * y) % p
            if all(x % p == 0 for x in rem[:d]):
                return False
    return True


class Field:
    """The field F_Q, Q = p^f, as F_p[t]/(modulus)."""

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p, self.f, self.modulus = p, f, tuple(modulus)
        self.Q = p ** f
        Q = self.Q
        self.digits = np.array([[(x // p ** i) % p for i in range(f)] for x in range(Q)],
                               dtype=np.int64).reshape(Q, f)
        self.weights = np.array([p ** i for i in range(f)], dtype=np.int64)
        self.gen = self._find_primitive()
        exp = np.empty(Q, dtype=np.int64)
        mulg = self._mul_by_table(self.gen)
        x = 1
        for k in range(Q - 1):
            exp[k] = x
            x = int(mulg[x])
        exp[Q - 1] = 1
        self.exp = exp
        log = np.zeros(Q, dtype=np.int64)
        log[exp[: Q - 1]] = np.arange(Q - 1)
        self.log = log
        self.ADD = self.MUL = None
        if Q <= 4096:
            a = np.arange(Q)
            self.ADD = self.add_arr(a[:, None], a[None, :])
            self.MUL = self.mul_arr(a[:, None], a[None, :])
        self.NEG = self.sub_arr(np.zeros(Q, dtype=np.int64), np.arange(Q))
        self.INV = np.zeros(Q, dtype=np.int64)
        self.INV[1:] = exp[(-log[1:]) % (Q - 1)]

    def __repr__(self) -> str:
        return f"Field(p={self.p}, f={self.f}, modulus={self.modulus})"

    # building blocks that do not need the log tables
    def _t_powers(self) -> list[np.ndarray]:
        """Digit vectors of t^i mod modulus for i < 2f."""
        p, f = self.p, self.f
        out = []
        cur = [0] * f
        cur[0] = 1
        for _ in range(2 * f):
            out.append(np.array(cur, dtype=np.int64))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, self.modulus[:-1])]
        return out

    def _mul_by_table(self, a: int) -> np.ndarray:
        """x -> a*x for all x, via the F_p-linear map of multiplication by a."""
        p, f = self.p, self.f
        tp = self._t_powers()
        da = self.digits[a]
        # column i = digits of a * t^i
        cols = []
        for i in range(f):
            v = np.zeros(f, dtype=np.int64)
            for k in range(f):
                if da[k]:
                    v = v + da[k] * tp[i + k]
            cols.append(v % p)
        M = np.stack(cols, axis=1)
        return ((self.digits @ M.T) % p) @ self.weights

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = int(self._mul_by_table(base)[result])
            base = int(self._mul_by_table(base)[base])
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        Q = self.Q
        if Q == 2:
            return 1
        rs = prime_factors(Q - 1)
        for g in range(2, Q):
            if all(self._slow_pow(g, (Q - 1) // r) != 1 for r in rs):
                return g
        raise AssertionError("no primitive element")

    # vectorized arithmetic
    def add_arr(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if getattr(self, "ADD", None) is not None:
            return self.ADD[a, b]
        if self.p == 2:
            return a ^ b
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.weights

    def sub_arr(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return ((self.digits[a] - self.digits[b]) % self.p) @ self.weights

    def mul_arr(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if getattr(self, "MUL", None) is not None:
            return self.MUL[a, b]
        out = self.exp[(self.log[a] + self.log[b]) % (self.Q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        return int(self.ADD[a, b]) if self.ADD is not None else int(self.add_arr(a, b))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self.NEG[b]))

    def neg(self, a: int) -> int:
        return int(self.NEG[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.Q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        return int(self.INV[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp[(int(self.log[a]) * e) % (self.Q - 1)])

    def frob_arr(self, a, k: int = 1):
        """x -> x^(p^k)."""
        a = np.asarray(a)
        e = pow(self.p, k, self.Q - 1) if self.Q > 2 else 1
        out = self.exp[(self.log[a] * e) % (self.Q - 1)]
        return np.where(a == 0, 0, out)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        return (self.Q - 1) // gcd(int(self.log[a]), self.Q - 1)

    def element_of_order(self, m: int) -> int:
        """Smallest element (by code) of multiplicative order exactly m."""
        for x in range(1, self.Q):
            if self.order(x) == m:
                return x
        raise ValueError(f"no element of order {m}")


@lru_cache(maxsize=None)
def field_make(p: int, f: int) -> Field:
    """F_{p^f} with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1 or p ** f > 2 ** 20:
        raise GuardExceeded("field size guard (p^f <= 2^20)")
    for low in itertools.product(range(p), repeat=f):
        coeffs = tuple(low) + (1,)
        if f == 1 or _prime_poly_irreducible(p, coeffs):
            return Field(p, f, coeffs)
    raise AssertionError("no irreducible polynomial found")


def field_of_size(Q: int) -> Field:
    p, f = prime_power(Q)
    return field_make(p, f)


# --- polynomials over a field (ascending lists of codes) ---------------------------

def ptrim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(F: Field, a, b) -> list[int]:
    m = max(len(a), len(b))
    return ptrim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(m)])


def psub(F: Field, a, b) -> list[int]:
    return padd(F, a, [F.neg(x) for x in b])


def pmul(F: Field, a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(F: Field, a, b) -> tuple[list[int], list[int]]:
    a, b = ptrim(a), ptrim(b)
    if not b:
        raise ZeroDivisionError
    rem = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = F.mul(rem[k], inv_lead)
        if c:
            quot[k - db] = c
            for i, y in enumerate(b):
                rem[k - db + i] = F.sub(rem[k - db + i], F.mul(c, y))
    return ptrim(quot), ptrim(rem[:db] if db > 0 else [])


def pmonic(F: Field, a) -> list[int]:
    a = ptrim(a)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(x, inv) for x in a]


def pgcd(F: Field, a, b) -> list[int]:
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return pmonic(F, a)


def ppowmod(F: Field, a, e: int, m) -> list[int]:
    result = [1]
    base = pdivmod(F, a, m)[1]
    while e:
        if e & 1:
            result = pdivmod(F, pmul(F, result, base), m)[1]
        base = pdivmod(F, pmul(F, base, base), m)[1]
        e >>= 1
    return result


def _squarefree_parts(F: Field, f: list[int]) -> list[list[int]]:
    """Distinct monic irreducible factors of f are the factors of its radical."""
    f = pmonic(F, f)
    if len(f) <= 1:
        return []
    deriv = ptrim([F.mul(f[i], i % F.p) for i in range(1, len(f))])
    if not deriv:
        # f is a p-th power: f(x) = g(x^p), take p-th roots of coefficients
        g = [int(F.frob_arr(f[i], F.f - 1)) for i in range(0, len(f), F.p)]
        return _squarefree_parts(F, g)
    g = pgcd(F, f, deriv)
    if len(g) == 1:
        return [f]
    return [pdivmod(F, f, g)[0]] + _squarefree_parts(F, g)


def _distinct_degree(F: Field, f: list[int]) -> list[tuple[int, list[int]]]:
    """For squarefree monic f, pairs (d, product of its degree-d irreducible factors)."""
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, F.Q, f)
        g = pgcd(F, f, psub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((d, g))
            f = pdivmod(F, f, g)[0]
            h = pdivmod(F, h, f)[1]
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _equal_degree(F: Field, f: list[int], d: int, rng: np.random.Generator) -> list[list[int]]:
    if len(f) - 1 == d:
        return [f]
    while True:
        a = ptrim([int(x) for x in rng.integers(0, F.Q, size=len(f) - 1)])
        if len(a) < 2:
            continue
        if F.p == 2:
            t = a
            acc = list(a)
            for _ in range(F.f * d - 1):
                t = pdivmod(F, pmul(F, t, t), f)[1]
                acc = padd(F, acc, t)
            g = pgcd(F, f, acc)
        else:
            b = ppowmod(F, a, (F.Q ** d - 1) // 2, f)
            g = pgcd(F, f, psub(F, b, [1]))
        if 1 < len(g) < len(f):
            return (_equal_degree(F, g, d, rng)
                    + _equal_degree(F, pdivmod(F, f, g)[0], d, rng))


def distinct_irreducible_factors(F: Field, f: Sequence[int]) -> list[list[int]]:
    """Distinct monic irreducible factors of f (seeded Cantor-Zassenhaus splitting)."""
    rng = np.random.default_rng(12345)
    seen, out = set(), []
    for part in _squarefree_parts(F, list(f)):
        if len(part) <= 1:
            continue
        for d, prod in _distinct_degree(F, part):
            for fac in _equal_degree(F, prod, d, rng):
                key = tuple(fac)
                if key not in seen:
                    seen.add(key)
                    out.append(fac)
    return sorted(out, key=lambda g: (len(g), g[::-1]))


def is_irreducible(F: Field, f: Sequence[int]) -> bool:
    f = pmonic(F, list(f))
    if len(f) <= 2:
        return len(f) == 2
    facs = distinct_irreducible_factors(F, f)
    return len(facs) == 1 and len(facs[0]) == len(f)


def irreducible_polys(F: Field, d: int) -> Iterator[list[int]]:
    """Monic irreducibles of degree d over F, in lexicographic order (constant term first)."""
    for low in itertools.product(range(F.Q), repeat=d):
        poly = list(low) + [1]
        if d == 1 or (low[0] != 0 and is_irreducible(F, poly)):
            yield poly


# --- single matrices ----------------------------------------------------------------

def mat_identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    n, m, r = A.shape[0], A.shape[1], B.shape[1]
    out = np.zeros((n, r), dtype=np.int64)
    prod = F.mul_arr(A[:, :, None], B[None, :, :])  # n x m x r
    for j in range(m):
        out = F.add_arr(out, prod[:, j, :])
    return out


def mat_add(F: Field, A, B) -> np.ndarray:
    return F.add_arr(np.asarray(A), np.asarray(B))


def mat_sub(F: Field, A, B) -> np.ndarray:
    return F.sub_arr(np.asarray(A), np.asarray(B))


def mat_scalar(F: Field, c: int, A) -> np.ndarray:
    return F.mul_arr(np.full(np.shape(A), c), np.asarray(A))


def row_reduce(F: Field, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.int64).copy()
    rows, cols = M.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = F.mul_arr(np.full(cols, F.inv(int(M[r, c]))), M[r])
        for i2 in range(rows):
            if i2 != r and M[i2, c]:
                factor = int(M[i2, c])
                M[i2] = F.sub_arr(M[i2], F.mul_arr(np.full(cols, factor), M[r]))
        piv.append(c)
        r += 1
    return M, piv


def rank(F: Field, A) -> int:
    return len(row_reduce(F, A)[1])


def nullity(F: Field, A) -> int:
    A = np.asarray(A)
    return A.shape[1] - rank(F, A)


def null_space(F: Field, A) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = np.asarray(A)
    R, piv = row_reduce(F, A)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(piv):
            v[pc] = F.neg(int(R[r, fc]))
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def mat_inv(F: Field, A) -> np.ndarray:
    A = np.asarray(A)
    n = A.shape[0]
    R, piv = row_reduce(F, np.hstack([A, mat_identity(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def fixed_dim(F: Field, g) -> int:
    """dim Ker(g - 1)."""
    g = np.asarray(g)
    return nullity(F, mat_sub(F, g, mat_identity(g.shape[0])))


def kron(F: Field, A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    n, m = A.shape[0], B.shape[0]
    K = F.mul_arr(A[:, None, :, None], B[None, :, None, :])
    return K.reshape(n * m, n * m)


def kron_fixed_dim(F: Field, g, s) -> int:
    """dim Ker(g (x) s - 1) over F."""
    return fixed_dim(F, kron(F, g, s))


def charpoly(F: Field, A) -> list[int]:
    """Characteristic polynomial det(xI - A) via Hessenberg reduction."""
    H = np.array(A, dtype=np.int64).copy()
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = [i for i in range(m, n) if H[i, m - 1]]
        if not nz:
            continue
        i = nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = F.inv(int(H[m, m - 1]))
        for i in range(m + 1, n):
            u = F.mul(int(H[i, m - 1]), inv)
            if u:
                H[i] = F.sub_arr(H[i], F.mul_arr(np.full(n, u), H[m]))
                H[:, m] = F.add_arr(H[:, m], F.mul_arr(np.full(n, u), H[:, i]))
    # recurrence on leading principal submatrices
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        pk = pmul(F, [F.neg(int(H[k - 1, k - 1])), 1], polys[k - 1])
        t = 1
        for i in range(1, k):
            t = F.mul(t, int(H[k - i, k - i - 1]))
            c = F.mul(t, int(H[k - i - 1, k - 1]))
            if c:
                pk = psub(F, pk, [F.mul(c, x) for x in polys[k - i - 1]])
        polys.append(pk)
    return polys[n]


def poly_at_matrix(F: Field, f: Sequence[int], A) -> np.ndarray:
    A = np.asarray(A)
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(list(f)):
        out = mat_mul(F, out, A)
        out = F.add_arr(out, mat_scalar(F, c, mat_identity(n)))
    return out


def delta_max_eigenspace(F: Field, g) -> int:
    """Largest eigenspace dimension of g over the algebraic closure."""
    g = np.asarray(g)
    best = Fraction(0)
    for fac in distinct_irreducible_factors(F, charpoly(F, g)):
        dim = nullity(F, poly_at_matrix(F, fac, g))
        best = max(best, Fraction(dim, len(fac) - 1))
    assert best.denominator == 1
    return int(best)


def companion(F: Field, poly: Sequence[int]) -> np.ndarray:
    """Companion matrix of a monic polynomial."""
    d = len(poly) - 1
    C = np.zeros((d, d), dtype=np.int64)
    for i in range(1, d):
        C[i, i - 1] = 1
    for i in range(d):
        C[i, d - 1] = F.neg(poly[i])
    return C


def block_diag(*blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


# --- group specs --------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    eps: int  # +1 for GL/SL, -1 for GU/SU
    n: int
    q: int
    special: bool = False

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        prime_power(self.q)

    @property
    def Q(self) -> int:
        return self.q if self.eps == 1 else self.q * self.q

    @property
    def field(self) -> Field:
        return field_of_size(self.Q)

    @property
    def order(self) -> int:
        out = self.q ** (self.n * (self.n - 1) // 2)
        for i in range(1, self.n + 1):
            out *= self.q ** i - self.eps ** i
        if self.special:
            out //= self.q - self.eps
        return out

    @property
    def name(self) -> str:
        kind = ("S" if self.special else "G") + ("L" if self.eps == 1 else "U")
        return f"{kind}({self.n},{self.q})"

    def nonspecial(self) -> "GroupSpec":
        return GroupSpec(self.eps, self.n, self.q, False)

    def to_json(self) -> dict:
        return {"eps": "+" if self.eps == 1 else "-", "n": self.n, "q": self.q,
                "special": self.special}

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse names like GL(2,3), SU(3,2), GL2(3)."""
        t = text.strip().upper().replace(" ", "")
        kind, rest = t[:2], t[2:]
        if kind not in ("GL", "GU", "SL", "SU"):
            raise ValueError(f"unknown group {text!r}")
        rest = rest.strip("()").replace("(", ",").replace(")", "")
        n, q = (int(x) for x in rest.split(","))
        return cls(1 if kind[1] == "L" else -1, n, q, kind[0] == "S")


def gu_member(F: Field, q: int, g) -> bool:
    """True iff transpose(g^(q)) g = I over F_{q^2}."""
    g = np.asarray(g)
    gq = F.frob_arr(g, F.f // 2)
    assert F.Q == q * q
    return bool(np.array_equal(mat_mul(F, gq.T, g), mat_identity(g.shape[0])))


def unit_root(spec: GroupSpec) -> int:
    """Fixed generator of mu_{q-eps} in F_Q (smallest element code of that order)."""
    F = spec.field
    m = spec.q - spec.eps
    return F.element_of_order(m)


def weil_value(spec: GroupSpec, g) -> int:
    """eps^n (eps q)^{dim Ker(g-1)}."""
    d = fixed_dim(spec.field, g)
    return spec.eps ** spec.n * (spec.eps * spec.q) ** d


def weil_component_value(spec: GroupSpec, psi_index: int, g) -> Cyclo:
    """Value at g of the psi-isotypic part of the Weil character under the centre."""
    F = spec.field
    g = np.asarray(g)
    m = spec.q - spec.eps
    w = unit_root(spec)
    vec = [0] * m
    n = g.shape[0]
    for k in range(m):
        c = F.pow(w, k)
        d = nullity(F, mat_sub(F, g, mat_scalar(F, c, mat_identity(n))))
        vec[(-psi_index * k) % m] += spec.eps ** n * (spec.eps * spec.q) ** d
    return Cyclo.from_powers(m, vec) / m


# --- concrete groups ----------------------------------------------------------------

@dataclass
class ConjClass:
    rep: np.ndarray
    size: int
    centralizer: int
    order: int
    members: Optional[np.ndarray] = dc_field(default=None, repr=False)

    def to_json(self) -> dict:
        return {"rep": self.rep.tolist(), "size": str(self.size),
                "centralizer": str(self.centralizer), "order": self.order}


class MatrixGroup:
    """All elements of a small GL/GU/SL/SU group, sorted by integer key."""

    def __init__(self, spec: GroupSpec, guard: int = ELEMENT_GUARD):
        if spec.order > guard:
            raise GuardExceeded(f"{spec.name} has order {spec.order} > guard {guard}")
        self.spec = spec
        self.F = spec.field
        self.n = spec.n
        if self.F.Q ** (self.n * self.n) >= 2 ** 62:
            raise GuardExceeded("matrix key does not fit in 64 bits")
        self.key_weights = np.array([self.F.Q ** i for i in range(self.n * self.n)], dtype=np.int64)
        elems = self._enumerate()
        keys = self.keys_of(elems)
        order = np.argsort(keys)
        self.elements = elems[order]
        self.keys = keys[order]
        if len(self.elements) != spec.order:
            raise AssertionError(f"enumerated {len(self.elements)} != {spec.order}")

    # enumeration
    def _vectors(self) -> np.ndarray:
        Q, n = self.F.Q, self.n
        return np.array(list(itertools.product(range(Q), repeat=n)), dtype=np.int64)[:, ::-1].copy()

    def _enumerate(self) -> np.ndarray:
        F, n, spec = self.F, self.n, self.spec
        V = self._vectors()  # row v = digits of vector code v (entry i = (v // Q^i) % Q)
        nv = len(V)
        if spec.eps == 1:
            cols = self._enum_gl(V)
        else:
            cols = self._enum_gu(V)
        elems = np.stack([V[cols[:, c]] for c in range(n)], axis=2)  # (N, n rows, n cols)
        if spec.special:
            dets = self.det_batch(elems)
            elems = elems[dets == 1]
        return elems

    def _enum_gl(self, V: np.ndarray) -> np.ndarray:
        F, n = self.F, self.n
        nv = len(V)
        Q = F.Q
        codes_w = np.array([Q ** i for i in range(n)], dtype=np.int64)

        def code(rows: np.ndarray) -> np.ndarray:
            return rows @ codes_w

        # scalar multiples of every vector and vector addition, by codes
        mults = np.stack([code(F.mul_arr(np.full_like(V, c), V)) for c in range(Q)], axis=1)
        out = []
        stack = [((), np.array([0], dtype=np.int64))]
        while stack:
            prefix, span = stack.pop()
            in_span = np.zeros(nv, dtype=bool)
            in_span[span] = True
            if len(prefix) == n - 1:
                out.extend(prefix + (v,) for v in np.nonzero(~in_span)[0].tolist())
                continue
            for v in range(nv - 1, 0, -1):
                if in_span[v]:
                    continue
                new = code(F.add_arr(V[span][:, None, :], V[mults[v]][None, :, :]).reshape(-1, n))
                stack.append((prefix + (v,), np.unique(new)))
        return np.array(out, dtype=np.int64).reshape(-1, n)

    def _enum_gu(self, V: np.ndarray) -> np.ndarray:
        F, n, q = self.F, self.n, self.spec.q
        nv = len(V)
        conjV = F.frob_arr(V, F.f // 2)
        herm = np.zeros((nv, nv), dtype=np.int64)
        for i in range(n):
            herm = F.add_arr(herm, F.mul_arr(conjV[:, i][:, None], V[:, i][None, :]))
        unit = np.diag(herm) == 1
        orth = herm == 0
        out = []
        stack = [((), unit)]
        while stack:
            prefix, cand = stack.pop()
            if len(prefix) == n:
                out.append(prefix)
                continue
            for v in np.nonzero(cand)[0][::-1]:
                stack.append((prefix + (int(v),), cand & orth[v]))
        return np.array(out, dtype=np.int64).reshape(-1, n)

    # batched arithmetic
    def keys_of(self, mats: np.ndarray) -> np.ndarray:
        mats = np.asarray(mats)
        return mats.reshape(*mats.shape[:-2], self.n * self.n) @ self.key_weights

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        k = self.keys_of(mats)
        idx = np.searchsorted(self.keys, k)
        idx = np.minimum(idx, len(self.keys) - 1)
        if not np.all(self.keys[idx] == k):
            raise KeyError("matrix not in group")
        return idx

    def bmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        F = self.F
        if F.f == 1:
            return np.matmul(A, B) % F.p
        A, B = np.asarray(A), np.asarray(B)
        shape = np.broadcast_shapes(A.shape, B.shape)
        C = np.zeros(shape, dtype=np.int64)
        n = self.n
        for i in range(n):
            for k in range(n):
                acc = F.MUL[A[..., i, 0], B[..., 0, k]]
                for j in range(1, n):
                    acc = F.ADD[acc, F.MUL[A[..., i, j], B[..., j, k]]]
                C[..., i, k] = acc
        return C

    def det_batch(self, mats: np.ndarray) -> np.ndarray:
        F, n = self.F, mats.shape[-1]
        total = np.zeros(mats.shape[0], dtype=np.int64)
        for perm in itertools.permutations(range(n)):
            term = np.ones(mats.shape[0], dtype=np.int64)
            for i, j in enumerate(perm):
                term = F.mul_arr(term, mats[:, i, j])
            inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
            total = F.sub_arr(total, term) if inversions % 2 else F.add_arr(total, term)
        return total

    @cached_property
    def identity_index(self) -> int:
        return int(self.index_of(mat_identity(self.n)[None])[0])

    def inverse_index(self) -> np.ndarray:
        """inv[i] = index of elements[i]^-1."""
        inv = np.full(len(self.elements), -1, dtype=np.int64)
        # g^-1 is found by walking powers; batch: solve via product with all candidates is
        # too costly, so invert matrices one at a time only for unseen elements.
        for i in range(len(self.elements)):
            if inv[i] >= 0:
                continue
            j = int(self.index_of(mat_inv(self.F, self.elements[i])[None])[0])
            inv[i], inv[j] = j, i
        return inv

    def generators(self, seed: int = 0) -> list[int]:
        """Indices of a small generating set, found by seeded random search."""
        N = len(self.elements)
        rng = np.random.default_rng(seed)
        gens: list[int] = []
        while True:
            gens.append(int(rng.integers(N)))
            if len(gens) >= 2 and self._closure_size(gens) == N:
                return gens
            if N == 1:
                return gens

    def _closure_size(self, gens: list[int]) -> int:
        N = len(self.elements)
        seen = np.zeros(N, dtype=bool)
        start = self.identity_index
        seen[start] = True
        frontier = np.array([start])
        while len(frontier):
            new = []
            for g in gens:
                prod = self.index_of(self.bmul(self.elements[frontier], self.elements[g]))
                fresh = np.unique(prod[~seen[prod]])
                seen[fresh] = True
                new.append(fresh)
            frontier = np.unique(np.concatenate(new))
        return int(seen.sum())

    def element_order(self, g: np.ndarray) -> int:
        g = np.asarray(g)
        I = mat_identity(self.n)
        cur, k = g, 1
        while not np.array_equal(cur, I):
            cur = mat_mul(self.F, cur, g)
            k += 1
        return k

    @cached_property
    def class_data(self) -> tuple[list[ConjClass], np.ndarray]:
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        N = len(self.elements)
        gens = self.generators()
        rows, cols = [], []
        for g in gens:
            ginv = mat_inv(self.F, self.elements[g])
            conj = self.bmul(self.bmul(self.elements[g], self.elements), ginv)
            rows.append(np.arange(N))
            cols.append(self.index_of(conj))
        r, c = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
        ncomp, labels = connected_components(graph, directed=True, connection="weak")
        classes = []
        for comp in range(ncomp):
            members = np.nonzero(labels == comp)[0]  # sorted, so members[0] has the min key
            rep = self.elements[members[0]]
            classes.append(ConjClass(rep=rep, size=len(members), centralizer=N // len(members),
                                     order=self.element_order(rep), members=members))
        classes.sort(key=lambda c: (c.order, c.size, int(self.keys[c.members[0]])))
        class_of = np.empty(N, dtype=np.int64)
        for i, c in enumerate(classes):
            class_of[c.members] = i
        return classes, class_of

    @property
    def classes(self) -> list[ConjClass]:
        return self.class_data[0]

    @property
    def class_of(self) -> np.ndarray:
        return self.class_data[1]


_GROUPS: dict[GroupSpec, MatrixGroup] = {}


def matrix_group(spec: GroupSpec, guard: int = ELEMENT_GUARD) -> MatrixGroup:
    if spec not in _GROUPS:
        _GROUPS[spec] = MatrixGroup(spec, guard)
    return _GROUPS[spec]


def conj_classes(spec: GroupSpec, guard: int = ELEMENT_GUARD) -> list[ConjClass]:
    """Complete class list by orbit partitioning of the element set."""
    return matrix_group(spec, guard).classes


def centralizer_order(spec: GroupSpec, g, guard: int = ELEMENT_GUARD) -> int:
    """Brute-force count of group elements commuting with g."""
    G = matrix_group(spec, guard)
    g = np.asarray(g)
    left = G.bmul(G.elements, g)
    right = G.bmul(g[None], G.elements)
    return int(np.all(left == right, axis=(1, 2)).sum())


def tuple_orbit_count_oracle(spec: GroupSpec, j: int, guard: int = ELEMENT_GUARD) -> int:
    """Number of orbits on ordered j-tuples of vectors, by Burnside over classes."""
    F = spec.field
    total = 0
    for c in conj_classes(spec, guard):
        total += c.size * (F.Q ** fixed_dim(F, c.rep)) ** j
    quo, rem = divmod(total, spec.order)
    assert rem == 0
    return quo


def pencil_orbit_oracle(j: int, n: int, q: int, guard: int = ELEMENT_GUARD) -> int:
    """GL_j(q) x GL_n(q) orbits on pairs of maps U -> W, by Burnside over class pairs."""
    S, G = GroupSpec(1, j, q), GroupSpec(1, n, q)
    F = field_of_size(q)
    total = 0
    for cs in conj_classes(S, guard):
        sti = mat_inv(F, cs.rep).T
        for cg in conj_classes(G, guard):
            d = kron_fixed_dim(F, cg.rep, sti)
            total += cs.size * cg.size * q ** (2 * d)
    quo, rem = divmod(total, S.order * G.order)
    assert rem == 0
    return quo


# --- element samplers (no enumeration needed) ---------------------------------------

def random_gl(F: Field, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.integers(0, F.Q, size=(n, n))
        if rank(F, g) == n:
            return g.astype(np.int64)


def _herm(F: Field, u, v) -> int:
    uq = F.frob_arr(np.asarray(u), F.f // 2)
    acc = 0
    for a, b in zip(uq, v):
        acc = F.add(acc, F.mul(int(a), int(b)))
    return acc


def random_gu(F: Field, n: int, rng: np.random.Generator) -> np.ndarray:
    """A random unitary matrix: orthonormal columns picked one at a time."""
    cols: list[np.ndarray] = []
    while len(cols) < n:
        if cols:
            C = np.array(cols)
            Cbar = F.frob_arr(C, F.f // 2)
            basis = null_space(F, Cbar)
        else:
            basis = mat_identity(n)
        coeffs = rng.integers(0, F.Q, size=len(basis))
        v = np.zeros(n, dtype=np.int64)
        for c, b in zip(coeffs, basis):
            v = F.add_arr(v, F.mul_arr(np.full(n, int(c)), b))
        if _herm(F, v, v) == 1:
            cols.append(v)
    return np.array(cols).T.copy()


def transvection(n: int) -> np.ndarray:
    g = mat_identity(n)
    g[0, 1] = 1
    return g


def unitary_transvection(F: Field, q: int, n: int) -> Optional[np.ndarray]:
    """I + a v v^* with v isotropic and a + a^q = 0, a != 0 (n >= 2)."""
    if n < 2:
        return None
    # isotropic vector (1, b, 0, ...) with 1 + b^{q+1} = 0
    b = next((x for x in range(1, F.Q) if F.add(1, F.pow(x, q + 1)) == 0), None)
    a = next((x for x in range(1, F.Q) if F.add(x, F.pow(x, q)) == 0), None)
    if b is None or a is None:
        return None
    v = np.zeros(n, dtype=np.int64)
    v[0], v[1] = 1, b
    vbar = F.frob_arr(v, F.f // 2)
    outer = F.mul_arr(v[:, None], vbar[None, :])
    g = F.add_arr(mat_identity(n), F.mul_arr(np.full((n, n), a), outer))
    assert gu_member(F, q, g)
    return g


def is_central(F: Field, g) -> bool:
    g = np.asarray(g)
    n = g.shape[0]
    return bool(np.all(g == np.diag(np.diag(g))) and np.all(np.diag(g) == g[0, 0]))


# --- content-addressed cache --------------------------------------------------------

def cache_dir() -> Path:
    return Path(os.environ.get("CHARLEVEL_CACHE", "./.charlevel-cache"))


def cache_key(op: str, spec: GroupSpec, **params) -> str:
    payload = json.dumps({"op": op, "spec": spec.to_json(), "params": params}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:32]


def cache_load(key: str):
    path = cache_dir() / f"{key}.pkl"
    if path.exists():
        with open(path, "rb") as fh:
            return pickle.load(fh)
    return None


def cache_store(key: str, value) -> None:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    tmp = d / f"{key}.tmp{os.getpid()}"
    with open(tmp, "wb") as fh:
        pickle.dump(value, fh)
    os.replace(tmp, d / f"{key}.pkl")
