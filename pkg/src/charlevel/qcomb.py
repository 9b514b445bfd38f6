"""Partitions and q-combinatorics.

Partitions are plain tuples of positive ints in weakly decreasing order; the
empty tuple is the partition of 0.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

Partition = tuple


class ExactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder (an internal defect)."""


def make_partition(parts: Sequence[int]) -> Partition:
    lam = tuple(int(x) for x in parts if x != 0)
    if any(x < 0 for x in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {parts!r}")
    return lam


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def hooks(lam: Partition) -> list[int]:
    """Hook lengths of all cells, row by row."""
    lc = conjugate(lam)
    return [lam[i] - j + lc[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def stats(lam: Partition) -> tuple[int, int, int]:
    """Return (a, b, bracket) with a = sum (i-1) lam_i, b = (n^2 - sum lam_i^2)/2
    and bracket = n^2 - 2 sum lam_i^2."""
    n = sum(lam)
    sq = sum(x * x for x in lam)
    a = sum(i * x for i, x in enumerate(lam))
    return a, (n * n - sq) // 2, n * n - 2 * sq


def partitions_of(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order: (n), (n-1,1), ..."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partition_counts(m: int) -> tuple[int, int]:
    """(p(m), number of partitions of m with no part equal to 1)."""
    p = sum(1 for _ in partitions_of(m))
    p1 = sum(1 for lam in partitions_of(m) if 1 not in lam)
    return p, p1


# --- classification by the bracket statistic -----------------------------------

def _exception_family(lam: Partition) -> Optional[str]:
    n = sum(lam)
    if lam == (2, 2, 2):
        return "i"
    if n % 2 == 1:
        k = (n - 1) // 2
        if lam in ((k, k, 1), (3, 2, 2), (2, 1, 1, 1)):
            return "ii"
    else:
        k = n // 2
        if lam in ((k, k), (k, k - 1, 1), (4, 2, 2), (3, 1, 1, 1)):
            return "iii"
    return None


def sum1_classify(n: int) -> list[tuple[Partition, Optional[str]]]:
    """Partitions of n with 2 <= lam_1 <= n/2 and bracket < 2.4 n, each tagged
    with its exception family ("i", "ii", "iii") or None if unmatched."""
    if n < 4:
        raise ValueError("sum1_classify needs n >= 4")
    out = []
    for lam in partitions_of(n):
        if not (2 <= lam[0] and 2 * lam[0] <= n):
            continue
        br = stats(lam)[2]
        if 5 * br < 12 * n:
            out.append((lam, _exception_family(lam)))
    return out


# --- polynomials in q ---------------------------------------------------------------

class QPoly:
    """Integer polynomial in q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def const(cls, a: int) -> "QPoly":
        return cls([a])

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "QPoly":
        return cls([0] * k + [a])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(a) == 1:
                s = mono
            else:
                s = f"{abs(a)}{'*' + mono if mono else ''}"
            terms.append(("-" if a < 0 else "+") + s)
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out

    def _coerce(self, other) -> "QPoly":
        return QPoly.const(other) if isinstance(other, int) else other

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return QPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)])

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly([-x for x in self.coeffs])

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        out = QPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Division by a polynomial with leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError
        lead = other.lead()
        if abs(lead) != 1:
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * lead
            if c:
                quot[k - dq] = c
                for i, y in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * y
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other: "QPoly") -> "QPoly":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ExactDivisionError(f"{self} / {other} leaves {rem}")
        return quo

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


Q_VAR = QPoly([0, 1])


def gauss_binom(m: int, k: int) -> QPoly:
    """Gaussian binomial prod_{t<k}(q^m - q^t) / prod_{t<k}(q^k - q^t)."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    num, den = QPoly.const(1), QPoly.const(1)
    for t in range(k):
        num = num * (QPoly.monomial(m) - QPoly.monomial(t))
        den = den * (QPoly.monomial(k) - QPoly.monomial(t))
    return num.exact_div(den)


def gauss_binom_eval(m: int, k: int, z: int) -> int:
    if abs(z) < 2:
        raise ValueError("need |z| >= 2")
    num, den = 1, 1
    for t in range(k):
        num *= z ** m - z ** t
        den *= z ** k - z ** t
    quo, rem = divmod(num, den)
    if rem:
        raise ExactDivisionError(f"gauss_binom_eval({m},{k},{z})")
    return quo


def z_identity_check(m: int) -> bool:
    """Check t^m = sum_k binom(m,k)_q prod_{i<k}(t - q^i) as polynomials in (t, q).

    Bivariate polynomials are lists indexed by the power of t with QPoly entries.
    """
    rhs: list[QPoly] = [QPoly() for _ in range(m + 1)]
    for k in range(m + 1):
        prod: list[QPoly] = [QPoly.const(1)]
        for i in range(k):
            shifted = [QPoly()] + prod
            scaled = [c * QPoly.monomial(i) for c in prod] + [QPoly()]
            prod = [a - b for a, b in zip(shifted, scaled)]
        g = gauss_binom(m, k)
        for deg, c in enumerate(prod):
            rhs[deg] = rhs[deg] + g * c
    lhs = [QPoly() for _ in range(m)] + [QPoly.const(1)]
    return all(a == b for a, b in zip(lhs, rhs))


# --- Littlewood-Richardson ----------------------------------------------------------

def lr_coefficient(alpha: Partition, beta: Partition, lam: Partition) -> int:
    """Count LR tableaux of shape lam/alpha and content beta."""
    if sum(alpha) + sum(beta) != sum(lam):
        raise ValueError("size mismatch")
    if len(alpha) > len(lam) or any(a > lam[i] for i, a in enumerate(alpha)):
        return 0
    rows = len(lam)
    al = list(alpha) + [0] * (rows - len(alpha))
    # reading order: rows top to bottom, each row right to left
    cells = [(i, j) for i in range(rows) for j in range(lam[i] - 1, al[i] - 1, -1)]
    fill: dict[tuple[int, int], int] = {}
    used = [0] * (len(beta) + 1)

    def rec(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        hi = fill.get((i, j + 1), len(beta))  # row weakly increasing
        lo = fill.get((i - 1, j), 0) + 1 if i > 0 and j >= al[i - 1] else 1
        total = 0
        for v in range(lo, hi + 1):
            if used[v] >= beta[v - 1]:
                continue
            if v > 1 and used[v] + 1 > used[v - 1]:
                continue  # lattice word condition
            used[v] += 1
            fill[(i, j)] = v
            total += rec(pos + 1)
            del fill[(i, j)]
            used[v] -= 1
        return total

    return rec(0)


def interlaces(gamma: Partition, alpha: Partition) -> bool:
    """gamma_1 >= alpha_1 >= gamma_2 >= alpha_2 >= ... (a horizontal strip)."""
    r = len(gamma)
    if len(alpha) > r:
        return False
    a = list(alpha) + [0] * (r - len(alpha))
    g = list(gamma) + [0]
    return all(g[i] >= a[i] >= g[i + 1] for i in range(r))


def young_row_rule(gamma: Partition, m: int) -> Optional[Partition]:
    """A partition alpha of |gamma| - m with gamma/alpha a horizontal strip, or None.

    Such alpha exists iff gamma_1 >= m; when gamma_1 = m it is (gamma_2, ...).
    The witness removes cells greedily starting from the last row.
    """
    if not gamma or gamma[0] < m:
        return None
    if gamma[0] == m:
        return tuple(gamma[1:])
    g = list(gamma) + [0]
    alpha = list(gamma)
    left = m
    for i in range(len(gamma) - 1, -1, -1):
        take = min(left, g[i] - g[i + 1])
        alpha[i] -= take
        left -= take
    return make_partition(alpha)


# --- elementary abelian subgroups ---------------------------------------------------

def hall_elementary_sum(lam: Partition, j: int, x: int) -> int:
    """prod_{i<j}(x^k - x^i) / prod_{i<j}(x^j - x^i) with k the number of parts."""
    if j < 1:
        raise ValueError("need j >= 1")
    k = len(lam)
    if j > k:
        return 0
    num, den = 1, 1
    for i in range(j):
        num *= x ** k - x ** i
        den *= x ** j - x ** i
    quo, rem = divmod(num, den)
    if rem:
        raise ExactDivisionError("hall_elementary_sum")
    return quo


def abelian_subgroup_oracle(lam: Partition, j: int, r: int, guard: int = 10 ** 6) -> int:
    """Count elementary abelian subgroups of rank j in Z/r^lam_1 x ... by brute force."""
    if r ** sum(lam) > guard:
        raise OverflowError("abelian_subgroup_oracle size guard exceeded")
    mods = [r ** a for a in lam]
    elems = list(itertools.product(*[range(m) for m in mods]))
    omega = [e for e in elems if all((r * x) % m == 0 for x, m in zip(e, mods))]
    index = {e: i for i, e in enumerate(omega)}
    size = len(omega)
    add = np.empty((size, size), dtype=np.int64)
    for a, ea in enumerate(omega):
        for b, eb in enumerate(omega):
            add[a, b] = index[tuple((x + y) % m for x, y, m in zip(ea, eb, mods))]
    zero = index[tuple(0 for _ in mods)]

    def multiples(v: int) -> np.ndarray:
        out = [zero]
        cur = zero
        for _ in range(r - 1):
            cur = int(add[cur, v])
            out.append(cur)
        return np.array(out)

    level = {frozenset([zero])}
    for _ in range(j):
        nxt = set()
        for sub in level:
            arr = np.fromiter(sub, dtype=np.int64)
            covered = np.zeros(size, dtype=bool)
            covered[arr] = True
            for v in range(size):
                if covered[v]:
                    continue
                new = add[arr[:, None], multiples(v)[None, :]].ravel()
                covered[new] = True
                nxt.add(frozenset(new.tolist()))
        level = nxt
        if not level:
            return 0
    return len(level)
