"""Enumeration of character labels and aggregate statistics over them."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterator, Mapping, Optional, Union

import mpmath
import numpy as np

from .gfcore import Field, GroupSpec, field_of_size, prime_power, unit_root
from .labels import CharLabel, EigenOrbit, degree, level, true_level, twist_by_linear
from .qcomb import Partition, partitions_of


def mobius(m: int) -> int:
    out, d = 1, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    return -out if m > 1 else out


def fixed_point_count(eps: int, q: int, m: int) -> int:
    """Number of x in the algebraic closure's unit group with F^m(x) = x."""
    return q ** m - eps ** m


@dataclass(frozen=True)
class OrbitClassCounts:
    spec: GroupSpec
    units: int
    counts: dict  # d -> number of generic classes of degree d

    def generic(self, d: int) -> int:
        return self.counts.get(d, 0)


def orbit_class_counts(spec: GroupSpec, up_to_degree: int) -> OrbitClassCounts:
    eps, q = spec.eps, spec.q
    counts = {}
    for d in range(1, up_to_degree + 1):
        tot = sum(mobius(e) * fixed_point_count(eps, q, d // e) for e in range(1, d + 1) if d % e == 0)
        assert tot % d == 0
        c = tot // d
        if d == 1:
            c -= q - eps
            assert c == 0
        counts[d] = c
    return OrbitClassCounts(spec, q - eps, counts)


# --- enumeration --------------------------------------------------------------------

def _unit_assignments(n_units: int, size: int) -> Iterator[tuple]:
    """Tuples (lambda_0, ..., lambda_{m-1}) of partitions with total size `size`."""
    def rec(i: int, left: int):
        if i == n_units:
            if left == 0:
                yield ()
            return
        for k in range(left, -1, -1):
            for lam in partitions_of(k):
                for rest in rec(i + 1, left - k):
                    yield (lam,) + rest
    yield from rec(0, size)


def _generic_multisets(n: int, counts: OrbitClassCounts, min_d: int = 2) -> Iterator[tuple]:
    """Multisets of (d, partition) with sum d*|lambda| = n, as sorted tuples,
    respecting the available number of classes per degree."""
    def rec(left: int, d: int, used: dict):
        if left == 0:
            yield ()
            return
        if d > left:
            return
        # choose how many entries of degree d, with their partitions
        for k in range(left // d, -1, -1):
            if k > counts.generic(d):
                continue
            for parts in _sized_multisets(left, d, k):
                sub = left - d * sum(sum(p) for p in parts)
                for rest in rec(sub, d + 1, used):
                    yield tuple((d, p) for p in parts) + rest
    yield from rec(n, min_d, {})


def _sized_multisets(left: int, d: int, k: int) -> Iterator[tuple]:
    """Non-increasing (in a fixed order) k-tuples of nonempty partitions, d*total <= left."""
    if k == 0:
        yield ()
        return
    pool = [lam for s in range(1, left // d + 1) for lam in partitions_of(s)]
    for combo in itertools.combinations_with_replacement(range(len(pool)), k):
        parts = tuple(pool[i] for i in combo)
        if d * sum(sum(p) for p in parts) <= left:
            yield parts


def label_types(spec: GroupSpec) -> Iterator[tuple[CharLabel, int]]:
    """Counting mode: (representative label, number of labels of the same type).

    Generic entries of the representative use indices 0, 1, ... per degree; the
    multiplicity counts all injective placements onto the available classes.
    """
    n = spec.n
    counts = orbit_class_counts(spec, n)
    m = spec.q - spec.eps
    for u in range(n, -1, -1):
        for units in _unit_assignments(m, u):
            for gen in _generic_multisets(n - u, counts):
                ents = [(EigenOrbit.unit(c), lam) for c, lam in enumerate(units) if lam]
                mult = 1
                by_d: dict[int, list] = {}
                for d, lam in gen:
                    by_d.setdefault(d, []).append(lam)
                for d, lams in by_d.items():
                    k = len(lams)
                    reps = Counter(lams)
                    mult *= comb(counts.generic(d), k) * factorial(k) // prod(factorial(v) for v in reps.values())
                    for i, lam in enumerate(lams):
                        ents.append((EigenOrbit.generic(d, i), lam))
                if mult:
                    yield CharLabel.make(spec, ents), mult


def enumerate_labels(spec: GroupSpec) -> Iterator[CharLabel]:
    """Every label of GL^eps_n(q) exactly once, over abstract class indices."""
    n = spec.n
    counts = orbit_class_counts(spec, n)
    m = spec.q - spec.eps
    for u in range(n, -1, -1):
        for units in _unit_assignments(m, u):
            base = [(EigenOrbit.unit(c), lam) for c, lam in enumerate(units) if lam]
            for gen in _generic_multisets(n - u, counts):
                by_d: dict[int, list] = {}
                for d, lam in gen:
                    by_d.setdefault(d, []).append(lam)
                for placement in _placements(by_d, counts):
                    yield CharLabel.make(spec, base + placement)


def _placements(by_d: Mapping[int, list], counts: OrbitClassCounts) -> Iterator[list]:
    degrees = sorted(by_d)

    def rec(i: int) -> Iterator[list]:
        if i == len(degrees):
            yield []
            return
        d = degrees[i]
        lams = by_d[d]
        seen = set()
        for idxs in itertools.combinations(range(counts.generic(d)), len(lams)):
            for perm in itertools.permutations(lams):
                key = (idxs, perm)
                if key in seen:
                    continue
                seen.add(key)
                here = [(EigenOrbit.generic(d, ix), lam) for ix, lam in zip(idxs, perm)]
                for rest in rec(i + 1):
                    yield here + rest
    yield from rec(0)


# --- aggregates ---------------------------------------------------------------------

def degree_multiset(spec: GroupSpec) -> Counter:
    out: Counter = Counter()
    for lab, mult in label_types(spec):
        out[degree(lab)] += mult
    return out


def degree_level_multiset(spec: GroupSpec, which: str = "true") -> Counter:
    """Multiset of (degree, true level) or (degree, level) pairs."""
    fn = true_level if which == "true" else level
    out: Counter = Counter()
    for lab, mult in label_types(spec):
        out[(degree(lab), fn(lab))] += mult
    return out


def class_number(spec: GroupSpec) -> int:
    return sum(m for _, m in label_types(spec))


def level_statistics(spec: GroupSpec) -> dict[int, tuple[int, int, int]]:
    stats: dict[int, list] = {}
    for lab, mult in label_types(spec):
        j, deg = level(lab), degree(lab)
        if j not in stats:
            stats[j] = [0, deg, deg]
        s = stats[j]
        s[0] += mult
        s[1] = min(s[1], deg)
        s[2] = max(s[2], deg)
    return {j: tuple(v) for j, v in sorted(stats.items())}


def class_number_bounds_check(spec: GroupSpec) -> bool:
    k = class_number(spec)
    if spec.eps == 1:
        return k <= spec.q ** spec.n
    return 100 * k <= 826 * spec.q ** spec.n


def witten_zeta(degrees: Union[GroupSpec, Mapping[int, int]], s, exclude_trivial: bool = False,
                dps: int = 40):
    """sum over characters of degree^(-s), accumulated exactly when s is an integer."""
    ms = degree_multiset(degrees) if isinstance(degrees, GroupSpec) else Counter(degrees)
    if exclude_trivial:
        ms = Counter(ms)
        ms[1] -= 1
    s = Fraction(s)
    with mpmath.workdps(dps):
        if s.denominator == 1:
            tot = sum(Fraction(c) / Fraction(d) ** int(s) for d, c in ms.items() if c)
            return mpmath.mpf(tot.numerator) / tot.denominator
        ss = mpmath.mpf(s.numerator) / s.denominator
        return mpmath.fsum(c * mpmath.power(d, -ss) for d, c in ms.items() if c)


# --- explicit mode: actual F-orbits for tiny q --------------------------------------

@dataclass
class ExplicitOrbits:
    """F-orbits of exact degree d realised inside a concrete field."""
    spec: GroupSpec
    d: int
    field: Field
    orbits: list  # sorted list of tuples of element codes
    index: dict  # element code -> orbit index
    unit: int  # image of the fixed generator w of mu_{q-eps} inside `field`

    def scale(self, idx: int, c: int) -> int:
        x = self.orbits[idx][0]
        y = self.field.mul(x, self.field.pow(self.unit, c))
        return self.index[y]


def explicit_orbits(spec: GroupSpec, d: int) -> ExplicitOrbits:
    """Enumerate the generic F-orbits of degree d (requires q <= 4, d <= 4)."""
    if spec.q > 4 or d > 4:
        raise ValueError("explicit mode is limited to q <= 4, d <= 4")
    q = spec.q
    big = field_of_size(q ** d if spec.eps == 1 else q ** (2 * d))
    Qb = big.Q

    def frob(x: int) -> int:
        if x == 0:
            return 0
        y = big.pow(x, q)
        return y if spec.eps == 1 else big.inv(y)

    seen, orbits = set(), []
    for x in range(1, Qb):
        if x in seen:
            continue
        orb = [x]
        y = frob(x)
        while y != x and len(orb) <= d:
            orb.append(y)
            y = frob(y)
        if y != x:
            continue  # not fixed by F^d within d steps
        seen.update(orb)
        if len(orb) == d and d >= 2:
            orbits.append(tuple(sorted(orb)))
    orbits.sort()
    index = {x: i for i, o in enumerate(orbits) for x in o}
    unit = embed(spec.field, big, unit_root(spec))
    return ExplicitOrbits(spec, d, big, orbits, index, unit)


def embed(small: Field, big: Field, x: int) -> int:
    """Image of x under the embedding sending the small field's generator t to the
    smallest root of its modulus in `big`."""
    if (big.f % small.f) or big.p != small.p:
        raise ValueError("not a subfield")
    mod = small.modulus

    def ev(r: int) -> int:
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, r), c)
        return acc

    root = next(r for r in range(big.Q) if ev(r) == 0)
    acc = 0
    for c in reversed([(x // small.p ** i) % small.p for i in range(small.f)]):
        acc = big.add(big.mul(acc, root), c)
    return acc


def scaling_table(spec: GroupSpec, max_d: Optional[int] = None) -> dict:
    """(d, index, c) -> index of the orbit scaled by w^c, for 2 <= d <= max_d."""
    max_d = spec.n if max_d is None else max_d
    table = {}
    m = spec.q - spec.eps
    for d in range(2, max_d + 1):
        ex = explicit_orbits(spec, d)
        for i in range(len(ex.orbits)):
            for c in range(m):
                table[(d, i, c)] = ex.scale(i, c)
    return table


def sl_degree_multiset(spec: GroupSpec) -> Counter:
    """Degrees of SL^eps_n(q) from the labels of GL^eps_n(q).

    The quotient is cyclic of order q-eps, so a label fixed by e twists restricts to
    e distinct constituents of degree chi(1)/e, and each twist orbit of size
    (q-eps)/e yields the same constituents once.
    """
    base = spec.nonspecial()
    m = base.q - base.eps
    table = scaling_table(base)
    acc: dict[int, Fraction] = {}
    for lab in enumerate_labels(base):
        e = sum(1 for c in range(m) if twist_by_linear(lab, c, table) == lab)
        d = degree(lab)
        acc[d // e] = acc.get(d // e, Fraction(0)) + Fraction(e * e, m)
    out = Counter()
    for d, c in acc.items():
        if c.denominator != 1:
            raise ArithmeticError("non-integral constituent count")
        out[d] = int(c)
    return out
