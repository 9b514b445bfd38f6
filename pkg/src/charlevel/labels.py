"""Character labels: maps from eigenvalue-orbit classes to partitions.

A label of GL^eps_n(q) assigns partitions to F-orbit classes (x -> x^q for GL,
x -> x^(-q) for GU) with sum of d*|lambda| equal to n. Degree-1 classes inside
mu_{q-eps} are "unit" orbits unit(c), c a residue mod q-eps, where unit(c) holds
w^c for the fixed generator w of mu_{q-eps}; unit(0) is the orbit of 1. All other
classes are "generic", named by a canonical index among those of the same degree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .gfcore import GroupSpec
from .qcomb import ExactDivisionError, Partition, QPoly, conjugate, hooks, make_partition, stats


@dataclass(frozen=True, order=True)
class EigenOrbit:
    d: int
    kind: str  # "unit" or "generic"
    value: int  # residue c for unit, canonical index for generic

    def __post_init__(self):
        if self.kind not in ("unit", "generic"):
            raise ValueError(f"bad orbit kind {self.kind!r}")
        if self.kind == "unit" and self.d != 1:
            raise ValueError("unit orbits have degree 1")

    @classmethod
    def unit(cls, c: int) -> "EigenOrbit":
        return cls(1, "unit", c)

    @classmethod
    def generic(cls, d: int, index: int) -> "EigenOrbit":
        return cls(d, "generic", index)

    def sort_key(self) -> tuple:
        return (self.d, self.kind, self.value)

    def to_json(self) -> dict:
        out = {"d": self.d, "kind": self.kind}
        out["c" if self.kind == "unit" else "index"] = self.value
        return out


class LabelError(ValueError):
    pass


@dataclass(frozen=True)
class CharLabel:
    spec: GroupSpec
    entries: tuple  # sorted tuple of (EigenOrbit, Partition)

    @classmethod
    def make(cls, spec: GroupSpec, entries: Mapping[EigenOrbit, Sequence[int]] | Iterable) -> "CharLabel":
        items = entries.items() if isinstance(entries, Mapping) else entries
        m = spec.q - spec.eps
        clean = {}
        for orb, lam in items:
            lam = make_partition(lam)
            if not lam:
                continue
            if orb.kind == "unit":
                orb = EigenOrbit.unit(orb.value % m)
            if orb in clean:
                raise LabelError(f"orbit {orb} repeated")
            clean[orb] = lam
        total = sum(o.d * sum(l) for o, l in clean.items())
        if total != spec.n:
            raise LabelError(f"label size {total} != n = {spec.n}")
        if spec.special:
            raise LabelError("labels live on the non-special group")
        return cls(spec, tuple(sorted(clean.items(), key=lambda kv: kv[0].sort_key())))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def unit_partition(self, c: int = 0) -> Partition:
        for orb, lam in self.entries:
            if orb.kind == "unit" and orb.value == c:
                return lam
        return ()

    def to_json(self) -> dict:
        sp = {"eps": "+" if self.spec.eps == 1 else "-", "n": self.spec.n, "q": self.spec.q}
        ents = []
        for orb, lam in self.entries:
            e = orb.to_json()
            e["lambda"] = list(lam)
            ents.append(e)
        return {"spec": sp, "entries": ents}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(", ", ":"))

    @classmethod
    def from_json(cls, obj) -> "CharLabel":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            sp = obj["spec"]
            eps = {"+": 1, "-": -1}[sp["eps"]]
            spec = GroupSpec(eps, int(sp["n"]), int(sp["q"]))
            ents = []
            for e in obj["entries"]:
                if e["kind"] == "unit":
                    orb = EigenOrbit.unit(int(e["c"]))
                else:
                    orb = EigenOrbit.generic(int(e["d"]), int(e["index"]))
                ents.append((orb, e["lambda"]))
        except (KeyError, TypeError) as exc:
            raise LabelError(f"malformed label: {exc}") from exc
        return cls.make(spec, ents)


def trivial_label(spec: GroupSpec) -> CharLabel:
    return CharLabel.make(spec, {EigenOrbit.unit(0): (spec.n,)})


def steinberg_label(spec: GroupSpec) -> CharLabel:
    return CharLabel.make(spec, {EigenOrbit.unit(0): (1,) * spec.n})


# --- degrees ------------------------------------------------------------------------

def centralizer_factor(spec: GroupSpec, orbit: EigenOrbit) -> tuple[int, int]:
    """(sign, base) of the factor GL^sign_m(base) that the orbit contributes."""
    base = spec.q ** orbit.d
    if spec.eps == 1:
        return 1, base
    return (-1 if orbit.d % 2 else 1), base


def _exact(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise ExactDivisionError(f"{num} / {den}")
    return quo


def unipotent_degree(lam: Partition, Q: int, sign: int) -> int:
    """Quantized hook formula Q^a prod_i (Q^i - s^i) / prod_h (Q^h - s^h)."""
    n = sum(lam)
    a = stats(lam)[0]
    num = Q ** a
    for i in range(1, n + 1):
        num *= Q ** i - sign ** i
    den = 1
    for h in hooks(lam):
        den *= Q ** h - sign ** h
    return _exact(num, den)


def _qminus(k: int, sign: int, step: int = 1) -> QPoly:
    """q^(k*step) - sign^k as a polynomial in q."""
    return QPoly.monomial(k * step) - sign ** k


def unipotent_degree_poly(lam: Partition, sign: int, step: int = 1) -> QPoly:
    """The hook formula as a polynomial in q, with Q = q^step."""
    n = sum(lam)
    num = QPoly.monomial(stats(lam)[0] * step)
    for i in range(1, n + 1):
        num = num * _qminus(i, sign, step)
    den = QPoly.const(1)
    for h in hooks(lam):
        den = den * _qminus(h, sign, step)
    return num.exact_div(den)


def index_pprime(spec: GroupSpec, parts: Sequence[tuple[int, int, int]]) -> int:
    """p'-part of [G : prod GL^{s_i}_{n_i}(Q_i)] for parts (s_i, n_i, Q_i)."""
    num = 1
    for i in range(1, spec.n + 1):
        num *= spec.q ** i - spec.eps ** i
    den = 1
    for sign, m, Q in parts:
        for i in range(1, m + 1):
            den *= Q ** i - sign ** i
    return _exact(num, den)


def _factors(label: CharLabel) -> list[tuple[int, int, int, Partition]]:
    out = []
    for orb, lam in label.entries:
        sign, base = centralizer_factor(label.spec, orb)
        out.append((sign, sum(lam), base, lam, orb.d))
    return out


def degree(label: CharLabel) -> int:
    spec = label.spec
    facs = _factors(label)
    out = index_pprime(spec, [(s, m, Q) for s, m, Q, _, _ in facs])
    for s, _, Q, lam, _ in facs:
        out *= unipotent_degree(lam, Q, s)
    return out


def degree_poly(label: CharLabel) -> QPoly:
    """Degree as a polynomial in q (the label's orbit data held fixed)."""
    spec = label.spec
    num = QPoly.const(1)
    for i in range(1, spec.n + 1):
        num = num * _qminus(i, spec.eps)
    den = QPoly.const(1)
    uni = QPoly.const(1)
    for s, m, _, lam, d in _factors(label):
        for i in range(1, m + 1):
            den = den * _qminus(i, s, d)
        uni = uni * unipotent_degree_poly(lam, s, d)
    return num.exact_div(den) * uni


def weighted_b(label: CharLabel) -> int:
    """(n^2 - sum_f d_f sum_i lambda_{f,i}^2) / 2."""
    n = label.spec.n
    sq = sum(orb.d * sum(x * x for x in lam) for orb, lam in label.entries)
    return (n * n - sq) // 2


# --- levels -------------------------------------------------------------------------

def true_level(label: CharLabel) -> int:
    lam = label.unit_partition(0)
    return label.spec.n - (lam[0] if lam else 0)


def level(label: CharLabel) -> int:
    firsts = [lam[0] for orb, lam in label.entries if orb.kind == "unit"]
    return label.spec.n - max(firsts) if firsts else label.spec.n


def slu_level(label: CharLabel) -> int:
    """Level of any character of SL^eps lying under the GL^eps character of the label."""
    return level(label)


# --- label surgery ------------------------------------------------------------------

def twist_by_linear(label: CharLabel, c: int, scaling: Optional[Mapping] = None) -> CharLabel:
    """Multiply by the linear character attached to the scalar w^c.

    Generic entries need ``scaling[(d, index, c mod (q-eps))] -> new index``.
    """
    m = label.spec.q - label.spec.eps
    c %= m
    out = []
    for orb, lam in label.entries:
        if orb.kind == "unit":
            out.append((EigenOrbit.unit((orb.value + c) % m), lam))
        elif c == 0:
            out.append((orb, lam))
        else:
            if scaling is None:
                raise LabelError("generic entries need an orbit-scaling table")
            out.append((EigenOrbit.generic(orb.d, scaling[(orb.d, orb.value, c)]), lam))
    return CharLabel.make(label.spec, out)


def alvis_curtis_dual(label: CharLabel) -> CharLabel:
    return CharLabel.make(label.spec, [(o, conjugate(l)) for o, l in label.entries])


def theta_inverse(alpha: CharLabel, n: int) -> CharLabel:
    """Label over GL^eps_n(q) obtained by putting n - j in front of the unit(0) partition."""
    j = alpha.spec.n
    if n < j:
        raise LabelError("need n >= j")
    gam = alpha.unit_partition(0)
    if n - j == 0:
        new = gam
    else:
        if gam and gam[0] > n - j:
            raise LabelError("true level of alpha is below 2j - n")
        new = (n - j,) + tuple(gam)
    ents = [(o, l) for o, l in alpha.entries if not (o.kind == "unit" and o.value == 0)]
    if new:
        ents.append((EigenOrbit.unit(0), new))
    out = CharLabel.make(GroupSpec(alpha.spec.eps, n, alpha.spec.q), ents)
    assert true_level(out) == j
    return out


def theta_forward(label: CharLabel) -> CharLabel:
    """Inverse of theta_inverse: drop the first part (n - j) of the unit(0) partition."""
    n = label.spec.n
    j = true_level(label)
    gam = label.unit_partition(0)
    if n - j == 0:
        rest = gam
    else:
        rest = gam[1:]
    ents = [(o, l) for o, l in label.entries if not (o.kind == "unit" and o.value == 0)]
    if rest:
        ents.append((EigenOrbit.unit(0), rest))
    return CharLabel.make(GroupSpec(label.spec.eps, j, label.spec.q), ents)
