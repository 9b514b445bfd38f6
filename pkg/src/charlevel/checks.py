"""The acceptance battery: each check returns a CheckResult with witnesses.

Used both by ``charlevel verify`` and by the test-suite.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bounds, census, gfcore, labels, oracle, qcomb
from .gfcore import GroupSpec


@dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.name, "pass": self.passed, "instances": self.instances,
                "failures": [str(f) for f in self.failures],
                "notes": {k: str(v) for k, v in self.notes.items()}}


class _Tally:
    def __init__(self, name: str):
        self.name, self.n, self.fails, self.notes = name, 0, [], {}

    def check(self, cond: bool, witness) -> None:
        self.n += 1
        if not cond:
            self.fails.append(witness)

    def result(self) -> CheckResult:
        return CheckResult(self.name, not self.fails, self.n, self.fails, self.notes)


def check_z_identity(max_m: int = 8) -> CheckResult:
    t = _Tally("z-identity")
    for m in range(max_m + 1):
        t.check(qcomb.z_identity_check(m), m)
    return t.result()


def check_hall(max_size: int = 6, max_j: int = 4, primes=(2, 3)) -> CheckResult:
    t = _Tally("hall")
    for r in primes:
        for n in range(1, max_size + 1):
            for lam in qcomb.partitions_of(n):
                for j in range(1, max_j + 1):
                    want = qcomb.abelian_subgroup_oracle(lam, j, r)
                    t.check(qcomb.hall_elementary_sum(lam, j, r) == want, (lam, j, r))
    return t.result()


GL_ORBIT_GROUPS = ((2, 2), (2, 3), (3, 2), (3, 3))
GU_ORBIT_GROUPS = ((2, 2), (2, 3), (3, 2), (4, 2))


def check_orbits(max_j: int = 3) -> CheckResult:
    """Closed-form orbit counts against Burnside counts, and the ceilings on every count.

    The GL closed form sums subspaces of every dimension, which counts orbits only for
    j <= n; beyond that the failure is reported along with the corrected count.
    """
    t = _Tally("orbits")
    beyond = []
    for n, q in GL_ORBIT_GROUPS:
        spec = GroupSpec(1, n, q)
        for j in range(max_j + 1):
            val = gfcore.tuple_orbit_count_oracle(spec, j)
            t.check(bounds.orbit_bounds_check(1, j, q, val), ("ceiling", spec.name, j, val))
            t.check(bounds.gl_orbit_count(n, j, q) == val, ("corrected", spec.name, j, val))
            ok = bounds.orbit_formula(1, j, q) == val
            t.check(ok, ("formula", spec.name, j, val, bounds.orbit_formula(1, j, q)))
            if j > n:
                beyond.append((spec.name, j, ok))
    for n, q in GU_ORBIT_GROUPS:
        spec = GroupSpec(-1, n, q)
        for j in range(n // 2 + 1):
            val = gfcore.tuple_orbit_count_oracle(spec, j)
            t.check(bounds.orbit_formula(-1, j, q) == val, ("formula", spec.name, j, val))
            t.check(bounds.orbit_bounds_check(-1, j, q, val), ("ceiling", spec.name, j, val))
    t.notes["j_beyond_n"] = beyond
    return t.result()


TABLE_GROUPS = ("GL(2,2)", "GL(2,3)", "GL(3,2)", "GU(2,2)", "GU(2,3)", "GU(3,2)")
SL_GROUPS = ("SL(2,3)",)


def check_degree_multisets(groups=TABLE_GROUPS, sl_groups=SL_GROUPS) -> CheckResult:
    t = _Tally("degree-multiset")
    for name in groups:
        spec = GroupSpec.parse(name)
        T = oracle.dixon_table(spec)
        t.check(Counter(T.degrees) == census.degree_multiset(spec), name)
    for name in sl_groups:
        S = GroupSpec.parse(name)
        TS = oracle.dixon_table(S)
        rep = oracle.restriction_check_sl(oracle.dixon_table(S.nonspecial()), TS)
        t.check(rep.ok, (name, rep.failures))
        t.check(Counter(TS.degrees) == census.sl_degree_multiset(S), (name, "degrees"))
    return t.result()


def check_levels(groups=TABLE_GROUPS) -> CheckResult:
    t = _Tally("levels")
    for name in groups:
        spec = GroupSpec.parse(name)
        T = oracle.dixon_table(spec)
        tl = Counter(zip(T.degrees, oracle.empirical_true_level(T)))
        t.check(tl == census.degree_level_multiset(spec, "true"), (name, "true level"))
        lv = Counter(zip(T.degrees, oracle.empirical_level(T)))
        t.check(lv == census.degree_level_multiset(spec, "level"), (name, "level"))
    return t.result()


def check_gu_parity(groups=("GU(2,2)", "GU(2,3)", "GU(3,2)"), upto: str = "2n") -> CheckResult:
    """[zeta^m, 1] against the closed form for m <= 2n (or m <= n), plus parity vanishing."""
    t = _Tally(f"gu-parity-{upto}")
    valid = []
    for name in groups:
        spec = GroupSpec.parse(name)
        T = oracle.dixon_table(spec)
        top = 2 * spec.n if upto == "2n" else spec.n
        for m in range(top + 1):
            got = oracle.power_inner_with_trivial(T, m)
            want = bounds.gu_power_inner(m, spec.q)
            t.check(got == want, (name, m, got, want))
        t.check(oracle.parity_check(T, top), (name, "parity", top))
        valid.append((name, oracle.parity_check(T) and all(
            oracle.power_inner_with_trivial(T, m) == bounds.gu_power_inner(m, spec.q) for m in range(spec.n + 1))))
    t.notes["valid_for_m_le_n"] = valid
    return t.result()


def _suite(name: str, **kw) -> CheckResult:
    rep = bounds.inequality_suite(name, **kw)
    return CheckResult(name, rep.ok, rep.instances, rep.failures, {"exceptions": rep.exceptions})


def check_main_degree() -> CheckResult:
    specs = [GroupSpec(1, n, q) for n in range(1, 7) for q in (2, 3, 4, 5)]
    specs += [GroupSpec(-1, n, q) for n in range(1, 7) for q in (2, 3)]
    a = bounds.inequality_suite("main-degree", specs=specs, parts="i,ii")
    big = [GroupSpec(e, n, q) for n in (7, 8) for q in (2, 3) for e in (1, -1)]
    b = bounds.inequality_suite("main-degree", specs=big, parts="iii")
    fails = a.failures + b.failures
    return CheckResult("main-degree", not fails, a.instances + b.instances, fails)


def check_slu_degree() -> CheckResult:
    return _suite("slu-degree", groups=("SL(2,3)", "SL(2,4)", "SL(3,2)"))


def check_duality() -> CheckResult:
    specs = [GroupSpec(e, n, q) for n in range(1, 7) for q in (2, 3) for e in (1, -1)]
    a = bounds.inequality_suite("dual-level-sum", specs=specs)
    b = bounds.inequality_suite("dual-degree-product", specs=[s for s in specs if s.n >= 2])
    fails = a.failures + b.failures
    n = a.instances + b.instances
    for s in specs:
        n += 1
        if labels.alvis_curtis_dual(labels.trivial_label(s)) != labels.steinberg_label(s):
            fails.append(("trivial dual", s.name))
    return CheckResult("duality", not fails, n, fails)


DUAL_PAIR_CASES = ((1, 2, 1, 2), (1, 2, 1, 3), (1, 3, 1, 2), (1, 4, 2, 2), (-1, 2, 1, 2), (-1, 3, 1, 2))


def check_dual_pairs(cases=DUAL_PAIR_CASES) -> CheckResult:
    t = _Tally("dual-pair")
    for eps, n, j, q in cases:
        res = oracle.dual_pair_decompose(n, j, q, eps)
        rep = oracle.dual_pair_certify(res)
        t.check(rep.ok, ((eps, n, j, q), rep.failures))
        t.check(oracle.dual_pair_label_match(res, rep.top), ((eps, n, j, q), "labels"))
    return t.result()


def check_weil_bounds(max_n: int = 8, qs=(2, 3), samples: int = 1000, seed: int = 0) -> CheckResult:
    """Only (eps, n) where level one meets the hypotheses are scanned."""
    t = _Tally("weil-bound")
    scanned = []
    for eps in (1, -1):
        for n in range(2, max_n + 1):
            plain, refined = bounds.weil_hypotheses(eps, n)
            if not (plain or refined):
                continue
            for q in qs:
                scan = bounds.weil_bound_scan(GroupSpec(eps, n, q), samples=samples, seed=seed)
                t.check(scan.ok, (eps, n, q, scan.failures[:3]))
                scanned.append((eps, n, q, scan.elements, scan.plain_checked, scan.refined_checked))
    t.notes["scanned"] = scanned
    return t.result()


CENTRALIZER_GROUPS = ("GL(2,2)", "GL(2,3)", "GL(3,2)", "GL(4,2)", "GU(2,2)", "GU(2,3)", "GU(3,2)",
                      "GU(4,2)", "SL(2,3)", "SL(2,4)", "SL(2,5)", "SL(3,2)", "SL(3,3)", "SU(3,2)")


def check_centralizer_scan(groups=CENTRALIZER_GROUPS) -> CheckResult:
    t = _Tally("centralizer-scan")
    for name in groups:
        T = oracle.dixon_table(GroupSpec.parse(name))
        small, ratio = oracle.small_centralizer_scan(T)
        t.check(not small, (name, small))
        t.notes[name] = "none" if ratio is None else f"{ratio:.6f}"
    return t.result()


def check_pencils() -> CheckResult:
    t = _Tally("pencil")
    for j, q in ((1, 2), (1, 3), (2, 2)):
        t.check(bounds.pencil_F(j, q) == gfcore.pencil_orbit_oracle(j, 2 * j, q), (j, q))
    t.check(bounds.pencil_bounds_check(2, 2, 2), (2, 2, 2))
    return t.result()


def check_walks(max_t: int = 10) -> CheckResult:
    t = _Tally("walk")
    for name in ("SL(2,3)", "SL(2,4)"):
        T = oracle.dixon_table(GroupSpec.parse(name))
        for cls in range(T.k):
            if T.sizes[cls] == 1:
                continue
            for s in range(1, max_t + 1):
                w = oracle.random_walk(T, cls, s)
                t.check(w.total == 1, (name, cls, s, "total"))
                t.check(w.l1 ** 2 <= w.ds_bound, (name, cls, s, str(w.l1), str(w.ds_bound)))
    mu = oracle.mu_commutator(oracle.dixon_table(GroupSpec.parse("SL(2,4)")))
    t.check(bounds.ore_positive(mu), ("ore", [str(x) for x in mu]))
    return t.result()


def check_thresholds(max_C: int = 4, max_m: int = 3, max_k: int = 32) -> CheckResult:
    t = _Tally("thresholds")
    for C in range(1, max_C + 1):
        for k in range(max_k + 1):
            t.check(bounds.threshold_f(C, -1, k) == 1, (C, -1, k))
        for m in range(max_m + 1):
            t.check(bounds.threshold_f(C, m, 0) == 1, (C, m, 0))
    for m in range(max_m + 1):
        for k in range(max_k + 1):
            vals = [bounds.threshold_f(C, m, k) for C in range(1, max_C + 1)]
            t.check(all(isinstance(v, Fraction) and v > 0 for v in vals), (m, k, "positive"))
            t.check(all(a <= b for a, b in zip(vals, vals[1:])), (m, k, "monotone in C"))
        hs = [bounds.threshold_h(C, m) for C in range(1, max_C + 1)]
        t.check(all(a <= b for a, b in zip(hs, hs[1:])), (m, "h monotone in C"))
    return t.result()


ACCEPTANCE: dict[str, Callable[[], CheckResult]] = {
    "z-identity": check_z_identity,
    "hall": check_hall,
    "orbits": check_orbits,
    "degree-multiset": check_degree_multisets,
    "levels": check_levels,
    "gu-parity": check_gu_parity,
    "main-degree": check_main_degree,
    "slu-degree": check_slu_degree,
    "duality": check_duality,
    "dual-pair": check_dual_pairs,
    "weil-bound": check_weil_bounds,
    "centralizer-scan": check_centralizer_scan,
    "pencil": check_pencils,
    "walk": check_walks,
    "thresholds": check_thresholds,
}
