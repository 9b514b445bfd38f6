"""Exact character tables of small matrix groups and computations built on them.

Tables come from the Dixon-Schneider method: class-multiplication coefficients,
simultaneous eigenvectors modulo a prime l = 1 (mod exponent), and a lift of each
value to eigenvalue multiplicities. A value chi(g) for g of order o is stored as
the integer vector m with chi(g) = sum_u m[u] z_o^u, z_o = exp(2 pi i / o).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import gfcore
from .cyclo import Cyclo, reduction_matrix
from .gfcore import GroupSpec, MatrixGroup, kron_fixed_dim, matrix_group, weil_value

CLASS_GUARD = 120


# --- arithmetic modulo a prime -----------------------------------------------------

def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l = 1 (mod exponent) with l > 2 sqrt(order)."""
    bound = 2 * math.isqrt(order) + 2
    l = (bound // exponent + 1) * exponent + 1
    while not gfcore.is_prime(l):
        l += exponent
    return l


def _primitive_root(p: int) -> int:
    fs = gfcore.prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    return 1


def _rref_mod(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    piv, r = [], 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        others = np.nonzero(M[:, c])[0]
        for i2 in others:
            if i2 != r:
                M[i2] = (M[i2] - M[i2, c] * M[r]) % p
        piv.append(c)
        r += 1
    return M[:r], piv


def _nullspace_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : M x = 0}."""
    R, piv = _rref_mod(M, p)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in piv]
    out = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(piv):
            v[pc] = (-R[r, fc]) % p
        out.append(v)
    return np.array(out, dtype=np.int64).reshape(len(out), cols)


def _charpoly_mod(M: np.ndarray, p: int) -> list[int]:
    """det(xI - M) mod p, ascending coefficients, via Hessenberg form."""
    H = [[int(x) % p for x in row] for row in M]
    n = len(H)
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                H[i] = [(a - u * b) % p for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [0] + prev
        h = H[k - 1][k - 1]
        for i, c in enumerate(prev):
            pk[i] = (pk[i] - h * c) % p
        t = 1
        for i in range(1, k):
            t = t * H[k - i][k - i - 1] % p
            c = t * H[k - i - 1][k - 1] % p
            if c:
                for idx, x in enumerate(polys[k - i - 1]):
                    pk[idx] = (pk[idx] - c * x) % p
        polys.append(pk)
    return polys[n]


def _roots_mod(poly: Sequence[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return np.nonzero(acc == 0)[0].tolist()


# --- the table ----------------------------------------------------------------------

class TableError(AssertionError):
    """A computed table failed validation (an internal defect)."""


@dataclass
class CharTable:
    spec: GroupSpec
    order: int
    reps: list  # class representative matrices
    sizes: list[int]
    orders: list[int]
    exponent: int
    inverse: list[int]  # class of g^-1
    power: list[list[int]]  # power[t][l] = class of g_t^l, 0 <= l < orders[t]
    mult: list  # mult[i][t] = np.ndarray of length orders[t]
    prime: int

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def centralizers(self) -> list[int]:
        return [self.order // s for s in self.sizes]

    @cached_property
    def degrees(self) -> list[int]:
        return [int(self.mult[i][0][0]) for i in range(self.k)]

    def value(self, i: int, t: int) -> Cyclo:
        return Cyclo.from_powers(self.orders[t], [int(x) for x in self.mult[i][t]])

    @cached_property
    def _reduced_conj(self) -> np.ndarray:
        """(chars, classes, phi(e)) int array: conj(chi_i(g_t)) in the power basis of Q(z_e)."""
        e = self.exponent
        R = np.array(reduction_matrix(e), dtype=np.int64)
        out = np.zeros((self.k, self.k, R.shape[1]), dtype=np.int64)
        for t in range(self.k):
            o = self.orders[t]
            step = e // o
            rows = R[[(-u * step) % e for u in range(o)]]  # (o, phi)
            for i in range(self.k):
                out[i, t] = self.mult[i][t] @ rows
        return out

    def inner_integer_cyclo(self, f: Sequence[int]) -> list[Cyclo]:
        """[f, chi_i] for an integer-valued class function f, as elements of Q(z_e)."""
        w = np.array([int(s) * int(x) for s, x in zip(self.sizes, f)], dtype=object)
        red = self._reduced_conj.astype(object)
        return [Cyclo(self.exponent, [Fraction(int(c), self.order) for c in w @ red[i]])
                for i in range(self.k)]

    def inner_integer(self, f: Sequence[int]) -> list[Fraction]:
        """[f, chi_i] for an integer-valued class function f that is a Galois-stable
        combination of characters (so every inner product is rational)."""
        out = []
        for v in self.inner_integer_cyclo(f):
            if not v.is_rational():
                raise TableError("inner product with an integer class function is not rational")
            out.append(v.rational_value())
        return out

    def inner(self, f: Sequence[Cyclo], i: int) -> Cyclo:
        """[f, chi_i] for a class function with cyclotomic values."""
        tot = Cyclo.rational(0)
        for t in range(self.k):
            tot = tot + f[t] * self.value(i, t).conj() * self.sizes[t]
        return tot / self.order

    def restrict_values(self, i: int, classes: Sequence[int]) -> list:
        return [self.mult[i][t] for t in classes]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "classes": [{"rep": np.asarray(r).tolist(), "size": str(s), "centralizer": str(self.order // s),
                         "order": o} for r, s, o in zip(self.reps, self.sizes, self.orders)],
            "exponent": self.exponent,
            "characters": [[self.value(i, t).lift(self.exponent).to_json()["coeffs"]
                            for t in range(self.k)] for i in range(self.k)],
        }


def _class_matrix(G: MatrixGroup, classes, class_of: np.ndarray, inverse: list[int], r: int,
                  reps: np.ndarray) -> np.ndarray:
    """A_r[s, t] = #{(x, y) in C_r x C_s : x y = z_t}."""
    k = len(classes)
    members = classes[inverse[r]].members
    A = np.zeros((k, k), dtype=np.int64)
    for start in range(0, len(members), 4096):
        W = G.elements[members[start:start + 4096]]
        prod = G.bmul(W[:, None], reps[None])
        cls = class_of[G.index_of(prod)]
        for t in range(k):
            A[:, t] += np.bincount(cls[:, t], minlength=k)
    return A


def dixon_table(spec: GroupSpec, guard: int = gfcore.ELEMENT_GUARD, use_cache: bool = True) -> CharTable:
    """Full exact character table, validated by both orthogonality relations."""
    key = gfcore.cache_key("dixon_table", spec, guard=guard)
    if use_cache:
        hit = gfcore.cache_load(key)
        if hit is not None:
            return hit
    table = _dixon(spec, guard)
    validate_table(table)
    if use_cache:
        gfcore.cache_store(key, table)
    return table


def _dixon(spec: GroupSpec, guard: int) -> CharTable:
    G = matrix_group(spec, guard)
    classes, class_of = G.class_data
    k = len(classes)
    if k > CLASS_GUARD:
        raise gfcore.GuardExceeded(f"{k} classes > class guard {CLASS_GUARD}")
    N = spec.order
    reps = np.stack([c.rep for c in classes])
    sizes = [c.size for c in classes]
    orders = [c.order for c in classes]
    e = math.lcm(*orders)
    inverse = [int(class_of[G.index_of(gfcore.mat_inv(G.F, c.rep)[None])[0]]) for c in classes]
    power = []
    for c in classes:
        row, cur = [], gfcore.mat_identity(spec.n)
        for _ in range(c.order):
            row.append(int(class_of[G.index_of(cur[None])[0]]))
            cur = gfcore.mat_mul(G.F, cur, c.rep)
        power.append(row)
    p = dixon_prime(N, e)

    # split F_p^k into common eigenspaces of the class matrices
    spaces = [np.eye(k, dtype=np.int64)]
    order_r = sorted(range(1, k), key=lambda r: (sizes[r], r))
    for r in order_r:
        if all(len(B) == 1 for B in spaces):
            break
        A = _class_matrix(G, classes, class_of, inverse, r, reps) % p
        new_spaces = []
        for B in spaces:
            if len(B) == 1:
                new_spaces.append(B)
                continue
            B, piv = _rref_mod(B, p)
            img = (B @ A.T) % p
            M = img[:, piv]  # img_i = sum_j M[i, j] B_j
            roots = _roots_mod(_charpoly_mod(M, p), p)
            if len(roots) == 1:
                new_spaces.append(B)
                continue
            m = len(B)
            total = 0
            for lam in roots:
                Cm = (M - lam * np.eye(m, dtype=np.int64)) % p
                left = _nullspace_mod(Cm.T, p)  # c with c M = lam c
                if len(left):
                    new_spaces.append((left @ B) % p)
                    total += len(left)
            if total != m:
                raise TableError("class matrix not diagonalizable modulo the prime")
        spaces = new_spaces
    if not all(len(B) == 1 for B in spaces) or len(spaces) != k:
        raise TableError("eigenspaces did not split completely")

    gen = _primitive_root(p)
    z = pow(gen, (p - 1) // e, p)
    sizes_inv = [pow(s % p, -1, p) for s in sizes]
    divisors = [d for d in range(1, math.isqrt(N) + 1) if N % d == 0]
    mult = []
    for B in spaces:
        w = B[0] % p
        w = (w * pow(int(w[0]), -1, p)) % p
        s = sum(int(w[t]) * int(w[inverse[t]]) * sizes_inv[t] for t in range(k)) % p
        d2 = N * pow(s, -1, p) % p
        cands = [d for d in divisors if d * d % p == d2]
        if len(cands) != 1:
            raise TableError("degree not determined")
        d = cands[0]
        vals = [d * int(w[t]) * sizes_inv[t] % p for t in range(k)]
        rows = []
        for t in range(k):
            o = orders[t]
            zo = pow(z, e // o, p)
            inv_o = pow(o, -1, p)
            m_t = np.zeros(o, dtype=np.int64)
            for u in range(o):
                acc = 0
                for l in range(o):
                    acc += vals[power[t][l]] * pow(zo, (-u * l) % o, p)
                mu = acc * inv_o % p
                if mu > d:
                    raise TableError("eigenvalue multiplicity out of range")
                m_t[u] = mu
            if m_t.sum() != d:
                raise TableError("multiplicities do not sum to the degree")
            rows.append(m_t)
        mult.append(rows)
    mult.sort(key=lambda rows: (int(rows[0][0]), [tuple(r.tolist()) for r in rows]))
    return CharTable(spec=spec, order=N, reps=[c.rep for c in classes], sizes=sizes, orders=orders,
                     exponent=e, inverse=inverse, power=power, mult=mult, prime=p)


def validate_table(T: CharTable) -> None:
    """Exact row and column orthogonality, else TableError."""
    k, e = T.k, T.exponent
    R = np.array(reduction_matrix(e), dtype=np.int64)
    E = np.zeros((k, k, e), dtype=np.int64)
    col_ok = True
    for t in range(k):
        o = T.orders[t]
        M = np.stack([T.mult[i][t] for i in range(k)])
        step = e // o
        col = np.zeros(o, dtype=np.int64)
        for w in range(o):
            c = M @ np.roll(M, w, axis=1).T  # c[i, j] = sum_u m_i[u] m_j[u - w]
            E[:, :, w * step] += T.sizes[t] * c
            col[w] = np.trace(c)
        colval = Cyclo.from_powers(o, [int(x) for x in col])
        if colval != T.order // T.sizes[t]:
            col_ok = False
    if not col_ok:
        raise TableError("column orthogonality failed")
    red = E.reshape(k * k, e) @ R
    target = np.zeros_like(red)
    target[:, 0] = (np.eye(k, dtype=np.int64) * T.order).reshape(-1)
    if not np.array_equal(red, target):
        raise TableError("row orthogonality failed")
    if sum(d * d for d in T.degrees) != T.order:
        raise TableError("degree sum of squares")


# --- tau powers and levels ------------------------------------------------------------

def tau_values(T: CharTable) -> list[int]:
    sp = T.spec
    return [weil_value(sp, r) for r in T.reps]


def tau_power_decompose(T: CharTable, j: int) -> list[int]:
    """[tau^j, chi_i] for every character."""
    tau = tau_values(T)
    out = T.inner_integer([x ** j for x in tau])
    if any(x.denominator != 1 or x < 0 for x in out):
        raise TableError("tau power multiplicities are not nonnegative integers")
    return [int(x) for x in out]


def empirical_true_level(T: CharTable) -> list[Optional[int]]:
    n = T.spec.n
    out: list[Optional[int]] = [None] * T.k
    for j in range(n + 1):
        dec = tau_power_decompose(T, j)
        for i, m in enumerate(dec):
            if m and out[i] is None:
                out[i] = j
    return out


def linear_rows(T: CharTable) -> list[int]:
    """Linear characters trivial on the determinant-one subgroup."""
    G = matrix_group(T.spec)
    dets = G.det_batch(np.stack(T.reps))
    special = [t for t in range(T.k) if dets[t] == 1]
    return [i for i in range(T.k) if T.degrees[i] == 1
            and all(T.mult[i][t][0] == 1 for t in special)]


def twist_row(T: CharTable, i: int, lin: int) -> int:
    """Row of chi_i * lambda for a linear character row `lin`."""
    target = []
    for t in range(T.k):
        shift = int(np.nonzero(T.mult[lin][t])[0][0])
        target.append(tuple(np.roll(T.mult[i][t], shift).tolist()))
    for r in range(T.k):
        if all(tuple(T.mult[r][t].tolist()) == target[t] for t in range(T.k)):
            return r
    raise TableError("twist not found among rows")


def empirical_level(T: CharTable) -> list[Optional[int]]:
    tl = empirical_true_level(T)
    out = []
    for i in range(T.k):
        vals = [tl[twist_row(T, i, lin)] for lin in linear_rows(T)]
        vals = [v for v in vals if v is not None]
        out.append(min(vals) if vals else None)
    return out


def power_inner_with_trivial(T: CharTable, m: int) -> int:
    """[tau^m, 1]."""
    return tau_power_decompose(T, m)[_trivial_row(T)]


def _trivial_row(T: CharTable) -> int:
    for i in range(T.k):
        if all(T.mult[i][t][0] == 1 and T.mult[i][t].sum() == 1 for t in range(T.k)):
            return i
    raise TableError("no trivial character")


def parity_check(T: CharTable, max_m: Optional[int] = None) -> bool:
    """GU: [z^i z^j, 1] = 0 whenever i + j is odd and i + j <= max_m (default n).

    Past n this fails already for GU_2(2), where [z^3, 1] = 1.
    """
    if T.spec.eps != -1:
        raise ValueError("parity_check applies to unitary groups")
    top = T.spec.n if max_m is None else max_m
    return all(power_inner_with_trivial(T, m) == 0 for m in range(1, top + 1, 2))


# --- dual pairs ---------------------------------------------------------------------

@dataclass
class DualPairResult:
    n: int
    j: int
    q: int
    eps: int
    D: list  # D[alpha][theta] integer multiplicities
    tableG: CharTable
    tableS: CharTable


def dual_pair_decompose(n: int, j: int, q: int, eps: int) -> DualPairResult:
    """Decompose D_alpha(g) = |S|^-1 sum_s tau(g (x) s) conj(alpha(s)) over Irr(G)."""
    G, S = GroupSpec(eps, n, q), GroupSpec(eps, j, q)
    TG, TS = dixon_table(G), dixon_table(S)
    F = G.field
    # [T_s, theta] where T_s(g) = tau_{nj}(g (x) s), one integer class function per class s
    per_s = []
    for s_rep in TS.reps:
        vals = [eps ** (n * j) * (eps * q) ** kron_fixed_dim(F, g, s_rep) for g in TG.reps]
        per_s.append(TG.inner_integer_cyclo(vals))
    D = []
    for a in range(TS.k):
        row = []
        for th in range(TG.k):
            tot = Cyclo.rational(0)
            for s in range(TS.k):
                c = per_s[s][th]
                if any(c.coeffs):
                    tot = tot + TS.value(a, s).conj() * c * Fraction(TS.sizes[s], TS.order)
            if not tot.is_rational() or tot.rational_value().denominator != 1:
                raise TableError("dual pair multiplicity is not an integer")
            row.append(int(tot.rational_value()))
        D.append(row)
    return DualPairResult(n, j, q, eps, D, TG, TS)


def dual_pair_label_match(res: DualPairResult, top: Sequence[Optional[int]]) -> bool:
    """Compare {(alpha(1), D°_alpha(1))} from the tables with the label rule that puts the
    part n - j in front of the unit(0) partition of alpha."""
    from .census import enumerate_labels
    from .labels import degree, theta_inverse, true_level

    if any(t is None for t in top):
        return False
    S = GroupSpec(res.eps, res.j, res.q)
    from_tables = Counter((res.tableS.degrees[a], res.tableG.degrees[t]) for a, t in enumerate(top))
    from_labels = Counter((degree(al), degree(theta_inverse(al, res.n))) for al in enumerate_labels(S)
                          if true_level(al) >= 2 * res.j - res.n)
    return from_tables == from_labels


# --- commutators and random walks ----------------------------------------------------

def mu_commutator(T: CharTable) -> list[Fraction]:
    """mu(g) = sum_chi chi(g)/chi(1) per class."""
    out = []
    for t in range(T.k):
        o = T.orders[t]
        vec = [Fraction(0)] * o
        for i in range(T.k):
            d = T.degrees[i]
            for u, m in enumerate(T.mult[i][t]):
                if m:
                    vec[u] += Fraction(int(m), d)
        val = Cyclo.from_powers(o, vec)
        out.append(val.rational_value())
    return out


@dataclass
class WalkStep:
    t: int
    linf: Fraction
    l1: Fraction
    ds_bound: Fraction
    total: Fraction


def random_walk(T: CharTable, cls: int, t: int) -> WalkStep:
    """Exact t-step distribution of products of uniform elements of a class.

    P^t(x) = sum_chi conj(chi(g))^t chi(x) / (|G| chi(1)^(t-1)); linf is
    |G| max_x |P^t(x) - 1/|G||, l1 is sum_x |P^t(x) - 1/|G||.
    """
    if t < 1:
        raise ValueError("t >= 1")
    N = T.order
    powers = [T.value(i, cls).conj() for i in range(T.k)]
    pw = []
    for i in range(T.k):
        acc = Cyclo.rational(1)
        for _ in range(t):
            acc = acc * powers[i]
        pw.append(acc)
    probs = []
    for x in range(T.k):
        tot = Cyclo.rational(0)
        for i in range(T.k):
            tot = tot + pw[i] * T.value(i, x) * Fraction(1, T.degrees[i] ** (t - 1))
        probs.append(tot.rational_value() / N)
    total = sum(p * s for p, s in zip(probs, T.sizes))
    diffs = [p - Fraction(1, N) for p in probs]
    linf = max(abs(d) for d in diffs) * N
    l1 = sum(abs(d) * s for d, s in zip(diffs, T.sizes))
    triv = _trivial_row(T)
    ds = Cyclo.rational(0)
    for i in range(T.k):
        if i == triv:
            continue
        a2 = T.value(i, cls).abs2()
        acc = Cyclo.rational(1)
        for _ in range(t):
            acc = acc * a2
        ds = ds + acc * Fraction(1, T.degrees[i] ** (2 * t - 2))
    return WalkStep(t, linf, l1, ds.rational_value(), total)


# --- special subgroups ----------------------------------------------------------------

@dataclass
class RestrictionReport:
    ok: bool
    sl_levels: list
    sl_degrees: list
    extendible: list
    failures: list = field(default_factory=list)


def restriction_check_sl(TG: CharTable, TS: CharTable) -> RestrictionReport:
    """Restriction data between GL^eps_n(q) and SL^eps_n(q)."""
    G, S = TG.spec, TS.spec
    if not (S.special and not G.special and S.nonspecial() == G):
        raise ValueError("incompatible specs")
    n, q, eps = G.n, G.q, G.eps
    MG = matrix_group(G)
    fuse = [int(MG.class_of[MG.index_of(r[None])[0]]) for r in TS.reps]

    def restricted_inner(i: int, a: int) -> Fraction:
        tot = Cyclo.rational(0)
        for s in range(TS.k):
            v = Cyclo.from_powers(TG.orders[fuse[s]], [int(x) for x in TG.mult[i][fuse[s]]])
            tot = tot + v * TS.value(a, s).conj() * TS.sizes[s]
        return (tot / TS.order).rational_value()

    inner = [[restricted_inner(i, a) for a in range(TS.k)] for i in range(TG.k)]
    true_lv = empirical_true_level(TG)
    lv = empirical_level(TG)
    # SL levels from (tau^j)|_S
    sl_levels: list[Optional[int]] = [None] * TS.k
    for j in range(n + 1):
        dec = tau_power_decompose(TS, j)
        for a, m in enumerate(dec):
            if m and sl_levels[a] is None:
                sl_levels[a] = j
    failures = []
    extendible = [any(inner[i][a] == 1 and TG.degrees[i] == TS.degrees[a] for i in range(TG.k))
                  for a in range(TS.k)]
    for i in range(TG.k):
        if 2 * lv[i] < n:
            irreducible = sum(x * x for x in inner[i]) == 1
            if not irreducible:
                failures.append(("restriction reducible", i))
    for a in range(TS.k):
        d = TS.degrees[a]
        if not extendible[a]:
            # every chi above phi has chi(1) > q^(n^2/4 - 2), i.e. chi(1)^4 > q^(n^2 - 8)
            for i in range(TG.k):
                if inner[i][a] and not Fraction(TG.degrees[i]) ** 4 > Fraction(q) ** (n * n - 8):
                    failures.append(("non-extendible degree bound", a))
        j = sl_levels[a]
        if j is not None and 2 * j < n:
            above = [i for i in range(TG.k) if inner[i][a] and true_lv[i] == j]
            if len(above) != 1:
                failures.append(("unique true-level character above", a))
        sigma = Fraction(1, q - 1) if eps == 1 else Fraction(1, 2 * (q + 1))
        if j is None or not (sigma * q ** (j * (n - j)) <= d <= q ** (n * j)):
            failures.append(("SL degree bound", a))
    return RestrictionReport(not failures, sl_levels, list(TS.degrees), extendible, failures)


# --- centralizer scan ------------------------------------------------------------------

def small_centralizer_scan(T: CharTable) -> tuple[list[int], Optional[float]]:
    """Classes with |C(g)|^12 <= q^(n^2), and max log|chi(g)|/log chi(1) over noncentral g
    and nonlinear chi."""
    n, q = T.spec.n, T.spec.q
    small = [t for t in range(T.k) if T.centralizers[t] ** 12 <= q ** (n * n)]
    best = None
    for t in range(T.k):
        if T.sizes[t] == 1:
            continue
        for i in range(T.k):
            d = T.degrees[i]
            if d == 1:
                continue
            a = abs(complex(T.value(i, t)))
            if a < 1e-9:
                continue
            r = math.log(a) / math.log(d)
            best = r if best is None else max(best, r)
    return small, best


@dataclass
class DualPairReport:
    ok: bool
    top: list  # row of D°_alpha in Irr(G) for each alpha
    failures: list


def dual_pair_certify(res: DualPairResult) -> DualPairReport:
    """Check that each D_alpha has a single true-level-j constituent D°_alpha, occurring once,
    all other constituents of lower true level; alpha -> D°_alpha injective and onto the
    true-level-j characters; and sum_alpha alpha(1) D_alpha equals the Weil character of GL_nj."""
    TG, TS, j = res.tableG, res.tableS, res.j
    tl = empirical_true_level(TG)
    failures, top = [], []
    for a, row in enumerate(res.D):
        tops = [th for th, m in enumerate(row) if m and tl[th] == j]
        if len(tops) != 1 or row[tops[0]] != 1:
            failures.append(("top constituent", a))
            top.append(None)
            continue
        top.append(tops[0])
        if any(m and tl[th] > j for th, m in enumerate(row)):
            failures.append(("constituent above true level j", a))
    if len(set(t for t in top if t is not None)) != len(top):
        failures.append(("not injective", None))
    level_j = {th for th in range(TG.k) if tl[th] == j}
    if set(top) != level_j:
        failures.append(("not onto the true-level-j characters", None))
    total = [sum(TS.degrees[a] * res.D[a][th] for a in range(TS.k)) for th in range(TG.k)]
    if total != tau_power_decompose(TG, j):
        failures.append(("isotypic sum differs from tau^j", None))
    return DualPairReport(not failures, top, failures)
