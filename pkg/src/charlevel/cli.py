"""Command-line front end.

Every subcommand writes one JSON document (with a top-level "schema" field) or an
RFC-4180 CSV table. Integers are printed as decimal strings and rationals as "a/b".

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 resource guard hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Iterator, Optional

import mpmath

from . import bounds, census, checks, gfcore, labels, oracle
from .gfcore import GroupSpec, GuardExceeded
from .labels import CharLabel, LabelError

SCHEMA = "charlevel/1"
CONFIG_KEYS = {"cache", "element_guard", "class_guard", "seed", "format", "precision"}
DEFAULTS = {"element_guard": gfcore.ELEMENT_GUARD, "class_guard": 200000, "seed": 0,
            "format": "json", "precision": 30}


class UsageError(Exception):
    pass


# --- value rendering --------------------------------------------------------------------

class Raw(dict):
    """Already-serialised JSON (labels) that is emitted verbatim."""


def render(x, precision: int):
    if isinstance(x, Raw):
        return dict(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, mpmath.mpf)):
        with mpmath.workdps(precision + 10):
            return mpmath.nstr(mpmath.mpf(x), precision, strip_zeros=False)
    if isinstance(x, dict):
        return {str(k): render(v, precision) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v, precision) for v in x]
    return str(x)


class Emitter:
    def __init__(self, fmt: str, out, precision: int):
        self.fmt, self.out, self.precision = fmt, out, precision

    def document(self, kind: str, body: dict) -> None:
        if self.fmt == "json":
            doc = {"schema": SCHEMA, "kind": kind}
            doc.update(render(body, self.precision))
            self.out.write(json.dumps(doc, indent=2) + "\n")
        else:
            w = csv.writer(self.out)
            w.writerow(["key", "value"])
            for k, v in render(body, self.precision).items():
                w.writerow([k, v if isinstance(v, str) else json.dumps(v)])

    def table(self, kind: str, header: list[str], rows: Iterable[list], extra: Optional[dict] = None) -> None:
        """Streams rows; JSON output is written incrementally as well."""
        if self.fmt == "csv":
            w = csv.writer(self.out)
            w.writerow(header)
            for r in rows:
                w.writerow([v if isinstance(v, str) else json.dumps(v) if isinstance(v, (list, dict)) else v
                            for v in render(list(r), self.precision)])
            return
        head = {"schema": SCHEMA, "kind": kind}
        head.update(render(extra or {}, self.precision))
        text = json.dumps(head, indent=2)
        self.out.write(text[:-2] + ',\n  "columns": ' + json.dumps(header) + ',\n  "rows": [')
        first = True
        for r in rows:
            self.out.write(("\n    " if first else ",\n    ") + json.dumps(render(list(r), self.precision)))
            first = False
        self.out.write("\n  ]\n}\n")


# --- configuration --------------------------------------------------------------------------

def load_config(path: Optional[str]) -> dict:
    cfg = dict(DEFAULTS)
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    return cfg


def resolve(args) -> dict:
    cfg = load_config(args.config)
    for key in ("format", "seed", "precision", "element_guard"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.cache is not None:
        cfg["cache"] = args.cache
    if "CHARLEVEL_CACHE" in os.environ:
        cfg["cache"] = os.environ["CHARLEVEL_CACHE"]
    if cfg.get("cache"):
        os.environ["CHARLEVEL_CACHE"] = str(cfg["cache"])
    if cfg["format"] not in ("json", "csv"):
        raise UsageError("format must be json or csv")
    return cfg


def parse_group(text: str, allow_special: bool = True) -> GroupSpec:
    try:
        spec = GroupSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if spec.special and not allow_special:
        raise UsageError("this command needs GL or GU")
    return spec


def parse_eps(text: str) -> int:
    if text in ("+", "+1", "1", "GL"):
        return 1
    if text in ("-", "-1", "GU"):
        return -1
    raise UsageError(f"bad eps {text!r}")


def parse_range(text: str) -> range:
    if ".." in text:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


# --- commands ------------------------------------------------------------------------------------

def _read_label(args) -> CharLabel:
    if args.label is not None:
        raw = args.label
        if raw.startswith("@"):
            with open(raw[1:]) as fh:
                raw = fh.read()
        return CharLabel.from_json(raw)
    if args.group is None:
        raise UsageError("give a label JSON or --group with --partition/--trivial/--steinberg")
    spec = parse_group(args.group, allow_special=False)
    if args.trivial:
        return labels.trivial_label(spec)
    if args.steinberg:
        return labels.steinberg_label(spec)
    if args.partition:
        parts = [int(x) for x in args.partition.split(",")]
        return CharLabel.make(spec, {labels.EigenOrbit.unit(0): parts})
    raise UsageError("missing label")


def cmd_degree(args, cfg, em: Emitter) -> int:
    try:
        lab = _read_label(args)
    except (LabelError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed label: {exc}") from exc
    fails = bounds.main_degree_failures(lab, "i,ii")
    em.document("degree", {
        "label": Raw(lab.to_json()), "degree": labels.degree(lab), "true_level": labels.true_level(lab),
        "level": labels.level(lab), "dual_label": Raw(labels.alvis_curtis_dual(lab).to_json()),
        "bounds": {"degree_bounds_pass": not fails, "failed_parts": fails},
    })
    return 0


def cmd_enumerate(args, cfg, em: Emitter) -> int:
    spec = parse_group(args.group, allow_special=False)
    count = census.class_number(spec)
    if count > cfg["class_guard"]:
        raise GuardExceeded(f"{count} labels exceed the class guard {cfg['class_guard']}")

    def rows() -> Iterator[list]:
        for lab in census.enumerate_labels(spec):
            d, tl, lv = labels.degree(lab), labels.true_level(lab), labels.level(lab)
            if args.level is not None and lv != args.level:
                continue
            if args.true_level is not None and tl != args.true_level:
                continue
            if args.min_degree is not None and d < args.min_degree:
                continue
            yield [lab.dumps(), d, tl, lv]

    em.table("enumerate", ["label", "degree", "true_level", "level"], rows(),
             {"group": spec.name, "labels_total": count})
    return 0


def cmd_table(args, cfg, em: Emitter) -> int:
    spec = parse_group(args.group)
    T = oracle.dixon_table(spec, guard=cfg["element_guard"], use_cache=not args.no_cache)
    if em.fmt == "json":
        em.document("table", T.to_json())
    else:
        data = T.to_json()
        em.table("table", ["character", "class", "coeffs"],
                 ([i, t, json.dumps(data["characters"][i][t])] for i in range(T.k) for t in range(T.k)))
    return 0


def cmd_walk(args, cfg, em: Emitter) -> int:
    spec = parse_group(args.group)
    T = oracle.dixon_table(spec, guard=cfg["element_guard"])
    cls = args.cls
    if cls is None:
        cls = next(t for t in range(T.k) if T.sizes[t] > 1)
    if not 0 <= cls < T.k:
        raise UsageError(f"class index out of range 0..{T.k - 1}")

    def rows():
        for t in parse_range(args.t):
            w = oracle.random_walk(T, cls, t)
            yield [t, w.linf, w.l1, w.ds_bound, w.total, w.l1 ** 2 <= w.ds_bound]

    em.table("walk", ["t", "linf", "l1", "ds_bound", "total", "l1_sq_le_ds"], rows(),
             {"group": spec.name, "class": cls, "class_size": T.sizes[cls]})
    return 0


def cmd_thresholds(args, cfg, em: Emitter) -> int:
    try:
        C = Fraction(args.C)
    except ValueError as exc:
        raise UsageError(f"bad C: {exc}") from exc
    if C < 1:
        raise UsageError("C must be >= 1")
    m = args.m
    rows = ([k, bounds.threshold_f(C, m, k), bounds.threshold_delta(C, m, k)] for k in range(args.kmax + 1))
    extra = {"C": C, "m": m, "policy": "midpoint"}
    if m >= 0:
        extra["h"] = bounds.threshold_h(C, m)
    em.table("thresholds", ["k", "f", "delta"], rows, extra)
    return 0


def cmd_orbits(args, cfg, em: Emitter) -> int:
    eps, n, q = parse_eps(args.eps), args.n, args.q
    spec = GroupSpec(eps, n, q)

    def rows():
        for j in range(args.jmax + 1):
            formula = bounds.orbit_formula(eps, j, q) if (eps == 1 and j <= n) or 2 * j <= n else None
            general = bounds.gl_orbit_count(n, j, q) if eps == 1 else None
            burnside = gfcore.tuple_orbit_count_oracle(spec, j, cfg["element_guard"]) if args.oracle else None
            ceiling = bounds.orbit_bounds_check(eps, j, q, burnside if burnside is not None else general or formula or 0)
            yield [j, formula, general, burnside, ceiling]

    em.table("orbits", ["j", "formula", "all_j_count", "burnside", "ceiling_ok"], rows(), {"group": spec.name})
    return 0


def cmd_pencil(args, cfg, em: Emitter) -> int:
    j, q = args.j, args.q
    body = {"j": j, "q": q, "f": bounds.pencil_f(j), "h": bounds.pencil_h(j),
            "F": bounds.pencil_F(j, q), "H": bounds.pencil_H(j, q)}
    code = 0
    if args.n is not None:
        val = gfcore.pencil_orbit_oracle(j, args.n, q, cfg["element_guard"])
        ok = bounds.pencil_bounds_check(args.n, j, q, val)
        body.update({"n": args.n, "burnside": val, "sandwich_ok": ok})
        code = 0 if ok else 1
    em.document("pencil", body)
    return code


def cmd_zeta(args, cfg, em: Emitter) -> int:
    spec = parse_group(args.group)
    try:
        s = Fraction(args.s)
    except ValueError as exc:
        raise UsageError(f"bad s: {exc}") from exc
    if spec.special:
        degs = census.sl_degree_multiset(spec)
    else:
        degs = census.degree_multiset(spec)
    val = census.witten_zeta(degs, s, exclude_trivial=args.nontrivial, dps=cfg["precision"] + 10)
    em.document("zeta", {"group": spec.name, "s": s, "nontrivial_only": args.nontrivial,
                         "value": val, "precision": cfg["precision"]})
    return 0


def cmd_dualpair(args, cfg, em: Emitter) -> int:
    eps = parse_eps(args.eps)
    res = oracle.dual_pair_decompose(args.n, args.j, args.q, eps)
    rep = oracle.dual_pair_certify(res)
    match = oracle.dual_pair_label_match(res, rep.top)
    em.document("dualpair", {"eps": "+" if eps == 1 else "-", "n": args.n, "j": args.j, "q": args.q,
                             "D": res.D, "top": rep.top, "failures": [str(f) for f in rep.failures],
                             "label_rule_match": match, "pass": rep.ok and match})
    return 0 if rep.ok and match else 1


VERIFY_EXTRA = ("trivial-products", "centralizer-index", "unipotent-index", "dual-level-sum", "dual-degree-product", "fixed-space")


def cmd_verify(args, cfg, em: Emitter) -> int:
    name = args.suite
    results = []
    if name == "all":
        for fn in checks.ACCEPTANCE.values():
            results.append(fn())
    elif name == "degree-multiset" and args.group:
        spec = parse_group(args.group)
        if spec.special:
            results.append(checks.check_degree_multisets(groups=(), sl_groups=(spec.name,)))
        else:
            results.append(checks.check_degree_multisets(groups=(spec.name,), sl_groups=()))
    elif name == "dual-pair" and args.n is not None:
        if args.j is None or args.q is None:
            raise UsageError("dual-pair needs --n --j --q --eps")
        results.append(checks.check_dual_pairs(((parse_eps(args.eps), args.n, args.j, args.q),)))
    elif name == "weil-bound":
        results.append(checks.check_weil_bounds(samples=args.samples, seed=cfg["seed"]))
    elif name in checks.ACCEPTANCE:
        results.append(checks.ACCEPTANCE[name]())
    elif name in VERIFY_EXTRA:
        rep = bounds.inequality_suite(name)
        results.append(checks.CheckResult(name, rep.ok, rep.instances, rep.failures,
                                          {"exceptions": rep.exceptions}))
    else:
        known = ["all"] + list(checks.ACCEPTANCE) + list(VERIFY_EXTRA)
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(known)}")
    passed = all(r.passed for r in results)
    if em.fmt == "json":
        em.document("verify", {"suite": name, "pass": passed, "checks": [r.to_json() for r in results]})
    else:
        em.table("verify", ["check", "pass", "instances", "failures"],
                 ([r.name, r.passed, r.instances, json.dumps([str(f) for f in r.failures])] for r in results))
    return 0 if passed else 1


# --- parser --------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--output", help="write to this path instead of stdout")
    common.add_argument("--config", help="JSON config file (keys: " + ", ".join(sorted(CONFIG_KEYS)) + ")")
    common.add_argument("--cache", help="cache directory (CHARLEVEL_CACHE overrides)")
    common.add_argument("--seed", type=int)
    common.add_argument("--precision", type=int, help="significant digits for real outputs")
    common.add_argument("--element-guard", dest="element_guard", type=int)

    p = argparse.ArgumentParser(prog="charlevel", description="Character degrees and levels of GL/GU/SL/SU.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("degree", parents=[common], help="degree and level of one label")
    s.add_argument("label", nargs="?", help="label JSON, or @path")
    s.add_argument("--group")
    s.add_argument("--partition", help="unipotent label: comma-separated partition")
    s.add_argument("--trivial", action="store_true")
    s.add_argument("--steinberg", action="store_true")
    s.set_defaults(fn=cmd_degree)

    s = sub.add_parser("enumerate", parents=[common], help="list labels with degree and level")
    s.add_argument("group")
    s.add_argument("--level", type=int)
    s.add_argument("--true-level", dest="true_level", type=int)
    s.add_argument("--min-degree", dest="min_degree", type=int)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("table", parents=[common], help="exact character table")
    s.add_argument("group")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite")
    s.add_argument("--group")
    s.add_argument("--n", type=int)
    s.add_argument("--j", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--eps", default="+")
    s.add_argument("--samples", type=int, default=1000)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("walk", parents=[common], help="random walk by a conjugacy class")
    s.add_argument("group")
    s.add_argument("--class", dest="cls", type=int)
    s.add_argument("--t", default="1..10", help="step or range a..b")
    s.set_defaults(fn=cmd_walk)

    s = sub.add_parser("thresholds", parents=[common], help="f(C,m,k) and h(C,m)")
    s.add_argument("--C", default="1")
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--kmax", type=int, default=16)
    s.set_defaults(fn=cmd_thresholds)

    s = sub.add_parser("orbits", parents=[common], help="orbit counts on j-tuples")
    s.add_argument("--eps", default="+")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--jmax", type=int, default=3)
    s.add_argument("--oracle", action="store_true", help="also count by Burnside")
    s.set_defaults(fn=cmd_orbits)

    s = sub.add_parser("pencil", parents=[common], help="pencil counts")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, help="compare with a Burnside count on GL_n x GL_j")
    s.set_defaults(fn=cmd_pencil)

    s = sub.add_parser("zeta", parents=[common], help="Witten zeta value")
    s.add_argument("group")
    s.add_argument("--s", default="2")
    s.add_argument("--nontrivial", action="store_true", help="drop the trivial character")
    s.set_defaults(fn=cmd_zeta)

    s = sub.add_parser("dualpair", parents=[common], help="dual-pair decomposition")
    s.add_argument("--eps", default="+")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(fn=cmd_dualpair)
    return p


@contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
        return
    buf = io.StringIO()
    yield buf
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = resolve(args)
        with _sink(args.output) as out:
            return args.fn(args, cfg, Emitter(cfg["format"], out, cfg["precision"]))
    except UsageError as exc:
        print(f"charlevel: {exc}", file=sys.stderr)
        return 2
    except (GuardExceeded, OverflowError) as exc:
        print(f"charlevel: resource guard: {exc}", file=sys.stderr)
        return 3
    except bounds.HypothesisError as exc:
        print(f"charlevel: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
