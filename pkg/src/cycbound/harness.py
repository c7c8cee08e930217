"""Command line interface, tightness tables and the results cache."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import multiprocessing
import sys
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .bounds import BoundOutcome, all_bounds
from .cyclic import CyclicCodeSpec, coset_partition, enumerate_codes, parse_defining_set
from .errors import CapExceeded, GcdError, PatternSyntaxError
from .oracle import DEFAULT_CAP, true_distance
from .usemiring import as_uvec, includes, schaub_lower_bound

log = logging.getLogger("cycbound")

COLUMNS = ("BCH", "HT", "BS", "RS", "BC")
_COLUMN_KIND = {"BCH": "BCH", "HT": "HT", "BS": "BS", "RS": "ROOS", "BC": "BOUND_C"}
_KIND_ALIASES = {
    "bch": "BCH", "ht": "HT", "bs": "BS", "roos": "ROOS", "rs": "ROOS",
    "bound_c": "BOUND_C", "boundc": "BOUND_C", "bc": "BOUND_C", "c": "BOUND_C",
}

EXIT_PARSE, EXIT_GCD, EXIT_CAP, EXIT_FAILED = 2, 3, 4, 5


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_plain)


def _plain(x):
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (tuple, set, frozenset)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _jsonable(obj):
    return json.loads(dumps(obj))


# --- per-code evaluation ---

def code_key(S) -> str:
    return ",".join(map(str, S))


def evaluate_code(q: int, n: int, S: tuple, distance_cap: int = DEFAULT_CAP) -> dict:
    """Bounds, witnesses and (when within the cap) the true distance of one code."""
    spec = CyclicCodeSpec(q, n, tuple(S))
    res = all_bounds(spec)
    entry = {
        "S": list(spec.S),
        "k": spec.k,
        "bounds": {k: int(o.value) for k, o in res.items()},
        "witnesses": {k: _jsonable(o.witness) for k, o in res.items()},
    }
    try:
        entry["distance"] = true_distance(spec, cap=distance_cap).d
    except CapExceeded:
        entry["distance"] = None
    apply_bound_ii_gate(entry)
    return entry


def apply_bound_ii_gate(entry: dict) -> dict:
    """A bound-C value that came from the second family and exceeds the true
    distance is logged and lowered to value-1, with the incident recorded."""
    d = entry.get("distance")
    w = entry["witnesses"].get("BOUND_C", {})
    v = entry["bounds"]["BOUND_C"]
    if d is None or w.get("case") != "II" or v <= d:
        return entry
    incident = {"lam": w["lam"], "mu": w["mu"], "s": w["s"], "value": v, "distance": d, "S": entry["S"]}
    log.warning("bound II incident: %s", dumps(incident))
    entry["bounds"]["BOUND_C"] = v - 1
    entry.setdefault("incidents", []).append(incident)
    return entry


def _evaluate_task(args):
    return evaluate_code(*args)


# --- results cache ---

@dataclass
class ResultsCache:
    root: Path | None
    data: dict = field(default_factory=dict)

    def path(self, q, n) -> Path | None:
        return None if self.root is None else self.root / f"q{q}_n{n}.json"

    def load(self, q, n) -> dict:
        key = (q, n)
        if key not in self.data:
            p = self.path(q, n)
            doc = json.loads(p.read_text()) if p is not None and p.exists() else {}
            self.data[key] = doc.get("codes", {})
        return self.data[key]

    def put(self, q, n, entry):
        codes = self.load(q, n)
        k = code_key(entry["S"])
        if k in codes:
            return
        codes[k] = entry

    def flush(self, q, n):
        p = self.path(q, n)
        if p is None:
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".json.tmp")
        tmp.write_text(json.dumps({"q": q, "n": n, "codes": self.load(q, n)}, sort_keys=True, indent=1) + "\n")
        tmp.replace(p)


# --- tightness tables ---

@dataclass
class TightnessRow:
    n: int
    N_codes: int
    total: dict
    excess: dict
    skipped: int = 0
    incidents: int = 0
    status: str = "ok"

    def csv_fields(self):
        return [self.n, self.N_codes] + [self.total[c] for c in COLUMNS]


def score(n: int, entries, exclude_trivial: bool = False) -> TightnessRow:
    total = {c: 0 for c in COLUMNS}
    excess = {c: 0 for c in COLUMNS}
    N = skipped = incidents = 0
    for e in entries:
        if exclude_trivial and len(e["S"]) in (0, n):
            continue
        if e["distance"] is None:
            skipped += 1
            continue
        N += 1
        incidents += len(e.get("incidents", []))
        d = e["distance"]
        bch_tight = e["bounds"]["BCH"] == d
        for c in COLUMNS:
            if e["bounds"][_COLUMN_KIND[c]] == d:
                total[c] += 1
                if c == "BCH" or not bch_tight:
                    excess[c] += 1
    status = "ok" if not skipped else ("failed" if N == 0 else "partial")
    return TightnessRow(n, N, total, excess, skipped, incidents, status)


def table_rows(q: int, n_values, distance_cap: int = DEFAULT_CAP, jobs: int = 1,
               cache: ResultsCache | None = None, exclude_trivial: bool = False) -> list:
    cache = cache or ResultsCache(None)
    rows = []
    pool = multiprocessing.get_context("spawn").Pool(jobs) if jobs > 1 else None
    try:
        for n in n_values:
            if gcd(n, q) != 1:
                log.warning("skipping n=%d: gcd(n, q) != 1", n)
                continue
            specs = enumerate_codes(n, q)
            codes = cache.load(q, n)
            todo = [(q, n, s.S, distance_cap) for s in specs if code_key(s.S) not in codes]
            results = pool.imap(_evaluate_task, todo, chunksize=8) if pool else map(_evaluate_task, todo)
            for i, entry in enumerate(results, 1):
                cache.put(q, n, entry)
                if i % 256 == 0:
                    cache.flush(q, n)
            cache.flush(q, n)
            entries = [codes[code_key(s.S)] for s in specs]
            row = score(n, entries, exclude_trivial)
            if row.status != "ok":
                log.warning("n=%d: %d codes skipped (distance cap)", n, row.skipped)
            rows.append(row)
    finally:
        if pool:
            pool.close()
            pool.join()
    return rows


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("n", "N_codes") + COLUMNS)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def summary_csv(rows) -> str:
    """Excess semantics: BCH counts every tight code, the other columns count
    codes where the bound is tight and BCH is not."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("n", "N_codes") + COLUMNS + ("skipped", "incidents", "status"))
    tot = {c: 0 for c in COLUMNS}
    N = skipped = incidents = 0
    for row in rows:
        w.writerow([row.n, row.N_codes] + [row.excess[c] for c in COLUMNS]
                   + [row.skipped, row.incidents, row.status])
        N += row.N_codes
        skipped += row.skipped
        incidents += row.incidents
        for c in COLUMNS:
            tot[c] += row.excess[c]
    w.writerow(["total", N] + [tot[c] for c in COLUMNS] + [skipped, incidents, ""])
    return buf.getvalue()


# --- commands ---

def _spec(args) -> CyclicCodeSpec:
    return CyclicCodeSpec(args.q, args.n, parse_defining_set(args.set, args.n, args.q))


def cmd_bound(args) -> int:
    spec = _spec(args)
    res = all_bounds(spec)
    if args.kind == "all":
        print(dumps({k: o.as_dict() for k, o in res.items()}))
        return 0
    kind = _KIND_ALIASES.get(args.kind.lower())
    if kind is None:
        raise ValueError(f"unknown bound kind {args.kind!r}")
    o: BoundOutcome = res[kind]
    print(dumps(o.as_dict()))
    return 0


def cmd_distance(args) -> int:
    spec = _spec(args)
    r = true_distance(spec, cap=args.distance_cap)
    print(dumps({"d": r.d, "weight_witness": r.argmin_word, "enumerated": r.enumerated}))
    return 0


def cmd_table(args) -> int:
    n_min = args.n_min if args.n_min is not None else args.n
    n_max = args.n_max if args.n_max is not None else n_min
    if n_min is None:
        raise ValueError("table needs --n or --n-min/--n-max")
    cache = ResultsCache(Path(args.cache_dir) if args.cache_dir else None)
    rows = table_rows(args.q, range(n_min, n_max + 1), args.distance_cap, args.jobs, cache, args.exclude_trivial)
    text = table_csv(rows)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        out.with_suffix(".summary.csv").write_text(summary_csv(rows))
    else:
        sys.stdout.write(text)
    return EXIT_FAILED if any(r.status == "failed" for r in rows) else 0


def cmd_pattern(args) -> int:
    u, v = as_uvec(args.u), as_uvec(args.v)
    ok, shift = includes(u, v)
    print(dumps({"included": ok, "shift": shift}))
    return 0


def cmd_schaub(args) -> int:
    spec = _spec(args)
    print("warning: exponential in the number of D positions", file=sys.stderr)
    print(schaub_lower_bound(spec, a_cap=args.a_cap, subset_cap=args.subset_cap))
    return 0


def cmd_cosets(args) -> int:
    part = coset_partition(args.n, args.q)
    print(dumps({f"C{c[0]}": list(c) for c in part}))
    return 0


def cmd_proof(args) -> int:
    from .proofcheck import is_main_case, leaves, synthetic_R, verify_construction

    if args.lam is not None:
        params = {"lam": args.lam, "mu": args.mu, "s": args.s}
    else:
        params = {"ell": args.ell, "m": args.m, "r": args.r, "s": args.s}
    R = synthetic_R(params, args.n)
    rep = verify_construction(R, params)
    main = [x for x in leaves(R, params) if x.i_secondary is not None and is_main_case(x)]
    if main:
        print(main[0].render())
    print(dumps({"ok": rep.ok, "target": rep.target, "cases": rep.leaves, "min_survivors": rep.min_survivors,
                 "max_discard": rep.max_discard, "discard_bound": rep.discard_bound, "wrapped": rep.wrapped}))
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cycbound", description="Lower bounds on the distance of cyclic codes.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def code_args(sp):
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--set", default="", help='defining set, e.g. "C1+C3" or "1,2,4"')

    sp = sub.add_parser("bound")
    code_args(sp)
    sp.add_argument("--kind", default="all", help="bch, ht, bs, roos, bound_c or all")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("distance")
    code_args(sp)
    sp.add_argument("--distance-cap", type=int, default=DEFAULT_CAP)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("table")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--distance-cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--cache-dir")
    sp.add_argument("--exclude-trivial", action="store_true")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("pattern")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.set_defaults(func=cmd_pattern)

    sp = sub.add_parser("schaub")
    code_args(sp)
    sp.add_argument("--a-cap", type=int, default=1 << 12)
    sp.add_argument("--subset-cap", type=int, default=1 << 22)
    sp.set_defaults(func=cmd_schaub)

    sp = sub.add_parser("cosets")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_cosets)

    sp = sub.add_parser("proof")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--lam", type=int)
    sp.add_argument("--mu", type=int)
    sp.add_argument("--s", type=int, required=True)
    sp.set_defaults(func=cmd_proof)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GcdError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GCD
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (PatternSyntaxError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
