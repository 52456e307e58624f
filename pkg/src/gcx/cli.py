"""``gcx`` command-line front end.

Exit status: 0 on success, 1 when a verification fails (the offending
generator encodings are printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .cache import Cache
from .cohomology import cohomology_dims, default_vertex_window, euler, is_weighted
from .comparison import MapId, compare_cohomology, compare_reversal, map_id, verify_chain_map
from .families import basis, closure_report, family
from .linalg import DEFAULT_PRIME
from .weighted import Flavor, WeightedFamilyId, basis_w, closure_report_w, rescaling_class

COMMANDS = (
    "basis",
    "cohomology",
    "euler",
    "verify-d2",
    "verify-closure",
    "verify-chain-map",
    "compare",
    "rescaling-class",
)


class UsageError(Exception):
    pass


def parse_range(text: str | None) -> list[int] | None:
    """``3``, ``1..3`` or ``1,2,5`` (entries may themselves be ranges)."""
    if text is None:
        return None
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


def read_config(path: str | None) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment and ``[sections]`` are ignored."""
    if path is None:
        return {}
    conf = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        conf[key.replace("-", "_")] = value.strip("\"'")
    return conf


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcx", description="Directed and bi-weighted graph complexes.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--family", help="unweighted family, e.g. dgc, ogc, dgc_t")
    p.add_argument("--flavor", choices=[f.value for f in Flavor], help="bi-weighted flavor")
    p.add_argument("--variant", default=None, help="bi-weighted variant (default full)")
    p.add_argument("--map", dest="map_id", help="comparison map id")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--loops", help="loop orders, e.g. 3 or 1..3")
    p.add_argument("--vertices", help="vertex counts, e.g. 2..5")
    p.add_argument("--degrees", help="degrees, e.g. -3..2")
    p.add_argument("--max-weight", dest="max_weight", help="weight truncation W (or a range for compare)")
    p.add_argument("--field", default=None, help="q (default) or zp / zp:<prime> / a prime")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir", dest="cache_dir", default=None)
    p.add_argument("--config", default=None, help="key = value file with cache_dir, field, prime")
    return p


def _field(args, conf) -> str | int:
    text = args.field or conf.get("field") or "q"
    t = text.strip().lower()
    if t == "q":
        return "q"
    prime = int(conf.get("prime", DEFAULT_PRIME))
    if t in ("zp", "p"):
        return prime
    for prefix in ("zp:", "zp=", "zp", "p:", "p"):
        if t.startswith(prefix):
            t = t[len(prefix):]
            break
    try:
        return int(t)
    except ValueError:
        raise UsageError(f"bad field {text!r}") from None


def _spec(args):
    if args.family and args.flavor:
        raise UsageError("give either --family or --flavor, not both")
    if args.family:
        if args.variant:
            raise UsageError("--variant applies to weighted flavors only")
        try:
            return family(args.family)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.flavor:
        try:
            return WeightedFamilyId(Flavor(args.flavor), args.variant or "full")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("one of --family or --flavor is required")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _single_w(args, spec) -> int | None:
    if not is_weighted(spec):
        if args.max_weight is not None:
            raise UsageError("--max-weight applies to weighted flavors only")
        return None
    ws = parse_range(_need(args.max_weight, "--max-weight"))
    if len(ws) != 1:
        raise UsageError("--max-weight takes a single value here")
    return ws[0]


def _vertices(args, spec, b: int, W: int | None) -> list[int]:
    vs = parse_range(args.vertices)
    if vs is not None:
        return vs
    return list(default_vertex_window(spec, b, W))


# -- output ----------------------------------------------------------------


def _emit(fmt: str, doc, rows: list[dict], columns: list[str], out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({c: "" if r.get(c) is None else r.get(c) for c in columns})
        out.write(buf.getvalue())
    else:
        cells = [[str("" if r.get(c) is None else r.get(c)) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip() + "\n")


# -- commands --------------------------------------------------------------


def cmd_basis(args, conf, cache, out) -> int:
    spec = _spec(args)
    k = _need(args.k, "--k")
    W = _single_w(args, spec)
    docs, rows = [], []
    for b in parse_range(_need(args.loops, "--loops")):
        for v in _vertices(args, spec, b, W):
            gens = basis_w(spec, k, b, v, W) if W is not None else basis(spec, k, b, v)
            for g in gens:
                rows.append({"b": b, "v": v, "encoding": g.encode()})
            docs.append({"b": b, "v": v, "basis": [g.encode() for g in gens]})
    if args.fmt == "text":
        for r in rows:
            out.write(r["encoding"] + "\n")
        return 0
    doc = {"spec": str(spec.value if not is_weighted(spec) else spec.name), "k": k, "W": W, "slices": docs}
    _emit(args.fmt, doc, rows, ["b", "v", "encoding"], out)
    return 0


def cmd_cohomology(args, conf, cache, out) -> int:
    spec = _spec(args)
    k = _need(args.k, "--k")
    field = _field(args, conf)
    ws = [None]
    if is_weighted(spec):
        ws = parse_range(_need(args.max_weight, "--max-weight"))
    elif args.max_weight is not None:
        raise UsageError("--max-weight applies to weighted flavors only")
    tables, rows = [], []
    for b in parse_range(_need(args.loops, "--loops")):
        for W in ws:
            degs = parse_range(args.degrees)
            if degs is not None:
                t = cohomology_dims(spec, k, b, degrees=degs, W=W, field=field, cache=cache, jobs=args.jobs)
            else:
                t = cohomology_dims(spec, k, b, v_range=_vertices(args, spec, b, W), W=W, field=field, cache=cache, jobs=args.jobs)
            d = t.as_dict()
            tables.append(d)
            for c in d["cells"]:
                rows.append({"b": b, "W": W, **c})
    doc = {"command": "cohomology", "field": str(field), "tables": tables}
    _emit(args.fmt, doc, rows, ["b", "W", "degree", "dim", "rank_out", "rank_in", "h"], out)
    return 0


def cmd_euler(args, conf, cache, out) -> int:
    spec = _spec(args)
    k = _need(args.k, "--k")
    W = _single_w(args, spec)
    series, rows = [], []
    for b in parse_range(_need(args.loops, "--loops")):
        e = euler(spec, k, b, _vertices(args, spec, b, W), W)
        series.append(e.as_dict())
        for d, n in sorted(e.dims.items()):
            rows.append({"b": b, "degree": d, "dim": n, "euler": ""})
        rows.append({"b": b, "degree": "total", "dim": "", "euler": e.value})
    _emit(args.fmt, {"command": "euler", "series": series}, rows, ["b", "degree", "dim", "euler"], out)
    return 0


def _verify(args, conf, cache, out, want_d2: bool) -> int:
    spec = _spec(args)
    ks = [args.k] if args.k is not None else [2, 3]
    W = _single_w(args, spec)
    reports, rows, failed = [], [], []
    for k in ks:
        for b in parse_range(_need(args.loops, "--loops")):
            vs = _vertices(args, spec, b, W)
            r = closure_report_w(spec, k, b, vs, W) if W is not None else closure_report(spec, k, b, vs)
            d = r.as_dict()
            reports.append(d)
            for s in r.slices:
                ok = s.closed and (s.d_squared_zero or not want_d2)
                rows.append({"k": k, "b": b, "v": s.v, "basis": s.basis_size, "closed": s.closed, "d2_zero": s.d_squared_zero, "ok": ok})
                if not ok:
                    failed.extend(s.offenders)
    doc = {"command": "verify-d2" if want_d2 else "verify-closure", "passed": not failed, "reports": reports}
    _emit(args.fmt, doc, rows, ["k", "b", "v", "basis", "closed", "d2_zero", "ok"], out)
    return _fail(failed)


def _fail(offenders: list[str]) -> int:
    if not offenders:
        return 0
    print("verification failed; offending generators:", file=sys.stderr)
    for enc in dict.fromkeys(offenders):
        print(f"  {enc}", file=sys.stderr)
    return 1


def cmd_verify_d2(args, conf, cache, out) -> int:
    return _verify(args, conf, cache, out, True)


def cmd_verify_closure(args, conf, cache, out) -> int:
    return _verify(args, conf, cache, out, False)


def _map(args) -> MapId:
    try:
        return map_id(_need(args.map_id, "--map"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_chain_map(args, conf, cache, out) -> int:
    m = _map(args)
    k = _need(args.k, "--k")
    W = None
    if m is not MapId.REVERSE_EDGES:
        ws = parse_range(_need(args.max_weight, "--max-weight"))
        if len(ws) != 1:
            raise UsageError("--max-weight takes a single value here")
        W = ws[0]
    reports, rows, failed = [], [], []
    for b in parse_range(_need(args.loops, "--loops")):
        vs = parse_range(_need(args.vertices, "--vertices"))
        r = verify_chain_map(m, k, b, vs, W)
        d = r.as_dict()
        reports.append(d)
        rows.append({"b": b, "sources": d["sources"], "terms": d["terms"], "max_discrepancy": d["max_discrepancy"], "passed": d["passed"]})
        failed.extend(r.offenders)
    doc = {"command": "verify-chain-map", "map": m.value, "k": k, "W": W, "passed": not failed, "reports": reports}
    _emit(args.fmt, doc, rows, ["b", "sources", "terms", "max_discrepancy", "passed"], out)
    return _fail(failed)


def cmd_compare(args, conf, cache, out) -> int:
    m = _map(args)
    k = _need(args.k, "--k")
    field = _field(args, conf)
    reports, rows, failed = [], [], []
    for b in parse_range(_need(args.loops, "--loops")):
        if m is MapId.REVERSE_EDGES:
            r = compare_reversal(k, b, parse_range(_need(args.vertices, "--vertices")), field, cache, args.jobs)
            d = r.as_dict()
            for row in r.rows:
                rows.append({"b": b, "degree": row["degree"], "left_dim": row["h_s"], "right_dims_by_W": row["h_t"], "stabilized": "", "match": row["h_equal"] and row["bijection"]})
            if not r.passed:
                failed.append(f"reverse_edges k={k} b={b}")
        else:
            ws = parse_range(_need(args.max_weight, "--max-weight"))
            if len(ws) < 2:
                raise UsageError("compare needs at least two consecutive --max-weight values")
            degs = parse_range(args.degrees)
            if degs is None:
                vs = parse_range(_need(args.vertices, "--vertices (or --degrees)"))
                degs = [v - 1 + (1 - k) * b for v in vs]
            r = compare_cohomology(m, k, b, degs, ws, field, cache, args.jobs)
            d = r.as_dict()
            for c in d["cells"]:
                rows.append({"b": b, **c, "right_dims_by_W": " ".join(f"{w}:{h}" for w, h in c["right_dims_by_W"].items())})
            if not r.passed:
                failed.append(f"{m.value} k={k} b={b} mismatched degrees {r.mismatches}")
        reports.append(d)
    doc = {"command": "compare", "map": m.value, "k": k, "field": str(field), "passed": not failed, "reports": reports}
    _emit(args.fmt, doc, rows, ["b", "degree", "left_dim", "right_dims_by_W", "stabilized", "match"], out)
    return _fail(failed)


def cmd_rescaling_class(args, conf, cache, out) -> int:
    flavor = Flavor(_need(args.flavor, "--flavor"))
    ws = parse_range(_need(args.max_weight, "--max-weight"))
    if len(ws) != 1:
        raise UsageError("--max-weight takes a single value here")
    k = args.k if args.k is not None else 2
    lc = rescaling_class(flavor, ws[0], k)
    items = lc.sorted_items()
    rows = [{"coefficient": c, "generator": g.encode()} for g, c in items]
    if args.fmt == "text":
        out.write(str(lc) + "\n")
        return 0
    doc = {"command": "rescaling-class", "flavor": flavor.value, "W": ws[0], "terms": [[g.encode(), c] for g, c in items]}
    _emit(args.fmt, doc, rows, ["coefficient", "generator"], out)
    return 0


HANDLERS = {
    "basis": cmd_basis,
    "cohomology": cmd_cohomology,
    "euler": cmd_euler,
    "verify-d2": cmd_verify_d2,
    "verify-closure": cmd_verify_closure,
    "verify-chain-map": cmd_verify_chain_map,
    "compare": cmd_compare,
    "rescaling-class": cmd_rescaling_class,
}


_RANGE_FLAGS = ("--degrees", "--vertices", "--loops", "--max-weight")


def _attach_negative_ranges(argv: list[str]) -> list[str]:
    """Let ``--degrees -3..0`` through; argparse would read ``-3..0`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_ranges(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        conf = read_config(args.config)
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        cache = Cache.from_env(args.cache_dir or conf.get("cache_dir"))
        return HANDLERS[args.command](args, conf, cache, out)
    except (UsageError, ValueError) as exc:
        print(f"gcx: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
