"""Command-line front end: ``invturan <command> ...``.

Exit codes: 0 success, 1 usage error, 2 result not fully established
(budget exhausted, caps too tight, certification or verification failed),
3 inverse Turán number infinite.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from . import constructions as cs
from . import graph as gc
from . import inverse as iv
from . import lemmas
from . import patterns as pm
from . import relative as rt
from .cache import NullCache, ResultCache, make_key
from .errors import (BudgetExhausted, CapacityExceeded, CapsTooTight, CertificationFailed,
                     InfiniteInverse, InvTuranError, ParseError, Unsupported)

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE, EXIT_INFINITE = 0, 1, 2, 3

log = logging.getLogger("invturan")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# host specs
# ---------------------------------------------------------------------------

def parse_host(spec):
    """Constructor literal (K6, K3,3, T9,3, P4, C5, K4-), g6:/s6: bytes, or a graph6 file."""
    s = spec.strip()
    if s.startswith("g6:") or s.startswith("s6:"):
        return [(s, gc.decode(s[3:]))]
    if s in pm.NAMED:
        return [(s, pm.NAMED[s]().graph())]
    m = re.fullmatch(r"K(\d+),(\d+)", s)
    if m:
        return [(s, gc.biclique(int(m.group(1)), int(m.group(2))))]
    m = re.fullmatch(r"T(\d+),(\d+)", s)
    if m:
        return [(s, gc.turan(int(m.group(1)), int(m.group(2))))]
    for pat, ctor in ((r"K(\d+)", gc.complete), (r"P(\d+)", gc.path), (r"C(\d+)", gc.cycle)):
        m = re.fullmatch(pat, s)
        if m:
            return [(s, ctor(int(m.group(1))))]
    p = Path(s)
    if p.is_file():
        lines = p.read_text(encoding="ascii").splitlines()
        out = []
        for i, line in enumerate(lines):
            line = line.strip()
            if line and not line.startswith(">>"):
                out.append((f"{s}:{i + 1}", gc.decode(line)))
        return out
    raise UsageError(f"unrecognised host spec {spec!r}")


def parse_pattern(text):
    try:
        return pm.parse_pattern(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def emit(args, payload, rows=None, header=None, table=None):
    out = sys.stdout
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        for r in rows or []:
            w.writerow(r)
        out.write(buf.getvalue())
    else:
        out.write((table if table is not None else _table(header, rows)) + "\n")


def _table(header, rows):
    rows = [[("" if c is None else str(c)) for c in r] for r in rows or []]
    if not header:
        return "\n".join("  ".join(r) for r in rows)
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _threads(args):
    return max(1, args.threads)


def _cache(args):
    if args.no_cache:
        return NullCache()
    return ResultCache(args.cache)


def _record_rows(records):
    return [[r["kind"], r["quantity"], r["value"] if r["value"] is not None else "~" + str(r.get("approx")),
             r["provenance"], "yes" if r["certified"] else "no", "yes" if r["asymptotic"] else "no",
             r.get("expression", "")] for r in records]


RECORD_HEADER = ["kind", "quantity", "value", "provenance", "certified", "asymptotic", "expression"]


# ---------------------------------------------------------------------------
# ex
# ---------------------------------------------------------------------------

def _ex_bounds(g, f):
    out = []
    if isinstance(f, pm.Path):
        out.append(rt.ex_upper_eg(g, f))
    if rt._is_c4(f):
        out.append(rt.ex_upper_ers(g, f))
    if isinstance(f, pm.Cycle) and f.t % 2 == 0 and f.t >= 4:
        bip = g.bipartition()
        if bip is not None:
            a, b = bip[0].bit_count(), bip[1].bit_count()
            if g.num_edges() == a * b:
                out.append(rt.ex_upper_nv(a, b, f.t // 2))
    return [r.to_json() for r in out]


def _ex_one(label, g, f, args, cache):
    params = {"budget": args.budget, "max_edges": args.max_edges}
    if g.n <= gc.CANON_MAX:
        perm, cg = gc.canonical_labeling(g)
        key = gc.graph6_encode(cg)
    else:
        perm, cg = tuple(range(g.n)), g
        key = b"raw:" + gc.graph6_encode(g)

    def compute():
        res = rt.ex_exact(cg, f, budget=args.budget, max_edges=args.max_edges)
        d = res.to_json()
        d.pop("witness_graph6")
        return d

    d = cache.get_or_compute(make_key(key, f.literal(), "ex", params), compute)
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    witness = sorted(tuple(sorted((inv[u], inv[v]))) for u, v in d["witness_edges"])
    wg = gc.SmallGraph.from_edges(g.n, witness)
    out = {
        "host": label,
        "host_graph6": gc.graph6_encode(g).decode("ascii"),
        "pattern": f.literal(),
        "value": d["value"],
        "witness_graph6": gc.graph6_encode(wg).decode("ascii"),
        "witness_edges": [list(e) for e in witness],
        "attestation": d["attestation"],
        "provenance": d["provenance"],
        "nodes_explored": d["nodes_explored"],
        "bounds": _ex_bounds(g, f),
    }
    if "upper" in d:
        out["upper"] = d["upper"]
    return out


def cmd_ex(args):
    hosts = parse_host(args.host)
    f = parse_pattern(args.pattern)
    cache = _cache(args)
    with ThreadPoolExecutor(_threads(args)) as ex:
        results = list(ex.map(lambda hg: _ex_one(hg[0], hg[1], f, args, cache), hosts))
    payload = results[0] if len(results) == 1 and not Path(args.host).is_file() else results
    rows = [[r["host"], r["pattern"], r["value"], r["attestation"] or "incomplete", r["witness_graph6"]]
            for r in results]
    emit(args, payload, rows, ["host", "pattern", "value", "attestation", "witness"])
    return EXIT_OK if all(r["attestation"] for r in results) else EXIT_INCOMPLETE


# ---------------------------------------------------------------------------
# invex / construct / bounds
# ---------------------------------------------------------------------------

def cmd_invex(args):
    f = parse_pattern(args.pattern)
    code = EXIT_OK
    try:
        res = iv.inv_ex_exact(args.k, f, args.max_vertices, args.max_edges, budget=args.budget,
                              threads=_threads(args))
    except CapsTooTight as exc:
        log.warning("%s", exc)
        res, code = exc.result, EXIT_INCOMPLETE
    payload = res.to_json()
    rows = [[res.k, f.literal(), res.value, "absolute" if res.absolute else res.attestation.get("label"),
             " ".join(res.hosts)]]
    emit(args, payload, rows, ["k", "pattern", "value", "attestation", "hosts"])
    return code


def cmd_construct(args):
    f = parse_pattern(args.pattern)
    fam, rec = cs.family_for(args.k, f)
    payload = {"k": args.k, "pattern": f.literal(), "family": fam.to_json(), "lower": rec.to_json()}
    code = EXIT_OK
    try:
        cert, evidence = iv.certify_lower(args.k, f, fam, budget=args.budget)
        payload["certified"] = cert.to_json()
        payload["evidence"] = evidence
    except (CertificationFailed, CapacityExceeded) as exc:
        payload["certified"] = None
        payload["certification_error"] = str(exc)
        code = EXIT_INCOMPLETE
    rows = [[args.k, f.literal(), fam.family, "x".join(map(str, fam.parts)) if fam.family != "complete"
             else f"K{fam.params['n']}", fam.closed_form_edges(),
             payload["certified"]["provenance"] if payload["certified"] else "uncertified"]]
    emit(args, payload, rows, ["k", "pattern", "family", "parts", "edges", "certificate"])
    return code


def cmd_bounds(args):
    f = parse_pattern(args.pattern)
    recs = [r.to_json() for r in iv.bound_report(args.k, f)]
    emit(args, {"k": args.k, "pattern": f.literal(), "bounds": recs}, _record_rows(recs), RECORD_HEADER)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / enumerate / heuristic
# ---------------------------------------------------------------------------

def cmd_verify(args):
    ids = lemmas.lemma_ids() if args.lemma == "all" else [args.lemma]
    for i in ids:
        if i not in lemmas.lemma_ids():
            raise UsageError(f"unknown lemma id {i!r}; choose from {', '.join(lemmas.lemma_ids())} or all")
    with ThreadPoolExecutor(_threads(args)) as ex:
        reports = [r for batch in ex.map(lemmas.run_lemma, ids) for r in batch]
    payload = [r.to_json(timing=args.timing) for r in reports]
    rows = [["PASS" if r.passed else "FAIL", r.lemma, r.universe, len(r.violations)] for r in reports]
    table = "\n".join(f"{'PASS' if r.passed else 'FAIL'} {r.lemma} universe={r.universe} "
                      f"violations={len(r.violations)}" for r in reports)
    emit(args, payload, rows, ["status", "lemma", "universe", "violations"], table=table)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_INCOMPLETE


def _filter(spec):
    if not spec:
        return None
    preds = []
    for part in spec.split("+"):
        part = part.strip()
        if part == "connected":
            preds.append(lambda g: g.is_connected())
        elif part == "bipartite":
            preds.append(lambda g: g.bipartition() is not None)
        elif part.startswith("free:"):
            p = parse_pattern(part[5:])
            preds.append(lambda g, p=p: pm.is_free(g, p))
        elif part.startswith("mindeg:"):
            d = int(part[7:])
            preds.append(lambda g, d=d: g.n == 0 or min(g.degrees()) >= d)
        else:
            raise UsageError(f"unknown filter {part!r} (connected, bipartite, free:PATTERN, mindeg:D)")
    return lambda g: all(p(g) for p in preds)


def cmd_enumerate(args):
    er = None
    if args.edges:
        lo, _, hi = args.edges.partition(":")
        er = (int(lo), int(hi or lo))
    shard = None
    if args.shard:
        i, _, k = args.shard.partition("/")
        shard = (int(i), int(k))
    graphs = list(gc.enumerate_graphs(args.n, er, _filter(args.filter), cap=args.max_vertices, shard=shard))
    lines = [gc.graph6_encode(g).decode("ascii") for g in graphs]
    if args.out:
        with open(args.out, "wb") as fh:
            gc.write_graph6_lines(graphs, fh)
    if args.json:
        emit(args, {"n": args.n, "count": len(lines), "graphs": lines})
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
        if args.count:
            sys.stdout.write(f"# {len(lines)} graphs\n")
    return EXIT_OK


def cmd_heuristic(args):
    (label, g), = parse_host(args.host)[:1]
    if args.kind == "deletion":
        f = parse_pattern(args.pattern)
        if args.k is None:
            raise UsageError("deletion heuristic needs --k")
        edges = rt.heuristic_deletion(g, f, args.k, seed=args.seed, trials=args.trials, threads=_threads(args))
        payload = {"host": label, "pattern": f.literal(), "kind": "deletion", "seed": args.seed,
                   "trials": args.trials, "edges": len(edges), "edge_set": [list(e) for e in edges],
                   "free": pm.is_free(gc.SmallGraph.from_edges(g.n, edges), f), "provenance": "heuristic:deletion"}
    else:
        (_, tmpl), = parse_host(args.pattern)[:1]
        res = rt.heuristic_template(g, tmpl, trials=args.trials, seed=args.seed, threads=_threads(args))
        payload = {"host": label, "template": args.pattern, "kind": "template", "seed": args.seed,
                   "trials": args.trials, "edges": len(res.edges), "edge_set": [list(e) for e in res.edges],
                   "mean": round(res.mean, 9), "expected": str(res.expected), "provenance": "heuristic:template"}
    emit(args, payload, [[payload["kind"], label, payload["edges"], payload.get("mean", "")]],
         ["heuristic", "host", "best_edges", "mean"])
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print canonical JSON")
    fmt.add_argument("--csv", action="store_true", help="print a CSV projection")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    common.add_argument("--threads", type=int, default=int(os.environ.get("INVTURAN_THREADS", "1")),
                        help="worker threads (default $INVTURAN_THREADS or 1); never changes output")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    common.add_argument("--cache", default=None, help="cache file (default $INVTURAN_CACHE or ~/.cache)")
    common.add_argument("--budget", type=int, default=rt.DEFAULT_BUDGET, help="node budget for ex search")
    common.add_argument("--timing", action="store_true", help="include runtimes in JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="invturan", description="Relative and inverse Turán numbers of small graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ex", parents=[common], help="exact ex(G,F)")
    s.add_argument("host", help="K6, K3,3, T9,3, P4, C5, g6:<bytes>, s6:<bytes> or a graph6 file")
    s.add_argument("pattern", help="P4, C6, K5, K3,3, K4-, g6:<bytes>, any(P4,C4)")
    s.add_argument("--max-edges", type=int, default=None, help="host edge cap for the search")
    s.set_defaults(func=cmd_ex)

    s = sub.add_parser("invex", parents=[common], help="exact ex^-1(k,F) within caps")
    s.add_argument("k", type=int)
    s.add_argument("pattern")
    s.add_argument("--max-vertices", type=int, default=None)
    s.add_argument("--max-edges", type=int, default=None)
    s.set_defaults(func=cmd_invex)

    s = sub.add_parser("construct", parents=[common], help="construction host and its certificate")
    s.add_argument("k", type=int)
    s.add_argument("pattern")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", parents=[common], help="run lemma verifiers")
    s.add_argument("lemma", help="lemma id or 'all'")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="isomorph-free graphs as graph6 lines")
    s.add_argument("n", type=int)
    s.add_argument("--edges", help="LO or LO:HI")
    s.add_argument("--filter", help="connected, bipartite, free:PATTERN, mindeg:D joined by +")
    s.add_argument("--shard", help="I/K keeps every K-th class starting at I")
    s.add_argument("--max-vertices", type=int, default=gc.ENUM_CAP)
    s.add_argument("--out", help="also write graph6 lines to this file")
    s.add_argument("--count", action="store_true", help="append a count line")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("bounds", parents=[common], help="bound ledger for ex^-1(k,F)")
    s.add_argument("k", type=int)
    s.add_argument("pattern")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("heuristic", parents=[common], help="randomized lower bounds for ex(G,F)")
    s.add_argument("kind", choices=["deletion", "template"])
    s.add_argument("host")
    s.add_argument("pattern", help="Ks,s for deletion; template host spec for template")
    s.add_argument("--k", type=int, default=None, help="target k for the deletion probability")
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_heuristic)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except InfiniteInverse as exc:
        print(f"infinite: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except (UsageError, ParseError, Unsupported, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvTuranError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    log.info("done in %.2fs", time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
