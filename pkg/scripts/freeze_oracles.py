"""Recompute the frozen oracle tables in tests/data (slow; run by hand).

    python3 scripts/freeze_oracles.py [--only ex|inv]
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from invturan import graph as gc  # noqa: E402

EX_PATTERNS = ["P3", "P4", "C4", "K3", "K4", "K2,2"]
EX_N, EX_E = 7, 16
INV_CASES = [(k, p) for k in (1, 2, 3, 4) for p in ("P3", "P4", "C3", "C4")]
INV_N = 5


def _ex_row(g6):
    g = gc.graph6_decode(g6.encode())
    edges = g.edges()
    return g6, {p: oracles.ex_bruteforce(g.n, edges, p) for p in EX_PATTERNS}


def freeze_ex(workers):
    hosts = [gc.graph6_encode(g).decode() for g in gc.enumerate_graphs(EX_N, (0, EX_E))]
    with ProcessPoolExecutor(workers) as ex:
        rows = dict(ex.map(_ex_row, hosts, chunksize=8))
    table = {"n": EX_N, "max_edges": EX_E, "patterns": EX_PATTERNS, "hosts": len(hosts),
             "values": {h: rows[h] for h in hosts}}
    (ROOT / "tests/data/ex_oracle.json").write_text(json.dumps(table, indent=1, sort_keys=True) + "\n")


def _inv_row(case):
    k, p = case
    return f"{k}:{p}", oracles.inv_ex_labeled(k, p, INV_N)


def freeze_inv(workers):
    with ProcessPoolExecutor(workers) as ex:
        rows = dict(ex.map(_inv_row, INV_CASES))
    table = {"n": INV_N, "values": rows}
    (ROOT / "tests/data/inv_oracle.json").write_text(json.dumps(table, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", choices=["ex", "inv"])
    ap.add_argument("--workers", type=int, default=4)
    a = ap.parse_args()
    t0 = time.time()
    if a.only in (None, "inv"):
        freeze_inv(a.workers)
        print(f"inv done {time.time() - t0:.1f}s")
    if a.only in (None, "ex"):
        freeze_ex(a.workers)
        print(f"ex done {time.time() - t0:.1f}s")
