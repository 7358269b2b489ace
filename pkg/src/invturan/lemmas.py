"""Exhaustive checks of the finite combinatorial claims used in the path proofs.

Each verifier returns a LemmaReport; ``violations`` lists counterexamples
(bitmask plus graph6) and is expected to be empty.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import graph as gc
from . import patterns as pm
from .errors import BadParameter, CapacityExceeded
from .graph import SmallGraph
from .patterns import Explicit, Path


@dataclass
class LemmaReport:
    lemma: str
    universe: int
    violations: list = field(default_factory=list)
    runtime: float = 0.0
    details: dict = field(default_factory=dict)
    expected_universe: int = None

    @property
    def passed(self):
        ok_count = self.expected_universe is None or self.universe == self.expected_universe
        return not self.violations and ok_count

    def to_json(self, timing=False):
        d = {"lemma": self.lemma, "universe": self.universe, "expected_universe": self.expected_universe,
             "violations": self.violations, "passed": self.passed, "details": self.details}
        if timing:
            d["runtime"] = round(self.runtime, 3)
        return d


def _g6(g):
    return gc.graph6_encode(g).decode("ascii")


def _block_edges(n):
    return n * (n - 1) // 2


# ---------------------------------------------------------------------------
# Cross edges between two 4-vertex blocks
# ---------------------------------------------------------------------------

CROSS_PAIRS = [(a, 4 + b) for a in range(4) for b in range(4)]
SPLITS = [s for s in combinations(range(8), 4) if 0 in s]  # 35 unordered 4+4 splits


def _four_edges(rows, vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return sum((rows[v] & m).bit_count() for v in vs) // 2


def _split_profile(rows):
    """For each 4+4 split, the pair of induced edge counts."""
    out = []
    for s in SPLITS:
        rest = tuple(v for v in range(8) if v not in s)
        out.append((_four_edges(rows, s), _four_edges(rows, rest)))
    return out


def _any_k4(rows):
    return any(_four_edges(rows, q) == 6 for q in combinations(range(8), 4))


# a 4-vertex graph contains K4- iff it has >= 5 edges, K4 iff it has 6
CONCLUSIONS = {
    "two-k4": lambda rows: any(a == 6 and b == 6 for a, b in _split_profile(rows)),
    "k4-and-k4minus": lambda rows: any(min(a, b) >= 5 and max(a, b) == 6 for a, b in _split_profile(rows)),
    "k4-or-two-k4minus": lambda rows: _any_k4(rows) or any(a >= 5 and b >= 5 for a, b in _split_profile(rows)),
}

CROSS_EDGE_CASES = {
    "cross-edge-k4-k4minus": ("K4", "K4-", 15, "two-k4"),
    "cross-edge-k4-c4": ("K4", "C4", 13, "k4-and-k4minus"),
    "cross-edge-k4minus-c4": ("K4-", "C4", 11, "k4-or-two-k4minus"),
}


def _block(b):
    if isinstance(b, SmallGraph):
        return b
    return {"K4": lambda: gc.complete(4), "K4-": gc.k4_minus, "C4": lambda: gc.cycle(4)}[b]()


def verify_cross_edge(block_a, block_b, threshold, conclusion=None, lemma=None):
    """All cross-edge sets with >= threshold of the 16 pairs must force ``conclusion``."""
    A, B = _block(block_a), _block(block_b)
    if A.n != 4 or B.n != 4:
        raise BadParameter("cross-edge verifier needs two 4-vertex blocks")
    if conclusion is None:
        for a, b, th, c in CROSS_EDGE_CASES.values():
            if _block(a) == A and _block(b) == B:
                conclusion = c
                break
        else:
            raise BadParameter("no default conclusion for these blocks")
    check = CONCLUSIONS[conclusion]
    t0 = time.perf_counter()
    base = [0] * 8
    for u, v in A.edges():
        base[u] |= 1 << v
        base[v] |= 1 << u
    for u, v in B.edges():
        base[4 + u] |= 1 << (4 + v)
        base[4 + v] |= 1 << (4 + u)
    universe = 0
    violations = []
    for mask in range(1 << 16):
        if mask.bit_count() < threshold:
            continue
        universe += 1
        rows = base[:]
        for i, (u, v) in enumerate(CROSS_PAIRS):
            if mask >> i & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if not check(rows):
            violations.append({"mask": mask, "graph6": _g6(SmallGraph._raw(8, tuple(rows)))})
    expected = sum(comb(16, i) for i in range(threshold, 17))
    name = lemma or f"cross-edge({_g6(A)},{_g6(B)},{threshold})"
    return LemmaReport(name, universe, violations, time.perf_counter() - t0,
                       {"conclusion": conclusion, "threshold": threshold}, expected)


# ---------------------------------------------------------------------------
# Random (2,2,1)-partition expectations
# ---------------------------------------------------------------------------

def partitions_221(ground=range(5)):
    ground = list(ground)
    out = set()
    for single in ground:
        rest = [v for v in ground if v != single]
        for pair in combinations(rest, 2):
            other = tuple(v for v in rest if v not in pair)
            out.add(frozenset([frozenset(pair), frozenset(other), frozenset([single])]))
    return sorted(out, key=lambda p: sorted(sorted(c) for c in p))


# the seven classes used when three degree-three vertices share a neighbourhood A = {0,1,2}
SEVEN_CLASSES = [
    ((0, 1), (2, 3)), ((0, 1), (2, 4)), ((0, 1), (3, 4)),
    ((1, 2), (0, 3)), ((1, 2), (0, 4)),
    ((0, 2), (1, 3)), ((0, 2), (1, 4)),
]

EXPECTED_AVERAGES = (Fraction(1), Fraction(6, 5), Fraction(8, 5), Fraction(2), Fraction(2))


def verify_partition_expectation():
    t0 = time.perf_counter()
    parts = partitions_221()
    violations = []
    if len(parts) != 15:
        violations.append({"claim": "15 partitions", "found": len(parts)})
    averages = []
    universe = 0
    for d in range(1, 6):
        vals = set()
        for nb in combinations(range(5), d):
            nb = set(nb)
            kept = [max(len(c & nb) for c in p) for p in parts]
            universe += 1
            vals.add(Fraction(sum(kept), len(parts)))
        if len(vals) != 1:
            violations.append({"claim": f"average independent of neighbourhood (d={d})", "found": sorted(map(str, vals))})
        avg = min(vals)
        averages.append(avg)
        if avg != EXPECTED_AVERAGES[d - 1]:
            violations.append({"claim": f"average for d={d}", "expected": str(EXPECTED_AVERAGES[d - 1]),
                               "found": str(avg)})
        if 15 % avg.denominator:
            violations.append({"claim": "denominator divides 15", "found": str(avg)})
    # coefficient inequalities used with the averages
    ineqs = {
        "e2/2.5": all(averages[d - 1] >= Fraction(d * 2, 5) for d in range(1, 6)),
        "e2/2 when n5=0": all(averages[d - 1] >= Fraction(d, 2) for d in range(1, 5)),
        "3e2/5 when n3=n4=n5=0": all(averages[d - 1] >= Fraction(3 * d, 5) for d in (1, 2)),
        "4e2/7 with the seven classes": Fraction(1) >= Fraction(4, 7) and 1 + Fraction(1, 7) >= Fraction(8, 7)
        and 2 >= Fraction(12, 7),
    }
    for k, ok in ineqs.items():
        if not ok:
            violations.append({"claim": k})
    covered = set()
    for p, q in SEVEN_CLASSES:
        covered.add(frozenset(p))
        covered.add(frozenset(q))
        if set(p) & set(q) or not set(p) <= {0, 1, 2} and not set(q) <= {0, 1, 2}:
            violations.append({"claim": "class shape", "class": [p, q]})
    all_pairs = {frozenset(e) for e in combinations(range(5), 2)}
    if covered != all_pairs:
        violations.append({"claim": "seven classes cover all pairs",
                           "missing": sorted(sorted(x) for x in all_pairs - covered)})
    universe += len(SEVEN_CLASSES)
    return LemmaReport("partition-expectation", universe, violations, time.perf_counter() - t0,
                       {"partitions": len(parts), "averages": [str(a) for a in averages]})


# ---------------------------------------------------------------------------
# K5 variant claims
# ---------------------------------------------------------------------------

def _add_vertex(h, nbrs):
    n = h.n
    return SmallGraph.from_edges(n + 1, h.edges() + [(v, n) for v in nbrs])


def _contains_any(g, graphs):
    return any(pm.contains(g, Explicit(p)) is not None for p in graphs)


def verify_k5_claims():
    t0 = time.perf_counter()
    V = {name: gc.k5_variant(name) for name in gc.K5_VARIANTS}
    k4, k4m, c4 = gc.complete(4), gc.k4_minus(), gc.cycle(4)
    checks = []

    def claim(name, ok, extra=None):
        checks.append((name, bool(ok), extra))

    counts = {"K5-": 9, "K5--adjacent": 8, "K5--disjoint": 8, "K5-K3": 7, "K5-P3": 7, "K5-P1uP2": 7, "K5-K1,3": 7}
    for name, e in counts.items():
        claim(f"e({name}) = {e}", V[name].num_edges() == e)
    claim("two K5-- forms are non-isomorphic",
          gc.canonical_key(V["K5--adjacent"]) != gc.canonical_key(V["K5--disjoint"]))
    three = ["K5-K3", "K5-P3", "K5-P1uP2", "K5-K1,3"]
    claim("the four K5--- forms are pairwise non-isomorphic", len({gc.canonical_key(V[x]) for x in three}) == 4)
    claim("K5 minus a four-vertex star contains K4", pm.contains(V["K5-K1,3"], Explicit(k4)) is not None)
    for s in range(1, 13):
        claim(f"K_(2,{s}) is P5-free", pm.is_free(gc.biclique(2, s), Path(5)))
    # 8 or 9 edges on 5 vertices: a vertex joined to all five beats the lowest degree
    for h in gc.enumerate_graphs(5, (8, 9)):
        claim(f"min degree of {_g6(h)} below 5", min(h.degrees()) < 5)
    k5mm = [V["K5--adjacent"], V["K5--disjoint"]]
    k5_two_or_fewer_missing = [gc.complete(5), V["K5-"]] + k5mm
    for d in (2, 3, 4):
        for nb in combinations(range(4), d):
            g = _add_vertex(k4, nb)
            claim(f"K4 + vertex on {nb} contains K5--", _contains_any(g, k5mm))
    excluded_k3 = k5_two_or_fewer_missing
    for name in ("K5-K3", "K5-P1uP2"):
        for d in (4, 5):
            for nb in combinations(range(5), d):
                g = _add_vertex(V[name], nb)
                claim(f"{name} + vertex on {nb} contains K5--", _contains_any(g, excluded_k3))
    # excluded at the K5-P3 step: K4, K5--, K5-K3, K5-P1uP2
    excluded_p3 = [k4] + k5mm + [V["K5-K3"], V["K5-P1uP2"]]
    for d in (4, 5):
        for nb in combinations(range(5), d):
            g = _add_vertex(V["K5-P3"], nb)
            claim(f"K5-P3 + vertex on {nb} contains an excluded graph", _contains_any(g, excluded_p3))
    k5_three = [V[x] for x in three]
    for d in (2, 3, 4):
        for nb in combinations(range(4), d):
            g = _add_vertex(k4m, nb)
            claim(f"K4- + vertex on {nb} contains K4 or a K5---", _contains_any(g, k5_three + [k4]))
    for d in (3, 4):
        for nb in combinations(range(4), d):
            g = _add_vertex(c4, nb)
            claim(f"C4 + vertex on {nb} contains K4-", pm.contains(g, Explicit(k4m)) is not None)
    violations = [{"claim": n, **({"extra": x} if x else {})} for n, ok, x in checks if not ok]
    return LemmaReport("k5-claims", len(checks), violations, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Dirac and Erdős–Gallai
# ---------------------------------------------------------------------------

def verify_dirac(t, n_max):
    """Connected graphs with min degree >= t on more than 2t vertices contain P_{2t}."""
    if t < 1:
        raise BadParameter("t must be positive")
    if n_max > 8:
        raise CapacityExceeded("Dirac verifier is capped at 8 vertices")
    t0 = time.perf_counter()
    universe = 0
    violations = []
    per_n = {}
    for n in range(2 * t + 1, n_max + 1):
        c = 0
        for g in gc.enumerate_graphs(n, filter=lambda h: min(h.degrees()) >= t and h.is_connected()):
            c += 1
            lp = pm.longest_path_edges(g)
            if lp < 2 * t:
                violations.append({"graph6": _g6(g), "longest_path": lp})
        per_n[n] = c
        universe += c
    return LemmaReport(f"dirac-t{t}", universe, violations, time.perf_counter() - t0, {"per_n": per_n})


def _is_union_of_cliques(g, t):
    for comp in g.components():
        vs = gc.bits(comp)
        h = g.induced(vs)
        if h.n != t or h.num_edges() != comb(t, 2):
            return False
    return True


def verify_erdos_gallai(n_max, t_set=(2, 3, 4)):
    """ex(K_n, P_t) <= (t-1)n/2, equality iff t | n, extremal graphs are disjoint K_t."""
    if n_max > 9:
        raise CapacityExceeded("Erdős–Gallai verifier is capped at 9 vertices")
    from . import relative as rt

    t0 = time.perf_counter()
    universe = 0
    violations = []
    table = {}
    for t in t_set:
        p = Path(t)
        for n in range(1, n_max + 1):
            universe += 1
            res = rt.ex_exact(gc.complete(n), p)
            bound = Fraction((t - 1) * n, 2)
            eq = res.value == bound
            table[f"{n},{t}"] = res.value
            if res.value > bound or eq != (n % t == 0) or not res.complete:
                violations.append({"n": n, "t": t, "value": res.value, "bound": str(bound)})
            if eq:
                # every maximum P_t-free graph must be a disjoint union of K_t (no isolated vertices)
                extremal = [h for h in gc.enumerate_graphs(n, res.value, prune=lambda h: pm.is_free(h, p))]
                bad = [h for h in extremal if not _is_union_of_cliques(h, t)]
                if bad or not _is_union_of_cliques(res.witness_graph(), t):
                    violations.append({"n": n, "t": t, "claim": "equality graphs are disjoint K_t",
                                       "graph6": [_g6(h) for h in bad]})
    return LemmaReport("erdos-gallai", universe, violations, time.perf_counter() - t0, {"values": table})


# ---------------------------------------------------------------------------
# Pendant-star observation
# ---------------------------------------------------------------------------

def k_prime(x, y, z, k):
    return k - 6 * x - 5 * y - 4 * z + 6


def verify_observation_kprime(x, y, z, k):
    """A block with more than k' neighbours in S yields a k-edge P4-free subgraph."""
    if min(x, y, z) < 0 or k < 6 * x + 5 * y + 4 * z:
        raise BadParameter("need x, y, z >= 0 and k >= 6x + 5y + 4z")
    t0 = time.perf_counter()
    kp = k_prime(x, y, z, k)
    blocks = [gc.complete(4)] * x + [gc.k4_minus()] * y + [gc.cycle(4)] * z
    violations = []
    universe = 0
    chosen_types = [i for i, c in ((0, x), (x, y), (x + y, z)) if c]
    for chosen in chosen_types:
        nb = 4 * len(blocks)
        n = nb + kp + 1
        if n > gc.MAX_VERTICES:
            raise CapacityExceeded(f"construction needs {n} vertices")
        universe += 1
        edges = []
        for i, b in enumerate(blocks):
            if i == chosen:
                continue
            edges += [(4 * i + u, 4 * i + v) for u, v in b.edges()]
        # one pendant edge per S-vertex, centres spread over the chosen block
        edges += [(4 * chosen + j % 4, nb + j) for j in range(kp + 1)]
        h = SmallGraph.from_edges(n, edges)
        if not pm.is_free(h, Path(4)) or h.num_edges() < k:
            violations.append({"chosen_block": chosen, "edges": h.num_edges(), "graph6": _g6(h)})
    return LemmaReport("observation-kprime", universe, violations, time.perf_counter() - t0,
                       {"k_prime": kp, "x": x, "y": y, "z": z, "k": k})


# ---------------------------------------------------------------------------

def lemma_ids():
    return list(CROSS_EDGE_CASES) + ["partition-expectation", "k5-claims", "dirac-t2", "dirac-t3",
                                     "erdos-gallai", "observation-kprime"]


def run_lemma(lemma_id):
    if lemma_id in CROSS_EDGE_CASES:
        a, b, th, c = CROSS_EDGE_CASES[lemma_id]
        return [verify_cross_edge(a, b, th, c, lemma=lemma_id)]
    if lemma_id == "partition-expectation":
        return [verify_partition_expectation()]
    if lemma_id == "k5-claims":
        return [verify_k5_claims()]
    if lemma_id == "dirac-t2":
        return [verify_dirac(2, 7)]
    if lemma_id == "dirac-t3":
        return [verify_dirac(3, 8)]
    if lemma_id == "erdos-gallai":
        return [verify_erdos_gallai(9, (2, 3, 4))]
    if lemma_id == "observation-kprime":
        return [verify_observation_kprime(*p) for p in ((1, 0, 0, 10), (0, 0, 1, 4), (1, 1, 1, 21))]
    if lemma_id == "all":
        out = []
        for i in lemma_ids():
            out.extend(run_lemma(i))
        return out
    raise BadParameter(f"unknown lemma id {lemma_id!r}; choose from {', '.join(lemma_ids())} or all")
