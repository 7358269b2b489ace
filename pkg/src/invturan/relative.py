"""Exact and heuristic computation of ex(G, F).

The exact solver is a branch and bound over edge deletions: find one copy of F
in the current subgraph and branch on deleting each of its edges.  Nodes are
pruned against the incumbent with formula upper bounds evaluated per connected
component, and with an edge-disjoint packing of copies (each copy forces one
deletion).  Visited subgraphs are deduplicated up to isomorphism when the host
is small enough for exact canonical labeling.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt
from typing import Optional

import numpy as np

from . import graph as gc
from . import patterns as pm
from .arith import iroot_ceil, max_degree_sum
from .errors import BadParameter, BudgetExhausted, CapacityExceeded
from .graph import SmallGraph, bits
from .patterns import Biclique, Clique, Cycle, Explicit, Family, Path
from .records import BoundRecord

DEFAULT_BUDGET = 10 ** 7
DEFAULT_EDGE_CAP = 40
PATH_EDGE_CAP = 100
COMPLETE_HOST_ENUM_MAX = 9


@dataclass
class ExResult:
    value: int
    witness: tuple
    attestation: Optional[str]
    nodes_explored: int
    host: SmallGraph = field(repr=False, default=None)
    pattern: object = field(repr=False, default=None)
    upper: Optional[int] = None
    decided_by: str = ""

    @property
    def complete(self):
        return self.attestation is not None

    def raise_if_incomplete(self):
        if not self.complete:
            raise BudgetExhausted(self)
        return self

    def witness_graph(self):
        return SmallGraph.from_edges(self.host.n, self.witness)

    def to_json(self):
        d = {
            "value": self.value,
            "provenance": "exact:" + self.attestation if self.attestation else "incumbent:budget-exhausted",
            "attestation": self.attestation,
            "witness_graph6": gc.graph6_encode(self.witness_graph()).decode("ascii"),
            "witness_edges": [list(e) for e in self.witness],
            "nodes_explored": self.nodes_explored,
        }
        if self.upper is not None and not self.complete:
            d["upper"] = self.upper
        return d


# ---------------------------------------------------------------------------
# Formula upper bounds
# ---------------------------------------------------------------------------

def _order(g):
    return g.n if isinstance(g, SmallGraph) else int(g)


def ex_upper_eg(g, p):
    """Erdős–Gallai: ex(G, P_t) <= (t-1) v(G) / 2 for any host on v(G) vertices."""
    if not isinstance(p, Path):
        raise BadParameter("Erdős–Gallai bound applies to paths only")
    v = _order(g)
    return BoundRecord("upper", Fraction((p.t - 1) * v, 2), "formula:erdos-gallai",
                       certified=True, quantity=f"ex(G,{p.literal()})",
                       expression="(t-1)n/2")


def ers_value(n):
    # floor(n^{3/2}/2 + n/2) == (isqrt(n^3) + n) // 2 for every n >= 0
    return (isqrt(n ** 3) + n) // 2


def ex_upper_ers(g, p=None):
    """Erdős–Rényi–Sós: ex(n, C_4) <= n^{3/2}/2 + n/2, floored and capped at e(G)."""
    if p is not None and not _is_c4(p):
        raise BadParameter("Erdős–Rényi–Sós bound applies to C4 only")
    n = _order(g)
    val = ers_value(n)
    if isinstance(g, SmallGraph):
        val = min(val, g.num_edges())
    return BoundRecord("upper", Fraction(val), "formula:erdos-renyi-sos", certified=True,
                       quantity="ex(G,C4)", expression="floor(n^{3/2}/2 + n/2)")


def nv_value(m, n, t):
    """Naor–Verstraëte bound for C_{2t} in K_{n,m}, rounded up to an integer."""
    if t < 2:
        raise BadParameter("C_{2t} bound needs t >= 2")
    c = 2 * t - 3
    if t % 2:
        # c * (mn)^{(t+1)/(2t)} = (c^{2t} (mn)^{t+1})^{1/(2t)}
        inner = c ** (2 * t) * (m * n) ** (t + 1)
    else:
        inner = c ** (2 * t) * m ** (t + 2) * n ** t
    return iroot_ceil(inner, 2 * t) + c * (m + n)


def ex_upper_nv(m, n, t):
    return BoundRecord("upper", Fraction(nv_value(m, n, t)), "formula:naor-verstraete",
                       certified=True, quantity=f"ex(K_{{{n},{m}}},C{2 * t})",
                       expression="(2t-3)((mn)^{(t+1)/2t}+m+n)" if t % 2
                       else "(2t-3)(m^{(t+2)/2t} n^{1/2}+m+n)")


def turan_path_upper(n, r, t):
    """Upper bound on ex(T(n,r), P_{2t}) from degeneracy peeling plus Dirac.

    Peeled vertices carry at most t-1 edges each; surviving components have at
    most 2t vertices, and a 2t-vertex one has at most e(T(2t, r)) edges.
    """
    if t < 2 or r < 1:
        raise BadParameter("need t >= 2 and r >= 1")
    excess = max(0, gc.turan_edges(2 * t, r) - 2 * t * (t - 1))
    return (t - 1) * n + (n // (2 * t)) * excess


def _is_c4(p):
    return (isinstance(p, Cycle) and p.t == 4) or (isinstance(p, Biclique) and p.s == 2 and p.t == 2)


# ---------------------------------------------------------------------------
# Search context
# ---------------------------------------------------------------------------

def _max_induced_edges(rows, n, k, limit=30000):
    """Max edges induced by k vertices, or None if too many subsets to scan."""
    if k > n:
        return None
    if comb(n, k) > limit:
        return None
    best = 0
    for sub in combinations(range(n), k):
        m = 0
        for v in sub:
            m |= 1 << v
        e = sum((rows[v] & m).bit_count() for v in sub) // 2
        if e > best:
            best = e
    return best


class _Context:
    def __init__(self, host, pattern):
        self.host = host
        self.pattern = pattern
        self.members = pattern.members()
        self.member_graphs = [m.graph() for m in self.members]
        self.orders = [pm.matching_order(pg) for pg in self.member_graphs]
        self.dirac_excess = {}
        for m in self.members:
            if isinstance(m, Path) and m.t % 2 == 0 and m.t >= 4:
                s = m.t // 2
                m2s = _max_induced_edges(host.rows, host.n, 2 * s)
                if m2s is None:
                    m2s = s * (2 * s - 1)
                self.dirac_excess[m.t] = max(0, m2s - 2 * s * (s - 1))
        self.pattern_bipartite = [pg.bipartition() is not None for pg in self.member_graphs]
        self.pattern_connected = [pg.drop_isolated().is_connected() for pg in self.member_graphs]
        self.pattern_order = [pg.drop_isolated().n for pg in self.member_graphs]

    # -- copies -------------------------------------------------------------
    def find_copy(self, rows, n):
        for pg, order in zip(self.member_graphs, self.orders):
            mp = pm.find_map(rows, n, pg, order)
            if mp is not None:
                return [tuple(sorted((mp[u], mp[v]))) for u, v in pg.edges()]
        return None

    def packing(self, rows, n, bound):
        """Size of a greedy edge-disjoint packing of copies (stops once > bound)."""
        rows = list(rows)
        count = 0
        while count <= bound:
            c = self.find_copy(rows, n)
            if c is None:
                break
            count += 1
            for u, v in c:
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)
        return count

    # -- component bounds ---------------------------------------------------
    def component_bound(self, rows, comp, e_c):
        best = e_c
        for idx, m in enumerate(self.members):
            b = self.member_bound(idx, m, rows, comp, e_c)
            if b < best:
                best = b
        return best

    def member_bound(self, idx, m, rows, comp, e_c):
        vs = bits(comp)
        v = len(vs)
        if self.pattern_connected[idx] and self.pattern_order[idx] > v:
            return e_c
        bip = None
        if not self.pattern_bipartite[idx]:
            bip = _component_bipartition(rows, vs)
            if bip is not None:
                return e_c
        if isinstance(m, Path):
            t = m.t
            if t == 1:
                return 0
            num = (t - 1) * v
            b = num // 2 if v % t == 0 else (num + 1) // 2 - 1
            if t % 2 == 0 and t >= 4:
                s = t // 2
                b = min(b, (s - 1) * v + (v // t) * self.dirac_excess[t])
            return min(b, e_c)
        if isinstance(m, Clique):
            if m.r <= 1:
                return 0 if v else e_c
            if m.r == 2:
                return 0
            return min(e_c, gc.turan_edges(v, m.r - 1))
        if isinstance(m, Biclique) or _is_c4(m):
            s, t = (m.s, m.t) if isinstance(m, Biclique) else (2, 2)
            b = _biclique_bound(rows, vs, comp, s, t)
            if s == 2 and t == 2:
                b = min(b, ers_value(v))
            return min(b, e_c)
        return e_c


def _component_bipartition(rows, vs):
    color = {}
    a = b = 0
    for s in vs:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in bits(rows[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    for x, c in color.items():
        if c == 0:
            a |= 1 << x
        else:
            b |= 1 << x
    return a, b


def _biclique_bound(rows, vs, comp, s, t):
    """Star counting: an s-set has at most t-1 common neighbours in a K_{s,t}-free graph."""
    if s == 1:
        return sum(min(rows[v].bit_count(), t - 1) for v in vs) // 2
    degs = [rows[v].bit_count() for v in vs]
    v = len(vs)
    best = sum(degs) // 2
    for a, b in ((s, t), (t, s)):
        cap = (b - 1) * comb(v, a)
        best = min(best, max_degree_sum(degs, a, cap) // 2)
    bip = _component_bipartition(rows, vs)
    if bip is not None:
        for side, other in (bip, bip[::-1]):
            centers = bits(side)
            cdeg = [rows[x].bit_count() for x in centers]
            osize = other.bit_count()
            for a, b in ((s, t), (t, s)):
                cap = (b - 1) * comb(osize, a)
                best = min(best, max_degree_sum(cdeg, a, cap))
    return best


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

class _Stop(Exception):
    pass


def _greedy_free(host, ctx, orders):
    """Best greedy edge-addition F-free subgraph over the given edge orders."""
    n = host.n
    best = None
    for order in orders:
        rows = [0] * n
        kept = []
        for u, v in order:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            if any(pm.decide(rows, n, m) for m in ctx.members):
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)
            else:
                kept.append((u, v))
        cand = tuple(sorted(kept))
        if best is None or len(cand) > len(best) or (len(cand) == len(best) and cand < best):
            best = cand
    return best


def _initial_incumbent(host, ctx, seed=0, trials=12):
    edges = host.edges()
    rng = random.Random(seed)
    orders = [edges, edges[::-1]]
    deg = host.degrees()
    orders.append(sorted(edges, key=lambda e: (deg[e[0]] + deg[e[1]], e)))
    for _ in range(trials):
        o = edges[:]
        rng.shuffle(o)
        orders.append(o)
    return _greedy_free(host, ctx, orders)


def _root_bound(ctx, host):
    rows = host.rows
    total = 0
    for comp in host.components():
        vs = bits(comp)
        e_c = sum(rows[v].bit_count() for v in vs) // 2
        if e_c:
            total += ctx.component_bound(rows, comp, e_c)
    return total


def _complete_host(g):
    n = g.n
    return g.num_edges() == n * (n - 1) // 2


def _ex_complete_enum(g, f, target=None):
    """ex(K_n, F) by isomorph-free generation of F-free graphs on n vertices."""
    free = lambda h: pm.is_free(h, f)
    count = 0
    best = None
    for h in gc.enumerate_graphs(g.n, prune=free):
        count += 1
        if best is None or h.num_edges() > best.num_edges():
            best = h
    return best.num_edges(), tuple(best.edges()), count


def ex_exact(g, f, budget=DEFAULT_BUDGET, *, max_edges=None, memo=None, seed=0):
    """Exact ex(g, f) with witness.  On budget exhaustion the incumbent is returned
    with ``attestation=None`` (see ``ExResult.raise_if_incomplete``)."""
    return _solve(g, f, budget, max_edges=max_edges, memo=memo, seed=seed, target=None)


def ex_at_least(g, f, k, budget=DEFAULT_BUDGET, *, max_edges=None, memo=None):
    """Decide ex(g, f) >= k.  Returns (answer, ExResult); answer None if undecided."""
    res = _solve(g, f, budget, max_edges=max_edges, memo=memo, seed=0, target=k)
    if res.value >= k:
        return True, res
    if res.upper is not None and res.upper < k:
        return False, res
    return None, res


def _solve(g, f, budget, *, max_edges, memo, seed, target):
    m = g.num_edges()
    members = f.members()
    if max_edges is None:
        max_edges = PATH_EDGE_CAP if all(isinstance(x, Path) for x in members) else DEFAULT_EDGE_CAP
    if m == 0:
        return ExResult(0, (), "exhaustive-search", 1, g, f, 0)
    if _complete_host(g) and 2 <= g.n <= COMPLETE_HOST_ENUM_MAX:
        val, wit, count = _ex_complete_enum(g, f)
        return ExResult(val, wit, "exhaustive-search", count, g, f, val)
    ctx = _Context(g, f)
    incumbent = _initial_incumbent(g, ctx, seed)
    root_ub = min(_root_bound(ctx, g), m)
    if len(incumbent) >= root_ub:
        return ExResult(len(incumbent), incumbent, "bound-match:" + _bound_name(f), 1, g, f, root_ub)
    if target is not None and root_ub < target:
        # decided (ex < target) but the value itself is not pinned down
        return ExResult(len(incumbent), incumbent, None, 1, g, f, root_ub, "bound:" + _bound_name(f))
    # the cap guards the search itself; bound matches above are cheap at any size
    if m > max_edges:
        raise CapacityExceeded(f"host has {m} edges; cap is {max_edges}")
    n = g.n
    if memo is None:
        memo = n <= gc.CANON_MAX and m >= 20
    state = {"best": incumbent, "nodes": 0}
    floor_val = len(incumbent)
    if target is not None:
        floor_val = max(floor_val, target - 1)
    state["floor"] = floor_val
    visited = set()
    rows = list(g.rows)

    def bound(rows, e_cur, best):
        total = 0
        for comp in _components(rows, n):
            vs = bits(comp)
            e_c = sum(rows[v].bit_count() for v in vs) // 2
            if e_c:
                total += ctx.component_bound(rows, comp, e_c)
        if total <= best:
            return total
        pack = ctx.packing(rows, n, e_cur - best)
        return min(total, e_cur - pack)

    def rec(e_cur, ub_parent):
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _Stop
        if memo:
            key = gc.canonical_key(SmallGraph._raw(n, rows))
        else:
            key = tuple(rows)
        if key in visited:
            return
        visited.add(key)
        if len(visited) > 3_000_000:
            visited.clear()
        best = state["floor"]
        if e_cur <= best:
            return
        copy = ctx.find_copy(rows, n)
        if copy is None:
            cand = tuple(sorted(_edges_of(rows, n)))
            cur_best = state["best"]
            if len(cand) > len(cur_best) or (len(cand) == len(cur_best) and cand < cur_best):
                state["best"] = cand
            state["floor"] = max(state["floor"], len(cand))
            if target is not None and len(cand) >= target:
                raise _Stop
            return
        ub = bound(rows, e_cur, best)
        if ub <= best:
            return
        deg = [r.bit_count() for r in rows]
        for u, v in sorted(copy, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e)):
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            try:
                rec(e_cur - 1, ub)
            finally:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            if state["floor"] >= ub:
                return

    try:
        rec(m, root_ub)
    except _Stop:
        return ExResult(len(state["best"]), state["best"], None, state["nodes"], g, f, root_ub)
    best = state["best"]
    if target is not None and len(best) < target - 1:
        # exhaustive against the virtual incumbent: only ex < target is proven
        return ExResult(len(best), best, None, state["nodes"], g, f, target - 1, "exhaustive-search")
    return ExResult(len(best), best, "exhaustive-search", state["nodes"], g, f, len(best))


def _bound_name(f):
    names = set()
    for m in f.members():
        if isinstance(m, Path):
            names.add("erdos-gallai" + ("+dirac" if m.t % 2 == 0 and m.t >= 4 else ""))
        elif _is_c4(m):
            names.add("cherry-count")
        elif isinstance(m, Biclique):
            names.add("star-count")
        elif isinstance(m, Clique):
            names.add("turan")
        else:
            names.add("component")
    return "+".join(sorted(names))


def _components(rows, n):
    seen = 0
    out = []
    for v in range(n):
        if seen >> v & 1 or not rows[v]:
            continue
        comp = frontier = 1 << v
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = rows[low.bit_length() - 1] & ~comp
            comp |= nb
            frontier |= nb
        seen |= comp
        out.append(comp)
    return out


def _edges_of(rows, n):
    out = []
    for i in range(n):
        m = rows[i] >> (i + 1)
        j = i + 1
        while m:
            if m & 1:
                out.append((i, j))
            m >>= 1
            j += 1
    return out


# ---------------------------------------------------------------------------
# Heuristics
# ---------------------------------------------------------------------------

def deletion_probability(s, k):
    """Edge-keeping probability k^{-1/s} / 2."""
    return k ** (-1.0 / s) / 2


def _deletion_trial(g, f, p, seed, trial):
    rng = random.Random(f"{seed}:{trial}")
    kept = [e for e in g.edges() if rng.random() < p]
    rows = [0] * g.n
    for u, v in kept:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    pg = f.graph()
    while True:
        mp = pm.find_map(rows, g.n, pg)
        if mp is None:
            break
        # drop the largest edge of the lexicographically least copy
        u, v = max(tuple(sorted((mp[a], mp[b]))) for a, b in pg.edges())
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return tuple(_edges_of(rows, g.n))


def heuristic_deletion(g, f, k, seed=0, trials=1, threads=1):
    """Random edge keeping with p = k^{-1/s}/2, then one deletion per surviving copy.

    Returns the largest F-free edge set over ``trials`` (ties: lexicographically least).
    """
    if not isinstance(f, Biclique) or f.s != f.t or f.s < 2:
        raise BadParameter("deletion heuristic expects a balanced biclique K_{s,s} with s >= 2")
    if k < 1:
        raise BadParameter("k must be positive")
    p = deletion_probability(f.s, k)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(lambda i: _deletion_trial(g, f, p, seed, i), range(trials)))
    else:
        results = [_deletion_trial(g, f, p, seed, i) for i in range(trials)]
    return min(results, key=lambda r: (-len(r), r)) if results else ()


@dataclass
class TemplateResult:
    edges: tuple
    mean: float
    trials: int
    expected: Fraction


TEMPLATE_CHUNK = 10_000


def template_expectation(g, template):
    v = g.n
    return Fraction(2 * g.num_edges() * template.num_edges(), v * (v - 1))


def heuristic_template(g, template, trials=1000, seed=0, threads=1):
    """Random-bijection extraction: keep host edges whose image is a template edge."""
    if template.n != g.n:
        raise BadParameter(f"template has {template.n} vertices, host has {g.n}")
    if trials < 1:
        raise BadParameter("need at least one trial")
    n = g.n
    edges = g.edges()
    if not edges or n < 2:
        return TemplateResult((), 0.0, trials, Fraction(0))
    U = np.array([e[0] for e in edges])
    V = np.array([e[1] for e in edges])
    T = np.zeros((n, n), dtype=bool)
    for a, b in template.edges():
        T[a, b] = T[b, a] = True
    nchunks = -(-trials // TEMPLATE_CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(nchunks)

    def run(ci):
        size = min(TEMPLATE_CHUNK, trials - ci * TEMPLATE_CHUNK)
        rng = np.random.default_rng(seeds[ci])
        perms = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
        hit = T[perms[:, U], perms[:, V]]
        counts = hit.sum(axis=1)
        j = int(np.argmax(counts))
        return int(counts.sum()), int(counts[j]), hit[j]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, range(nchunks)))
    else:
        parts = [run(i) for i in range(nchunks)]
    total = sum(p[0] for p in parts)
    best = max(range(nchunks), key=lambda i: (parts[i][1], -i))
    mask = parts[best][2]
    kept = tuple(e for e, keep in zip(edges, mask) if keep)
    return TemplateResult(kept, total / trials, trials, template_expectation(g, template))
