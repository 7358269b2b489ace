"""Forbidden patterns and subgraph containment.

Paths and cycles are indexed by their number of EDGES: ``Path(4)`` has five
vertices.  Containment is ordinary (not induced) subgraph containment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import graph as gc
from .errors import BadParameter, CapacityExceeded, ParseError
from .graph import SmallGraph, bits


class Pattern:
    """Base class; concrete patterns expose ``graph()`` and ``literal()``."""

    def members(self):
        return (self,)

    def num_vertices(self):
        return self.graph().n

    def num_edges(self):
        return self.graph().num_edges()

    def __str__(self):
        return self.literal()


@dataclass(frozen=True)
class Path(Pattern):
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise BadParameter("Path needs t >= 1 edges")

    def graph(self):
        return gc.path(self.t)

    def literal(self):
        return f"P{self.t}"


@dataclass(frozen=True)
class Cycle(Pattern):
    t: int

    def __post_init__(self):
        if self.t < 3:
            raise BadParameter("Cycle needs t >= 3 edges")

    def graph(self):
        return gc.cycle(self.t)

    def literal(self):
        return f"C{self.t}"


@dataclass(frozen=True)
class Clique(Pattern):
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise BadParameter("Clique needs r >= 1")

    def graph(self):
        return gc.complete(self.r)

    def literal(self):
        return f"K{self.r}"


@dataclass(frozen=True)
class Biclique(Pattern):
    s: int
    t: int

    def __post_init__(self):
        if not 1 <= self.s <= self.t:
            raise BadParameter("Biclique needs 1 <= s <= t")

    def graph(self):
        return gc.biclique(self.s, self.t)

    def literal(self):
        return f"K{self.s},{self.t}"


@dataclass(frozen=True)
class Explicit(Pattern):
    g: SmallGraph
    name: Optional[str] = None

    def graph(self):
        return self.g

    def literal(self):
        return self.name or "g6:" + gc.graph6_encode(self.g).decode("ascii")


@dataclass(frozen=True)
class Family(Pattern):
    items: tuple

    def __post_init__(self):
        if not self.items:
            raise BadParameter("Family must be nonempty")

    def members(self):
        out = []
        for p in self.items:
            out.extend(p.members())
        return tuple(out)

    def graph(self):
        raise BadParameter("a Family has no single graph")

    def num_vertices(self):
        return max(p.num_vertices() for p in self.members())

    def num_edges(self):
        return max(p.num_edges() for p in self.members())

    def literal(self):
        return "any(" + ",".join(p.literal() for p in self.items) + ")"


NAMED = {
    "K4-": lambda: Explicit(gc.k4_minus(), "K4-"),
    **{name: (lambda name=name: Explicit(gc.k5_variant(name), name)) for name in gc.K5_VARIANTS},
}


def parse_pattern(text):
    """Parse a pattern literal: P4, C6, K5, K3,3, K4-, g6:<bytes>, any(P4,C4)."""
    s = text.strip()
    if s.startswith("any(") and s.endswith(")"):
        inner = s[4:-1]
        parts, depth, cur = [], 0, ""
        for ch in inner:
            if ch == "," and depth == 0 and not re.fullmatch(r"K\d+", cur.strip()):
                parts.append(cur)
                cur = ""
                continue
            depth += ch == "("
            depth -= ch == ")"
            cur += ch
        parts.append(cur)
        return Family(tuple(parse_pattern(p) for p in parts if p.strip()))
    if s in NAMED:
        return NAMED[s]()
    if s.startswith("g6:"):
        return Explicit(gc.decode(s[3:]))
    m = re.fullmatch(r"P(\d+)", s)
    if m:
        return Path(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", s)
    if m:
        return Cycle(int(m.group(1)))
    m = re.fullmatch(r"K(\d+),(\d+)", s)
    if m:
        a, b = sorted((int(m.group(1)), int(m.group(2))))
        return Biclique(a, b)
    m = re.fullmatch(r"K(\d+)", s)
    if m:
        return Clique(int(m.group(1)))
    raise ParseError(f"unrecognised pattern literal {text!r}")


def is_star(p):
    """K_{1,m} for some m >= 1 (a single edge counts)."""
    g = p.graph().drop_isolated()
    if g.n < 2 or not g.is_connected():
        return False
    return g.num_edges() == g.n - 1 and max(g.degrees()) == g.n - 1


def is_matching(p):
    g = p.graph()
    return g.num_edges() > 0 and max(g.degrees()) <= 1


def has_non_star_component(p):
    """True when some component of the pattern is neither a star nor a single vertex."""
    g = p.graph()
    for comp in g.components():
        vs = bits(comp)
        if len(vs) <= 2:
            continue
        h = g.induced(vs)
        if not (h.num_edges() == h.n - 1 and max(h.degrees()) == h.n - 1):
            return True
    return False


# ---------------------------------------------------------------------------
# Generic backtracking matcher
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchWitness:
    pattern: Pattern
    mapping: tuple  # mapping[i] = host vertex for pattern vertex i

    def host_edges(self):
        g = self.pattern.graph()
        return sorted(tuple(sorted((self.mapping[u], self.mapping[v]))) for u, v in g.edges())


def matching_order(p):
    """Order pattern vertices so each has many already-placed neighbours."""
    k = p.n
    order = []
    placed = 0
    remaining = set(range(k))
    while remaining:
        v = max(remaining, key=lambda u: ((p.rows[u] & placed).bit_count(), p.rows[u].bit_count(), -u))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def iter_maps(rows, n, p, order=None):
    """Yield injective maps (tuples) of pattern p into host rows, edges preserved.

    With the identity order the maps come out in lexicographic order.
    """
    k = p.n
    if k > n:
        return
    if order is None:
        order = list(range(k))
    prow = p.rows
    pdeg = [r.bit_count() for r in prow]
    host_deg = [r.bit_count() for r in rows]
    by_deg = {}
    for d in set(pdeg):
        m = 0
        for v in range(n):
            if host_deg[v] >= d:
                m |= 1 << v
        by_deg[d] = m
    earlier = []
    pos = {v: i for i, v in enumerate(order)}
    for i, u in enumerate(order):
        earlier.append([w for w in order[:i] if prow[u] >> w & 1])
    img = [0] * k
    used = 0
    full = (1 << n) - 1

    def rec(i):
        nonlocal used
        if i == k:
            yield tuple(img)
            return
        u = order[i]
        cand = by_deg[pdeg[u]] & ~used & full
        for w in earlier[i]:
            cand &= rows[img[w]]
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            img[u] = x
            used |= low
            yield from rec(i + 1)
            used &= ~low

    yield from rec(0)


def find_map(rows, n, p, order=None):
    for m in iter_maps(rows, n, p, order):
        return m
    return None


# ---------------------------------------------------------------------------
# Specialised deciders
# ---------------------------------------------------------------------------

def has_path(rows, n, t):
    """Is there a path with t edges?"""
    if t == 0:
        return n > 0
    if t + 1 > n:
        return False

    def dfs(v, visited, depth):
        if depth == t:
            return True
        m = rows[v] & ~visited
        while m:
            low = m & -m
            m ^= low
            if dfs(low.bit_length() - 1, visited | low, depth + 1):
                return True
        return False

    return any(dfs(v, 1 << v, 0) for v in range(n) if rows[v])


def longest_path_dp(rows, n):
    """Subset dynamic programming over (vertex set, endpoint)."""
    if n == 0:
        return 0
    layer = {1 << v: 1 << v for v in range(n)}
    length = 0
    while True:
        nxt = {}
        for mask, ends in layer.items():
            e = ends
            while e:
                low = e & -e
                e ^= low
                ext = rows[low.bit_length() - 1] & ~mask
                while ext:
                    lw = ext & -ext
                    ext ^= lw
                    nm = mask | lw
                    nxt[nm] = nxt.get(nm, 0) | lw
        if not nxt:
            return length
        layer = nxt
        length += 1


def longest_path_dfs(rows, n):
    best = 0

    def dfs(v, visited, depth):
        nonlocal best
        if depth > best:
            best = depth
        m = rows[v] & ~visited
        while m:
            low = m & -m
            m ^= low
            dfs(low.bit_length() - 1, visited | low, depth + 1)
            if best == n - 1:
                return

    for v in range(n):
        if rows[v]:
            dfs(v, 1 << v, 0)
        if best == n - 1:
            break
    return best


def longest_path_edges(g):
    """Exact maximum number of edges over all paths of g."""
    if g.n <= 20:
        return longest_path_dp(g.rows, g.n)
    return longest_path_dfs(g.rows, g.n)


def has_cycle(rows, n, t):
    """Is there a cycle with exactly t edges? Rooted at its smallest vertex."""
    for r in range(n):
        allowed = ~((1 << (r + 1)) - 1)

        def dfs(v, visited, depth):
            if depth == t - 1:
                return bool(rows[v] >> r & 1)
            m = rows[v] & allowed & ~visited
            while m:
                low = m & -m
                m ^= low
                if dfs(low.bit_length() - 1, visited | low, depth + 1):
                    return True
            return False

        if dfs(r, 1 << r, 0):
            return True
    return False


def has_clique(rows, n, r):
    if r <= 1:
        return n >= r

    def rec(cand, size):
        if size == r:
            return True
        if (cand.bit_count() + size) < r:
            return False
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if rec(cand & rows[v], size + 1):
                return True
        return False

    return rec((1 << n) - 1, 0)


def has_biclique(rows, n, s, t):
    """Some s vertices with at least t common neighbours."""
    if s + t > n:
        return False
    pool = [v for v in range(n) if rows[v].bit_count() >= t]
    for sub in combinations(pool, s):
        common = (1 << n) - 1
        for v in sub:
            common &= rows[v]
        if common.bit_count() >= t:
            return True
    return False


def decide(rows, n, p):
    """Fast containment decision for a single (non-family) pattern."""
    if isinstance(p, Path):
        return has_path(rows, n, p.t)
    if isinstance(p, Cycle):
        return has_cycle(rows, n, p.t)
    if isinstance(p, Clique):
        return has_clique(rows, n, p.r)
    if isinstance(p, Biclique):
        return has_biclique(rows, n, p.s, p.t)
    return find_map(rows, n, p.graph(), matching_order(p.graph())) is not None


def contains(g, p):
    """Return the lexicographically least MatchWitness of p in g, or None.

    A Family matches through its first member (in literal order) that occurs.
    """
    for member in p.members():
        if decide(g.rows, g.n, member):
            m = find_map(g.rows, g.n, member.graph())
            return MatchWitness(member, m)
    return None


def is_free(g, p):
    return not any(decide(g.rows, g.n, m) for m in p.members())


def copy_edge_sets(g, p, limit=None):
    """Distinct copies of p in g as sorted tuples of host edges."""
    if isinstance(p, Family):
        out = set()
        for m in p.members():
            out |= set(copy_edge_sets(g, m, limit))
        return sorted(out)
    pg = p.graph()
    seen = set()
    for m in iter_maps(g.rows, g.n, pg, matching_order(pg)):
        es = tuple(sorted(tuple(sorted((m[u], m[v]))) for u, v in pg.edges()))
        seen.add(es)
        if limit is not None and len(seen) > limit:
            break
    return sorted(seen)


def count_copies(h, g):
    """Number of copies of pattern h in g (distinct edge sets)."""
    if h.num_vertices() > 8:
        raise CapacityExceeded("copy counting is limited to patterns with at most 8 vertices")
    if h.num_edges() == 0:
        raise BadParameter("edgeless patterns have no edge-set copies")
    return len(copy_edge_sets(g, h))
