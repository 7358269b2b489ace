"""Small undirected simple graphs on at most 64 vertices.

Graphs are stored as a tuple of adjacency bitmasks, one per vertex.  The module
also provides the standard constructors, graph6/sparse6 serialization, exact
canonical labeling (n <= 16) and isomorph-free enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import BadParameter, CapacityExceeded, ParseError

MAX_VERTICES = 64
CANON_MAX = 16
ENUM_CAP = 10


@dataclass(frozen=True)
class SmallGraph:
    n: int
    rows: tuple

    def __post_init__(self):
        n, rows = self.n, self.rows
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityExceeded(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")
        if len(rows) != n:
            raise BadParameter("need exactly one adjacency row per vertex")
        full = (1 << n) - 1
        for i, r in enumerate(rows):
            if r & ~full:
                raise BadParameter(f"row {i} has bits beyond vertex {n - 1}")
            if r >> i & 1:
                raise BadParameter(f"loop at vertex {i}")
            m = r
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if not rows[j] >> i & 1:
                    raise BadParameter(f"asymmetric adjacency between {i} and {j}")
                m ^= low

    @classmethod
    def _raw(cls, n, rows):
        # Hot-path constructor; callers guarantee the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def from_edges(cls, n, edges):
        if n > MAX_VERTICES:
            raise CapacityExceeded(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise BadParameter(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise BadParameter(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._raw(n, rows)

    @classmethod
    def empty(cls, n):
        return cls.from_edges(n, ())

    # -- basic queries -------------------------------------------------
    def num_edges(self):
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self):
        """Edges (i, j) with i < j in lexicographic order."""
        out = []
        for i, r in enumerate(self.rows):
            m = r >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def has_edge(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def degree(self, v):
        return self.rows[v].bit_count()

    def degrees(self):
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v):
        return bits(self.rows[v])

    def non_isolated(self):
        return [v for v in range(self.n) if self.rows[v]]

    # -- derived graphs ------------------------------------------------
    def relabel(self, perm):
        """Return the graph with vertex v renamed to perm[v]."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            img = 0
            m = r
            while m:
                low = m & -m
                img |= 1 << perm[low.bit_length() - 1]
                m ^= low
            rows[perm[v]] = img
        return SmallGraph._raw(self.n, rows)

    def induced(self, vertices):
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[v]) for u, v in combinations(vs, 2) if self.rows[u] >> v & 1]
        return SmallGraph.from_edges(len(vs), edges)

    def edge_subgraph(self, edges):
        """Spanning subgraph keeping only ``edges`` (all must be host edges)."""
        for u, v in edges:
            if not self.rows[u] >> v & 1:
                raise BadParameter(f"({u},{v}) is not an edge of the host")
        return SmallGraph.from_edges(self.n, edges)

    def drop_isolated(self):
        return self.induced(self.non_isolated())

    def is_subgraph_of(self, other):
        if self.n != other.n:
            return False
        return all(r & ~o == 0 for r, o in zip(self.rows, other.rows))

    def complement(self):
        full = (1 << self.n) - 1
        return SmallGraph._raw(self.n, [(full ^ r) & ~(1 << i) for i, r in enumerate(self.rows)])

    def components(self):
        """Vertex bitmasks of the connected components (isolated vertices included)."""
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                nb = self.rows[low.bit_length() - 1] & ~comp
                comp |= nb
                frontier |= nb
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def bipartition(self):
        """Return (mask_a, mask_b) of a proper 2-colouring, or None if not bipartite."""
        color = [-1] * self.n
        a = b = 0
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in bits(self.rows[u]):
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return None
        for v, c in enumerate(color):
            if c == 0:
                a |= 1 << v
            else:
                b |= 1 << v
        return a, b

    def __repr__(self):
        return f"SmallGraph(n={self.n}, edges={self.edges()})"


def bits(mask):
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def _check_size(n):
    if n < 0:
        raise BadParameter(f"negative vertex count {n}")
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")


def complete(n):
    _check_size(n)
    return SmallGraph.from_edges(n, combinations(range(n), 2))


def complete_multipartite(sizes):
    sizes = list(sizes)
    if any(s < 0 for s in sizes):
        raise BadParameter("part sizes must be nonnegative")
    n = sum(sizes)
    _check_size(n)
    part = []
    for i, s in enumerate(sizes):
        part += [i] * s
    return SmallGraph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def biclique(s, t):
    return complete_multipartite([s, t])


def turan_part_sizes(n, r):
    if r < 1:
        raise BadParameter(f"Turán graph needs r >= 1, got {r}")
    if n < 0:
        raise BadParameter(f"negative vertex count {n}")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan(n, r):
    """Balanced complete r-partite graph T(n, r); larger parts come first."""
    return complete_multipartite(turan_part_sizes(n, r))


def turan_edges(n, r):
    """Edge count of T(n, r) from its part sizes (floor((r-1)n^2/2r) fails once r > n)."""
    return comb(n, 2) - sum(comb(p, 2) for p in turan_part_sizes(n, r))


def path(t):
    """Path with t edges (t + 1 vertices)."""
    if t < 0:
        raise BadParameter("path length must be nonnegative")
    _check_size(t + 1)
    return SmallGraph.from_edges(t + 1, [(i, i + 1) for i in range(t)])


def cycle(t):
    """Cycle with t edges."""
    if t < 3:
        raise BadParameter("a cycle needs at least 3 edges")
    _check_size(t)
    return SmallGraph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def star(m):
    return biclique(1, m)


def _k_minus(n, removed):
    removed = {tuple(sorted(e)) for e in removed}
    return SmallGraph.from_edges(n, [e for e in combinations(range(n), 2) if e not in removed])


def k4_minus():
    return _k_minus(4, [(1, 3)])


K5_VARIANTS = {
    "K5-": [(0, 1)],
    "K5--adjacent": [(0, 1), (0, 2)],
    "K5--disjoint": [(0, 1), (2, 3)],
    "K5-K3": [(0, 1), (1, 2), (0, 2)],
    "K5-P3": [(0, 1), (1, 2), (2, 3)],
    "K5-P1uP2": [(0, 1), (2, 3), (3, 4)],
    "K5-K1,3": [(0, 1), (0, 2), (0, 3)],
}


def k5_variant(name):
    try:
        return _k_minus(5, K5_VARIANTS[name])
    except KeyError:
        raise BadParameter(f"unknown K5 variant {name!r}; choose from {sorted(K5_VARIANTS)}") from None


def disjoint_union(*graphs):
    n = sum(g.n for g in graphs)
    _check_size(n)
    edges = []
    off = 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges()]
        off += g.n
    return SmallGraph.from_edges(n, edges)


def identify(g, u, h, v):
    """Glue h onto g by identifying vertex v of h with vertex u of g."""
    n = g.n + h.n - 1
    _check_size(n)
    mapping = {}
    nxt = g.n
    for w in range(h.n):
        if w == v:
            mapping[w] = u
        else:
            mapping[w] = nxt
            nxt += 1
    edges = g.edges() + [(mapping[a], mapping[b]) for a, b in h.edges()]
    return SmallGraph.from_edges(n, edges)


def make(kind, **params):
    """Dispatch constructor by name ("complete", "turan", "path", ...)."""
    kind = kind.lower()
    table = {
        "complete": lambda: complete(params["n"]),
        "biclique": lambda: biclique(params["s"], params["t"]),
        "turan": lambda: turan(params["n"], params["r"]),
        "multipartite": lambda: complete_multipartite(params["sizes"]),
        "path": lambda: path(params["t"]),
        "cycle": lambda: cycle(params["t"]),
        "star": lambda: star(params["m"]),
        "k4-": k4_minus,
        "k5": lambda: k5_variant(params["variant"]),
        "empty": lambda: SmallGraph.empty(params["n"]),
        "union": lambda: disjoint_union(*params["graphs"]),
        "identify": lambda: identify(params["g"], params["u"], params["h"], params["v"]),
    }
    if kind not in table:
        raise BadParameter(f"unknown graph kind {kind!r}")
    try:
        return table[kind]()
    except KeyError as exc:
        raise BadParameter(f"missing parameter {exc} for {kind}") from None


# ---------------------------------------------------------------------------
# graph6 / sparse6
# ---------------------------------------------------------------------------

def _encode_n(n):
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise CapacityExceeded("graph too large for graph6")


def _decode_n(data, pos):
    if pos >= len(data):
        raise ParseError("missing vertex count", pos)
    c = data[pos]
    if c < 63 or c > 126:
        raise ParseError(f"invalid byte {c}", pos)
    if c != 126:
        return c - 63, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == 126:
        raise ParseError("graphs with more than 258047 vertices are not supported", pos)
    if pos + 4 > len(data):
        raise ParseError("truncated vertex count", pos)
    n = 0
    for off in range(1, 4):
        d = data[pos + off]
        if d < 63 or d > 126:
            raise ParseError(f"invalid byte {d}", pos + off)
        n = n << 6 | (d - 63)
    return n, pos + 4


def _as_bytes(data):
    if isinstance(data, str):
        data = data.encode("ascii")
    return bytes(data).strip()


def graph6_encode(g):
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    rows = g.rows
    for j in range(1, g.n):
        rj = rows[j]
        for i in range(j):
            acc = acc << 1 | (rj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data):
    data = _as_bytes(data)
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    n, pos = _decode_n(data, pos)
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, got {len(body)}", pos + min(len(body), need))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte_index, bit = divmod(k, 6)
            c = body[byte_index]
            if c < 63 or c > 126:
                raise ParseError(f"invalid byte {c}", pos + byte_index)
            if (c - 63) >> (5 - bit) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    for idx in range(k // 6, need):
        c = body[idx]
        if c < 63 or c > 126:
            raise ParseError(f"invalid byte {c}", pos + idx)
    if k % 6 and (body[-1] - 63) & ((1 << (6 - k % 6)) - 1):
        raise ParseError("nonzero padding bits", pos + need - 1)
    return SmallGraph._raw(n, rows)


def _sparse6_k(n):
    k = 1
    while 1 << k < n:
        k += 1
    return k


def sparse6_encode(g):
    n = g.n
    k = _sparse6_k(n)
    out_bits = []

    def enc(x):
        out_bits.extend((x >> (k - 1 - i)) & 1 for i in range(k))

    cur = 0
    for v, u in sorted((max(a, b), min(a, b)) for a, b in g.edges()):
        if v == cur:
            out_bits.append(0)
            enc(u)
        elif v == cur + 1:
            cur += 1
            out_bits.append(1)
            enc(u)
        else:
            cur = v
            out_bits.append(1)
            enc(v)
            out_bits.append(0)
            enc(u)
    if k < 6 and n == (1 << k) and ((-len(out_bits)) % 6) >= k and cur < n - 1:
        out_bits.append(0)
    out_bits.extend([1] * ((-len(out_bits)) % 6))
    out = bytearray(b":" + _encode_n(n))
    for i in range(0, len(out_bits), 6):
        val = 0
        for b in out_bits[i:i + 6]:
            val = val << 1 | b
        out.append(val + 63)
    return bytes(out)


def sparse6_decode(data):
    data = _as_bytes(data)
    pos = 0
    if data.startswith(b">>sparse6<<"):
        pos = 11
    if pos >= len(data) or data[pos] != ord(":"):
        raise ParseError("sparse6 must start with ':'", pos)
    n, pos = _decode_n(data, pos + 1)
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap")
    k = _sparse6_k(n)
    stream = []
    for off, c in enumerate(data[pos:]):
        if c < 63 or c > 126:
            raise ParseError(f"invalid byte {c}", pos + off)
        d = c - 63
        stream.extend((d >> (5 - i)) & 1 for i in range(6))
    rows = [0] * n
    v = 0
    i = 0
    while i + 1 + k <= len(stream):
        b = stream[i]
        x = 0
        for bit in stream[i + 1:i + 1 + k]:
            x = x << 1 | bit
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            if x == v:
                raise ParseError("loops are not allowed in simple graphs", pos + i // 6)
            if rows[x] >> v & 1:
                raise ParseError("multi-edges are not allowed in simple graphs", pos + i // 6)
            rows[x] |= 1 << v
            rows[v] |= 1 << x
    return SmallGraph._raw(n, rows)


def decode(data):
    """Decode either graph6 or sparse6 (detected by the leading ':')."""
    raw = _as_bytes(data)
    if raw.startswith(b":") or raw.startswith(b">>sparse6<<"):
        return sparse6_decode(raw)
    return graph6_decode(raw)


def read_graph6_lines(lines):
    """Parse newline-delimited graph6/sparse6 text, skipping blank lines."""
    out = []
    for line in lines:
        if isinstance(line, bytes):
            line = line.decode("ascii")
        line = line.strip()
        if line:
            out.append(decode(line))
    return out


def write_graph6_lines(graphs, fh):
    for g in graphs:
        fh.write(graph6_encode(g).decode("ascii") + "\n")


# ---------------------------------------------------------------------------
# Canonical labeling
# ---------------------------------------------------------------------------

def _refine(rows, cells):
    """Coarsest equitable refinement of an ordered partition (label-invariant)."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {}
            for v in c:
                r = rows[v]
                sig.setdefault(tuple((r & m).bit_count() for m in masks), []).append(v)
            if len(sig) == 1:
                new.append(c)
            else:
                for key in sorted(sig):
                    new.append(sig[key])
        if len(new) == len(cells):
            return new
        cells = new


def _certificate(rows, order):
    # order[i] = original vertex placed at position i; bit layout matches graph6.
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    new_rows = [0] * n
    for v in range(n):
        m = rows[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        new_rows[pos[v]] = r
    cert = 0
    for j in range(1, n):
        rj = new_rows[j]
        for i in range(j):
            cert = cert << 1 | (rj >> i & 1)
    return cert, new_rows


def _orbit_rep_mask(autos, prefix, n):
    """Union-find orbits of the group generated by autos fixing prefix pointwise."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in autos:
        if all(a[p] == p for p in prefix):
            for x in range(n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    return find


def canonical_labeling(g):
    """Return (perm, canonical graph) with canonical = g.relabel(perm).

    Exact for n <= 16 via individualization-refinement with automorphism pruning.
    """
    perm, cg, _ = _canon(g)
    return perm, cg


def automorphisms_found(g):
    """Automorphisms discovered while canonicalizing g (generate a subgroup of Aut(g))."""
    return _canon(g)[2]


def _canon(g):
    if g.n > CANON_MAX:
        raise CapacityExceeded(f"exact canonical labeling is limited to {CANON_MAX} vertices")
    n = g.n
    rows = g.rows
    if n == 0:
        return (), g, []
    best = [None, None, None]  # cert, order, rows
    autos = []

    def search(cells, prefix):
        cells = _refine(rows, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert, new_rows = _certificate(rows, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1], best[2] = cert, order, new_rows
            elif cert == best[0]:
                # order[i] -> best[1][i] is an automorphism
                a = [0] * n
                for x, y in zip(order, best[1]):
                    a[x] = y
                autos.append(a)
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        tried = []
        find = None
        n_autos = 0
        for v in sorted(cell):
            if tried and autos:
                if find is None or n_autos != len(autos):
                    find = _orbit_rep_mask(autos, prefix, n)
                    n_autos = len(autos)
                rv = find(v)
                if any(find(u) == rv for u in tried):
                    continue
            rest = [u for u in cell if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + [v])
            tried.append(v)

    degs = {}
    for v in range(n):
        degs.setdefault(rows[v].bit_count(), []).append(v)
    search([degs[d] for d in sorted(degs)], [])
    order = best[1]
    perm = [0] * n
    for i, v in enumerate(order):
        perm[v] = i
    return tuple(perm), SmallGraph._raw(n, best[2]), autos


def canonical_form(g):
    """(canonical graph, key) where key is the graph6 bytes of the canonical graph."""
    _, cg = canonical_labeling(g)
    return cg, graph6_encode(cg)


def canonical_key(g):
    return canonical_form(g)[1]


def raw_key(g):
    """Labeled key; used for graphs beyond the exact canonical regime."""
    return graph6_encode(g)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _extend(parents, m, prune, max_edges):
    # Add vertex m to each parent with every possible neighbourhood.
    seen = {}
    for parent in parents:
        prow = list(parent.rows)
        pe = parent.num_edges()
        gens = _canon(parent)[2] if m > 1 else []
        done = bytearray(1 << m)
        for nb in range(1 << m):
            if done[nb]:
                continue
            if gens:
                # neighbourhoods in one orbit of Aut(parent) give isomorphic children
                stack = [nb]
                done[nb] = 1
                while stack:
                    x = stack.pop()
                    for a in gens:
                        y = 0
                        mm = x
                        while mm:
                            low = mm & -mm
                            y |= 1 << a[low.bit_length() - 1]
                            mm ^= low
                        if not done[y]:
                            done[y] = 1
                            stack.append(y)
            if max_edges is not None and pe + nb.bit_count() > max_edges:
                continue
            rows = prow[:]
            mm = nb
            while mm:
                low = mm & -mm
                rows[low.bit_length() - 1] |= 1 << m
                mm ^= low
            rows.append(nb)
            child = SmallGraph._raw(m + 1, rows)
            if prune is not None and not prune(child):
                continue
            cg, key = canonical_form(child)
            if key not in seen:
                seen[key] = cg
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def _all_graphs(n):
    if n == 0:
        return (SmallGraph._raw(0, ()),)
    return tuple(_extend(_all_graphs(n - 1), n - 1, None, None))


def enumerate_graphs(n, edge_range=None, filter=None, *, prune=None, cap=ENUM_CAP, shard=None):
    """Yield one representative per isomorphism class of n-vertex graphs.

    ``edge_range`` is an int, a (lo, hi) pair, or None for all edge counts.
    ``filter`` is any isomorphism-invariant predicate applied to the output.
    ``prune`` must be hereditary (closed under deleting vertices); it is applied
    at every augmentation level so rejected graphs are never extended.
    ``shard=(i, k)`` keeps every k-th class starting at i, in canonical order.
    Output is in increasing canonical-key order.
    """
    if n < 0:
        raise BadParameter("vertex count must be nonnegative")
    if n > cap:
        raise CapacityExceeded(f"enumeration capped at {cap} vertices (got {n})")
    if edge_range is None:
        lo, hi = 0, comb(n, 2)
    elif isinstance(edge_range, int):
        lo = hi = edge_range
    else:
        lo, hi = edge_range
    if prune is None and hi >= comb(n, 2):
        level = _all_graphs(n)
    else:
        level = [SmallGraph._raw(0, ())]
        for m in range(n):
            level = _extend(level, m, prune, hi)
    count = 0
    for g in level:
        e = g.num_edges()
        if not lo <= e <= hi:
            continue
        if filter is not None and not filter(g):
            continue
        if shard is not None:
            i, k = shard
            keep = count % k == i
            count += 1
            if not keep:
                continue
        yield g


def graph_counts(n_max):
    return [len(_all_graphs(n)) for n in range(n_max + 1)]
