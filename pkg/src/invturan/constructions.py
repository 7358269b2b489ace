"""Extremal host families behind the lower bounds on ex^-1(k, F).

Every real-valued part size is floored.  Flooring only shrinks the host, so
each "ex(host, F) < k" certificate stays valid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt, sqrt

from . import graph as gc
from . import patterns as pm
from .arith import iroot
from .errors import BadParameter, CapacityExceeded, InfiniteInverse, SearchFailed, Unsupported
from .patterns import Biclique, Cycle, Family, Path
from .records import BoundRecord

GRID = 10 ** 4


def floor_power(coef, k, num, den):
    """floor(coef * k^(num/den)) for a positive rational coef and integers k >= 0."""
    coef = Fraction(coef)
    # x <= coef k^(num/den)  iff  x^den <= coef^den k^num
    x = coef ** den * k ** num
    return iroot(x.numerator // x.denominator, den)


@dataclass(frozen=True)
class HostFamily:
    family: str
    params: dict
    closed_form: str
    anchor: str
    parts: tuple = field(default=())

    def build(self):
        if sum(self.parts) > gc.MAX_VERTICES:
            raise CapacityExceeded(f"instance has {sum(self.parts)} vertices")
        return gc.complete_multipartite(self.parts)

    @property
    def generable(self):
        return sum(self.parts) <= gc.MAX_VERTICES

    def closed_form_edges(self):
        """Edge count evaluated from the closed form of the family."""
        if self.family == "complete":
            return comb(self.params["n"], 2)
        if self.family == "turan":
            return gc.turan_edges(self.params["n"], self.params["r"])
        a, b = self.parts
        return a * b

    def num_vertices(self):
        return sum(self.parts)

    def to_json(self):
        return {
            "family": self.family,
            "params": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "closed_form": self.closed_form,
            "anchor": self.anchor,
            "edges": self.closed_form_edges(),
        }


def _complete_family(n, anchor, extra=None):
    params = {"n": n, **(extra or {})}
    return HostFamily("complete", params, "binom(n,2)", anchor, tuple([1] * n))


def _biclique_family(a, b, anchor, closed, extra=None):
    return HostFamily("biclique", {"a": a, "b": b, **(extra or {})}, closed, anchor, (a, b))


def check_finite(f):
    """Raise InfiniteInverse for matchings and stars."""
    for m in f.members():
        if pm.is_matching(m) or pm.is_star(m):
            raise InfiniteInverse(f"ex^-1(k,{m.literal()}) is infinite: the pattern is a matching or a star")


def family_for(k, f):
    """Host family and its (uncertified) lower bound for ex^-1(k, f)."""
    if isinstance(f, Family):
        raise Unsupported("families of patterns have no construction")
    check_finite(f)
    if isinstance(f, Path):
        return _path_family(k, f.t)
    if isinstance(f, Cycle) and f.t == 4 or isinstance(f, Biclique) and (f.s, f.t) == (2, 2):
        return _cherry_family(k)
    if isinstance(f, Biclique):
        return _biclique_star_family(k, f.s, f.t)
    if isinstance(f, Cycle) and f.t % 2 == 0:
        return _even_cycle_family(k, f.t // 2)
    raise Unsupported(f"no construction for {f.literal()} (chromatic number >= 3 is out of scope)")


def _record(k, f, fam, anchor, expression):
    v = fam.closed_form_edges()
    return BoundRecord("lower", Fraction(v), "construction:" + anchor, certified=False,
                       quantity=f"ex^-1({k},{f})", expression=expression,
                       extra={"host": fam.to_json()})


def _path_family(k, length):
    f = Path(length)
    if length % 2:
        t = (length - 1) // 2
        n = (2 * k) // (length - 1) - 1
        if n < 2:
            raise BadParameter(f"k={k} too small for the complete-graph construction")
        fam = _complete_family(n, "complete-graph", {"t": t})
        return fam, _record(k, f, fam, "complete-graph", "binom(floor(2k/(t-1))-1, 2)")
    t = length // 2
    n = (k - 1) // (t - 1)
    if n < t:
        raise BadParameter(f"k={k} too small for the Turán-graph construction")
    fam = HostFamily("turan", {"n": n, "r": t}, "e(T(floor((k-1)/(t-1)), t))", "turan-graph",
                     tuple(gc.turan_part_sizes(n, t)))
    return fam, _record(k, f, fam, "turan-graph", "e(T(floor((k-1)/(t-1)), t))")


def cherry_sizes(k):
    q = (2 * k) // 3
    return isqrt(q), q - 1


def _cherry_family(k):
    a, b = cherry_sizes(k)
    if a < 1 or b < 1:
        raise BadParameter(f"k={k} too small for the cherry biclique")
    fam = _biclique_family(a, b, "cherry-biclique", "floor(sqrt(2k/3)) * floor(2k/3 - 1)")
    return fam, _record(k, Cycle(4), fam, "cherry-biclique", "floor(sqrt(2k/3)) * floor(2k/3 - 1)")


def star_count_sizes(k, s, t):
    return k // s, iroot(k // t, s)


def _biclique_star_family(k, s, t):
    a, b = star_count_sizes(k, s, t)
    if a < 1 or b < 1:
        raise BadParameter(f"k={k} too small for the K_{{{s},{t}}} construction")
    fam = _biclique_family(a, b, "star-count-biclique", "floor(k/s) * floor((k/t)^(1/s))", {"s": s, "t": t})
    rec = _record(k, Biclique(s, t), fam, "star-count-biclique", "floor(k/s) * floor((k/t)^(1/s))")
    return fam, rec


def even_cycle_sizes(k, t, consts=None):
    x, y = consts or even_cycle_constants(t)
    if t % 2:
        return floor_power(x, k, t - 1, t + 1), floor_power(y, k, 1, 1)
    return floor_power(x, k, t, t + 2), floor_power(y, k, 1, 1)


def _even_cycle_family(k, t):
    x, y = even_cycle_constants(t)
    a, b = even_cycle_sizes(k, t, (x, y))
    if a < 1 or b < 1:
        raise BadParameter(f"k={k} too small for the C_{2 * t} biclique")
    if t % 2:
        closed, names = "floor(alpha k^(1-2/(t+1))) * floor(beta k)", ("alpha", "beta")
    else:
        closed, names = "floor(gamma k^(1-2/(t+2))) * floor(delta k)", ("gamma", "delta")
    fam = _biclique_family(a, b, "even-cycle-biclique", closed, {"t": t, names[0]: x, names[1]: y})
    return fam, _record(k, Cycle(2 * t), fam, "even-cycle-biclique", closed)


# ---------------------------------------------------------------------------
# Paths in Turán graphs
# ---------------------------------------------------------------------------

def prop_pr_formula(n, r, t):
    """Leading-order value of ex(T(n,r), P_{2t}), without the O(1) term."""
    if t < 2 or r < 2 or n < 2 * t:
        raise BadParameter("need n >= 2t, r >= 2, t >= 2")
    if r <= t:
        return Fraction(n * (t - 1))
    return n * min(Fraction(2 * t - 1, 2), Fraction(2 * t - 3, 2) + Fraction(r, 2 * t))


def _turan_classes(n, r):
    """Class index of each vertex in gc.turan(n, r) (parts are consecutive)."""
    cls = []
    for i, size in enumerate(gc.turan_part_sizes(n, r)):
        cls += [i] * size
    return cls


def prop_pr_witness(n, r, t):
    """The P_{2t}-free subgraph of T(n, r) from the matching lower-bound construction."""
    if t < 2 or r < 2:
        raise BadParameter("need r >= 2, t >= 2")
    if n > gc.MAX_VERTICES:
        raise CapacityExceeded(f"n={n} exceeds the {gc.MAX_VERTICES}-vertex cap")
    cls = _turan_classes(n, r)
    edges = []
    if r <= t:
        A = [v for v in range(n) if cls[v] == 0]
        rest = [v for v in range(n) if cls[v] != 0]
        if len(A) < t - 1 or len(rest) < t - 1:
            raise BadParameter(f"T({n},{r}) too small for t={t}")
        vs, us = A[: t - 1], rest[: t - 1]
        edges += [(v, w) for v in vs for w in rest[t - 1:]]
        edges += [(u, w) for u in us for w in A[t - 1:]]
    else:
        # renumber so that classes are residues mod r, then cut into blocks of 2t
        by_class = [[v for v in range(n) if cls[v] == i] for i in range(r)]
        w = [by_class[j % r][j // r] for j in range(n)]
        for m in range(n // (2 * t)):
            block = w[2 * t * m: 2 * t * (m + 1)]
            edges += [(a, b) for i, a in enumerate(block) for b in block[i + 1:] if cls[a] != cls[b]]
    return gc.SmallGraph.from_edges(n, [tuple(sorted(e)) for e in edges])


def prop_pr_witness_edges(n, r, t):
    if r <= t:
        return (t - 1) * (n - 2 * t + 2)
    return (n // (2 * t)) * gc.turan_edges(2 * t, r)


# ---------------------------------------------------------------------------
# Constants for the even-cycle construction
# ---------------------------------------------------------------------------

def _constraint_ok(i, j, t, D=GRID):
    """Exact check of the strict constraint for x = i/D, y = j/D."""
    c = 2 * t - 3
    slack = D - j * c  # (1/c - y) = slack / (D c)
    if slack <= 0:
        return False
    if t % 2:
        lhs = (i * j) ** (t + 1) * (D * c) ** (2 * t)
    else:
        lhs = i ** (t + 2) * j ** t * (D * c) ** (2 * t)
    return lhs < slack ** (2 * t) * D ** (2 * t + 2)


def even_cycle_constants(t, grid=GRID):
    """Constants (alpha, beta) for odd t or (gamma, delta) for even t.

    Searches x, y in {1/D, ..., D/D} with D = grid, maximizing x*y (hence the
    host's edge count) subject to the strict constraint; ties go to smaller y.
    """
    if t < 2:
        raise BadParameter("even-cycle constants need t >= 2")
    best = None
    for j in range(1, grid + 1):
        if not _constraint_ok(1, j, t, grid):
            continue
        lo, hi = 1, grid
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _constraint_ok(mid, j, t, grid):
                lo = mid
            else:
                hi = mid - 1
        if best is None or lo * j > best[0] * best[1]:
            best = (lo, j)
    if best is None:
        raise SearchFailed(f"no grid point satisfies the constraint for t={t}")
    return Fraction(best[0], grid), Fraction(best[1], grid)


def constraint_value(t, x, y):
    """Float evaluation of the constraint's left side (for display only)."""
    if t % 2:
        return float(x * y) ** ((t + 1) / (2 * t)) + float(y)
    return float(x) ** ((t + 2) / (2 * t)) * float(y) ** 0.5 + float(y)


# ---------------------------------------------------------------------------
# Conjectured values (never certified)
# ---------------------------------------------------------------------------

def conjecture_ledger(k, f):
    if isinstance(f, Path) and f.t % 2 and f.t >= 3:
        t = (f.t - 1) // 2
        v = Fraction(comb(k // t, 2))
        return [BoundRecord("value", v, "conjectured:odd-path-clique", asymptotic=True,
                            quantity=f"ex^-1({k},{f})", expression="binom(floor(k/t),2) + o(k^2)",
                            approx=float(v))]
    if isinstance(f, Path) and f.t % 2 == 0 and f.t >= 4:
        t = f.t // 2
        v = Fraction(k * k, 2 * (t - 1) ** 2) * (1 - Fraction(1, t))
        return [BoundRecord("value", v, "conjectured:even-path-multipartite", asymptotic=True,
                            quantity=f"ex^-1({k},{f})",
                            expression="k^2/(2(t-1)^2) (1-1/t) + o(k^2)", approx=float(v))]
    if isinstance(f, Cycle) and f.t == 4 or isinstance(f, Biclique) and (f.s, f.t) == (2, 2):
        approx = 2 * sqrt(2) * k ** 1.5 / (3 * sqrt(3))
        return [BoundRecord("value", None, "conjectured:c4-cherry-sharp", asymptotic=True,
                            quantity=f"ex^-1({k},C4)", expression="2 sqrt(2) k^(3/2) / (3 sqrt(3)) + o(k^(3/2))",
                            approx=approx)]
    raise Unsupported(f"no conjecture recorded for {f.literal()}")
