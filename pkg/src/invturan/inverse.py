"""Inverse Turán numbers: exact values for tiny k and certified lower bounds.

ex^-1(k, F) is the largest e(G) over hosts G in which every k-edge subgraph
contains F, i.e. ex(G, F) < k.  That property is closed under taking
subgraphs, which is what makes pruned host enumeration exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import constructions as cs
from . import graph as gc
from . import patterns as pm
from . import relative as rt
from .arith import min_convex_sum
from .errors import (BadParameter, CapacityExceeded, CapsTooTight, CertificationFailed,
                     ChainFailed, Unsupported)
from .graph import SmallGraph
from .patterns import Biclique, Clique, Cycle, Family, Path
from .records import BoundRecord

DEFAULT_MAX_VERTICES = 9
HOST_BUDGET = 10 ** 6


@dataclass
class InverseResult:
    k: int
    pattern: object
    value: int
    hosts: list
    attestation: dict
    bounds: list = field(default_factory=list)

    @property
    def absolute(self):
        return self.attestation.get("absolute", False)

    def host_graphs(self):
        return [gc.graph6_decode(h) for h in self.hosts]

    def to_json(self):
        return {
            "k": self.k,
            "pattern": self.pattern.literal(),
            "value": self.value,
            "hosts": list(self.hosts),
            "attestation": self.attestation,
            "bounds": [b.to_json() for b in self.bounds],
        }


def vertex_bound(k, f):
    """Proven bound on v(G) for hosts without isolated vertices and ex(G,f) < k.

    A spanning star forest of G has at least v(G)/2 edges and cannot contain a
    pattern with a non-star component, so v(G)/2 <= k-1.
    """
    if all(pm.has_non_star_component(m) for m in f.members()):
        return max(0, 2 * k - 2)
    return None


def below_k(g, f, k, budget=HOST_BUDGET):
    """True iff ex(g, f) < k.  Raises BudgetExhausted if undecided."""
    if g.num_edges() < k:
        return True
    ans, res = rt.ex_at_least(g, f, k, budget=budget, max_edges=10 ** 6)
    if ans is None:
        raise rt.BudgetExhausted(res)
    return not ans


def inv_ex_exact(k, f, max_vertices=None, max_edges=None, *, budget=HOST_BUDGET, threads=1,
                 strict=True):
    """ex^-1(k, f) by isomorph-free enumeration of hosts within the caps.

    When the proven vertex bound fits in ``max_vertices`` the search is capped
    there and the result is absolute.  If the bound exceeds the caps, a
    ``CapsTooTight`` carrying the caps-relative result is raised (or the result
    is returned labelled lower-bound-only when ``strict`` is false).
    """
    if k < 1:
        raise BadParameter("k must be a positive integer")
    cs.check_finite(f)
    bound = vertex_bound(k, f)
    cap = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if cap > gc.ENUM_CAP:
        raise CapacityExceeded(f"host enumeration capped at {gc.ENUM_CAP} vertices")
    n = cap if bound is None else min(cap, bound)
    edge_cap = comb(n, 2) if max_edges is None else max_edges

    def prune(h):
        return below_k(h, f, k, budget)

    best = -1
    hosts = set()
    for h in gc.enumerate_graphs(n, (0, edge_cap), prune=prune):
        e = h.num_edges()
        if e < best:
            continue
        key = gc.canonical_key(h.drop_isolated())
        if e > best:
            best, hosts = e, {key}
        else:
            hosts.add(key)
    edges_binding = max_edges is not None and max_edges < comb(n, 2)
    absolute = bound is not None and bound <= cap and not edges_binding
    att = {"method": "exhaustive-host-search", "max_vertices": cap, "max_edges": max_edges,
           "vertex_bound": bound, "searched_vertices": n, "absolute": absolute}
    if not absolute:
        att["label"] = "lower-bound-only" if bound is not None else "caps-relative"
    hosts = sorted(h.decode("ascii") if isinstance(h, bytes) else h for h in hosts)
    res = InverseResult(k, f, best, hosts, att)
    prov = "exact:exhaustive-host-search" if absolute else "exact-within-caps:exhaustive-host-search"
    res.bounds.append(BoundRecord("lower", Fraction(best), prov, certified=True,
                                  quantity=f"ex^-1({k},{f.literal()})"))
    if absolute:
        res.bounds.append(BoundRecord("upper", Fraction(best), prov, certified=True,
                                      quantity=f"ex^-1({k},{f.literal()})",
                                      extra={"vertex_bound": "star-forest"}))
    if strict and bound is not None and bound > cap:
        raise CapsTooTight(f"vertex bound {bound} exceeds max_vertices={cap}; result is a lower bound only",
                           result=res)
    return res


# ---------------------------------------------------------------------------
# Counting certificates
# ---------------------------------------------------------------------------

@dataclass
class CountingCertificate:
    kind: str
    k: int
    params: dict
    chain: list  # (label, lhs, relation, rhs)
    vacuous: bool = False

    def verify(self):
        ops = {">": lambda a, b: a > b, ">=": lambda a, b: a >= b, "<=": lambda a, b: a <= b,
               "<": lambda a, b: a < b, "==": lambda a, b: a == b}
        return all(ops[rel](Fraction(a), Fraction(b)) for _, a, rel, b in self.chain)

    @property
    def host(self):
        return self.params["A"], self.params["B"]

    def to_json(self):
        return {
            "kind": self.kind,
            "k": self.k,
            "params": self.params,
            "vacuous": self.vacuous,
            "chain": [{"step": s, "lhs": str(a), "rel": r, "rhs": str(b)} for s, a, r, b in self.chain],
            "holds": self.verify(),
        }


def _star_chain(kind, k, a, b, s, t, centers, leaves):
    """Stars K_{1,s} centred in one class with leaves in the other.

    If every k-edge subgraph has more than (t-1) binom(leaves, s) such stars,
    some s-set of leaves is shared by t centres: a K_{s,t}.
    """
    params = {"A": a, "B": b, "s": s, "t": t}
    if k > a * b:
        chain = [("host has fewer than k edges", a * b, "<", k)]
        return CountingCertificate(kind, k, params, chain, vacuous=True)
    low = min_convex_sum(k, centers, leaves, s)
    cap = (t - 1) * comb(leaves, s)
    chain = [
        ("degree sum over centres", k, "<=", centers * leaves),
        (f"min sum binom(d,{s}) over integer degree sequences", low, ">=", low),
        (f"stars exceed (t-1) * binom(leaves,{s})", low, ">", cap),
    ]
    cert = CountingCertificate(kind, k, params, chain)
    if not cert.verify():
        raise ChainFailed(f"{kind} chain fails at k={k}: {low} <= {cap}", certificate=cert)
    return cert


def cherry_certificate(k):
    """Every k-edge subgraph of K_{floor(sqrt(2k/3)), floor(2k/3-1)} contains C4."""
    if k < 1:
        raise BadParameter("k must be positive")
    a, b = cs.cherry_sizes(k)
    if a < 1 or b < 1:
        params = {"A": a, "B": b, "s": 2, "t": 2}
        cert = CountingCertificate("cherry", k, params, [("host has fewer than k edges", max(a, 0) * max(b, 0), "<", k)],
                                   vacuous=True)
        return cert
    # cherries have their middle vertex in B and both ends in A
    return _star_chain("cherry", k, a, b, 2, 2, centers=b, leaves=a)


def jensen_certificate(k, s, t):
    """Every k-edge subgraph of K_{floor(k/s), floor((k/t)^(1/s))} contains K_{s,t}."""
    if not 2 <= s <= t:
        raise BadParameter("need 2 <= s <= t")
    a, b = cs.star_count_sizes(k, s, t)
    if b < s:
        cert = CountingCertificate("jensen", k, {"A": a, "B": b, "s": s, "t": t},
                                   [("leaf class holds an s-set", b, ">=", s)])
        raise ChainFailed(f"jensen chain needs |B| >= s (|B|={b}, s={s}) at k={k}", certificate=cert)
    return _star_chain("jensen", k, a, b, s, t, centers=a, leaves=b)


# ---------------------------------------------------------------------------
# Certification of constructions
# ---------------------------------------------------------------------------

def _formula_upper(g, f, fam=None):
    """Cheap certified upper bounds on ex(g, f) from formulas; (value, name) or None."""
    n = g.n if g is not None else fam.num_vertices()
    out = []
    if isinstance(f, Path) and f.t >= 2:
        t = f.t
        num = (t - 1) * n
        out.append((num // 2 if n % t == 0 else (num + 1) // 2 - 1, "formula:erdos-gallai"))
        if fam is not None and fam.family == "turan" and t % 2 == 0:
            out.append((rt.turan_path_upper(n, fam.params["r"], t // 2), "formula:turan-peeling-dirac"))
    if fam is not None and fam.family == "biclique" and isinstance(f, Cycle) and f.t % 2 == 0 and f.t >= 4:
        a, b = fam.parts
        c = f.t // 2
        # m carries the exponent (t+2)/2t in the even case: the class sized ~k^{1-2/(t+2)}
        out.append((rt.nv_value(a, b, c), "formula:naor-verstraete"))
        if c % 2 == 0:
            out.append((rt.nv_value(b, a, c), "formula:naor-verstraete"))
    if not out:
        return None
    return min(out)


def certify_lower(k, f, host, budget=rt.DEFAULT_BUDGET):
    """Prove ex(host, f) <= k-1; returns (BoundRecord, evidence dict)."""
    fam = host if isinstance(host, cs.HostFamily) else None
    g = host.build() if fam is not None and fam.generable else (host if fam is None else None)
    e = g.num_edges() if g is not None else fam.closed_form_edges()
    quantity = f"ex^-1({k},{f.literal()})"
    anchor = fam.anchor if fam is not None else "explicit-host"

    def record(method, evidence):
        return BoundRecord("lower", Fraction(e), f"certificate:{method}", certified=True,
                           quantity=quantity, extra={"host": fam.to_json() if fam else
                                                     {"graph6": gc.graph6_encode(g).decode("ascii")},
                                                     "construction": anchor}), evidence

    if e < k:
        return record("too-few-edges", {"method": "too-few-edges", "edges": e})
    if g is not None:
        try:
            ans, res = rt.ex_at_least(g, f, k, budget=budget)
        except CapacityExceeded:
            ans, res = None, None
        if ans is True:
            raise CertificationFailed(f"ex(host,{f.literal()}) >= {k}: found a {res.value}-edge {f.literal()}-free subgraph")
        if ans is False:
            how = res.attestation or res.decided_by
            ev = {"method": "ex_exact:" + how, "upper": res.upper, "nodes_explored": res.nodes_explored}
            if res.complete:
                ev["value"] = res.value
            return record("ex_exact:" + how, ev)
    ub = _formula_upper(g, f, fam)
    if ub is not None and ub[0] < k:
        return record(ub[1].split(":", 1)[1], {"method": ub[1], "upper": ub[0]})
    if fam is not None and fam.family == "biclique":
        a, b = fam.parts
        cert = None
        try:
            if pm.Biclique(2, 2) == f or (isinstance(f, Cycle) and f.t == 4):
                cert = cherry_certificate(k) if (a, b) == cs.cherry_sizes(k) else None
            elif isinstance(f, Biclique):
                cert = jensen_certificate(k, f.s, f.t) if (a, b) == cs.star_count_sizes(k, f.s, f.t) else None
        except ChainFailed as exc:
            raise CertificationFailed(f"counting chain failed: {exc}") from exc
        if cert is not None:
            return record(cert.kind + "-count", {"method": cert.kind, "certificate": cert.to_json()})
    raise CertificationFailed(f"could not certify ex(host,{f.literal()}) < {k}")


# ---------------------------------------------------------------------------
# Bound ledger
# ---------------------------------------------------------------------------

def _asym(kind, k, f, name, expression, approx, value=None):
    return BoundRecord(kind, value, "formula:" + name, asymptotic=True,
                       quantity=f"ex^-1({k},{f.literal()})", expression=expression, approx=approx)


def _certified_or_plain(k, f, fam, rec):
    try:
        cert, _ = certify_lower(k, f, fam, budget=10 ** 5)
        return cert
    except (CertificationFailed, CapacityExceeded, rt.BudgetExhausted):
        return BoundRecord("lower", rec.value, rec.provenance, certified=False, quantity=rec.quantity,
                           expression=rec.expression, extra={**rec.extra, "certification": "failed"})


def bound_report(k, f):
    """All recorded bounds on ex^-1(k, f): certified exact-at-k, asymptotic, conjectured."""
    if isinstance(f, Family) or isinstance(f, Clique) and f.r <= 2:
        raise Unsupported(f"no bound ledger for {f.literal()}")
    cs.check_finite(f)
    out = []
    if isinstance(f, Path) and f.t >= 3:
        t = f.t
        n = (2 * k) // (t - 1) - 1
        if n >= 2:
            fam = cs._complete_family(n, "complete-graph")
            rec = BoundRecord("lower", Fraction(comb(n, 2)), "construction:complete-graph",
                              quantity=f"ex^-1({k},{f.literal()})", expression="binom(floor(2k/(t-1))-1, 2)")
            out.append(_certified_or_plain(k, f, fam, rec))
        if t % 2 == 0:
            h = t // 2
            try:
                fam, rec = cs.family_for(k, f)
                out.append(_certified_or_plain(k, f, fam, rec))
            except BadParameter:
                pass
            out.append(_asym("lower", k, f, "turan-graph", "(k-1)^2/(2t(t-1)) + O(k)",
                             (k - 1) ** 2 / (2 * h * (h - 1)), Fraction((k - 1) ** 2, 2 * h * (h - 1))))
        if t == 4:
            out.append(_asym("value", k, f, "p4-asymptotic", "k^2/4 + O(k^(3/2))", k * k / 4, Fraction(k * k, 4)))
        if t == 5:
            out.append(_asym("value", k, f, "p5-asymptotic", "k^2/8 + O(k)", k * k / 8, Fraction(k * k, 8)))
    elif isinstance(f, Cycle) and f.t == 4 or isinstance(f, Biclique) and (f.s, f.t) == (2, 2):
        g = Cycle(4)
        fam, rec = cs.family_for(k, g)
        out.append(_certified_or_plain(k, g, fam, rec))
        out.append(_asym("upper", k, g, "cherry-upper", "k^(3/2) + o(k^(3/2))", k ** 1.5))
    elif isinstance(f, Biclique):
        s, t = f.s, f.t
        try:
            fam, rec = cs.family_for(k, f)
            out.append(_certified_or_plain(k, f, fam, rec))
        except BadParameter:
            pass
        out.append(_asym("lower", k, f, "star-count-biclique", "k^(1+1/s) / (s t^(1/s))",
                         k ** (1 + 1 / s) / (s * t ** (1 / s))))
        out.append(_asym("upper", k, f, "kovari-sos-turan-order", "Theta(k^(1+1/s))", k ** (1 + 1 / s)))
    elif isinstance(f, Cycle) and f.t % 2 == 0:
        t = f.t // 2
        try:
            fam, rec = cs.family_for(k, f)
            out.append(_certified_or_plain(k, f, fam, rec))
        except BadParameter:
            pass
        lo = 2 - Fraction(2, t + 1) if t % 2 else 2 - Fraction(2, t + 2)
        hi = 2 - Fraction(2, 3 * t - 3) if t % 2 else 2 - Fraction(2, 3 * t - 2)
        out.append(_asym("lower", k, f, "even-cycle-biclique", f"Omega(k^({lo}))", k ** float(lo)))
        out.append(_asym("upper", k, f, "even-cycle-upper-order", f"O(k^({hi}))", k ** float(hi)))
    else:
        raise Unsupported(f"no bound ledger for {f.literal()}")
    try:
        out.extend(cs.conjecture_ledger(k, f))
    except Unsupported:
        pass
    return out
