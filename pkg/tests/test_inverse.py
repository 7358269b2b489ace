import json
from pathlib import Path as FsPath

import pytest

from invturan import constructions as cs
from invturan import graph as gc
from invturan import inverse as inv
from invturan import relative as rt
from invturan.errors import CapsTooTight, CertificationFailed, ChainFailed, InfiniteInverse
from invturan.patterns import Biclique, Cycle, Path

from oracles import inv_ex_labeled

DATA = json.loads((FsPath(__file__).parent / "data" / "inv_oracle.json").read_text())
PATTERNS = {"P3": Path(3), "P4": Path(4), "C3": Cycle(3), "C4": Cycle(4)}


@pytest.mark.parametrize("key", sorted(DATA["values"]))
def test_inverse_matches_frozen_labeled_oracle(key):
    k, name = key.split(":")
    res = inv.inv_ex_exact(int(k), PATTERNS[name], max_vertices=DATA["n"], strict=False)
    assert res.value == DATA["values"][key]


def test_live_labeled_oracle_tiny():
    for k in (1, 2, 3):
        assert inv.inv_ex_exact(k, Path(3), max_vertices=4, strict=False).value == inv_ex_labeled(k, "P3", 4)


def test_known_inverse_values():
    r = inv.inv_ex_exact(3, Path(3), max_vertices=8)
    assert r.value == 4 and r.absolute and "C]" in r.hosts  # C4 is among the hosts
    assert inv.inv_ex_exact(2, Path(3)).value == 1
    assert inv.inv_ex_exact(4, Cycle(4), max_vertices=6).value == 4


def test_monotone_in_k():
    vals = [inv.inv_ex_exact(k, Cycle(4), max_vertices=6).value for k in range(1, 5)]
    assert vals == sorted(vals)


def test_anti_monotone_in_pattern():
    # P3 is a subgraph of P4 and of C4, so fewer hosts avoid k-edge free subgraphs for the larger patterns
    for k in (2, 3, 4):
        p3 = inv.inv_ex_exact(k, Path(3), max_vertices=6).value
        assert p3 >= inv.inv_ex_exact(k, Path(4), max_vertices=8).value
        assert p3 >= inv.inv_ex_exact(k, Cycle(4), max_vertices=6).value


def test_hosts_satisfy_condition():
    r = inv.inv_ex_exact(4, Path(3), max_vertices=6)
    for h in r.host_graphs():
        assert h.num_edges() == r.value and rt.ex_exact(h, Path(3)).value < 4


def test_vertex_bound_and_caps():
    assert inv.vertex_bound(5, Path(3)) == 8
    with pytest.raises(CapsTooTight) as exc:
        inv.inv_ex_exact(5, Path(3), max_vertices=5)
    lower = exc.value.result
    assert lower.attestation["label"] == "lower-bound-only" and not lower.absolute
    r = inv.inv_ex_exact(4, Path(3), max_vertices=5, strict=False)
    assert not r.absolute and r.value <= 6


def test_infinite_inverse():
    with pytest.raises(InfiniteInverse):
        inv.inv_ex_exact(3, Path(2))
    with pytest.raises(InfiniteInverse):
        inv.inv_ex_exact(3, Biclique(1, 3))


def test_bounds_carry_provenance():
    r = inv.inv_ex_exact(3, Cycle(4), max_vertices=4)
    js = r.to_json()
    assert all(b["provenance"].startswith("exact:") for b in js["bounds"])


# -- counting certificates ---------------------------------------------------

@pytest.mark.parametrize("k", [6, 12, 24, 100, 1000])
def test_cherry_chain_holds(k):
    cert = inv.cherry_certificate(k)
    assert cert.verify() and not cert.vacuous
    assert cert.host == cs.cherry_sizes(k)


@pytest.mark.parametrize("k", [6, 7, 9, 12, 15, 18, 24])
def test_cherry_certificate_is_sound(k):
    # whenever the chain holds, the solver agrees that the host has ex < k
    cert = inv.cherry_certificate(k)
    if cert.verify() and not cert.vacuous:
        a, b = cert.host
        assert rt.ex_exact(gc.biclique(a, b), Cycle(4)).value < k


def test_jensen_chain():
    for k, s, t in [(32, 2, 2), (12, 2, 2), (100, 2, 3), (1000, 3, 3)]:
        assert inv.jensen_certificate(k, s, t).verify()
    cert = inv.jensen_certificate(12, 2, 2)
    a, b = cert.host
    assert rt.ex_exact(gc.biclique(a, b), Biclique(2, 2)).value < 12
    with pytest.raises(ChainFailed):
        inv.jensen_certificate(4, 3, 3)


def test_tampered_certificate_fails():
    cert = inv.cherry_certificate(24)
    step, lhs, rel, rhs = cert.chain[-1]
    cert.chain[-1] = (step, rhs, rel, rhs)
    assert not cert.verify()


def test_certify_lower_paths():
    fam, _ = cs.family_for(19, Path(4))
    rec, ev = inv.certify_lower(19, Path(4), fam)
    assert rec.certified and rec.value == 81 and rec.provenance.startswith("certificate:")
    rec, ev = inv.certify_lower(6, Cycle(4), cs.family_for(6, Cycle(4))[0])
    assert rec.value == 6
    with pytest.raises(CertificationFailed):
        inv.certify_lower(4, Path(3), gc.complete(5))  # ex(K5, P3) = 4: a star or a triangle plus an edge
    rec, _ = inv.certify_lower(5, Path(3), gc.complete(5))
    assert rec.value == 10


def test_bound_report_c4():
    recs = inv.bound_report(100, Cycle(4))
    lows = [r for r in recs if r.kind == "lower" and r.certified]
    assert max(r.value for r in lows) == 520
    assert any(r.provenance.startswith("conjectured:") for r in recs)
