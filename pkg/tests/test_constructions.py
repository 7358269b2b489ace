from fractions import Fraction
from math import comb

import pytest

from invturan import constructions as cs
from invturan import graph as gc
from invturan import patterns as pm
from invturan import relative as rt
from invturan.errors import BadParameter, InfiniteInverse, Unsupported
from invturan.patterns import Biclique, Clique, Cycle, Family, Path


def test_floor_power_exact():
    assert cs.floor_power(1, 27, 2, 3) == 9
    assert cs.floor_power(1, 26, 2, 3) == 8
    assert cs.floor_power(Fraction(1, 2), 16, 1, 2) == 2
    for k in range(1, 200):
        assert cs.floor_power(1, k, 1, 2) ** 2 <= k < (cs.floor_power(1, k, 1, 2) + 1) ** 2


def test_path_families():
    fam, rec = cs.family_for(10, Path(3))
    assert fam.family == "complete" and fam.params["n"] == 9 and rec.value == 36
    assert rec.provenance == "construction:complete-graph" and not rec.certified
    fam, rec = cs.family_for(19, Path(4))
    assert fam.parts == (9, 9) and rec.value == 81
    fam, _ = cs.family_for(31, Path(6))  # t=3: T(15, 3)
    assert fam.parts == (5, 5, 5) and fam.closed_form_edges() == 75


def test_path_families_are_free_for_small_k():
    # the construction is a lower bound only if ex(host, P) < k
    for k in range(3, 9):
        fam, rec = cs.family_for(k, Path(3))
        assert rt.ex_exact(fam.build(), Path(3)).value < k
    for k in range(4, 12):
        fam, _ = cs.family_for(k, Path(4))
        assert rt.ex_exact(fam.build(), Path(4)).value < k


def test_cherry_and_star_sizes():
    assert cs.cherry_sizes(6) == (2, 3)
    assert cs.cherry_sizes(24) == (4, 15)
    assert cs.star_count_sizes(32, 2, 2) == (16, 4)
    fam, rec = cs.family_for(6, Cycle(4))
    assert fam.anchor == "cherry-biclique" and rec.value == 6
    assert cs.family_for(6, Biclique(2, 2))[0] == fam


def test_finiteness_and_unsupported():
    with pytest.raises(InfiniteInverse):
        cs.family_for(5, Path(2))
    with pytest.raises(InfiniteInverse):
        cs.family_for(5, Biclique(1, 4))
    with pytest.raises(Unsupported):
        cs.family_for(5, Clique(3))
    with pytest.raises(Unsupported):
        cs.family_for(5, Family((Path(3), Cycle(4))))
    with pytest.raises(BadParameter):
        cs.family_for(1, Path(3))


def test_host_family_json():
    fam, _ = cs.family_for(19, Path(4))
    js = fam.to_json()
    assert js["anchor"] == "turan-graph" and js["edges"] == 81
    assert fam.build().num_edges() == fam.closed_form_edges()


def test_turan_path_formula_branches():
    assert cs.prop_pr_formula(10, 2, 2) == 10  # r <= t: n(t-1)
    assert cs.prop_pr_formula(8, 4, 2) == Fraction(12)  # n min(3/2, 1/2 + 1)
    assert cs.prop_pr_formula(12, 9, 3) == 12 * Fraction(5, 2)
    with pytest.raises(BadParameter):
        cs.prop_pr_formula(3, 2, 2)


@pytest.mark.parametrize("n, r, t", [(6, 2, 2), (8, 2, 2), (10, 2, 2), (8, 4, 2), (9, 3, 2),
                                     (12, 3, 3), (12, 6, 3), (16, 5, 2), (12, 2, 3)])
def test_turan_path_witness(n, r, t):
    w = cs.prop_pr_witness(n, r, t)
    host = gc.turan(n, r)
    assert w.is_subgraph_of(host)
    assert pm.is_free(w, Path(2 * t))
    assert w.num_edges() == cs.prop_pr_witness_edges(n, r, t)


def test_even_cycle_constants_frozen():
    assert cs.even_cycle_constants(2) == (Fraction(9999, 10000), Fraction(191, 500))
    assert cs.even_cycle_constants(3) == (Fraction(9999, 10000), Fraction(537, 5000))
    assert cs.even_cycle_constants(4) == (Fraction(463, 625), Fraction(401, 10000))


def test_even_cycle_constants_satisfy_constraint():
    for t in (2, 3, 4, 5):
        x, y = cs.even_cycle_constants(t, grid=500)
        assert 0 < x <= 1 and 0 < y <= 1
        assert cs.constraint_value(t, x, y) < 1 / (2 * t - 3) + 1e-12
        assert cs._constraint_ok(int(x * 500), int(y * 500), t, 500)


def test_even_cycle_family_shape():
    fam, rec = cs.family_for(10 ** 4, Cycle(6))
    a, b = fam.parts
    x, y = cs.even_cycle_constants(3)
    assert b == int(y * 10 ** 4) and a == cs.floor_power(x, 10 ** 4, 2, 4)
    assert rec.value == a * b


def test_conjecture_ledger():
    (rec,) = cs.conjecture_ledger(50, Path(5))
    assert rec.value == comb(25, 2) and rec.asymptotic and rec.provenance.startswith("conjectured:")
    (rec,) = cs.conjecture_ledger(101, Path(4))
    assert rec.value == Fraction(101 ** 2, 4)
    (rec,) = cs.conjecture_ledger(100, Cycle(4))
    assert abs(rec.approx - 544.33) < 0.01
