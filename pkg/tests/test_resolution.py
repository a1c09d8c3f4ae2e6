import pytest

from chowforge.building import dlg_presentation
from chowforge.chow import chow_ring
from chowforge.corpus import FIGURE3_LATTICE
from chowforge.lattice import LatticeOfFlats, lattice_from_json
from chowforge.matroid import boolean, uniform
from chowforge.quotient import PresentedAlgebra, build
from chowforge.resolution import BudgetExceeded, betti_of_residue_field, koszul_certificate


def test_dual_numbers_have_all_ones():
    Q = build(PresentedAlgebra(["x"], [{(0, 0): 1}], d_max=3))
    t = betti_of_residue_field(Q, 5)
    assert t.linear_strand() == [1, 1, 1, 1, 1, 1]
    assert t.is_linear()


def test_cubic_relation_is_not_koszul():
    Q = build(PresentedAlgebra(["x"], [{(0, 0, 0): 1}], d_max=4))
    rep = koszul_certificate(Q, 3)
    assert not rep["pass"]
    assert rep["betti"][2, 3] == 1


def test_u33_linear_strand():
    rep = koszul_certificate(chow_ring(uniform(3, 3)), 4)
    assert rep["pass"] and rep["matches_series"]
    assert rep["betti_totals"] == [1, 4, 15, 56, 209]


def test_b3_building_set_fails():
    L = LatticeOfFlats(boolean(3))
    G = [L.idx(frozenset(s)) for s in ({1}, {2}, {3}, {1, 2, 3})]
    Q = build(dlg_presentation(L, G))
    assert Q.dims == [1, 1, 1]
    rep = koszul_certificate(Q, 3)
    assert rep["nonlinear"] == [(2, 3, 1), (3, 4, 1)]
    assert not rep["froberg"]


def test_figure3_ring_is_koszul():
    L = lattice_from_json(FIGURE3_LATTICE)
    Q = build(dlg_presentation(L, list(range(1, len(L)))))
    assert Q.dims == [1, 3]
    assert koszul_certificate(Q, 4)["pass"]


def test_mod_p_agrees():
    a = koszul_certificate(chow_ring(uniform(3, 3)), 3)["betti_totals"]
    b = koszul_certificate(chow_ring(uniform(3, 3), p=32003), 3)["betti_totals"]
    assert a == b


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        koszul_certificate(chow_ring(boolean(4)), 4, budget=50)
    assert info.value.partial is not None
