import pytest

from chowforge.chow import ChowRing, presentation_atom_free
from chowforge.corpus import figure2_matroid
from chowforge.koszul import (FiltrationIdeal, WalkBudgetExceeded, filtration_witness_step,
                              sample_members, verify_filtration)
from chowforge.matroid import boolean, uniform
from chowforge.quotient import build, colon, equals_ideal, ideal_span


@pytest.mark.parametrize("M", [uniform(1, 1), uniform(2, 2), uniform(3, 3), uniform(3, 4), boolean(4)],
                         ids=lambda M: M.name or str(M.n))
def test_walk_passes(M):
    for aug in (False, True):
        rep = verify_filtration(ChowRing(M, augmented=aug))
        assert rep["pass"] and rep["complete"], rep["violations"]


def test_walk_against_oracle():
    M = uniform(3, 4)
    R = ChowRing(M)
    rep = verify_filtration(R, oracle=build(presentation_atom_free(M)))
    assert rep["pass"]


def test_single_step_is_a_colon():
    R = ChowRing(figure2_matroid())
    I = FiltrationIdeal.maximal(R)
    J, x, C = filtration_witness_step(R, I)
    spanJ = ideal_span(R, J.polys())
    spanC = ideal_span(R, C.polys())
    assert equals_ideal(colon(R, spanJ, {(R.var_of[x],): 1}), spanC)


def test_members_are_linear():
    R = ChowRing(uniform(3, 4))
    for I in sample_members(R, 5):
        assert all(len(m) == 1 for poly in I.polys() for m in poly)


def test_walk_budget():
    with pytest.raises(WalkBudgetExceeded):
        verify_filtration(ChowRing(boolean(4)), budget=3)


def test_walk_reports_a_wrong_colon(monkeypatch):
    from chowforge import koszul
    real = koszul.filtration_witness_step

    def broken(R, I):
        J, x, C = real(R, I)
        return J, x, FiltrationIdeal.zero(R)

    monkeypatch.setattr(koszul, "filtration_witness_step", broken)
    rep = verify_filtration(ChowRing(uniform(3, 4)))
    assert not rep["pass"]
    assert any("closed form" in v["problem"] for v in rep["violations"])
