import pytest

from chowforge.building import (NotABuildingSet, NotAtomic, dlg_presentation,
                                eliminate_linear_forms, free_coextension_building_set,
                                is_building_set, is_irreducible, maximal_building_set,
                                minimal_building_set, nested_complex)
from chowforge.chow import ChowRing
from chowforge.corpus import FIGURE3_LATTICE, lookup
from chowforge.lattice import Lattice, LatticeOfFlats, lattice_from_json
from chowforge.matroid import boolean, uniform
from chowforge.quotient import build


def _idx(L, *sets):
    return [L.idx(frozenset(s)) for s in sets]


def test_building_sets_of_b3():
    L = LatticeOfFlats(boolean(3))
    assert is_building_set(L, _idx(L, {1}, {2}, {3}, {1, 2, 3}))[0]
    assert is_building_set(L, maximal_building_set(L))[0]
    assert {L.elements[g] for g in minimal_building_set(L)} == \
        {frozenset({1}), frozenset({2}), frozenset({3})}
    ok, w = is_building_set(L, _idx(L, {1}, {2}, {3}, {1, 2}, {1, 3}))
    assert not ok and w["element"] == frozenset({1, 2, 3})


def test_irreducible_elements():
    L = LatticeOfFlats(uniform(2, 3))
    assert is_irreducible(L, L.top)
    L = LatticeOfFlats(boolean(2))
    assert not is_irreducible(L, L.top)


def test_nested_complex_of_b3():
    L = LatticeOfFlats(boolean(3))
    NC = nested_complex(L, _idx(L, {1}, {2}, {3}, {1, 2, 3}))
    assert [sorted(T) for T in NC.labels()] == [["1", "2", "3"]]
    assert NC.is_face(_idx(L, {1}, {2}))
    with pytest.raises(NotABuildingSet):
        nested_complex(L, _idx(L, {1}, {2}, {3}, {1, 2}, {1, 3}))


def test_maximal_building_set_gives_chow_ring():
    M = uniform(3, 4)
    L = LatticeOfFlats(M)
    Q = build(dlg_presentation(L, maximal_building_set(L)))
    assert Q.dims == ChowRing(M).dims


def test_c4_minimal_building_set():
    L = LatticeOfFlats(lookup("C4"))
    Q = build(dlg_presentation(L, minimal_building_set(L)))
    assert Q.dims == [1, 1, 1]


def test_elimination_keeps_hilbert_function():
    L = LatticeOfFlats(uniform(3, 4))
    P = dlg_presentation(L, maximal_building_set(L))
    E = eliminate_linear_forms(P, prefer=[0, 1, 2, 3])
    assert E.nvars == P.nvars - 4
    assert build(E).dims == build(P).dims


def test_free_coextension_building_set():
    M = uniform(2, 3)
    C, L, G = free_coextension_building_set(M)
    assert is_building_set(L, G)[0]
    assert build(dlg_presentation(L, G)).dims == ChowRing(M, augmented=True).dims


def test_figure3_lattice_not_gorenstein():
    L = lattice_from_json(FIGURE3_LATTICE)
    from chowforge.quotient import socle
    Q = build(dlg_presentation(L, list(range(1, len(L)))))
    assert socle(Q).dims() == [0, 3]


def test_non_atomic_lattice_rejected():
    # a chain 0 < a < 1 is not atomic
    L = Lattice(["0", "a", "1"], covers=[("0", "a"), ("a", "1")])
    with pytest.raises(NotAtomic):
        is_building_set(L, [1, 2])
