import pytest

from chowforge import chow
from chowforge.corpus import figure2_matroid
from chowforge.lattice import LatticeOfFlats
from chowforge.matroid import NotSimple, boolean, linear, uniform
from chowforge.quotient import (annihilator_of_elements, build, colon, equals_ideal, ideal_span,
                                socle)


def test_hilbert_functions():
    assert chow.chow_ring(uniform(3, 3)).dims == [1, 4, 1]
    assert chow.augmented_chow_ring(uniform(3, 3)).dims == [1, 7, 7, 1]
    assert chow.chow_ring(uniform(4, 5)).dims == [1, 21, 21, 1]


def test_nested_basis_matches_oracle():
    for M in (uniform(3, 4), figure2_matroid()):
        for aug in (False, True):
            R = chow.ChowRing(M, augmented=aug)
            P = (chow.presentation_augmented_atom_free if aug else chow.presentation_atom_free)(M)
            assert build(P).dims == R.dims


def test_nested_monomials_are_nested():
    R = chow.chow_ring(boolean(3))
    assert [len(R.nested_basis(d)) for d in range(3)] == [1, 4, 1]
    for d in range(3):
        for m in R.nested_basis(d):
            assert R.is_nested(m)


def test_socle_is_top_power():
    R = chow.chow_ring(boolean(3))
    top = R.top_flat()
    assert R.nested_of(R.socle_monomial()) == {((top, 2),): 1}
    soc = socle(R)
    assert soc.dims() == [0, 0, 1]


def test_groebner_basis_elements_vanish_in_the_oracle():
    M = uniform(3, 4)
    R = chow.chow_ring(M)
    Q = build(chow.presentation_atom_free(M))
    assert Q.dims == R.dims
    for fam, poly in chow.groebner_basis(R):
        assert fam in ("incomparable", "chain", "power")
        assert R.normal_form(poly) == {}


def test_multiplication_by_normal_form():
    R = chow.chow_ring(uniform(3, 4))
    x12 = R.x(frozenset({1, 2}))
    xE = R.x(frozenset({1, 2, 3, 4}))
    assert R.multiply_nested(R.nested_of(x12), R.nested_of(xE)) == {}
    sq = R.multiply_nested(R.nested_of(xE), R.nested_of(xE))
    assert sq == R.nested_of(R.socle_monomial())


def test_fy_presentation_agrees():
    M = uniform(2, 3)
    assert build(chow.presentation_FY(M)).dims == chow.chow_ring(M).dims


def test_needs_simple_matroid():
    with pytest.raises(NotSimple):
        chow.chow_ring(linear([[1, 1, 0], [0, 0, 1]]))


def test_closed_forms_against_brute_force():
    for aug in (False, True):
        R = chow.ChowRing(boolean(4), augmented=aug)
        L = R.L
        top = chow.annihilator_of_top(R)
        assert equals_ideal(top.span(), annihilator_of_elements(R, [R.x(L.elements[L.top])]))
        for H in L.down[L.top]:
            desc = chow.annihilator_of_hyperplane(R, H)
            assert equals_ideal(desc.span(), annihilator_of_elements(R, [{(R.var_of[H],): 1}]))


def test_hyperplane_set_colon():
    R = chow.chow_ring(boolean(4))
    hs = [R.flat({1, 2, 3}), R.flat({1, 2, 4})]
    Hp = R.flat({1, 3, 4})
    J = ideal_span(R, [{(R.var_of[H],): 1} for H in hs])
    desc = chow.hyperplane_set_colon(R, hs, Hp)
    assert equals_ideal(desc.span(), colon(R, J, {(R.var_of[Hp],): 1}))


def test_quotient_isomorphism_checks():
    rows, verdict = chow.quotient_isomorphism_checks(uniform(3, 4))
    assert verdict
    rows, verdict = chow.quotient_isomorphism_checks(uniform(3, 4), augmented=True)
    assert verdict


def test_not_a_hyperplane():
    R = chow.chow_ring(boolean(3))
    with pytest.raises(chow.NotAHyperplane):
        chow.annihilator_of_hyperplane(R, R.flat({1}))


def _principal_truncation(M, F):
    # rank drops by one exactly on the sets whose closure contains F
    fm = sum(1 << (e - 1) for e in F)

    def rank_fn(m):
        r = M.rank_mask(m)
        return r - 1 if M.rank_mask(m | fm) == r else r

    from chowforge.matroid import Matroid
    return Matroid(M.n, rank_fn)


def test_principal_truncation_colon_has_a_square():
    # (x_234) : x_1256 = (0 : x_1256) + (x_1256^2) for the principal truncation
    # of U5,6 along 1256
    M = _principal_truncation(uniform(5, 6), {1, 2, 5, 6})
    assert M.rank() == 4
    R = chow.chow_ring(M)
    Hp = R.flat({1, 2, 5, 6})
    x = {(R.var_of[Hp],): 1}
    J = ideal_span(R, [{(R.var_of[R.flat({2, 3, 4})],): 1}])
    got = colon(R, J, x)
    want = annihilator_of_elements(R, [x]) + ideal_span(R, [{(R.var_of[Hp],) * 2: 1}])
    assert equals_ideal(got, want)
    assert not equals_ideal(got, annihilator_of_elements(R, [x]))
