"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The independent oracle for every ring is the brute-force quotient of the
atom-free presentation (linear algebra degree by degree); the engine under
test is ``ChowRing`` with its nested-monomial basis and closed forms.

Run directly (``python tests/test_acceptance.py``) to get just the lines.
"""

import json
import random
import time
from itertools import combinations

from chowforge import chow
from chowforge.building import (dlg_presentation, free_coextension_building_set,
                                is_building_set, minimal_building_set)
from chowforge.corpus import FIGURE3_LATTICE, corpus, figure2_matroid, lookup
from chowforge.koszul import verify_filtration
from chowforge.lattice import LatticeOfFlats, lattice_from_json, verify_total_coatom_order
from chowforge.matroid import free_coextension, restriction, set_label
from chowforge.quotient import (annihilator_of_elements, build, colon, equals_ideal, ideal_span,
                                is_generated_by_linear_forms, pairing_ranks, socle)
from chowforge.resolution import BudgetExceeded, koszul_certificate

# pinned tolerances: wall-clock limits (seconds), sampling and budgets
LIMIT_FIGURE2 = 1.0
LIMIT_COATOM_ORDER = 60.0
LIMIT_NESTED_BASIS = 300.0
LIMIT_EXAMPLE_46 = 120.0
LIMIT_KOSZUL = 600.0
LIMIT_COUNTEREXAMPLES = 60.0
KOSZUL_IMAX = 4
KOSZUL_BUDGET = 100_000   # coordinates per graded piece of the resolution
COLON_SAMPLES_MIN = 200   # sampled closed-form instances on 5 and 6 elements
COLON_SAMPLES_PER_KIND = 4
SEED = 20240601

_ORACLES = {}
_RINGS = {}
_CORPUS = None


def _corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = corpus()
    return _CORPUS


def ring(M, aug):
    key = (M.name, aug)
    if key not in _RINGS:
        _RINGS[key] = chow.ChowRing(M, augmented=aug)
    return _RINGS[key]


def oracle(M, aug):
    key = (M.name, aug)
    if key not in _ORACLES:
        P = (chow.presentation_augmented_atom_free if aug else chow.presentation_atom_free)(M)
        _ORACLES[key] = build(P)
    return _ORACLES[key]


def _trim(dims):
    dims = list(dims)
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims


def _run(func):
    try:
        return func()
    except Exception as exc:  # report, then fail the test
        return False, f"raised {type(exc).__name__}: {exc}"


def _tag(M, aug):
    return f"{'aChow' if aug else 'Chow'}({M.name})"


# -- 1 ----------------------------------------------------------------------------

FIGURE2_FLATS = [
    "", "1", "2", "3", "4", "5",
    "12", "13", "14", "15", "23", "24", "25", "34", "35", "45",
    "1234", "125", "135", "145", "235", "245", "345", "12345",
]
FIGURE2_COATOMS = ["1234", "125", "135", "235", "145", "245", "345"]


def criterion_1():
    t = time.time()
    L = LatticeOfFlats(figure2_matroid())
    flats = sorted(set_label(F) if F else "" for F in L.elements)
    coat = [set_label(L.elements[g]) for g in sorted(L.down[L.top], reverse=True)]
    dt = time.time() - t
    ok = flats == sorted(FIGURE2_FLATS) and coat == FIGURE2_COATOMS and dt < LIMIT_FIGURE2
    return ok, f"{len(flats)} flats, coatoms {' > '.join(coat)}, {dt:.2f}s"


# -- 2 ----------------------------------------------------------------------------

def criterion_2():
    t = time.time()
    bad = []
    for M in _corpus():
        rep = verify_total_coatom_order(LatticeOfFlats(M))
        if not rep["ok"]:
            bad.append((M.name, rep["property"]))
    dt = time.time() - t
    ok = not bad and dt < LIMIT_COATOM_ORDER
    return ok, f"{len(_corpus())} matroids, failures {bad}, {dt:.1f}s"


# -- 3 ----------------------------------------------------------------------------

def criterion_3():
    t = time.time()
    bad = []
    for M in _corpus():
        for aug in (False, True):
            R, Q = ring(M, aug), oracle(M, aug)
            counts = [len(R.nested_basis(d)) for d in range(len(R.dims))]
            if R.names != Q.names or _trim(counts) != _trim(Q.dims):
                bad.append(_tag(M, aug))
    dt = time.time() - t
    ok = not bad and dt < LIMIT_NESTED_BASIS
    return ok, f"{2 * len(_corpus())} rings, mismatches {bad}, {dt:.1f}s"


# -- 4 ----------------------------------------------------------------------------

def criterion_4():
    bad = []
    for M in _corpus():
        for aug in (False, True):
            R, Q = ring(M, aug), oracle(M, aug)
            dims = _trim(Q.dims)
            top = len(dims) - 1
            soc = socle(Q)
            expected_top = M.rank() if aug else M.rank() - 1
            problems = []
            if dims != dims[::-1]:
                problems.append("HF not symmetric")
            if soc.dims()[:top + 1] != [0] * top + [1]:
                problems.append(f"socle {soc.dims()}")
            if top != expected_top:
                problems.append(f"top degree {top}")
            if top > 0:
                v = Q.polynomial({(R.var_of[R.top_flat()],) * expected_top: 1})
                if not v[1] or not soc.contains(v):
                    problems.append("x_E power does not span the socle")
            if pairing_ranks(Q) != dims:
                problems.append("pairing not perfect")
            if problems:
                bad.append((_tag(M, aug), problems))
    return not bad, f"{2 * len(_corpus())} rings, failures {bad}"


# -- 5 ----------------------------------------------------------------------------

def _hyperplane_instances(R, rng, exhaustive):
    L = R.L
    hyp = [h for h in L.down[L.top] if h in R.var_of]
    sets = []
    if not hyp:
        return hyp, sets
    if exhaustive:
        for k in range(1, len(hyp) + 1):
            sets.extend(combinations(hyp, k))
    else:
        for _ in range(COLON_SAMPLES_PER_KIND):
            k = rng.randint(1, len(hyp))
            sets.append(tuple(sorted(rng.sample(hyp, k))))
    return hyp, sets


def _upset_families(R, F, rng, exhaustive):
    L = R.L
    above = [g for g in R.var_flats if L.leq(F, g) and g != F]
    free = [g for g in R.var_flats if not L.leq(F, g) and not L.leq(g, F)]
    if exhaustive and len(free) <= 10:
        picks = [c for k in range(len(free) + 1) for c in combinations(free, k)]
    else:
        picks = [(), tuple(free)]
        picks += [tuple(g for g in free if rng.random() < 0.5) for _ in range(2)]
    return [above + list(p) for p in picks]


def _restriction_dims(M, flat, aug, cache):
    key = (json.dumps(M.to_spec(), sort_keys=True), tuple(sorted(flat)), aug)
    if key not in cache:
        N = restriction(M, flat)
        P = (chow.presentation_augmented_atom_free if aug else chow.presentation_atom_free)(N)
        cache[key] = _trim(build(P).dims)
    return cache[key]


def _colon_instances(M, aug, rng, exhaustive, counts, bad, cache):
    R, Q = ring(M, aug), oracle(M, aug)
    L = R.L
    one_var = lambda f: {(R.var_of[f],): 1}

    def check(kind, desc, expected):
        counts[kind] = counts.get(kind, 0) + 1
        if not equals_ideal(desc.span(Q), expected):
            bad.append((_tag(M, aug), kind, desc.describe()))

    # annihilator of x_E
    if L.top in R.var_of:
        check("top", chow.annihilator_of_top(R),
              annihilator_of_elements(Q, [one_var(L.top)]))
    # kernel of restriction to F: compare the quotient with the restricted ring
    flats = R.var_flats if exhaustive else rng.sample(R.var_flats, min(COLON_SAMPLES_PER_KIND,
                                                                       len(R.var_flats)))
    for F in flats:
        counts["restriction"] = counts.get("restriction", 0) + 1
        desc = chow.restriction_kernel(R, F)
        got = _trim(desc.span(Q).quotient_dims())
        if got != _restriction_dims(M, L.elements[F], aug, cache):
            bad.append((_tag(M, aug), "restriction", desc.describe()))
    # up-set colons
    for F in flats:
        for fam in _upset_families(R, F, rng, exhaustive):
            J = ideal_span(Q, [one_var(g) for g in fam])
            check("upset", chow.upset_colon(R, fam, F), colon(Q, J, one_var(F)))
    hyp, sets = _hyperplane_instances(R, rng, exhaustive)
    singles = hyp if exhaustive else rng.sample(hyp, min(COLON_SAMPLES_PER_KIND, len(hyp)))
    for H in singles:
        check("hyperplane", chow.annihilator_of_hyperplane(R, H),
              annihilator_of_elements(Q, [one_var(H)]))
    for hs in sets:
        check("hyperplanes", chow.annihilator_of_hyperplanes(R, hs),
              annihilator_of_elements(Q, [one_var(H) for H in hs]))
        J = None
        for Hp in hyp:
            if Hp in hs:
                continue
            try:
                desc = chow.hyperplane_set_colon(R, hs, Hp)
            except chow.CoveringConditionViolated:
                counts["not applicable"] = counts.get("not applicable", 0) + 1
                continue
            if J is None:
                J = ideal_span(Q, [one_var(H) for H in hs])
            check("hyperplane-set", desc, colon(Q, J, one_var(Hp)))
            if not exhaustive:
                break


def criterion_5():
    rng = random.Random(SEED)
    small, large, bad, cache = {}, {}, [], {}
    for M in _corpus():
        for aug in (False, True):
            if M.n <= 4:
                _colon_instances(M, aug, rng, True, small, bad, cache)
            else:
                _colon_instances(M, aug, rng, False, large, bad, cache)
    sampled = sum(v for k, v in large.items() if k != "not applicable")
    ok = not bad and sampled >= COLON_SAMPLES_MIN
    return ok, (f"n<=4 exhaustive {small}; n=5-6 sampled {sampled} {large}; "
                f"mismatches {bad[:3]}")


# -- 6 ----------------------------------------------------------------------------

def criterion_6():
    t = time.time()
    M = lookup("U5,6")
    R, Q = ring(M, False), oracle(M, False)
    v = lambda *flats: {tuple(sorted(R.var_of[R.flat(f)] for f in flats)): 1}
    Hp = {1, 2, 5, 6}
    ann = annihilator_of_elements(Q, [v(Hp)])
    quad = v({1, 2}, Hp)

    def quadratic_is_minimal(I):
        lin = ideal_span(Q, [(1, w) for w in I.basis(1)])
        return not lin.contains(Q.polynomial(quad)) and I.contains(Q.polynomial(quad))

    first = colon(Q, ideal_span(Q, [v({1, 2, 3, 4})]), v(Hp))
    want1 = ann + ideal_span(Q, [quad])
    ok1 = equals_ideal(first, want1) and quadratic_is_minimal(first)
    cycle = [{1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6}, {1, 4, 5, 6}, {1, 2, 3, 6}]
    second = colon(Q, ideal_span(Q, [v(H) for H in cycle]), v(Hp))
    want2 = ann + ideal_span(Q, [v({1, 2, 5}), v({1, 2, 6}), quad])
    ok2 = equals_ideal(second, want2) and quadratic_is_minimal(second)
    ok2 = ok2 and not is_generated_by_linear_forms(second)[0]
    dt = time.time() - t
    return ok1 and ok2 and dt < LIMIT_EXAMPLE_46, \
        f"single colon {ok1}, 6-cycle colon {ok2}, {dt:.1f}s"


# -- 7 ----------------------------------------------------------------------------

def criterion_7():
    t = time.time()
    failed, over, skipped, passed = [], [], [], 0
    for M in _corpus():
        for aug in (False, True):
            # past the time limit the criterion has failed; the rest are listed, not run
            if time.time() - t > LIMIT_KOSZUL:
                skipped.append(_tag(M, aug))
                continue
            R = ring(M, aug)
            try:
                rep = koszul_certificate(R, KOSZUL_IMAX, budget=KOSZUL_BUDGET)
            except BudgetExceeded:
                over.append(_tag(M, aug))
                continue
            if rep["pass"] and rep["matches_series"]:
                passed += 1
            else:
                failed.append((_tag(M, aug), rep["nonlinear"]))
    # U3,3 appears in the corpus as B3
    u33 = koszul_certificate(chow.chow_ring(lookup("B3")), 3)["betti_totals"]
    if u33 != [1, 4, 15, 56]:
        failed.append(("Chow(U3,3)", u33))
    dt = time.time() - t
    ok = not failed and not over and not skipped and dt < LIMIT_KOSZUL
    return ok, (f"certified {passed}/{2 * len(_corpus())} rings to i={KOSZUL_IMAX}; "
                f"over budget {len(over)} {over}; not attempted after "
                f"{LIMIT_KOSZUL}s {skipped}; failures {failed}; {dt:.0f}s")


# -- 8 ----------------------------------------------------------------------------

def criterion_8():
    bad, steps = [], 0
    for M in _corpus():
        for aug in (False, True):
            rep = verify_filtration(ring(M, aug), oracle=oracle(M, aug))
            steps += rep["steps"]
            if not (rep["pass"] and rep["complete"]):
                bad.append((_tag(M, aug), rep["violations"][:1]))
    return not bad, f"{2 * len(_corpus())} rings, {steps} witness steps, failures {bad}"


# -- 9 ----------------------------------------------------------------------------

def criterion_9():
    t = time.time()
    L = LatticeOfFlats(lookup("B3"))
    G = [L.idx(frozenset(s)) for s in ({1}, {2}, {3}, {1, 2, 3})]
    D1 = build(dlg_presentation(L, G))
    r1 = koszul_certificate(D1, 3)
    L2 = LatticeOfFlats(lookup("C4"))
    D2 = build(dlg_presentation(L2, minimal_building_set(L2)))
    r2 = koszul_certificate(D2, 3)
    L3 = lattice_from_json(FIGURE3_LATTICE)
    D3 = build(dlg_presentation(L3, list(range(1, len(L3)))))
    r3 = koszul_certificate(D3, KOSZUL_IMAX)
    soc3 = sum(socle(D3).dims())
    dt = time.time() - t
    ok = (_trim(D1.dims) == [1, 1, 1] and r1["betti"][2, 3] == 1 and not r1["linear"]
          and _trim(D2.dims) == [1, 1, 1] and r2["betti"][2, 3] == 1 and not r2["linear"]
          and _trim(D3.dims) == [1, 3] and r3["pass"] and soc3 == 3
          and dt < LIMIT_COUNTEREXAMPLES)
    return ok, (f"D(B3) HF {D1.dims} b23={r1['betti'][2, 3]}; D(C4,Gmin) HF {D2.dims} "
                f"b23={r2['betti'][2, 3]}; figure-3 HF {D3.dims} koszul={r3['pass']} "
                f"socle={soc3}; {dt:.1f}s")


# -- 10 ---------------------------------------------------------------------------

def criterion_10():
    bad, rows = [], 0
    for M in _corpus():
        for aug in (False, True):
            found, verdict = chow.quotient_isomorphism_checks(M, aug)
            rows += len(found)
            if not verdict:
                bad.append((_tag(M, aug), [r for r in found if r[1] != r[2]][:1]))
    return not bad, f"{rows} quotient comparisons, failures {bad}"


# -- 11 ---------------------------------------------------------------------------

def criterion_11():
    bad = []
    checked = 0
    for M in _corpus():
        if M.n <= 5:
            C = free_coextension(M)
            e = C.n
            flats = {frozenset(F) for F in C.flats()}
            predicted = set()
            for k in range(M.rank() + 1):
                for S in combinations(range(1, M.n + 1), k):
                    if M.is_independent(S):
                        predicted.add(frozenset(S))
            for F in M.flats():
                predicted.add(frozenset(F) | {e})
            checked += 1
            if flats != predicted:
                bad.append((M.name, "flats"))
        C, L, G = free_coextension_building_set(M)
        ok, w = is_building_set(L, G)
        if not ok:
            bad.append((M.name, "building set", w))
            continue
        D = build(dlg_presentation(L, G, check=False))
        if _trim(D.dims) != _trim(ring(M, True).dims):
            bad.append((M.name, "HF", D.dims))
    return not bad, f"flats checked for {checked} matroids, G_aug for {len(_corpus())}; failures {bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _check(number, record):
    ok, detail = _run(CRITERIA[number - 1])
    record(number, ok, detail)
    assert ok, detail


def test_criterion_01_figure2(record_criterion):
    _check(1, record_criterion)


def test_criterion_02_total_coatom_order(record_criterion):
    _check(2, record_criterion)


def test_criterion_03_nested_basis_vs_oracle(record_criterion):
    _check(3, record_criterion)


def test_criterion_04_gorenstein(record_criterion):
    _check(4, record_criterion)


def test_criterion_05_closed_form_colons(record_criterion):
    _check(5, record_criterion)


def test_criterion_06_u56_colons(record_criterion):
    _check(6, record_criterion)


def test_criterion_07_koszul_certificates(record_criterion):
    _check(7, record_criterion)


def test_criterion_08_filtration_walk(record_criterion):
    _check(8, record_criterion)


def test_criterion_09_building_set_examples(record_criterion):
    _check(9, record_criterion)


def test_criterion_10_quotient_isomorphisms(record_criterion):
    _check(10, record_criterion)


def test_criterion_11_free_coextension(record_criterion):
    _check(11, record_criterion)


if __name__ == "__main__":
    def _print(number, ok, detail):
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)

    for k, func in enumerate(CRITERIA, 1):
        _print(k, *_run(func))
