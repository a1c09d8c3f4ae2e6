"""Command line interface.

    chowforge chow hilbert --uniform 3,3
    chowforge koszul certify --uniform 3,3 --imax 3
    chowforge dlg certify --lattice b3.json --building 1,2,3,123 --imax 3

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget or
cutoff exceeded.  ``--json PATH`` writes a machine-readable report; the
coefficient field defaults to $CHOWFORGE_FIELD (``Q`` or a prime).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import building as bld
from . import chow
from .corpus import corpus, figure3_lattice, lookup
from .io import dump_json, element_to_json, flat_from_text, load_json, parse_polynomial
from .koszul import WalkBudgetExceeded, verify_filtration
from .lattice import LatticeError, LatticeOfFlats, lattice_from_json, verify_total_coatom_order
from .matroid import MatroidError, boolean, from_spec, set_label, uniform
from .quotient import (QuotientError, build, colon, equals_ideal, ideal_span,
                       annihilator_of_elements, socle)
from .resolution import BudgetExceeded, CutoffExceeded, betti_of_residue_field, koszul_certificate
from .series import format_poly

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- sources -------------------------------------------------------------------

def _field(text):
    if text is None or str(text).upper() in ("Q", "QQ", ""):
        return None
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"--field: expected Q or a prime, got {text!r}") from None
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise UsageError(f"--field: {p} is not prime")
    return p


def _add_source(p, lattice=False):
    g = p.add_argument_group("source")
    g.add_argument("--uniform", metavar="R,N", help="uniform matroid U_{R,N}")
    g.add_argument("--boolean", metavar="N", type=int, help="Boolean matroid B_N")
    g.add_argument("--matroid", metavar="FILE", help="matroid specification (JSON)")
    g.add_argument("--spec", metavar="JSON", help="inline matroid specification")
    g.add_argument("--name", metavar="NAME", help="built-in corpus matroid (e.g. fig2, U5,6, C4)")
    if lattice:
        g.add_argument("--lattice", metavar="FILE",
                       help="raw lattice {elements, covers} (JSON); 'figure3' for the built-in one")


def _matroid(args):
    given = [k for k in ("uniform", "boolean", "matroid", "spec", "name")
             if getattr(args, k, None) is not None]
    if getattr(args, "lattice", None) is not None:
        given.append("lattice")
    if len(given) != 1:
        raise UsageError("give exactly one source (--uniform, --boolean, --matroid, --spec, --name"
                         + (", --lattice" if hasattr(args, "lattice") else "") + ")")
    src = given[0]
    try:
        if src == "uniform":
            r, n = (int(x) for x in args.uniform.split(","))
            return uniform(r, n)
        if src == "boolean":
            return boolean(args.boolean)
        if src == "matroid":
            return from_spec(load_json(args.matroid))
        if src == "spec":
            import json
            return from_spec(json.loads(args.spec))
        if src == "name":
            return lookup(args.name)
    except (ValueError, OSError) as exc:
        raise UsageError(f"--{src}: {exc}") from None
    return None


def _lattice_or_matroid(args):
    if getattr(args, "lattice", None) is not None:
        if args.lattice == "figure3":
            return figure3_lattice(), None
        try:
            return lattice_from_json(load_json(args.lattice)), None
        except (ValueError, OSError, KeyError) as exc:
            raise UsageError(f"--lattice: {exc}") from None
    M = _matroid(args)
    return LatticeOfFlats(M), M


def _ring(args, augmented):
    M = _matroid(args)
    return chow.ChowRing(M, augmented=augmented, p=_field(args.field))


def _emit(args, report, text):
    print(text)
    if getattr(args, "json", None):
        dump_json(report, args.json)


# -- matroid / lattice ---------------------------------------------------------

def cmd_matroid_info(args):
    M = _matroid(args)
    levels = M.flat_masks()
    report = {"name": M.name, "ground": M.n, "rank": M.rank(), "simple": M.is_simple(),
              "flats_per_rank": [len(x) for x in levels], "spec": M.to_spec()}
    text = (f"matroid {M.name or '(unnamed)'}: n = {M.n}, rank = {M.rank()}, "
            f"simple = {M.is_simple()}\nflats per rank: {report['flats_per_rank']}")
    _emit(args, report, text)
    return EXIT_OK


def cmd_lattice_show(args):
    L, M = _lattice_or_matroid(args)
    lines, by_rank = [], {}
    for i, x in enumerate(L.elements):
        by_rank.setdefault(L.rank[i], []).append(L.label(x))
    for r in sorted(by_rank, reverse=True):
        lines.append(f"rank {r}: " + " ".join(by_rank[r]))
    _emit(args, L.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_lattice_order(args):
    L, M = _lattice_or_matroid(args)
    F = L.top if args.flat is None else L.idx(flat_from_text(args.flat))
    coat = sorted(L.down[F], reverse=True)
    labels = [L.label(L.elements[g]) for g in coat]
    _emit(args, {"flat": L.label(L.elements[F]), "coatoms_descending": labels},
          " > ".join(labels))
    return EXIT_OK


def cmd_lattice_verify(args):
    L, M = _lattice_or_matroid(args)
    rep = verify_total_coatom_order(L)
    if rep["ok"]:
        text = f"total coatom order: pass ({rep['checked']} elements checked)"
    else:
        text = f"total coatom order: FAIL, property ({rep['property']}), witness {rep['witness']}"
    _emit(args, rep, text)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


# -- chow / achow ----------------------------------------------------------------

def cmd_hilbert(args):
    R = _ring(args, args.augmented)
    _emit(args, {"hilbert_function": R.dims}, format_poly(R.dims))
    return EXIT_OK


def cmd_basis(args):
    R = _ring(args, args.augmented)
    degs = range(len(R.dims)) if args.degree is None else [args.degree]
    lines, report = [], {}
    for d in degs:
        mons = R.nested_basis(d)
        report[str(d)] = [R.format_nested(m) for m in mons]
        lines.append(f"degree {d} ({len(mons)}): " + ", ".join(report[str(d)]))
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_multiply(args):
    R = _ring(args, args.augmented)
    try:
        a = R.normal_form(parse_polynomial(R, args.a))
        b = R.normal_form(parse_polynomial(R, args.b)) if args.b else None
    except (ValueError, QuotientError) as exc:
        raise UsageError(f"--a/--b: {exc}") from None
    res = R.multiply_nested(a, b) if b is not None else a
    _emit(args, element_to_json(R, res), R.format_nested_element(res))
    return EXIT_OK


def cmd_groebner(args):
    R = _ring(args, args.augmented)
    gb = chow.groebner_basis(R)
    lines = ["variable order (largest first): " + " > ".join(R.names)]
    rep = {"variables": R.names, "order": "lex", "elements": []}
    for fam, poly in gb:
        text = " + ".join(
            (f"{c}*" if c != 1 else "") + "*".join(R.names[k] for k in m)
            for m, c in sorted(poly.items()))
        lines.append(f"[{fam}] {text}")
        rep["elements"].append({"family": fam, "polynomial": text})
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK


def _flat_index(R, text, flag):
    try:
        return R.flat(flat_from_text(text))
    except (LatticeError, ValueError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_colon(args):
    R = _ring(args, args.augmented)
    L = R.L
    kind = args.kind
    hs = [_flat_index(R, t, "--set") for t in args.set.split(";")] if args.set else []
    try:
        if kind == "top":
            desc = chow.annihilator_of_top(R)
            brute = annihilator_of_elements(R, [R.x(L.elements[L.top])])
        elif kind == "restriction":
            F = _flat_index(R, args.flat, "--flat")
            desc = chow.restriction_kernel(R, F)
            brute = None
        elif kind == "upset":
            F = _flat_index(R, args.flat, "--flat")
            fam = hs or [g for g in R.var_flats if L.leq(F, g) and g != F]
            desc = chow.upset_colon(R, fam, F)
            J = ideal_span(R, [{(R.var_of[g],): 1} for g in fam])
            brute = colon(R, J, {(R.var_of[F],): 1})
        elif kind == "hyperplane":
            H = _flat_index(R, args.flat, "--flat")
            desc = chow.annihilator_of_hyperplane(R, H)
            brute = annihilator_of_elements(R, [{(R.var_of[H],): 1}])
        elif kind == "hyperplanes":
            desc = chow.annihilator_of_hyperplanes(R, hs)
            brute = annihilator_of_elements(R, [{(R.var_of[H],): 1} for H in hs])
        else:
            Hp = _flat_index(R, args.hprime, "--hprime")
            J = ideal_span(R, [{(R.var_of[H],): 1} for H in hs])
            brute = colon(R, J, {(R.var_of[Hp],): 1})
            desc = chow.hyperplane_set_colon(R, hs, Hp)
    except chow.CoveringConditionViolated as exc:
        gens = [R.format_element(g) for g in brute.minimal_generators()]
        H, Hp = exc.witness
        text = (f"closed form does not apply: covering condition fails for "
                f"{set_label(H)} against {set_label(Hp)}\n"
                f"brute-force colon generators: " + ", ".join(gens))
        _emit(args, {"applies": False, "brute_force_generators": gens}, text)
        return EXIT_FAIL
    except (chow.NotAHyperplane, chow.NotApplicable) as exc:
        raise UsageError(str(exc)) from None
    text = desc.describe()
    ok = True
    if brute is not None:
        ok = equals_ideal(desc.span(), brute)
        text += f"\nbrute-force check: {'pass' if ok else 'FAIL'}"
    _emit(args, {"applies": True, "generators": [list(m) for m in desc.monomials],
                 "description": desc.describe(), "checked": brute is not None, "ok": ok}, text)
    return EXIT_OK if ok else EXIT_FAIL


# -- koszul -----------------------------------------------------------------------

def _certify_text(rep):
    t = rep["betti"]
    lines = [f"Hilbert function: {rep['hilbert_function']}",
             "Betti table (rows j - i):", t.to_text(),
             "beta_i = " + ", ".join(str(b) for b in rep["betti_totals"]),
             f"1/HS(-t) = {format_poly(rep['poincare'].coeffs)} + ...",
             f"linear to homological degree {rep['i_max']}: {rep['linear']}",
             f"Poin(t) HS(-t) = 1 mod t^{rep['i_max'] + 1}: {rep['froberg']}"]
    if rep["nonlinear"]:
        lines.append("nonlinear: " + ", ".join(f"beta[{i},{j}] = {v}" for i, j, v in rep["nonlinear"]))
    lines.append("PASS" if rep["pass"] else "FAIL")
    return "\n".join(lines)


def _certify_json(rep):
    return {"hilbert_function": rep["hilbert_function"], "i_max": rep["i_max"],
            "betti": rep["betti"].to_json(), "betti_totals": rep["betti_totals"],
            "poincare": rep["poincare"].to_json(), "linear": rep["linear"],
            "froberg": rep["froberg"], "pass": rep["pass"]}


def _certify(args, A):
    try:
        rep = koszul_certificate(A, args.imax, budget=args.budget)
    except BudgetExceeded as exc:
        _emit(args, {"pass": False, "budget_exceeded": str(exc)}, f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except CutoffExceeded as exc:
        _emit(args, {"pass": False, "cutoff_exceeded": str(exc)}, f"cutoff exceeded: {exc}")
        return EXIT_BUDGET
    _emit(args, _certify_json(rep), _certify_text(rep))
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_koszul_certify(args):
    return _certify(args, _ring(args, args.augmented))


def cmd_koszul_betti(args):
    A = _ring(args, args.augmented)
    try:
        t = betti_of_residue_field(A, args.imax, args.jmax, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    _emit(args, t.to_json(), t.to_text())
    return EXIT_OK


def cmd_koszul_filtration(args):
    R = _ring(args, args.augmented)
    oracle = None
    if args.oracle:
        P = (chow.presentation_augmented_atom_free if args.augmented
             else chow.presentation_atom_free)(R.matroid, p=R.p)
        oracle = build(P)
    try:
        rep = verify_filtration(R, budget=args.budget, oracle=oracle)
    except WalkBudgetExceeded as exc:
        _emit(args, exc.report, f"walk budget exceeded: {exc}")
        return EXIT_BUDGET
    text = (f"filtration walk: {rep['visited']} ideals, {rep['steps']} steps, "
            f"{'pass' if rep['pass'] else 'FAIL'}")
    for v in rep["violations"]:
        text += f"\n  violation at {v['ideal']}: {v['problem']}"
    _emit(args, rep, text)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


# -- dlg ----------------------------------------------------------------------------

def _building(args, L, M):
    spec = args.building
    if spec in (None, "max"):
        return L, bld.maximal_building_set(L)
    if spec == "min":
        return L, bld.minimal_building_set(L)
    if spec == "aug":
        if M is None:
            raise UsageError("--building aug needs a matroid source")
        _, Lc, G = bld.free_coextension_building_set(M)
        return Lc, G
    labels = {L.label(x): i for i, x in enumerate(L.elements)}
    out = []
    for t in spec.split(","):
        t = t.strip()
        if t not in labels:
            raise UsageError(f"--building: {t!r} is not an element of the lattice")
        out.append(labels[t])
    return L, out


def _dlg(args):
    L, M = _lattice_or_matroid(args)
    L, G = _building(args, L, M)
    ok, w = bld.is_building_set(L, G)
    if not ok:
        return None, None, w
    P = bld.dlg_presentation(L, G, p=_field(args.field), check=False)
    return P, L, G


def cmd_dlg_build(args):
    P, L, G = _dlg(args)
    if P is None:
        _emit(args, {"building_set": False, "witness": str(G)}, f"not a building set: {G}")
        return EXIT_FAIL
    Q = build(P)
    soc = socle(Q)
    rels = [P.format_relation(r) for r in P.relations]
    text = (f"variables: {', '.join(P.names)}\nrelations:\n  " + "\n  ".join(rels)
            + f"\nHilbert function: {Q.dims}\nsocle dimension: {sum(soc.dims())}")
    _emit(args, {"presentation": P.to_json(), "hilbert_function": Q.dims,
                 "socle_dimension": sum(soc.dims())}, text)
    return EXIT_OK


def cmd_dlg_certify(args):
    P, L, G = _dlg(args)
    if P is None:
        _emit(args, {"building_set": False, "witness": str(G)}, f"not a building set: {G}")
        return EXIT_FAIL
    return _certify(args, build(P))


# -- corpus -------------------------------------------------------------------------

def _corpus_job(job):
    k, M, imax, walk, budget = job
    L = LatticeOfFlats(M)
    row = {"index": k, "name": M.name, "ground": M.n, "rank": M.rank(),
           "coatom_order": verify_total_coatom_order(L)["ok"]}
    for aug in (False, True):
        R = chow.ChowRing(M, augmented=aug)
        tag = "achow" if aug else "chow"
        row[tag + "_hilbert"] = R.dims
        if walk:
            row[tag + "_filtration"] = verify_filtration(R)["pass"]
        if imax is not None:
            try:
                row[tag + "_koszul"] = koszul_certificate(R, imax, budget=budget)["pass"]
            except BudgetExceeded:
                row[tag + "_koszul"] = "budget"
    return row


def cmd_corpus_list(args):
    rows = [{"index": k, "name": M.name, "ground": M.n, "rank": M.rank()}
            for k, M in enumerate(corpus())]
    _emit(args, rows, "\n".join(f"{r['name']}: n = {r['ground']}, rank {r['rank']}" for r in rows))
    return EXIT_OK


def cmd_corpus_run(args):
    jobs = [(k, M, args.imax, args.filtration, args.budget)
            for k, M in enumerate(corpus(extras=not args.small))]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_corpus_job, jobs))
    else:
        rows = [_corpus_job(j) for j in jobs]
    rows.sort(key=lambda r: r["index"])
    lines, failed, budget = [], False, False
    for r in rows:
        bits = [f"{r['name']}", f"order={'ok' if r['coatom_order'] else 'FAIL'}",
                f"chow={r['chow_hilbert']}", f"achow={r['achow_hilbert']}"]
        failed |= not r["coatom_order"]
        for key in ("chow_filtration", "achow_filtration", "chow_koszul", "achow_koszul"):
            if key in r:
                bits.append(f"{key}={r[key]}")
                budget |= r[key] == "budget"
                failed |= r[key] is False
        lines.append("  ".join(bits))
    _emit(args, rows, "\n".join(lines))
    if failed:
        return EXIT_FAIL
    return EXIT_BUDGET if budget else EXIT_OK


# -- parser -------------------------------------------------------------------------

def make_parser():
    env_field = os.environ.get("CHOWFORGE_FIELD", "Q")
    common = _Parser(add_help=False)
    common.add_argument("--field", default=env_field,
                        help="coefficient field: Q or a prime (default $CHOWFORGE_FIELD or Q)")
    common.add_argument("--json", metavar="PATH", help="also write a JSON report")

    parser = _Parser(prog="chowforge", description="Chow rings of matroids and their Koszul property")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def action(group, name, func, help_text, source=True, lattice=False):
        p = group.add_parser(name, parents=[common], help=help_text)
        if source:
            _add_source(p, lattice=lattice)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("matroid", help="matroid queries").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    action(g, "info", cmd_matroid_info, "rank, flats and simplicity")

    g = groups.add_parser("lattice", help="lattices of flats").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    action(g, "show", cmd_lattice_show, "elements by rank", lattice=True)
    p = action(g, "order", cmd_lattice_order, "coatoms of a flat in descending order", lattice=True)
    p.add_argument("--flat", help="flat whose coatoms to list (default: the top)")
    action(g, "verify-order", cmd_lattice_verify, "check both total coatom order properties",
           lattice=True)

    for ring, aug in (("chow", False), ("achow", True)):
        g = groups.add_parser(ring, help=("augmented " if aug else "") + "Chow ring").add_subparsers(
            dest="action", required=True, parser_class=_Parser)
        for name, func, h in (("hilbert", cmd_hilbert, "Hilbert series"),
                              ("groebner", cmd_groebner, "explicit Gröbner basis")):
            action(g, name, func, h).set_defaults(augmented=aug)
        p = action(g, "basis", cmd_basis, "nested monomial basis")
        p.add_argument("--degree", type=int)
        p.set_defaults(augmented=aug)
        p = action(g, "multiply", cmd_multiply, "normal form of a product")
        p.add_argument("--a", required=True, help="polynomial, e.g. 'x_12*x_123 - x_13'")
        p.add_argument("--b", help="second factor (omit to reduce --a alone)")
        p.set_defaults(augmented=aug)
        p = action(g, "colon", cmd_colon, "closed-form colon ideals, checked by linear algebra")
        p.add_argument("--kind", required=True,
                       choices=["top", "restriction", "upset", "hyperplane", "hyperplanes",
                                "hyperplane-set"])
        p.add_argument("--flat", help="flat F (or hyperplane H)")
        p.add_argument("--set", help="flats separated by ';' (hyperplane set or up-set)")
        p.add_argument("--hprime", help="hyperplane H' for --kind hyperplane-set")
        p.set_defaults(augmented=aug)

    g = groups.add_parser("koszul", help="Koszul certificates").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func, h in (("certify", cmd_koszul_certify, "linear resolution to --imax"),
                          ("betti", cmd_koszul_betti, "Betti table of the residue field"),
                          ("filtration", cmd_koszul_filtration, "walk the Koszul filtration")):
        p = action(g, name, func, h)
        p.add_argument("--augmented", action="store_true")
        p.add_argument("--imax", type=int, default=4)
        p.add_argument("--budget", type=int, default=None,
                       help="coordinate budget (certify/betti) or step budget (filtration)")
        if name == "betti":
            p.add_argument("--jmax", type=int, default=None)
        if name == "filtration":
            p.add_argument("--oracle", action="store_true",
                           help="check against the brute-force presentation quotient")

    g = groups.add_parser("dlg", help="rings D(L, G) of building sets").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func in (("build", cmd_dlg_build), ("certify", cmd_dlg_certify)):
        p = action(g, name, func, f"{name} D(L, G)", lattice=True)
        p.add_argument("--building", help="element labels separated by commas, or min, max, aug")
        if name == "certify":
            p.add_argument("--imax", type=int, default=4)
            p.add_argument("--budget", type=int, default=None)

    g = groups.add_parser("corpus", help="the built-in matroid corpus").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    action(g, "list", cmd_corpus_list, "list corpus matroids", source=False)
    p = action(g, "run", cmd_corpus_run, "batch checks over the corpus", source=False)
    p.add_argument("--imax", type=int, default=None, help="also certify Koszulness to this degree")
    p.add_argument("--budget", type=int, default=200000)
    p.add_argument("--filtration", action="store_true", help="also walk the Koszul filtration")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--small", action="store_true", help="skip U5,6 and the Figure-2 matroid")
    return parser


def run(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        _field(args.field)
        return args.func(args)
    except UsageError as exc:
        print(f"chowforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatroidError, LatticeError, bld.BuildingError, chow.ChowError, QuotientError) as exc:
        print(f"chowforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
