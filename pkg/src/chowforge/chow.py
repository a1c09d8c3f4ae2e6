"""Chow rings and augmented Chow rings of matroids, atom-free presentation.

Variables are ``x_F`` for flats F of rank at least 2 (Chow ring) or for all
nonempty flats (augmented Chow ring).  Both rings have an explicit Gröbner
basis for any lex order in which ``x_F > x_G`` forces ``F ⊉ G``:

    x_F x_F'                          F, F' incomparable
    x_F' (sum_{G ⊇ F} x_G)^(rk F - rk F')     F' ⊊ F
    (sum_{G ⊇ F} x_G)^(rk F)          (rk F + 1 in the augmented ring)

so the standard monomials are the *nested monomials*: products over a chain
F_1 ⊋ ... ⊋ F_r whose exponents stay below the rank gaps.  ``ChowRing``
reduces any monomial to nested ones by rewriting leading terms with these
three families directly, expanding the power sums lazily and only over
chains that can survive.

Variable order: rank ascending, and within a rank the coatom order
descending.  Index 0 is the largest variable.
"""

from __future__ import annotations

from itertools import combinations
from math import factorial

from gmpy2 import mpq

from .lattice import LatticeOfFlats, coat_restricted
from .linalg import axpy, coerce
from .matroid import NotSimple, set_label, simplify, truncation, restriction
from .quotient import GradedAlgebra, PresentedAlgebra


class ChowError(ValueError):
    pass


class NotAHyperplane(ChowError):
    pass


class CoveringConditionViolated(ChowError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotApplicable(ChowError):
    pass


def _multinomial_chains(ups, k, comparable):
    """All (chain, exponents) with flats from ``ups`` forming a chain, all
    exponents positive and summing to k, together with the multinomial
    coefficient.  ``ups`` is sorted by rank; ``comparable[i]`` is a bitmask.
    """
    out = []

    def rec(start, chosen, mask, left):
        if left == 0:
            coef = factorial(k)
            for _, e in chosen:
                coef //= factorial(e)
            out.append((tuple(chosen), coef))
            return
        for j in range(start, len(ups)):
            G = ups[j]
            if not mask >> G & 1:
                continue
            for e in range(1, left + 1):
                chosen.append((G, e))
                rec(j + 1, chosen, mask & comparable[G], left - e)
                chosen.pop()

    rec(0, [], -1, k)
    return out


class ChowRing(GradedAlgebra):
    """Chow ring (or augmented Chow ring) of a simple matroid.

    Basis: nested monomials, stored as tuples ``((flat, exp), ...)`` with
    flats (lattice indices) in decreasing rank.  ``basis[d]`` lists them in
    degree d, sorted; coefficients live in the field given by ``p``.
    """

    def __init__(self, M, augmented=False, p=None, lattice=None):
        if not M.is_simple():
            raise NotSimple("the atom-free presentation needs a simple matroid")
        self.matroid = M
        self.augmented = augmented
        self.p = p
        L = lattice if lattice is not None else LatticeOfFlats(M)
        self.L = L
        self.rk = M.rank()
        lo = 1 if augmented else 2
        flats = [i for i in range(len(L)) if L.rank[i] >= lo]
        # rank ascending, coatom order descending within a rank
        flats.sort(key=lambda i: (L.rank[i], -i))
        self.var_flats = flats
        self.var_of = {f: k for k, f in enumerate(flats)}
        self.names = ["x_" + set_label(L.elements[f]) for f in flats]
        n = len(L)
        self._comparable = [L.below[i] | L.above[i] for i in range(n)]
        self._ups = {}
        self._cache = {}
        self._build_basis()
        self._tables = {}

    # -- nested monomials ---------------------------------------------------

    def _cap(self, f, below_rank, last):
        """Largest allowed exponent of flat f sitting above a flat of rank
        ``below_rank`` (0 for the empty flat)."""
        r = self.L.rank[f]
        if last and self.augmented:
            return r
        return r - below_rank - 1

    def _build_basis(self):
        L = self.L
        by_degree = {0: [()]}
        # enumerate chains top-down; exponents fixed once the next flat is known
        def chains(prefix):
            yield prefix
            last = prefix[-1] if prefix else None
            for g in self.var_flats:
                if last is not None:
                    if g == last or not L.below[last] >> g & 1:
                        continue
                yield from chains(prefix + [g])

        for ch in chains([]):
            if not ch:
                continue
            caps = []
            for t, f in enumerate(ch):
                below_rank = L.rank[ch[t + 1]] if t + 1 < len(ch) else 0
                caps.append(self._cap(f, below_rank, t + 1 == len(ch)))
            if any(c < 1 for c in caps):
                continue
            self._exps(ch, caps, 0, [], by_degree)
        self.basis = []
        self.index = []
        top = max(by_degree)
        for d in range(top + 1):
            items = sorted(by_degree.get(d, []))
            self.basis.append(items)
            self.index.append({m: i for i, m in enumerate(items)})
        self.dims = [len(b) for b in self.basis]
        while self.dims and self.dims[-1] == 0:
            self.dims.pop()
            self.basis.pop()
            self.index.pop()
        self._pos1 = {m[0][0]: i for i, m in enumerate(self.basis[1])} if len(self.basis) > 1 else {}

    def _exps(self, ch, caps, t, acc, by_degree):
        if t == len(ch):
            m = tuple(zip(ch, acc))
            by_degree.setdefault(sum(acc), []).append(m)
            return
        for e in range(1, caps[t] + 1):
            acc.append(e)
            self._exps(ch, caps, t + 1, acc, by_degree)
            acc.pop()

    def nested_basis(self, d):
        return list(self.basis[d]) if 0 <= d < len(self.basis) else []

    def is_nested(self, m):
        for t, (f, e) in enumerate(m):
            below_rank = self.L.rank[m[t + 1][0]] if t + 1 < len(m) else 0
            if not 1 <= e <= self._cap(f, below_rank, t + 1 == len(m)):
                return False
            if t + 1 < len(m) and not self.L.below[f] >> m[t + 1][0] & 1:
                return False
        return True

    # -- reduction ------------------------------------------------------------

    def _up(self, f):
        u = self._ups.get(f)
        if u is None:
            L = self.L
            u = [g for g in range(len(L)) if L.above[f] >> g & 1]
            u.sort(key=lambda g: L.rank[g])
            self._ups[f] = u
        return u

    def chain_of(self, exps):
        """dict flat -> exponent to a chain tuple, or None if two flats are
        incomparable (the product is zero)."""
        items = sorted(((f, e) for f, e in exps.items() if e), key=lambda x: -self.L.rank[x[0]])
        for (f, _), (g, _) in combinations(items, 2):
            if not self._comparable[f] >> g & 1:
                return None
        for t in range(len(items) - 1):
            if self.L.rank[items[t][0]] == self.L.rank[items[t + 1][0]]:
                return None
        return tuple(items)

    def reduce_chain(self, chain):
        """Normal form of a chain monomial: dict nested monomial -> int."""
        hit = self._cache.get(chain)
        if hit is not None:
            return hit
        L = self.L
        viol = None
        for t in range(len(chain) - 1, -1, -1):
            f, e = chain[t]
            last = t + 1 == len(chain)
            below_rank = 0 if last else L.rank[chain[t + 1][0]]
            if e > self._cap(f, below_rank, last):
                viol = t
                break
        if viol is None:
            out = {chain: 1}
            self._cache[chain] = out
            return out
        t = viol
        f, e = chain[t]
        last = t + 1 == len(chain)
        rest = dict(chain)
        if last:
            k = L.rank[f] + (1 if self.augmented else 0)
        else:
            k = L.rank[f] - L.rank[chain[t + 1][0]]
        # rest * LT = chain, where LT = x_F^k (times x_F' for the middle family,
        # which we simply leave inside ``rest``)
        rest[f] = e - k
        mask = -1
        for g, _ in chain[:t]:
            mask &= self._comparable[g]
        ups = [g for g in self._up(f) if mask >> g & 1]
        out = {}
        for term, coef in _multinomial_chains(ups, k, self._comparable):
            if len(term) == 1 and term[0][0] == f:
                continue
            merged = dict(rest)
            for g, a in term:
                merged[g] = merged.get(g, 0) + a
            ch = self.chain_of(merged)
            if ch is None:
                continue
            for m, c in self.reduce_chain(ch).items():
                s = out.get(m, 0) - coef * c
                if s:
                    out[m] = s
                else:
                    del out[m]
        self._cache[chain] = out
        return out

    def normal_form(self, poly):
        """Polynomial {monomial in variable indices: coeff} -> dict nested
        monomial -> coefficient (in the field)."""
        out = {}
        for mono, c in poly.items():
            exps = {}
            for k in mono:
                f = self.var_flats[k]
                exps[f] = exps.get(f, 0) + 1
            ch = self.chain_of(exps)
            if ch is None:
                continue
            c = coerce(c, self.p)
            for m, v in self.reduce_chain(ch).items():
                axpy(out, c, {m: self._field(v)}, self.p)
        return out

    def _field(self, v):
        return mpq(v) if self.p is None else v % self.p

    def multiply_nested(self, a, b):
        """Product of two dicts nested monomial -> coeff."""
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                exps = dict(m1)
                for f, e in m2:
                    exps[f] = exps.get(f, 0) + e
                ch = self.chain_of(exps)
                if ch is None:
                    continue
                c = c1 * c2
                for m, v in self.reduce_chain(ch).items():
                    axpy(out, c, {m: self._field(v)}, self.p)
        return out

    # -- GradedAlgebra interface ----------------------------------------------

    def mul_gen(self, a, d):
        key = (a, d)
        t = self._tables.get(key)
        if t is None:
            f = self.basis[1][a][0][0]
            t = []
            nxt = self.index[d + 1] if d + 1 < len(self.index) else {}
            for m in self.basis[d] if d < len(self.basis) else []:
                exps = dict(m)
                exps[f] = exps.get(f, 0) + 1
                ch = self.chain_of(exps)
                vec = {}
                if ch is not None and nxt:
                    for mm, v in self.reduce_chain(ch).items():
                        vec[nxt[mm]] = self._field(v)
                t.append(vec)
            self._tables[key] = t
        return t

    def parent(self, d, i):
        m = self.basis[d][i]
        f, e = m[0]
        rest = ((f, e - 1),) + m[1:] if e > 1 else m[1:]
        return self._pos1[f], self.index[d - 1][rest]

    def var_vector(self, k):
        return {self._pos1[self.var_flats[k]]: self._field(1)}

    def label(self, d, i):
        out = []
        for f, e in self.basis[d][i]:
            out.extend([self.var_of[f]] * e)
        return tuple(sorted(out))

    def element_of(self, nested):
        """dict nested monomial -> coeff, to an (degree, vector) element."""
        if not nested:
            return (0, {})
        d = sum(e for _, e in next(iter(nested)))
        return (d, {self.index[d][m]: coerce(c, self.p) for m, c in nested.items()})

    def nested_of(self, x):
        d, vec = x
        return {self.basis[d][i]: c for i, c in vec.items()}

    def format_nested(self, m):
        if not m:
            return "1"
        parts = []
        for f, e in m:
            name = "x_" + set_label(self.L.elements[f])
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def format_nested_element(self, nested):
        if not nested:
            return "0"
        parts = []
        for m, c in sorted(nested.items()):
            c = coerce(c, None) if self.p is None else c
            mon = self.format_nested(m)
            if c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- convenience ----------------------------------------------------------

    def flat(self, F):
        """Lattice index of a flat given as an iterable of elements."""
        return self.L.idx(frozenset(F))

    def var(self, F):
        return self.var_of[self.flat(F)]

    def x(self, F, e=1):
        """The element x_F^e."""
        return self.monomial((self.var(F),) * e)

    def top_flat(self):
        return len(self.L) - 1

    def socle_monomial(self):
        """x_E^(rk M - 1), or x_E^(rk M) in the augmented ring."""
        e = self.rk if self.augmented else self.rk - 1
        if e <= 0 or self.top_flat() not in self.var_of:
            return self.one()
        return self.x(self.L.elements[-1], e)


def chow_ring(M, p=None):
    return ChowRing(M, augmented=False, p=p)


def augmented_chow_ring(M, p=None):
    return ChowRing(M, augmented=True, p=p)


def _var_setup(M, augmented):
    L = LatticeOfFlats(M)
    lo = 1 if augmented else 2
    flats = [i for i in range(len(L)) if L.rank[i] >= lo]
    flats.sort(key=lambda i: (L.rank[i], -i))
    names = ["x_" + set_label(L.elements[f]) for f in flats]
    return L, flats, {f: k for k, f in enumerate(flats)}, names


def presentation_atom_free(M, p=None):
    """Generators of the atom-free presentation of the Chow ring."""
    if not M.is_simple():
        raise NotSimple("the atom-free presentation needs a simple matroid")
    L, flats, var, names = _var_setup(M, False)
    rels = []
    for a, b in combinations(flats, 2):
        if not (L.leq(a, b) or L.leq(b, a)):
            rels.append({tuple(sorted((var[a], var[b]))): 1})
    atoms = L.up[0]
    for F in flats:
        for i in atoms:
            if L.leq(i, F):
                continue
            j = L.join_index(F, i)
            rel = {}
            for G in flats:
                if L.leq(j, G):
                    rel[tuple(sorted((var[F], var[G])))] = 1
            rels.append(rel)
    for i, j in combinations(atoms, 2):
        J = L.join_index(i, j)
        above = [F for F in flats if L.leq(J, F)]
        rel = {}
        for F in above:
            rel[(var[F], var[F])] = rel.get((var[F], var[F]), 0) + 1
        for F, G in combinations(above, 2):
            if L.leq(F, G) or L.leq(G, F):
                m = tuple(sorted((var[F], var[G])))
                rel[m] = rel.get(m, 0) + 2
        rels.append(rel)
    return PresentedAlgebra(names, rels, d_max=max(M.rank(), 1), p=p)


def presentation_augmented_atom_free(M, p=None):
    """Generators of the atom-free presentation of the augmented Chow ring."""
    if not M.is_simple():
        raise NotSimple("the atom-free presentation needs a simple matroid")
    L, flats, var, names = _var_setup(M, True)
    rels = []
    for a, b in combinations(flats, 2):
        if not (L.leq(a, b) or L.leq(b, a)):
            rels.append({tuple(sorted((var[a], var[b]))): 1})
    atoms = L.up[0]
    for F in flats:
        for i in atoms:
            if L.leq(i, F):
                continue
            rel = {}
            for G in flats:
                if L.leq(i, G):
                    rel[tuple(sorted((var[F], var[G])))] = 1
            rels.append(rel)
    for i in atoms:
        above = [F for F in flats if L.leq(i, F)]
        rel = {}
        for F in above:
            rel[(var[F], var[F])] = rel.get((var[F], var[F]), 0) + 1
        for F, G in combinations(above, 2):
            m = tuple(sorted((var[F], var[G])))
            rel[m] = rel.get(m, 0) + 2
        rels.append(rel)
    return PresentedAlgebra(names, rels, d_max=M.rank() + 1, p=p)


def presentation_FY(M, p=None):
    """Feichtner-Yuzvinsky presentation: variables for all nonempty flats,
    incomparable products and the linear forms sum_{F ∋ i} x_F."""
    if not M.is_simple():
        raise NotSimple("the presentation needs a simple matroid")
    L = LatticeOfFlats(M)
    flats = [i for i in range(len(L)) if L.rank[i] >= 1]
    flats.sort(key=lambda i: (L.rank[i], -i))
    var = {f: k for k, f in enumerate(flats)}
    names = ["x_" + set_label(L.elements[f]) for f in flats]
    rels = []
    for a, b in combinations(flats, 2):
        if not (L.leq(a, b) or L.leq(b, a)):
            rels.append({tuple(sorted((var[a], var[b]))): 1})
    for i in L.up[0]:
        rels.append({(var[F],): 1 for F in flats if L.leq(i, F)})
    return PresentedAlgebra(names, rels, d_max=max(M.rank(), 1), p=p)


def groebner_basis(R):
    """The three families of the Gröbner basis as polynomials in the
    variables of ``R`` (a ``ChowRing``), each tagged with its family.

    Returns a list of (family, polynomial) with family in
    {"incomparable", "chain", "power"}.
    """
    L = R.L
    var = R.var_of
    flats = R.var_flats
    out = []

    def power(F, k, prefix=()):
        ups = [G for G in flats if L.leq(F, G)]
        poly = {}

        def rec(start, acc, left):
            if left == 0:
                m = tuple(sorted(prefix + tuple(acc)))
                coef = factorial(k)
                for v in set(acc):
                    coef //= factorial(acc.count(v))
                poly[m] = poly.get(m, 0) + coef
                return
            for j in range(start, len(ups)):
                acc.append(var[ups[j]])
                rec(j, acc, left - 1)
                acc.pop()

        rec(0, [], k)
        return poly

    for a, b in combinations(flats, 2):
        if not (L.leq(a, b) or L.leq(b, a)):
            out.append(("incomparable", {tuple(sorted((var[a], var[b]))): 1}))
    for F in flats:
        for Fp in flats:
            if Fp != F and L.leq(Fp, F):
                out.append(("chain", power(F, L.rank[F] - L.rank[Fp], (var[Fp],))))
    for F in flats:
        k = L.rank[F] + (1 if R.augmented else 0)
        out.append(("power", power(F, k)))
    return out


def groebner_basis_atom_free(M, p=None):
    return groebner_basis(ChowRing(M, p=p))


def groebner_basis_augmented(M, p=None):
    return groebner_basis(ChowRing(M, augmented=True, p=p))


def nested_basis(M, d, augmented=False):
    R = ChowRing(M, augmented=augmented)
    return R.nested_basis(d)


def hilbert_series(M, augmented=False):
    from .series import RationalSeries
    R = ChowRing(M, augmented=augmented)
    return RationalSeries.polynomial(R.dims)


# -- ideals described by flats ------------------------------------------------

class IdealDescriptor:
    """An ideal given by generators: variables and monomials (tuples of
    variable indices).  ``whole`` marks the maximal ideal A_+."""

    def __init__(self, R, monomials, label, whole=False):
        self.R = R
        self.label = label
        self.whole = whole
        if whole:
            monomials = [(k,) for k in range(len(R.var_flats))]
        self.monomials = sorted(set(tuple(sorted(m)) for m in monomials))

    def generators(self):
        return [{m: 1} for m in self.monomials]

    def is_linear(self):
        return all(len(m) == 1 for m in self.monomials)

    def flats(self):
        """The flats of the linear generators, as lattice indices."""
        return sorted(self.R.var_flats[m[0]] for m in self.monomials if len(m) == 1)

    def span(self, Q=None):
        """Realize as a SubspaceIdeal in Q (default: the ring itself)."""
        from .quotient import ideal_span
        Q = Q or self.R
        return ideal_span(Q, self.generators())

    def describe(self):
        R = self.R
        parts = []
        for m in self.monomials:
            parts.append("*".join(R.names[k] for k in m))
        return f"{self.label}: (" + ", ".join(parts) + ")"

    def __repr__(self):
        return f"IdealDescriptor({self.describe()})"


def _vars(R, flats):
    return [(R.var_of[f],) for f in flats if f in R.var_of]


def _threshold(R):
    """Smallest flat rank for which the closed forms apply (3, or 2 augmented)."""
    return 2 if R.augmented else 3


def _hyperplanes(R):
    L = R.L
    return L.down[L.top]


def annihilator_of_top(R):
    """(0 : x_E) = (x_H : H a hyperplane); the maximal ideal in low rank."""
    L = R.L
    if R.rk < _threshold(R):
        return IdealDescriptor(R, [], "(0 : x_E)", whole=True)
    return IdealDescriptor(R, _vars(R, L.down[L.top]), "(0 : x_E)")


def restriction_kernel(R, F):
    """Kernel of the map to the Chow ring of M|F: (x_G : G ⊄ F)."""
    L = R.L
    return IdealDescriptor(R, _vars(R, [g for g in R.var_flats if not L.leq(g, F)]),
                           f"ker(restrict to {set_label(L.elements[F])})")


def upset_colon(R, family, F):
    """(x_G : G in family) : x_F for a family containing every flat strictly
    above F and no flat below F."""
    L = R.L
    fam = set(family)
    for g in R.var_flats:
        if L.leq(F, g) and g != F and g not in fam:
            raise NotApplicable("family must contain every flat above F")
        if L.leq(g, F) and g in fam:
            raise NotApplicable("family must avoid the flats below F")
    if L.rank[F] < _threshold(R):
        return IdealDescriptor(R, [], "colon", whole=True)
    gens = [g for g in R.var_flats if not L.leq(g, F)] + list(L.down[F])
    return IdealDescriptor(R, _vars(R, gens), "colon")


def annihilator_of_hyperplane(R, H):
    L = R.L
    if H not in L.down[L.top]:
        raise NotAHyperplane(f"{set_label(L.elements[H])} is not a hyperplane")
    return IdealDescriptor(R, _vars(R, [g for g in R.var_flats if not L.leq(g, H)]),
                           f"(0 : x_{set_label(L.elements[H])})")


def annihilator_of_hyperplanes(R, hyperplanes):
    """(0 : (x_H : H in hyperplanes)) = (x_F : F ⊄ H for all H)."""
    L = R.L
    hs = list(hyperplanes)
    for H in hs:
        if H not in L.down[L.top]:
            raise NotAHyperplane(f"{set_label(L.elements[H])} is not a hyperplane")
    if not hs:
        return IdealDescriptor(R, [], "(0 : 0)", whole=True)
    gens = [g for g in R.var_flats if all(not L.leq(g, H) for H in hs)]
    return IdealDescriptor(R, _vars(R, gens), "(0 : hyperplanes)")


def covering_condition(R, hyperplanes, Hp):
    """Each H in the set has some F in coat_H(H') with H ∧ H' ≤ F.
    Returns (holds, restricted coatoms, first failing H or None)."""
    L = R.L
    seg = list(hyperplanes) + [Hp]
    restricted = coat_restricted(L, seg, Hp)
    for H in hyperplanes:
        m = L.meet_index(H, Hp)
        if not any(L.leq(m, F) for F in restricted):
            return False, restricted, H
    return True, restricted, None


def hyperplane_set_colon(R, hyperplanes, Hp):
    """(x_H : H in hyperplanes) : x_H' by the closed form, when it applies."""
    L = R.L
    hs = list(hyperplanes)
    for H in hs + [Hp]:
        if H not in L.down[L.top]:
            raise NotAHyperplane(f"{set_label(L.elements[H])} is not a hyperplane")
    if not hs:
        raise NotApplicable("the hyperplane set must be nonempty")
    if Hp in hs:
        raise NotApplicable("H' must not belong to the set")
    if L.rank[Hp] < _threshold(R):
        return IdealDescriptor(R, [], "colon", whole=True)
    ok, restricted, bad = covering_condition(R, hs, Hp)
    if not ok:
        raise CoveringConditionViolated(
            "covering condition fails", (L.elements[bad], L.elements[Hp]))
    gens = [g for g in R.var_flats if not L.leq(g, Hp)] + restricted
    return IdealDescriptor(R, _vars(R, gens), "colon")


def hyperplane_ideal_basis(R, hyperplanes, d):
    """Nested monomials of degree d spanning (x_H : H in hyperplanes)."""
    L = R.L
    hs = set(hyperplanes)
    for H in hs:
        if H not in L.down[L.top]:
            raise NotAHyperplane(f"{set_label(L.elements[H])} is not a hyperplane")
    if not hs:
        return []
    E = L.top
    out = []
    for m in R.nested_basis(d):
        if not m:
            continue
        F1, a1 = m[0]
        if F1 in hs:
            out.append(m)
            continue
        if F1 != E:
            continue
        if len(m) > 1:
            F2 = m[1][0]
            if a1 == R.rk - L.rank[F2] - 1 and any(L.leq(F2, H) and F2 != H for H in hs):
                out.append(m)
        else:
            if a1 == (R.rk if R.augmented else R.rk - 1):
                out.append(m)
    return out


# -- quotient isomorphism checks ----------------------------------------------

def quotient_isomorphism_checks(M, augmented=False, p=None):
    """Compare A/(0 : x_E) with the ring of the truncation and A/(0 : x_H)
    with the ring of the restriction to H, for every hyperplane H.

    Returns a list of (description, hf_quotient, hf_expected) and the
    overall verdict.
    """
    from .quotient import annihilator_of_elements
    R = ChowRing(M, augmented=augmented, p=p)
    L = R.L
    rows = []
    E = L.top
    if E in R.var_of:
        ann = annihilator_of_elements(R, [R.x(L.elements[E])])
        quo = ann.quotient_dims()
        T = truncation(M)
        expected = ChowRing(simplify(T), augmented=augmented, p=p).dims if T.rank() > 0 else [1]
        rows.append(("(0 : x_E) vs truncation", _trim(quo), _trim(expected)))
    for H in L.down[E]:
        if H not in R.var_of:
            continue
        ann = annihilator_of_elements(R, [R.x(L.elements[H])])
        quo = ann.quotient_dims()
        sub = ChowRing(restriction(M, L.elements[H]), augmented=augmented, p=p).dims
        rows.append((f"(0 : x_{set_label(L.elements[H])}) vs restriction",
                     _trim(quo), _trim(sub)))
    return rows, all(a == b for _, a, b in rows)


def _trim(dims):
    dims = list(dims)
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims
