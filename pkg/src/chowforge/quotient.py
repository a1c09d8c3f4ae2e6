"""Graded quotients of polynomial rings, computed degree by degree.

This is the brute-force model used to check everything else.  Nothing here
knows about matroids: an algebra is a list of variables and homogeneous
relations, and each graded piece is built by exact linear algebra from the
one below it:

    Q_1 = span(variables) / (linear relations)
    Q_d = Q_1 (x) Q_{d-1} / (commutativity, degree-d relations)

Every basis element of Q_d is a non-pivot tensor coordinate ``(a, b)``,
which means it literally equals ``g_a * (basis element b of Q_{d-1})`` for
the degree-one basis element ``g_a``.  That "parent" structure is what lets
other code multiply by basis elements without any further bookkeeping.

The same multiplication interface (``GradedAlgebra``) is implemented by the
Chow-ring engine, so ideals, colons and resolutions below work on either.
"""

from __future__ import annotations

import json

from .linalg import Echelon, axpy, coerce, kernel, one, to_fraction


class QuotientError(ValueError):
    pass


class CutoffTooSmall(QuotientError):
    pass


class NotArtinianWithinCutoff(QuotientError):
    pass


class InhomogeneousGenerator(QuotientError):
    pass


def monomial_key(m):
    """Monomials are sorted tuples of variable indices, e.g. (0, 0, 3)."""
    return tuple(sorted(m))


class PresentedAlgebra:
    """Variables (all of degree one) and homogeneous relations.

    A relation is a dict ``{monomial: coefficient}`` where a monomial is a
    sorted tuple of variable indices.  ``p`` is ``None`` for the rationals
    or a prime.
    """

    def __init__(self, names, relations, d_max=None, p=None):
        self.names = list(names)
        self.p = p
        rels = []
        for rel in relations:
            clean = {}
            for m, c in rel.items():
                m = monomial_key(m)
                for k in m:
                    if not 0 <= k < len(self.names):
                        raise QuotientError(f"relation uses unknown variable {k}")
                c = coerce(c, p)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
            if not clean:
                continue
            degs = {len(m) for m in clean}
            if len(degs) != 1:
                raise InhomogeneousGenerator(f"relation mixes degrees {sorted(degs)}")
            rels.append(clean)
        self.relations = rels
        self.d_max = d_max

    @property
    def nvars(self):
        return len(self.names)

    def max_relation_degree(self):
        return max((len(next(iter(r))) for r in self.relations), default=0)

    def format_relation(self, rel):
        parts = []
        for m, c in sorted(rel.items()):
            mon = "*".join(self.names[k] for k in m) or "1"
            c = to_fraction(c) if self.p is None else c
            if c == 1:
                parts.append(mon)
            elif self.p is None and c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        rels = []
        for rel in self.relations:
            terms = []
            for m, c in sorted(rel.items()):
                exps = [0] * self.nvars
                for k in m:
                    exps[k] += 1
                terms.append([exps, str(to_fraction(c) if self.p is None else c)])
            rels.append(terms)
        out = {"variables": self.names, "relations": rels}
        if self.d_max is not None:
            out["d_max"] = self.d_max
        out["field"] = "Q" if self.p is None else {"p": self.p}
        return out

    @classmethod
    def from_json(cls, data):
        names = data["variables"]
        field = data.get("field", "Q")
        p = None if field in (None, "Q") else int(field["p"])
        rels = []
        for terms in data["relations"]:
            rel = {}
            for exps, c in terms:
                m = tuple(k for k, e in enumerate(exps) for _ in range(e))
                rel[m] = c
            rels.append(rel)
        return cls(names, rels, data.get("d_max"), p)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)


class GradedAlgebra:
    """Interface shared by the oracle quotient and the Chow-ring engine.

    Subclasses provide ``dims`` (Hilbert function, ending where it hits
    zero), ``p``, ``names`` and:

    * ``mul_gen(a, d)``: images of the degree-``d`` basis under
      multiplication by the degree-one basis element ``g_a``;
    * ``parent(d, i)``: ``(a, j)`` with basis element ``i`` of degree ``d``
      equal to ``g_a`` times basis element ``j`` of degree ``d - 1``;
    * ``var_vector(k)``: variable ``k`` written in the degree-one basis;
    * ``label(d, i)``: the basis element as a monomial (tuple of variables).
    """

    p = None
    names = ()
    dims = (1,)

    @property
    def top(self):
        """Largest degree with a nonzero piece."""
        return len(self.dims) - 1

    def dim(self, d):
        return self.dims[d] if 0 <= d < len(self.dims) else 0

    @property
    def ngens(self):
        return self.dim(1)

    def hilbert_function(self):
        return list(self.dims)

    # -- element arithmetic (elements are (degree, sparse vector)) ----------

    def one(self):
        return (0, {0: one(self.p)})

    def mul_gen_vec(self, a, d, vec):
        if d + 1 > self.top:
            return {}
        table = self.mul_gen(a, d)
        out = {}
        for i, c in vec.items():
            axpy(out, c, table[i], self.p)
        return out

    def mul_var_vec(self, k, d, vec):
        out = {}
        for a, c in self.var_vector(k).items():
            axpy(out, c, self.mul_gen_vec(a, d, vec), self.p)
        return out

    def mul_basis_vec(self, e, c, d, vec):
        """Multiply ``vec`` (degree d) by basis element ``c`` of degree ``e``."""
        steps = []
        while e > 0:
            a, c = self.parent(e, c)
            steps.append(a)
            e -= 1
        for a in reversed(steps):
            vec = self.mul_gen_vec(a, d, vec)
            d += 1
            if not vec:
                break
        return vec

    def multiply(self, u, v):
        (e, uv), (d, vv) = u, v
        if e + d > self.top:
            return (e + d, {})
        out = {}
        for c, x in uv.items():
            axpy(out, x, self.mul_basis_vec(e, c, d, vv), self.p)
        return (e + d, out)

    def monomial(self, m):
        """The element represented by a monomial in the presentation variables."""
        d, vec = self.one()
        for k in m:
            if not vec:
                break
            vec = self.mul_var_vec(k, d, vec)
            d += 1
        return (len(m), vec)

    def polynomial(self, poly):
        """Homogeneous polynomial {monomial: coeff} -> element."""
        degs = {len(m) for m in poly}
        if len(degs) > 1:
            raise InhomogeneousGenerator(f"polynomial mixes degrees {sorted(degs)}")
        d = degs.pop() if degs else 0
        out = {}
        for m, c in poly.items():
            axpy(out, coerce(c, self.p), self.monomial(m)[1], self.p)
        return (d, out)

    def element(self, x):
        """Accept an element, a polynomial dict, or a variable index."""
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], dict):
            return x
        if isinstance(x, int):
            return (1, dict(self.var_vector(x)))
        if isinstance(x, dict):
            return self.polynomial(x)
        raise TypeError(f"cannot interpret {x!r} as a ring element")

    def format_element(self, x):
        d, vec = x
        if not vec:
            return "0"
        parts = []
        for i, c in sorted(vec.items()):
            mon = "*".join(self.names[k] for k in self.label(d, i)) or "1"
            c = to_fraction(c) if self.p is None else c
            parts.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(parts)


class GradedQuotient(GradedAlgebra):
    """The quotient of a ``PresentedAlgebra``, built by ``build``."""

    def __init__(self, A, d_max=None):
        self.presentation = A
        self.p = A.p
        self.names = A.names
        if d_max is None:
            d_max = A.d_max if A.d_max is not None else 64
        self.d_max = d_max
        self._build()

    def _build(self):
        A, p = self.presentation, self.p
        by_degree = {}
        for rel in A.relations:
            by_degree.setdefault(len(next(iter(rel))), []).append(rel)
        if 0 in by_degree:
            # a nonzero constant relation kills everything
            self.dims = [0]
            self._labels = [[]]
            self._nf1 = {k: {} for k in range(A.nvars)}
            self._parents = [[]]
            self._tables = {}
            self.artinian = True
            return
        lin = Echelon(p)
        for rel in by_degree.get(1, []):
            lin.add({m[0]: c for m, c in rel.items()})
        lin.make_reduced()
        gens = [k for k in range(A.nvars) if k not in lin.rows]
        pos1 = {k: a for a, k in enumerate(gens)}
        nf1 = {}
        for k in range(A.nvars):
            if k in pos1:
                nf1[k] = {pos1[k]: one(p)}
            else:
                row = lin.rows[k]
                nf1[k] = {pos1[c]: -v if p is None else (-v) % p
                          for c, v in row.items() if c != k}
        self._nf1 = nf1
        self.dims = [1, len(gens)]
        self._labels = [[()], [(k,) for k in gens]]
        self._parents = [[], [(a, 0) for a in range(len(gens))]]
        # tables[(a, d)] = images of degree-d basis under g_a
        self._tables = {(a, 0): [{a: one(p)}] for a in range(len(gens))}
        self._units = {}
        d = 1
        if not gens:
            self.dims = [1]
            self.artinian = True
            return
        top_rel = A.max_relation_degree()
        while True:
            d += 1
            if d > self.d_max:
                if top_rel > self.d_max:
                    raise CutoffTooSmall(
                        f"relations of degree {top_rel} exceed the cutoff {self.d_max}")
                self.artinian = False
                break
            if not self._build_degree(d, by_degree.get(d, [])):
                self.artinian = True
                break

    def _build_degree(self, d, rels):
        p = self.p
        n1 = self.dims[1]
        D = self.dims[d - 1]
        ech = Echelon(p)
        # relations first: usually few and they carry the real information
        for rel in rels:
            vec = {}
            for m, c in rel.items():
                axpy(vec, c, self._tensor_of_monomial(m, d), p)
            ech.add(vec)
        minus = -1 if p is None else p - 1
        for a2 in range(n1):
            t2 = self.mul_gen(a2, d - 2)
            for a in range(a2):
                t = self.mul_gen(a, d - 2)
                for c in range(self.dims[d - 2]):
                    u, w = t2[c], t[c]
                    row = {a * D + b: v for b, v in u.items()}
                    base = a2 * D
                    for b, v in w.items():
                        key = base + b
                        s = row.get(key, 0) + minus * v
                        if p is not None:
                            s %= p
                        if s:
                            row[key] = s
                        else:
                            row.pop(key, None)
                    if row:
                        ech.add(row)
        ech.make_reduced()
        basis = [c for c in range(n1 * D) if c not in ech.rows]
        if not basis:
            return False
        pos = {c: i for i, c in enumerate(basis)}
        self.dims.append(len(basis))
        self._labels.append([tuple(sorted(self._labels[1][c // D] + self._labels[d - 1][c % D]))
                             for c in basis])
        self._parents.append([(c // D, c % D) for c in basis])
        self._units[d] = (ech, pos, D)
        return True

    def _unit(self, d, a, b):
        """Normal form of the tensor coordinate g_a (x) (basis b of degree d-1)."""
        ech, pos, D = self._units[d]
        c = a * D + b
        i = pos.get(c)
        if i is not None:
            return {i: one(self.p)}
        row = ech.rows[c]
        if self.p is None:
            return {pos[cc]: -v for cc, v in row.items() if cc != c}
        return {pos[cc]: (-v) % self.p for cc, v in row.items() if cc != c}

    def _tensor_of_monomial(self, m, d):
        """Coordinates in Q_1 (x) Q_{d-1} of a degree-d monomial."""
        head, tail = m[0], m[1:]
        tail_vec = self.monomial(tail)[1]
        D = self.dims[d - 1]
        out = {}
        for a, c in self._nf1[head].items():
            for b, v in tail_vec.items():
                key = a * D + b
                s = out.get(key, 0) + c * v
                if self.p is not None:
                    s %= self.p
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def mul_gen(self, a, d):
        t = self._tables.get((a, d))
        if t is None:
            if d + 1 >= len(self.dims):
                t = [{} for _ in range(self.dim(d))]
            else:
                t = [self._unit(d + 1, a, b) for b in range(self.dims[d])]
            self._tables[(a, d)] = t
        return t

    def parent(self, d, i):
        return self._parents[d][i]

    def var_vector(self, k):
        return self._nf1[k]

    def label(self, d, i):
        return self._labels[d][i]

    def basis_labels(self, d):
        return list(self._labels[d]) if d < len(self._labels) else []


def build(A, d_max=None):
    return GradedQuotient(A, d_max)


def hilbert_function(Q):
    return Q.hilbert_function()


def hilbert_series(Q):
    from .series import RationalSeries
    if getattr(Q, "artinian", True) is False:
        raise NotArtinianWithinCutoff(
            f"Hilbert function still nonzero at the cutoff {Q.d_max}")
    return RationalSeries.polynomial(Q.dims)


def free_algebra(k, d_max):
    """Polynomial ring in k variables truncated at d_max (for testing)."""
    return PresentedAlgebra([f"x{i}" for i in range(k)], [], d_max=d_max)


def binomial_dims(k, d_max):
    from math import comb
    return [comb(k + d - 1, d) for d in range(d_max + 1)]


# -- ideals -------------------------------------------------------------------

class SubspaceIdeal:
    """A homogeneous ideal stored as one subspace of Q_d per degree."""

    def __init__(self, Q, slices):
        self.Q = Q
        self.slices = slices  # list of reduced Echelon, one per degree of Q

    def dims(self):
        return [s.rank for s in self.slices]

    def dim(self, d):
        return self.slices[d].rank if d < len(self.slices) else 0

    def contains(self, x):
        d, vec = self.Q.element(x)
        if d >= len(self.slices):
            return True
        return vec in self.slices[d]

    def basis(self, d):
        return self.slices[d].basis() if d < len(self.slices) else []

    def quotient_dims(self):
        """Hilbert function of Q / I."""
        return [self.Q.dim(d) - self.dim(d) for d in range(len(self.slices))]

    def __eq__(self, other):
        return equals_ideal(self, other)

    def __le__(self, other):
        return all(all(v in other.slices[d] for v in self.basis(d))
                   for d in range(len(self.slices)))

    def __add__(self, other):
        slices = []
        for d in range(len(self.slices)):
            e = Echelon(self.Q.p)
            # rows are never modified in place, so they can be shared
            e.rows = dict(self.slices[d].rows)
            target = self.Q.dim(d)
            for v in other.basis(d):
                if e.rank == target:
                    break
                e.add(v)
            e.make_reduced()
            slices.append(e)
        return SubspaceIdeal(self.Q, slices)

    def minimal_generators(self):
        """Per degree, vectors of I_d spanning a complement of R_1 * I_{d-1}."""
        Q = self.Q
        out = []
        for d in range(len(self.slices)):
            prod = Echelon(Q.p)
            if d >= 1:
                for v in self.basis(d - 1):
                    for a in range(Q.ngens):
                        w = Q.mul_gen_vec(a, d - 1, v)
                        if w:
                            prod.add(w)
            for v in self.basis(d):
                if prod.add(v) is not None:
                    out.append((d, v))
        return out

    def generator_degrees(self):
        degs = {}
        for d, _ in self.minimal_generators():
            degs[d] = degs.get(d, 0) + 1
        return degs


def _slices_count(Q):
    return Q.top + 1


def zero_ideal(Q):
    return SubspaceIdeal(Q, [Echelon(Q.p) for _ in range(_slices_count(Q))])


def maximal_ideal(Q):
    return ideal_span(Q, [(1, {a: one(Q.p)}) for a in range(Q.ngens)])


def whole_ring(Q):
    return ideal_span(Q, [Q.one()])


def ideal_span(Q, gens):
    """The ideal generated by homogeneous elements (or polynomials, or
    variable indices).

    Each slice I_d is spanned either by A_1 * I_(d-1) plus the generators
    of degree d, or directly by the products g * b over generators g and
    basis elements b of A_(d - deg g); whichever needs fewer products is
    used.  A slice stops growing once it fills A_d.
    """
    gens = [Q.element(g) for g in gens if g is not None]
    gens = [(gd, v) for gd, v in gens if v]
    # products[k][e][i] = gens[k] * (basis element i of A_e), built upwards
    products = [[[dict(v)]] for _, v in gens]
    slices = []
    for d in range(_slices_count(Q)):
        target = Q.dim(d)
        e = Echelon(Q.p)
        direct = sum(Q.dim(d - gd) for gd, _ in gens if gd <= d)
        via_prev = slices[d - 1].rank * Q.ngens if d >= 1 else 0
        if d >= 1 and via_prev <= direct:
            for v in slices[d - 1].basis():
                if e.rank == target:
                    break
                for a in range(Q.ngens):
                    w = Q.mul_gen_vec(a, d - 1, v)
                    if w:
                        e.add(w)
                        if e.rank == target:
                            break
            for gd, v in gens:
                if gd == d and e.rank < target:
                    e.add(dict(v))
        else:
            for k, (gd, v) in enumerate(gens):
                if gd > d or e.rank == target:
                    continue
                level = d - gd
                prods = products[k]
                while len(prods) <= level:
                    n = len(prods)
                    nxt = []
                    for i in range(Q.dim(n)):
                        a, j = Q.parent(n, i)
                        nxt.append(Q.mul_gen_vec(a, gd + n - 1, prods[n - 1][j]))
                    prods.append(nxt)
                for w in prods[level]:
                    if w:
                        e.add(dict(w))
                        if e.rank == target:
                            break
        e.make_reduced()
        slices.append(e)
    return SubspaceIdeal(Q, slices)


def _reduce_mod(ideal, d, vec):
    if d >= len(ideal.slices):
        return {}
    return ideal.slices[d].reduce(vec, full=True)


def colon(Q, J, f):
    """(J : f) = {g : f g in J} for a homogeneous element f."""
    e, fv = Q.element(f)
    slices = []
    for d in range(_slices_count(Q)):
        images = []
        for i in range(Q.dim(d)):
            prod = Q.multiply((e, fv), (d, {i: one(Q.p)}))[1]
            images.append(_reduce_mod(J, d + e, prod))
        ech = Echelon(Q.p)
        for v in kernel(images, Q.p):
            ech.add(v)
        ech.make_reduced()
        slices.append(ech)
    return SubspaceIdeal(Q, slices)


def colon_ideal(Q, J, I):
    """(J : I) for an ideal I, via its minimal generators."""
    gens = I.minimal_generators()
    return annihilator_of_elements(Q, gens, J)


def annihilator_of_elements(Q, elements, J=None):
    """{g : g f in J for every f in elements}; J defaults to (0)."""
    elements = [Q.element(x) for x in elements]
    if J is None:
        J = zero_ideal(Q)
    slices = []
    for d in range(_slices_count(Q)):
        images = []
        for i in range(Q.dim(d)):
            img = {}
            offset = 0
            for e, fv in elements:
                prod = Q.multiply((e, fv), (d, {i: one(Q.p)}))[1]
                red = _reduce_mod(J, d + e, prod)
                for k, v in red.items():
                    img[offset + k] = v
                offset += max(Q.dim(d + e), 1)
            images.append(img)
        ech = Echelon(Q.p)
        for v in kernel(images, Q.p):
            ech.add(v)
        ech.make_reduced()
        slices.append(ech)
    return SubspaceIdeal(Q, slices)


def annihilator(Q, I):
    """(0 : I)."""
    return annihilator_of_elements(Q, [g for g in I.minimal_generators()])


def socle(Q):
    """(0 : R_+), as an ideal."""
    return annihilator_of_elements(Q, [(1, {a: one(Q.p)}) for a in range(Q.ngens)])


def equals_ideal(I, J):
    if len(I.slices) != len(J.slices):
        return False
    for a, b in zip(I.slices, J.slices):
        if a.rank != b.rank:
            return False
        if any(v not in b for v in a.basis()):
            return False
    return True


def is_generated_by_linear_forms(I):
    """Return (answer, certificate).

    The certificate is None when the degree-one part generates I, and
    otherwise ``(d, vector)`` for an element of I_d outside R_1^(d-1) * I_1.
    """
    Q = I.Q
    lin = ideal_span(Q, [(1, v) for v in I.basis(1)])
    for d in range(len(I.slices)):
        if lin.dim(d) != I.dim(d):
            for v in I.basis(d):
                if v not in lin.slices[d]:
                    return False, (d, v)
    return True, None


def pairing_ranks(Q):
    """Ranks of the multiplication pairings Q_i x Q_(top-i) -> Q_top."""
    top = Q.top
    out = []
    for i in range(top + 1):
        rows = []
        for a in range(Q.dim(i)):
            row = {}
            for b in range(Q.dim(top - i)):
                prod = Q.multiply((i, {a: one(Q.p)}), (top - i, {b: one(Q.p)}))[1]
                for k, v in prod.items():
                    row[b * Q.dim(top) + k] = v
            rows.append(row)
        e = Echelon(Q.p)
        for r in rows:
            e.add(r)
        out.append(e.rank)
    return out
