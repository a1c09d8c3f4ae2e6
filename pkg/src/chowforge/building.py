"""Building sets, nested set complexes and the rings D(L, G).

Lattices here are any ``Lattice`` (raw or of flats); elements are handled
through their indices.  A subset G of L \\ {0} is a building set when, for
every x != 0, the join map

    prod_{g in max G_{<=x}} [0, g]  ->  [0, x]

is an isomorphism of posets.  D(L, G) is the quotient of k[x_g : g in G]
by the monomials of non-nested sets and the linear forms
sum_{g >= a} x_g, one for each atom a.
"""

from __future__ import annotations

from itertools import product

from .quotient import PresentedAlgebra


class BuildingError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAtomic(BuildingError):
    pass


class NotABuildingSet(BuildingError):
    pass


def _interval_below(L, x):
    return [i for i in range(len(L)) if L.leq(i, x)]


def _join_all(L, items):
    acc = 0
    for y in items:
        acc = L.join_index(acc, y)
    return acc


def factor_map_is_isomorphism(L, factors, x):
    """Is the join map prod [0, g] -> [0, x] (g in factors) a poset
    isomorphism?  Returns (answer, reason)."""
    lower = [_interval_below(L, g) for g in factors]
    target = _interval_below(L, x)
    size = 1
    for lo in lower:
        size *= len(lo)
    if size != len(target):
        return False, f"sizes differ: {size} vs {len(target)}"
    pre = {}
    for combo in product(*lower):
        j = _join_all(L, combo)
        if j in pre:
            return False, "join map is not injective"
        pre[j] = combo
    if set(pre) != set(target):
        return False, "join map misses part of the interval"
    # the map is monotone; the inverse is monotone if it is on covers
    for w in target:
        for u in L.down[w]:
            if any(not L.leq(a, b) for a, b in zip(pre[u], pre[w])):
                return False, "inverse of the join map is not monotone"
    return True, None


def _check_atomic(L):
    ok, w = L.is_atomic()
    if not ok:
        raise NotAtomic(f"lattice is not atomic at {w!r}", w)


def max_below(L, G, x):
    """Maximal elements of {g in G : g <= x}, as indices."""
    cand = [g for g in G if L.leq(g, x)]
    return [g for g in cand if not any(h != g and L.leq(g, h) for h in cand)]


def is_building_set(L, G):
    """Return (answer, witness); the witness names the failing element."""
    _check_atomic(L)
    G = sorted(set(G))
    if 0 in G:
        return False, {"element": L.elements[0], "reason": "contains the bottom element"}
    for x in range(1, len(L)):
        fac = max_below(L, G, x)
        if not fac:
            return False, {"element": L.elements[x], "reason": "no building set element below"}
        ok, why = factor_map_is_isomorphism(L, fac, x)
        if not ok:
            return False, {"element": L.elements[x],
                           "factors": [L.elements[g] for g in fac], "reason": why}
    return True, None


def _two_block_splits(atoms):
    """Unordered partitions of ``atoms`` into two nonempty blocks."""
    first, rest = atoms[0], atoms[1:]
    for mask in range(2 ** len(rest) - 1):
        A = [first] + [a for k, a in enumerate(rest) if mask >> k & 1]
        B = [a for k, a in enumerate(rest) if not mask >> k & 1]
        yield A, B


def is_irreducible(L, x):
    """x != 0 is irreducible if [0, x] is not the product of two proper
    lower intervals under the join map.  Searched over splittings of the
    atoms below x."""
    atoms = [a for a in L.up[0] if L.leq(a, x)]
    if len(atoms) < 2:
        return True
    for A, B in _two_block_splits(atoms):
        y, z = _join_all(L, A), _join_all(L, B)
        if y == x or z == x:
            continue
        if factor_map_is_isomorphism(L, [y, z], x)[0]:
            return False
    return True


def minimal_building_set(L):
    _check_atomic(L)
    return [x for x in range(1, len(L)) if is_irreducible(L, x)]


def maximal_building_set(L):
    _check_atomic(L)
    return list(range(1, len(L)))


class NestedComplex:
    """Nested set complex stored by its minimal non-faces (index tuples)."""

    def __init__(self, L, G, minimal_nonfaces):
        self.L = L
        self.G = list(G)
        self.minimal_nonfaces = minimal_nonfaces

    def is_face(self, S):
        S = set(S)
        return not any(set(T) <= S for T in self.minimal_nonfaces)

    def faces(self):
        """All faces, enumerated on demand (sorted index tuples)."""
        out = [()]
        G = self.G

        def rec(start, cur):
            for k in range(start, len(G)):
                nxt = cur + (G[k],)
                if self.is_face(nxt):
                    out.append(nxt)
                    rec(k + 1, nxt)

        rec(0, ())
        return out

    def labels(self):
        lab = self.L.label
        return [[lab(self.L.elements[g]) for g in T] for T in self.minimal_nonfaces]


def nested_complex(L, G, check=True):
    """Minimal non-nested sets: antichains T (|T| >= 2) with join in G and
    no smaller sub-antichain of size >= 2 joining into G."""
    G = sorted(set(G))
    if check:
        ok, w = is_building_set(L, G)
        if not ok:
            raise NotABuildingSet("not a building set", w)
    inG = set(G)
    out = []

    def bad_with(T, g):
        # does some subset of T, together with g, of size >= 1 join into G?
        n = len(T)
        for mask in range(1, 2 ** n):
            sub = [T[k] for k in range(n) if mask >> k & 1]
            if _join_all(L, sub + [g]) in inG:
                return sub
        return None

    def rec(start, T):
        for k in range(start, len(G)):
            g = G[k]
            if any(L.leq(g, h) or L.leq(h, g) for h in T):
                continue
            if T:
                sub = bad_with(T, g)
                if sub is not None:
                    if len(sub) == len(T):
                        out.append(tuple(sorted(T + [g])))
                    continue
            rec(k + 1, T + [g])

    rec(0, [])
    out = sorted(set(out), key=lambda t: (len(t), t))
    # keep only minimal ones
    minimal = []
    for t in out:
        if not any(set(s) < set(t) for s in minimal):
            minimal.append(t)
    return NestedComplex(L, G, minimal)


def dlg_presentation(L, G, p=None, check=True):
    """PresentedAlgebra for D(L, G): variables x_g (g in G, index order),
    non-face monomials and the atom linear forms."""
    NC = nested_complex(L, G, check=check)
    G = NC.G
    var = {g: k for k, g in enumerate(G)}
    names = ["x_" + str(L.label(L.elements[g])) for g in G]
    rels = [{tuple(sorted(var[g] for g in T)): 1} for T in NC.minimal_nonfaces]
    for a in L.up[0]:
        rels.append({(var[g],): 1 for g in G if L.leq(a, g)})
    top = max((len(T) for T in NC.minimal_nonfaces), default=1)
    d_max = max(L.rank[-1], top) + 1
    return PresentedAlgebra(names, rels, d_max=d_max, p=p)


def eliminate_linear_forms(P, prefer=()):
    """Solve the linear relations for pivot variables and substitute them
    into the other relations.  Variables listed in ``prefer`` are used as
    pivots when possible.  Returns a new PresentedAlgebra on the remaining
    variables."""
    from .linalg import Echelon, axpy, coerce, inverse
    # the echelon pivots on the largest column: put preferred variables last
    prefer = list(prefer)
    order = [k for k in range(len(P.names)) if k not in set(prefer)] + prefer
    col = {k: i for i, k in enumerate(order)}
    lin = Echelon(P.p)
    for rel in P.relations:
        if all(len(m) == 1 for m in rel):
            lin.add({col[m[0]]: c for m, c in rel.items()})
    lin.make_reduced()
    rows = {order[piv]: {order[j]: c for j, c in row.items()} for piv, row in lin.rows.items()}
    pivots = set(rows)
    keep = [k for k in range(len(P.names)) if k not in pivots]
    new_index = {k: i for i, k in enumerate(keep)}
    # x_pivot = - sum (c_j x_j) over non-pivots
    subst = {}
    for piv, row in rows.items():
        c0 = row[piv]
        sub = {}
        for j, c in row.items():
            if j != piv:
                sub[(new_index[j],)] = -c * inverse(c0, P.p)
        subst[piv] = sub
    for k in keep:
        subst[k] = {(new_index[k],): coerce(1, P.p)}
    rels = []
    for rel in P.relations:
        if all(len(m) == 1 for m in rel):
            continue
        total = {}
        for m, c in rel.items():
            poly = {(): coerce(c, P.p)}
            for v in m:
                nxt = {}
                for m1, c1 in poly.items():
                    for m2, c2 in subst[v].items():
                        key = tuple(sorted(m1 + m2))
                        axpy(nxt, c1, {key: c2}, P.p)
                poly = nxt
            for mm, cc in poly.items():
                axpy(total, 1, {mm: cc}, P.p)
        if total:
            rels.append(total)
    names = [P.names[k] for k in keep]
    return PresentedAlgebra(names, rels, d_max=P.d_max, p=P.p)


def free_coextension_building_set(M):
    """(coextension, its lattice, G_aug as indices): the atoms together with
    every flat containing the new element e = n + 1."""
    from .lattice import LatticeOfFlats
    from .matroid import free_coextension
    C = free_coextension(M)
    L = LatticeOfFlats(C)
    e = C.n
    G = [i for i, F in enumerate(L.elements) if L.rank[i] == 1 or e in F]
    return C, L, G
