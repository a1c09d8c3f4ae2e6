"""Finite lattices, lattices of flats, and total coatom orders.

Elements of a ``Lattice`` are stored in a fixed list; internally everything
is done with indices into that list and bitmasks of indices.  The list is
sorted by rank and then by a caller supplied key, and for lattices of flats
that key is the coatom comparator below.  So for flats, index order *is*
the global total order: ``i < j`` exactly when ``elements[i] ≺ elements[j]``.
"""

from __future__ import annotations

import json
from itertools import combinations

from .matroid import from_mask, popcount, set_label


class LatticeError(ValueError):
    pass


class NotALattice(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAFlat(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class NotACoatomOfF(LatticeError):
    pass


class OrderNotTotal(LatticeError):
    pass


def coatom_key(F, rank=None):
    """Sort key for the coatom comparator.

    Higher rank is larger.  Within a rank, compare the elements listed in
    decreasing order; at the first position where the lists differ, the set
    holding the *smaller* element is the larger one.  Negating the entries
    turns this into plain tuple comparison.  (When one list is a prefix of
    the other the shorter one sorts first; that never happens for two
    distinct flats of the same rank, since one would contain the other.)
    """
    desc = tuple(-i for i in sorted(F, reverse=True))
    return (len(F) if rank is None else rank, desc)


def coatom_compare(F, G, rank=None):
    """Return -1, 0 or 1 as F ≺ G, F = G, F ≻ G.

    ``rank`` is a function giving the rank of a set (for instance a
    ``Matroid.rank``).  Without it only the element lists are compared, which
    is the right thing for sets already known to share a rank.
    """
    if rank is None:
        a, b = coatom_key(F, 0), coatom_key(G, 0)
    else:
        a, b = coatom_key(F, rank(F)), coatom_key(G, rank(G))
    return (a > b) - (a < b)


class Lattice:
    """A finite lattice given by its elements and order relation.

    Pass either ``covers`` (pairs (a, b) with b covering a) or ``leq`` (a
    predicate).  ``key`` orders elements of equal rank; it defaults to the
    order of ``elements``.
    """

    def __init__(self, elements, leq=None, covers=None, key=None, name=None,
                 check=True):
        elements = list(elements)
        if len(set(elements)) != len(elements):
            raise LatticeError("repeated elements")
        if not elements:
            raise LatticeError("a lattice needs at least one element")
        self.name = name
        pos = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        if leq is None:
            if covers is None:
                raise LatticeError("give either covers or leq")
            up = [[] for _ in range(n)]
            for a, b in covers:
                if a not in pos or b not in pos:
                    raise LatticeError(f"cover pair mentions unknown element: {(a, b)!r}")
                up[pos[a]].append(pos[b])
            # transitive closure from the covers
            below = [1 << i for i in range(n)]
            changed = True
            order = list(range(n))
            while changed:
                changed = False
                for a in order:
                    for b in up[a]:
                        nb = below[b] | below[a]
                        if nb != below[b]:
                            below[b] = nb
                            changed = True
            leq_masks = below
        else:
            leq_masks = []
            for j, y in enumerate(elements):
                m = 0
                for i, x in enumerate(elements):
                    if leq(x, y):
                        m |= 1 << i
                leq_masks.append(m)
        for i in range(n):
            for j in range(n):
                if i != j and leq_masks[j] >> i & 1 and leq_masks[i] >> j & 1:
                    raise LatticeError("order relation is not antisymmetric")
        # height = longest chain from a minimal element
        height = [None] * n

        def h(i):
            if height[i] is None:
                lower = leq_masks[i] & ~(1 << i)
                height[i] = 1 + max((h(j) for j in _bits(lower)), default=-1)
            return height[i]

        for i in range(n):
            h(i)
        if key is None:
            key = {x: i for i, x in enumerate(elements)}.__getitem__
        perm = sorted(range(n), key=lambda i: (height[i], key(elements[i])))
        inv = {old: new for new, old in enumerate(perm)}
        self.elements = [elements[i] for i in perm]
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.rank = [height[i] for i in perm]
        self.below = [0] * n
        for old, m in enumerate(leq_masks):
            nm = 0
            for j in _bits(m):
                nm |= 1 << inv[j]
            self.below[inv[old]] = nm
        self.above = [0] * n
        for j in range(n):
            for i in _bits(self.below[j]):
                self.above[i] |= 1 << j
        self.down = []
        self.up = [[] for _ in range(n)]
        for j in range(n):
            lower = self.below[j] & ~(1 << j)
            cov = [i for i in _bits(lower)
                   if not (self.above[i] & lower & ~(1 << i))]
            self.down.append(cov)
            for i in cov:
                self.up[i].append(j)
        self._by_below = {m: i for i, m in enumerate(self.below)}
        self._by_above = {m: i for i, m in enumerate(self.above)}
        self._meet = {}
        self._join = {}
        if check:
            self._check_lattice()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Lattice({self.name or ''} {len(self)} elements, rank {self.top_rank})"

    def _check_lattice(self):
        n = len(self)
        bottoms = [i for i in range(n) if self.below[i] == 1 << i]
        tops = [i for i in range(n) if self.above[i] == 1 << i]
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("lattice needs a unique bottom and top")
        for i, j in combinations(range(n), 2):
            self.meet_index(i, j)
            self.join_index(i, j)

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return len(self) - 1

    @property
    def top_rank(self):
        return self.rank[-1]

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise NotAFlat(f"{x!r} is not an element of the lattice") from None

    def leq(self, i, j):
        return bool(self.below[j] >> i & 1)

    def meet_index(self, i, j):
        if i > j:
            i, j = j, i
        r = self._meet.get((i, j))
        if r is None:
            r = self._by_below.get(self.below[i] & self.below[j])
            if r is None:
                raise NotALattice("pair has no meet",
                                  (self.elements[i], self.elements[j]))
            self._meet[(i, j)] = r
        return r

    def join_index(self, i, j):
        if i > j:
            i, j = j, i
        r = self._join.get((i, j))
        if r is None:
            r = self._by_above.get(self.above[i] & self.above[j])
            if r is None:
                raise NotALattice("pair has no join",
                                  (self.elements[i], self.elements[j]))
            self._join[(i, j)] = r
        return r

    def meet(self, a, b):
        return self.elements[self.meet_index(self.idx(a), self.idx(b))]

    def join(self, a, b):
        return self.elements[self.join_index(self.idx(a), self.idx(b))]

    def atoms(self):
        return list(self.up[0])

    def coatoms_of(self, F):
        """Elements covered by F, in increasing total order."""
        return [self.elements[i] for i in self.down[self.idx(F)]]

    def interval_indices(self, a, b):
        return [k for k in range(len(self)) if self.leq(a, k) and self.leq(k, b)]

    def interval(self, a, b):
        ia, ib = self.idx(a), self.idx(b)
        if not self.leq(ia, ib):
            raise NotComparable(f"{a!r} is not below {b!r}")
        ks = self.interval_indices(ia, ib)
        inside = set(ks)
        elements = [self.elements[k] for k in ks]
        covers = [(self.elements[i], self.elements[j]) for j in ks
                  for i in self.down[j] if i in inside]
        pos = {x: n for n, x in enumerate(elements)}
        return Lattice(elements, covers=covers, key=pos.__getitem__,
                       check=False)

    def rank_of(self, x):
        return self.rank[self.idx(x)]

    def is_graded(self):
        return all(self.rank[j] == self.rank[i] + 1
                   for j in range(len(self)) for i in self.down[j])

    def is_atomic(self):
        """Return (True, None) or (False, x) with x not a join of atoms."""
        atoms = set(self.atoms())
        for x in range(1, len(self)):
            acc = 0
            for a in atoms:
                if self.leq(a, x):
                    acc = a if acc == 0 else self.join_index(acc, a)
            if acc != x:
                return False, self.elements[x]
        return True, None

    def is_semimodular(self):
        """Return (True, None) or (False, (a, b)) violating
        rk a + rk b >= rk(a ∧ b) + rk(a ∨ b)."""
        for i, j in combinations(range(len(self)), 2):
            m, J = self.meet_index(i, j), self.join_index(i, j)
            if self.rank[i] + self.rank[j] < self.rank[m] + self.rank[J]:
                return False, (self.elements[i], self.elements[j])
        return True, None

    def is_geometric(self):
        """Return (answer, witness): witness is a non-atomic element or a
        pair violating semimodularity."""
        ok, w = self.is_atomic()
        if not ok:
            return False, ("not atomic", w)
        ok, w = self.is_semimodular()
        if not ok:
            return False, ("not semimodular", w)
        return True, None

    def label(self, x):
        if isinstance(x, frozenset):
            return set_label(x)
        return str(x)

    def to_json(self):
        by_rank = {}
        for i, x in enumerate(self.elements):
            by_rank.setdefault(self.rank[i], []).append(self.label(x))
        covers = [[self.label(self.elements[i]), self.label(self.elements[j])]
                  for j in range(len(self)) for i in self.down[j]]
        return {"elements": [self.label(x) for x in self.elements],
                "ranks": {str(k): v for k, v in sorted(by_rank.items())},
                "covers": covers}


def _bits(m):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def lattice_from_json(data):
    """Raw lattice from {"elements": [...], "covers": [[a, b], ...]}."""
    elements = [str(x) for x in data["elements"]]
    covers = [(str(a), str(b)) for a, b in data["covers"]]
    return Lattice(elements, covers=covers, name=data.get("name"))


def load_lattice(path):
    with open(path) as fh:
        return lattice_from_json(json.load(fh))


class LatticeOfFlats(Lattice):
    """The lattice of flats of a matroid, ordered by the coatom comparator.

    Elements are frozensets of element labels.  ``flat_mask[i]`` is the
    bitmask of flat ``i``.
    """

    def __init__(self, M):
        self.matroid = M
        levels = M.flat_masks()
        masks = [F for level in levels for F in level]
        rank_of = {}
        for r, level in enumerate(levels):
            for F in level:
                rank_of[F] = r
        masks.sort(key=lambda F: coatom_key(from_mask(F), rank_of[F]))
        self.flat_mask = masks
        self.mask_index = {F: i for i, F in enumerate(masks)}
        n = len(masks)
        elements = [from_mask(F) for F in masks]
        # build order data directly: much faster than the generic path
        self.name = M.name
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        self.rank = [rank_of[F] for F in masks]
        self.below = [0] * n
        self.above = [0] * n
        for j, G in enumerate(masks):
            for i, F in enumerate(masks):
                if F & G == F:
                    self.below[j] |= 1 << i
                    self.above[i] |= 1 << j
        self.down = []
        self.up = [[] for _ in range(n)]
        for j in range(n):
            cov = [i for i in _bits(self.below[j]) if self.rank[i] == self.rank[j] - 1]
            self.down.append(cov)
            for i in cov:
                self.up[i].append(j)
        self._by_below = {m: i for i, m in enumerate(self.below)}
        self._by_above = {m: i for i, m in enumerate(self.above)}
        self._meet = {}
        self._join = {}

    def meet_index(self, i, j):
        return self.mask_index[self.flat_mask[i] & self.flat_mask[j]]

    def join_index(self, i, j):
        M = self.matroid
        return self.mask_index[M.closure_mask(self.flat_mask[i] | self.flat_mask[j])]

    def idx(self, x):
        x = frozenset(x)
        try:
            return self.index[x]
        except KeyError:
            raise NotAFlat(f"{set_label(x)} is not a flat") from None

    def geq2(self):
        """Indices of flats of rank at least 2."""
        return [i for i in range(len(self)) if self.rank[i] >= 2]

    def nonempty(self):
        return [i for i in range(len(self)) if self.rank[i] >= 1]

    def order_permutation(self):
        """Per rank, the flats listed in increasing total order."""
        out = {}
        for i, x in enumerate(self.elements):
            out.setdefault(self.rank[i], []).append(set_label(x))
        return out


def build_lattice(M):
    return LatticeOfFlats(M)


# -- total coatom orders ----------------------------------------------------

def initial_segments(L, F, order=None):
    """Yield the initial segments of coat(F): the |coat(F)| + 1 prefixes.

    ``order`` maps an index to a sort key; by default the lattice's own
    index order.  Segments are lists of indices.
    """
    coat = sorted(L.down[F], key=order)
    for k in range(len(coat) + 1):
        yield coat[:k]


def coat_restricted(L, segment, Gp):
    """coat_G(G') = {G ∧ G' : G in segment, G ∧ G' covered by G'} (indices)."""
    if Gp not in segment:
        raise NotACoatomOfF("G' must belong to the segment")
    cov = set(L.down[Gp])
    out = set()
    for G in segment:
        m = L.meet_index(G, Gp)
        if m in cov:
            out.add(m)
    return sorted(out)


def verify_total_coatom_order(L, order=None):
    """Check both properties of a total coatom order at every element.

    ``order`` is a dict (or callable) giving each index a distinct sort
    key; the default is the index order of ``L``.  Returns
    ``{"ok": True}`` or ``{"ok": False, "property": ..., "witness": ...}``
    with the witness given as lattice elements.
    """
    n = len(L)
    if order is None:
        pos = list(range(n))
    elif callable(order):
        pos = [order(i) for i in range(n)]
    else:
        pos = [order[i] for i in range(n)]
    if len(set(pos)) != n:
        raise OrderNotTotal("order assigns the same position to two elements")
    el = L.elements

    def before(a, b):
        return pos[a] < pos[b]

    for F in range(n):
        coat = sorted(L.down[F], key=pos.__getitem__)
        # property (i)
        for a, G in enumerate(coat):
            for Gp in coat[a + 1:]:
                m = L.meet_index(G, Gp)
                cov_Gp = set(L.down[Gp])
                found = False
                for Gpp in coat:
                    if not before(Gpp, Gp):
                        continue
                    if L.meet_index(Gp, Gpp) in cov_Gp and L.leq(m, Gpp):
                        found = True
                        break
                if not found:
                    return {"ok": False, "property": "i",
                            "witness": (el[F], el[G], el[Gp])}
        # property (ii)
        for k in range(1, len(coat) + 1):
            seg = coat[:k]
            Gp = seg[-1]
            restricted = set(coat_restricted(L, seg, Gp))
            lower = sorted(L.down[Gp], key=pos.__getitem__)
            if set(lower[:len(restricted)]) != restricted:
                return {"ok": False, "property": "ii",
                        "witness": (el[F], tuple(el[g] for g in seg),
                                    tuple(el[g] for g in sorted(restricted)))}
    return {"ok": True, "checked": n}


def verify_restriction_compatible(L, F):
    """The comparator on [∅, F] agrees with the comparator of M|F."""
    from .matroid import restriction
    M = L.matroid
    flat = L.elements[F]
    if not flat:
        return True
    sub = LatticeOfFlats(restriction(M, flat))
    labels = sorted(flat)
    mapped = [frozenset(labels[e - 1] for e in G) for G in sub.elements]
    ours = [L.elements[i] for i in range(len(L)) if L.leq(i, F)]
    return mapped == ours
