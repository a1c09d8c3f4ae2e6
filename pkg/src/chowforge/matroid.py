"""Matroids on the ground set {1, ..., n} behind a single rank oracle.

A ``Matroid`` only needs a function computing the rank of a subset given as
a bitmask (bit ``e - 1`` stands for element ``e``).  Concrete backings
(uniform, linear, graphic, bases, flats) supply that function; everything
else (closure, flats, the matroid operations) is written against it.

Public methods take and return ``frozenset`` objects of integer labels.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


class MatroidError(ValueError):
    pass


class MalformedSpec(MatroidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyGroundSet(MatroidError):
    pass


class ElementOutOfRange(MatroidError):
    pass


class AllLoops(MatroidError):
    pass


class RankZero(MatroidError):
    pass


class NotSimple(MatroidError):
    pass


def to_mask(X):
    m = 0
    for e in X:
        m |= 1 << (e - 1)
    return m


def from_mask(m):
    out = []
    e = 1
    while m:
        if m & 1:
            out.append(e)
        m >>= 1
        e += 1
    return frozenset(out)


def popcount(m):
    return bin(m).count("1")


def set_label(X):
    """Flats printed as digit strings, the way they appear in the figures."""
    X = sorted(X)
    if not X:
        return "{}"
    if all(0 <= e <= 9 for e in X):
        return "".join(str(e) for e in X)
    return "{" + ",".join(str(e) for e in X) + "}"


class Matroid:
    """A matroid given by a rank function on bitmasks.

    ``kind`` and ``payload`` remember how the matroid was built so it can be
    written back out; ``labels`` maps internal element ``i`` to the label it
    had in whatever object this matroid was derived from.
    """

    def __init__(self, n, rank_fn, kind="rank", payload=None, labels=None,
                 name=None):
        if n < 1:
            raise EmptyGroundSet("ground set must have at least one element")
        self.n = n
        self._rank_fn = rank_fn
        self._memo = {}
        self.kind = kind
        self.payload = payload
        self.labels = tuple(labels) if labels else tuple(range(1, n + 1))
        self.name = name
        self.full_mask = (1 << n) - 1
        self._flats = None

    def __repr__(self):
        label = self.name or self.kind
        return f"Matroid({label}, n={self.n}, rank={self.rank()})"

    @property
    def ground(self):
        return frozenset(range(1, self.n + 1))

    def _check(self, X):
        for e in X:
            if not (isinstance(e, int) and 1 <= e <= self.n):
                raise ElementOutOfRange(f"element {e!r} not in 1..{self.n}")

    def rank_mask(self, m):
        r = self._memo.get(m)
        if r is None:
            r = self._rank_fn(m)
            self._memo[m] = r
        return r

    def rank(self, X=None):
        if X is None:
            return self.rank_mask(self.full_mask)
        self._check(X)
        return self.rank_mask(to_mask(X))

    def closure_mask(self, m):
        r = self.rank_mask(m)
        out = m
        for i in range(self.n):
            b = 1 << i
            if not m & b and self.rank_mask(m | b) == r:
                out |= b
        return out

    def closure(self, X):
        self._check(X)
        return from_mask(self.closure_mask(to_mask(X)))

    def is_independent(self, X):
        X = frozenset(X)
        return self.rank(X) == len(X)

    def is_flat(self, X):
        return self.closure(X) == frozenset(X)

    def loops(self):
        return self.closure(())

    def is_simple(self):
        if self.rank_mask(0) != 0 or any(self.rank_mask(1 << i) == 0 for i in range(self.n)):
            return False
        return all(self.rank_mask((1 << i) | (1 << j)) == 2
                   for i, j in combinations(range(self.n), 2))

    def bases(self):
        r = self.rank()
        return [frozenset(B) for B in combinations(range(1, self.n + 1), r)
                if self.rank_mask(to_mask(B)) == r]

    def flat_masks(self):
        """All flats as bitmasks, grouped by rank."""
        if self._flats is None:
            bottom = self.closure_mask(0)
            levels = [[bottom]]
            while True:
                seen = set()
                nxt = []
                for F in levels[-1]:
                    for i in range(self.n):
                        if not F >> i & 1:
                            G = self.closure_mask(F | (1 << i))
                            if G not in seen:
                                seen.add(G)
                                nxt.append(G)
                if not nxt:
                    break
                levels.append(sorted(nxt))
            self._flats = levels
        return self._flats

    def flats(self, k=None):
        levels = self.flat_masks()
        if k is not None:
            if k < 0 or k >= len(levels):
                return []
            return [from_mask(F) for F in levels[k]]
        return [from_mask(F) for level in levels for F in level]

    def hyperplanes(self):
        r = self.rank()
        return self.flats(r - 1) if r >= 1 else []

    def same_rank_function(self, other):
        if self.n != other.n:
            return False
        return all(self.rank_mask(m) == other.rank_mask(m)
                   for m in range(1 << self.n))

    def to_spec(self):
        """JSON-able description that ``from_spec`` turns back into an equal matroid."""
        if self.kind in ("uniform", "linear", "graphic", "bases", "flats"):
            spec = {"ground": self.n, "kind": self.kind}
            spec.update(self.payload)
            return spec
        return {"ground": self.n, "kind": "bases",
                "bases": [sorted(B) for B in self.bases()]}


# -- backings -------------------------------------------------------------

def uniform(r, n):
    if not 0 <= r <= n:
        raise MalformedSpec(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, lambda m: min(popcount(m), r), "uniform", {"rank": r},
                   name=f"U{r},{n}")


def boolean(n):
    M = uniform(n, n)
    M.name = f"B{n}"
    return M


def _column_rank(cols, p):
    rows = []  # each reduced row stored as (pivot, vector)
    rank = 0
    for c in cols:
        v = list(c)
        for piv, row in rows:
            f = v[piv]
            if f:
                if p is None:
                    v = [a - f * b for a, b in zip(v, row)]
                else:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            continue
        inv = 1 / v[piv] if p is None else pow(v[piv], -1, p)
        v = [a * inv for a in v] if p is None else [a * inv % p for a in v]
        rows.append((piv, v))
        rank += 1
    return rank


def linear(matrix, p=None):
    """Column matroid of a matrix given as a list of rows.

    Entries may be ints, Fractions or strings like ``"3/4"``.  With ``p`` a
    prime, ranks are computed over GF(p).
    """
    if not matrix or not matrix[0]:
        raise EmptyGroundSet("matrix has no columns")
    width = len(matrix[0])
    if any(len(row) != width for row in matrix):
        raise MalformedSpec("matrix rows have different lengths")
    if p is None:
        rows = [[Fraction(a) for a in row] for row in matrix]
    else:
        rows = [[Fraction(a).numerator * pow(Fraction(a).denominator, -1, p) % p
                 for a in row] for row in matrix]
    cols = [tuple(row[j] for row in rows) for j in range(width)]

    def rank_fn(m):
        return _column_rank([cols[i] for i in range(width) if m >> i & 1], p)

    payload = {"matrix": [[str(Fraction(a)) for a in row] for row in matrix]}
    if p is not None:
        payload["field"] = {"p": p}
    return Matroid(width, rank_fn, "linear", payload)


def graphic(edges):
    """Cycle matroid of a multigraph; edge k of the list is element k + 1."""
    edges = [tuple(e) for e in edges]
    if not edges:
        raise EmptyGroundSet("graph has no edges")
    for e in edges:
        if len(e) != 2:
            raise MalformedSpec(f"edge {e!r} does not have two endpoints")

    def rank_fn(m):
        parent = {}

        def find(a):
            while parent.get(a, a) != a:
                a = parent[a]
            return a

        r = 0
        for i, (u, v) in enumerate(edges):
            if m >> i & 1:
                a, b = find(u), find(v)
                if a != b:
                    parent[a] = b
                    r += 1
        return r

    return Matroid(len(edges), rank_fn, "graphic",
                   {"edges": [list(e) for e in edges]})


def cycle_graph(k):
    """Cycle matroid of the k-cycle C_k."""
    M = graphic([(i, (i + 1) % k) for i in range(k)])
    M.name = f"M(C{k})"
    return M


def from_bases(n, bases):
    bases = [frozenset(B) for B in bases]
    if not bases:
        raise MalformedSpec("a matroid needs at least one basis")
    sizes = {len(B) for B in bases}
    if len(sizes) != 1:
        raise MalformedSpec("bases have different sizes")
    for B in bases:
        for e in B:
            if not (isinstance(e, int) and 1 <= e <= n):
                raise ElementOutOfRange(f"element {e!r} not in 1..{n}")
    masks = sorted({to_mask(B) for B in bases})
    mask_set = set(masks)
    # basis exchange: for B1, B2 and x in B1 - B2 some y in B2 - B1 works
    for B1 in masks:
        for B2 in masks:
            diff = B1 & ~B2
            for i in range(n):
                if diff >> i & 1:
                    rest = B1 & ~(1 << i)
                    if not any((rest | (1 << j)) in mask_set
                               for j in range(n) if (B2 & ~B1) >> j & 1):
                        raise MalformedSpec(
                            "basis exchange fails",
                            (from_mask(B1), from_mask(B2)))

    def rank_fn(m):
        return max(popcount(m & B) for B in masks)

    return Matroid(n, rank_fn, "bases",
                   {"bases": [sorted(from_mask(B)) for B in masks]})


def from_flats(n, flats):
    """Matroid from its complete list of flats.

    Checks that the ground set is a flat, that flats are closed under
    intersection, and that for every flat F the flats covering F partition
    the elements outside F.
    """
    masks = set()
    for F in flats:
        for e in F:
            if not (isinstance(e, int) and 1 <= e <= n):
                raise ElementOutOfRange(f"element {e!r} not in 1..{n}")
        masks.add(to_mask(F))
    full = (1 << n) - 1
    if full not in masks:
        raise MalformedSpec("the ground set must be a flat")
    ordered = sorted(masks, key=popcount)
    for a, b in combinations(ordered, 2):
        if (a & b) not in masks:
            raise MalformedSpec("flats are not closed under intersection",
                                (from_mask(a), from_mask(b)))

    def closure(m):
        out = full
        for F in ordered:
            if F & m == m:
                out &= F
        return out

    for F in ordered:
        above = [G for G in ordered if G != F and G & F == F]
        covers = [G for G in above
                  if not any(H != G and H & F == F and G & H == H for H in above)]
        seen = F
        for G in covers:
            if (G & ~F) & (seen & ~F):
                raise MalformedSpec("covers of a flat overlap",
                                    (from_mask(F), from_mask(G)))
            seen |= G
        if seen != full:
            raise MalformedSpec("covers of a flat do not cover the ground set",
                                (from_mask(F),))

    # rank of a flat is the length of a maximal chain below it
    height = {}
    for F in ordered:
        below = [G for G in ordered if G != F and G & F == G]
        height[F] = 1 + max((height[G] for G in below), default=-1)

    def rank_fn(m):
        return height[closure(m)]

    return Matroid(n, rank_fn, "flats",
                   {"flats": sorted(sorted(from_mask(F)) for F in ordered)})


def from_spec(spec):
    """Build a matroid from the JSON specification format."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MalformedSpec("matroid spec must be an object with a 'kind'")
    kind = spec["kind"]
    n = spec.get("ground")
    if kind == "uniform":
        return uniform(int(spec["rank"]), int(n))
    if kind == "linear":
        field = spec.get("field", "Q")
        p = None if field in (None, "Q") else int(field["p"])
        M = linear(spec["matrix"], p)
        if n is not None and M.n != n:
            raise MalformedSpec(f"matrix has {M.n} columns but ground is {n}")
        return M
    if kind == "graphic":
        M = graphic(spec["edges"])
        if n is not None and M.n != n:
            raise MalformedSpec(f"graph has {M.n} edges but ground is {n}")
        return M
    if kind == "bases":
        return from_bases(int(n), spec["bases"])
    if kind == "flats":
        return from_flats(int(n), spec["flats"])
    raise MalformedSpec(f"unknown matroid kind {kind!r}")


# -- operations -----------------------------------------------------------

def _explicit(n, rank_fn, labels=None, name=None):
    M = Matroid(n, rank_fn, "derived", labels=labels, name=name)
    return M


def restriction(M, F):
    """M|F, relabelled to 1..|F| in increasing order of the old labels."""
    F = sorted(frozenset(F))
    M._check(F)
    if not F:
        raise EmptyGroundSet("cannot restrict to the empty set")
    bits = [1 << (e - 1) for e in F]

    def rank_fn(m):
        big = 0
        for i, b in enumerate(bits):
            if m >> i & 1:
                big |= b
        return M.rank_mask(big)

    labels = [M.labels[e - 1] for e in F]
    return _explicit(len(F), rank_fn, labels)


def simplify(M):
    """The simple matroid on the rank-one flats of M."""
    if M.rank() == 0:
        raise AllLoops("every element is a loop")
    points = M.flat_masks()[1]
    # label each point by its smallest element so the order follows M's
    points = sorted(points, key=lambda F: min(from_mask(F)))

    def rank_fn(m):
        big = 0
        for i, F in enumerate(points):
            if m >> i & 1:
                big |= F
        return M.rank_mask(big)

    labels = [M.labels[min(from_mask(F)) - 1] for F in points]
    return _explicit(len(points), rank_fn, labels)


def truncation(M):
    """Rank function min(rk X, rk M - 1): drops the hyperplanes."""
    r = M.rank()
    if r == 0:
        raise RankZero("cannot truncate a rank-zero matroid")
    return _explicit(M.n, lambda m: min(M.rank_mask(m), r - 1), M.labels)


def dual(M):
    r = M.rank()
    full = M.full_mask
    return _explicit(M.n, lambda m: popcount(m) + M.rank_mask(full & ~m) - r,
                     M.labels)


def free_coextension(M):
    """The free coextension on E + {e}, with the new element labelled n + 1."""
    n = M.n
    e_bit = 1 << n

    def rank_fn(m):
        if m & e_bit:
            return M.rank_mask(m & ~e_bit) + 1
        r = M.rank_mask(m)
        return r if r == popcount(m) else r + 1

    return _explicit(n + 1, rank_fn, list(M.labels) + ["e"])


def flat_profile(M):
    """Sizes of the flats in each rank, a cheap lattice invariant."""
    return [sorted(popcount(F) for F in level) for level in M.flat_masks()]
