"""Sparse exact linear algebra over Q or a prime field.

Vectors are plain dicts ``{column: coefficient}`` with no zero entries.
Columns are non-negative integers; the pivot of a row is its *largest*
column, so callers control which coordinates get eliminated first by how
they number their columns.

Coefficients are ``gmpy2.mpq`` rationals when ``p is None`` and ints in
``range(p)`` otherwise.  (``mpq`` behaves like ``fractions.Fraction`` but is
an order of magnitude faster, which matters for the larger quotients.)
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush

from gmpy2 import mpq

DEFAULT_PRIME = 2_147_483_647


def coerce(x, p=None):
    """Bring a number (int, Fraction, or "a/b" string) into the field."""
    if isinstance(x, str):
        x = Fraction(x)
    x = mpq(x)
    if p is None:
        return x
    return int(x.numerator) * pow(int(x.denominator), -1, p) % p


def one(p=None):
    return 1 if p else mpq(1)


def to_fraction(x):
    """Plain ``Fraction`` for output (json, printing)."""
    return Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "denominator") else Fraction(x)


def inverse(x, p=None):
    if p is None:
        return 1 / x
    return pow(x, -1, p)


def scale(vec, c, p=None):
    if p is None:
        return {k: v * c for k, v in vec.items()}
    return {k: v * c % p for k, v in vec.items() if v * c % p}


def axpy(y, c, x, p=None):
    """In place ``y += c * x``; returns y."""
    if p is None:
        for k, v in x.items():
            s = y.get(k, 0) + c * v
            if s:
                y[k] = s
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            s = (y.get(k, 0) + c * v) % p
            if s:
                y[k] = s
            else:
                y.pop(k, None)
    return y


def add_vectors(vectors, p=None):
    out = {}
    for c, v in vectors:
        axpy(out, c, v, p)
    return out


class Echelon:
    """Incrementally maintained row echelon form.

    Each stored row is normalised to have coefficient 1 at its pivot, and all
    its other entries lie in smaller columns.  With ``track=True`` every row
    carries the combination of inserted tags that produced it, which is how
    kernels are computed.
    """

    def __init__(self, p=None, track=False):
        self.p = p
        self.track = track
        self.rows = {}
        self.combos = {}
        self._full = True

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def _reduce(self, vec, combo, full):
        p = self.p
        rows = self.rows
        v = dict(vec)
        heap = [-c for c in v]
        heapify(heap)
        while heap:
            c = -heappop(heap)
            f = v.get(c)
            if f is None:
                continue
            row = rows.get(c)
            if row is None:
                if not full:
                    break
                continue
            del v[c]
            for cc, val in row.items():
                if cc == c:
                    continue
                old = v.get(cc)
                if p is None:
                    new = (old or 0) - f * val
                else:
                    new = ((old or 0) - f * val) % p
                if new:
                    v[cc] = new
                    if old is None:
                        heappush(heap, -cc)
                elif old is not None:
                    del v[cc]
            if combo is not None:
                axpy(combo, -f, self.combos[c], p)
        return v, combo

    def reduce(self, vec, full=True):
        """Reduce ``vec`` modulo the row space.

        With ``full=True`` the result has no entries in pivot columns (a
        normal form once the echelon is fully reduced; see ``make_reduced``).
        """
        return self._reduce(vec, None, full)[0]

    def __contains__(self, vec):
        return not self._reduce(vec, None, False)[0]

    def add(self, vec, tag=None):
        """Insert a row.  Returns the new pivot, or None if dependent.

        When tracking and the row reduces to zero, the kernel relation is
        available from ``add_tracked``.
        """
        return self.add_tracked(vec, tag)[0]

    def add_tracked(self, vec, tag=None):
        combo = None
        if self.track:
            combo = {} if tag is None else {tag: one(self.p)}
        v, combo = self._reduce(vec, combo, False)
        if not v:
            return None, combo
        piv = max(v)
        inv = inverse(v[piv], self.p)
        if inv != 1:
            v = scale(v, inv, self.p)
            if combo is not None:
                combo = scale(combo, inv, self.p)
        self.rows[piv] = v
        if combo is not None:
            self.combos[piv] = combo
        self._full = False
        return piv, None

    def make_reduced(self):
        """Clear every pivot column from every other row (reduced form)."""
        if self._full:
            return
        p = self.p
        done = {}
        for piv in sorted(self.rows):
            row = self.rows[piv]
            lower = {c: v for c, v in row.items() if c != piv}
            if any(c in done for c in lower):
                saved = self.rows
                self.rows = done
                combo = self.combos.get(piv) if self.track else None
                if combo is not None:
                    combo = dict(combo)
                lower, combo = self._reduce(lower, combo, True)
                self.rows = saved
                if combo is not None:
                    self.combos[piv] = combo
            lower[piv] = one(p)
            done[piv] = lower
        self.rows = done
        self._full = True

    def basis(self):
        return [self.rows[c] for c in sorted(self.rows)]


def kernel(images, p=None):
    """Kernel of the linear map sending source basis vector ``j`` to
    ``images[j]`` (a sparse vector).  Returns sparse vectors over ``j``.
    """
    ech = Echelon(p, track=True)
    out = []
    for j, img in enumerate(images):
        piv, rel = ech.add_tracked(img, j)
        if piv is None:
            out.append(rel)
    return out


def rank(vectors, p=None):
    ech = Echelon(p)
    for v in vectors:
        ech.add(v)
    return ech.rank


def span_equal(us, ws, p=None):
    a = Echelon(p)
    for u in us:
        a.add(u)
    for w in ws:
        if w not in a:
            return False
    b = Echelon(p)
    for w in ws:
        b.add(w)
    return a.rank == b.rank
