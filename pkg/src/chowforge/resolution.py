"""Minimal free resolution of the residue field, degree by degree.

Works over any ``GradedAlgebra``.  A free module F_i is a list of generator
degrees; its degree-D part has coordinates ``(g, m)`` with m running over
the basis of A_{D - deg g}.  Images of coordinates under the differential
are built from the parent structure of the algebra's basis: if
``m = x_a * m'`` then ``d(g m) = x_a * d(g m')``.

Only the kernels Z_{i-1} in degrees up to ``j_max`` are needed for the
Betti numbers beta[i, j], j <= j_max, so F_{i_max} itself is never built.
"""

from __future__ import annotations

from bisect import bisect_right

from .linalg import Echelon, kernel, one
from .series import BettiTable, RationalSeries, poincare_from_hilbert, poly_mul


class ResolutionError(ValueError):
    pass


class CutoffExceeded(ResolutionError):
    pass


class BudgetExceeded(ResolutionError):
    """Raised when a graded piece would exceed the coordinate budget.
    ``partial`` holds the Betti numbers computed so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class _FreeModule:
    def __init__(self, A, degrees):
        self.A = A
        self.degrees = list(degrees)
        self._offsets = {}

    def offsets(self, D):
        off = self._offsets.get(D)
        if off is None:
            off = []
            total = 0
            for deg in self.degrees:
                off.append(total)
                total += self.A.dim(D - deg) if D >= deg else 0
            off.append(total)
            self._offsets[D] = off
        return off

    def dim(self, D):
        return self.offsets(D)[-1]

    def mul_var(self, a, D, vec):
        """x_a * vec for vec in degree D; result in degree D + 1."""
        A = self.A
        p = A.p
        off, noff = self.offsets(D), self.offsets(D + 1)
        degs = self.degrees
        out = {}
        get = out.get
        for c, coef in vec.items():
            g = bisect_right(off, c) - 1
            row = A.mul_gen(a, D - degs[g])[c - off[g]]
            if not row:
                continue
            base = noff[g]
            for k, v in row.items():
                key = base + k
                s = get(key, 0) + coef * v
                if p is not None:
                    s %= p
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out


def betti_of_residue_field(A, i_max, j_max=None, budget=None):
    """Graded Betti numbers of k = A/A_+ over A for i <= i_max, j <= j_max.

    In the top degree j_max the kernels are never formed: exactness gives
    dim Z_i(j_max) = dim F_i(j_max) - dim Z_{i-1}(j_max), and the new
    generators there only need a rank.  ``budget`` bounds the dimension of
    any graded piece that has to be handled; exceeding it raises
    ``BudgetExceeded``.
    """
    if j_max is None:
        j_max = i_max + 1
    if i_max < 0:
        raise CutoffExceeded("i_max must be non-negative")
    p = A.p
    values = {(0, 0): 1}
    if i_max == 0:
        return BettiTable(values, i_max, j_max)

    def guard(n, what):
        if budget is not None and n > budget:
            raise BudgetExceeded(f"{what} has {n} coordinates (budget {budget})",
                                 BettiTable(values, i_max, j_max))

    # F_0 = A; Z_0 = A_+ (bases below j_max, dimensions everywhere)
    prev = _FreeModule(A, [0])
    Z = {D: [{k: one(p)} for k in range(A.dim(D))] for D in range(1, j_max)}
    Zdim = {D: A.dim(D) for D in range(1, j_max + 1)}
    for i in range(1, i_max + 1):
        new_degrees = []
        new_images = []
        for D in range(i, j_max + 1):
            target = Zdim.get(D, 0)
            if not target:
                continue
            guard(prev.dim(D), f"F_{i - 1} in degree {D}")
            ech = Echelon(p)
            done = False
            for z in Z.get(D - 1, []):
                for a in range(A.ngens):
                    w = prev.mul_var(a, D - 1, z)
                    if w:
                        ech.add(w)
                        if ech.rank == target:
                            done = True
                            break
                if done:
                    break
            count = target - ech.rank
            if count:
                values[(i, D)] = count
            new_degrees.extend([D] * count)
            if D < j_max and count:
                for z in Z[D]:
                    if ech.add(dict(z)) is not None:
                        new_images.append(z)
            else:
                new_images.extend([None] * count)
        if i == i_max:
            break
        F = _FreeModule(A, new_degrees)
        # the sizes of F_i are known now; refuse before any kernel is formed
        for D in range(i, j_max + 1):
            guard(F.dim(D), f"F_{i} in degree {D}")
        Znext, Zdim_next = {}, {}
        imgs = {}
        for D in range(i, j_max):
            n = F.dim(D)
            guard(n, f"F_{i} in degree {D}")
            off = F.offsets(D)
            cur = [None] * n
            for g, deg in enumerate(F.degrees):
                if deg > D:
                    continue
                e = D - deg
                for m in range(A.dim(e)):
                    if e == 0:
                        cur[off[g] + m] = new_images[g]
                    else:
                        a, mp = A.parent(e, m)
                        src = imgs[D - 1][F.offsets(D - 1)[g] + mp]
                        cur[off[g] + m] = prev.mul_var(a, D - 1, src)
            imgs[D] = cur
            Znext[D] = kernel(cur, p)
            Zdim_next[D] = len(Znext[D])
        Zdim_next[j_max] = F.dim(j_max) - Zdim.get(j_max, 0)
        prev, Z, Zdim = F, Znext, Zdim_next
    return BettiTable(values, i_max, j_max)


def koszul_certificate(A, i_max=4, budget=None):
    """Linearity of the resolution of k to homological degree i_max, and
    the identity Poin(t) HS(-t) = 1 modulo t^(i_max + 1).

    Returns a dict report; ``report["pass"]`` is the verdict.
    """
    table = betti_of_residue_field(A, i_max, i_max + 1, budget=budget)
    hs = RationalSeries.polynomial(A.hilbert_function())
    betti = [table.total(i) for i in range(i_max + 1)]
    prod = poly_mul(betti, hs.negate_variable().coeffs, i_max + 1)
    froberg = [int(c) for c in prod] == [1] + [0] * i_max
    expected = poincare_from_hilbert(hs, i_max + 1)
    nonlinear = table.nonlinear()
    return {
        "hilbert_function": list(A.hilbert_function()),
        "i_max": i_max,
        "betti": table,
        "betti_totals": betti,
        "linear": not nonlinear,
        "nonlinear": nonlinear,
        "froberg": froberg,
        "poincare": expected,
        "matches_series": betti == [int(c) for c in expected.coeffs],
        "pass": not nonlinear and froberg,
    }
