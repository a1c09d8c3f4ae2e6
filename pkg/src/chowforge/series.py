"""Truncated power series with exact coefficients, and Betti tables."""

from __future__ import annotations

from fractions import Fraction


def format_poly(coeffs, var="t"):
    """Coefficient list -> text such as ``1 + 4t + t^2``."""
    terms = []
    for k, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if a == 1 else f"{a}{mon}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_mul(a, b, order=None):
    n = len(a) + len(b) - 1
    if order is not None:
        n = min(n, order)
    out = [Fraction(0)] * max(n, 0)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += x * y
    return out


class RationalSeries:
    """Power series known through ``t^(order-1)``.

    ``numerator``/``denominator`` optionally record a closed rational form
    whose expansion agrees with ``coeffs``.
    """

    def __init__(self, coeffs, order=None, numerator=None, denominator=None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs)
        coeffs = (coeffs + [Fraction(0)] * order)[:order]
        self.coeffs = coeffs
        self.order = order
        self.numerator = None if numerator is None else [Fraction(c) for c in numerator]
        self.denominator = None if denominator is None else [Fraction(c) for c in denominator]

    @classmethod
    def polynomial(cls, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        return cls(coeffs, order, numerator=coeffs, denominator=[1])

    def __getitem__(self, k):
        if k >= self.order:
            raise IndexError(f"coefficient {k} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self):
        return f"RationalSeries({format_poly(self.coeffs)} + O(t^{self.order}))"

    def __str__(self):
        return format_poly(self.coeffs)

    def negate_variable(self):
        """f(t) -> f(-t)."""
        flip = lambda cs: [c if k % 2 == 0 else -c for k, c in enumerate(cs)]
        return RationalSeries(flip(self.coeffs), self.order,
                              None if self.numerator is None else flip(self.numerator),
                              None if self.denominator is None else flip(self.denominator))

    def __mul__(self, other):
        order = min(self.order, other.order)
        return RationalSeries(poly_mul(self.coeffs, other.coeffs, order), order)

    def inverse(self, order=None):
        """Multiplicative inverse; needs a nonzero constant term."""
        if order is None:
            order = self.order
        a = self.coeffs
        if not a or a[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        inv = [Fraction(0)] * order
        inv[0] = 1 / a[0]
        for n in range(1, order):
            s = sum(a[k] * inv[n - k] for k in range(1, min(n, len(a) - 1) + 1))
            inv[n] = -s / a[0]
        num, den = self.denominator, self.numerator
        return RationalSeries(inv, order, num, den)

    def closed_form(self):
        if self.numerator is None:
            return None
        return f"({format_poly(self.numerator)}) / ({format_poly(self.denominator)})"

    def to_json(self):
        out = {"coefficients": [str(c) for c in self.coeffs], "order": self.order}
        if self.numerator is not None:
            out["numerator"] = [str(c) for c in self.numerator]
            out["denominator"] = [str(c) for c in self.denominator]
        return out


def hilbert_series(dims, order=None):
    """Hilbert series of an Artinian algebra from its Hilbert function."""
    return RationalSeries.polynomial(dims, order)


def poincare_from_hilbert(hs, order):
    """1 / HS(-t) to the given order (the Poincaré series of the residue
    field when the algebra is Koszul)."""
    return hs.negate_variable().inverse(order)


class BettiTable:
    """Graded Betti numbers beta[i, j], computed for i <= i_max, j <= j_max."""

    def __init__(self, values, i_max, j_max):
        self.values = {k: v for k, v in values.items() if v}
        self.i_max = i_max
        self.j_max = j_max

    def __getitem__(self, ij):
        i, j = ij
        if i > self.i_max or j > self.j_max:
            raise KeyError(f"beta[{i},{j}] is outside the computed window")
        return self.values.get((i, j), 0)

    def total(self, i):
        return sum(v for (a, _), v in self.values.items() if a == i)

    def nonlinear(self):
        """(i, j, beta) entries off the diagonal j = i."""
        return sorted((i, j, v) for (i, j), v in self.values.items() if i != j)

    def is_linear(self):
        return not self.nonlinear()

    def linear_strand(self):
        return [self.values.get((i, i), 0) for i in range(self.i_max + 1)]

    def to_text(self):
        """Rows are j - i, columns are i, as in the usual Betti diagram."""
        rows = sorted({j - i for (i, j) in self.values} | {0})
        width = max([len(str(v)) for v in self.values.values()] + [1]) + 1
        head = "     " + "".join(f"{i:>{width}}" for i in range(self.i_max + 1))
        lines = [head]
        for r in rows:
            cells = []
            for i in range(self.i_max + 1):
                v = self.values.get((i, i + r), 0)
                cells.append(f"{(v if v else '-'):>{width}}")
            lines.append(f"{r:>3}: " + "".join(cells))
        return "\n".join(lines)

    def to_json(self):
        return {"i_max": self.i_max, "j_max": self.j_max,
                "betti": [[i, j, v] for (i, j), v in sorted(self.values.items())]}
