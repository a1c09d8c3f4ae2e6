"""Reading and writing matroids, lattices, ring elements and reports."""

from __future__ import annotations

import json

from .linalg import coerce, to_fraction
from .matroid import MalformedSpec, from_spec


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path=None):
    """Deterministic JSON text (sorted keys); written to ``path`` if given."""
    text = json.dumps(obj, indent=2, sort_keys=True, default=_default)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def _default(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    try:
        return str(to_fraction(x))
    except TypeError:
        return str(x)


def load_matroid(path):
    return from_spec(load_json(path))


def save_matroid(M, path):
    return dump_json(M.to_spec(), path)


# -- ring elements -----------------------------------------------------------

def element_to_json(R, nested):
    """dict nested monomial -> coeff, as a list of records."""
    out = []
    for m, c in sorted(nested.items()):
        out.append({
            "chain": [sorted(R.L.elements[f]) for f, _ in m],
            "exponents": [e for _, e in m],
            "coeff": str(to_fraction(c)) if R.p is None else str(c),
        })
    return {"augmented": R.augmented, "terms": out}


def element_from_json(R, data):
    if bool(data.get("augmented", False)) != R.augmented:
        raise MalformedSpec("element belongs to the other kind of Chow ring")
    out = {}
    for t in data["terms"]:
        chain = tuple((R.flat(F), int(e)) for F, e in zip(t["chain"], t["exponents"]))
        if not R.is_nested(chain):
            raise MalformedSpec(f"not a nested monomial: {t}")
        out[chain] = coerce(t["coeff"], R.p)
    return out


def parse_polynomial(R, text):
    """Parse text such as ``x_12*x_123 - 2*x_12^2 + 1/2*x_13`` into a
    polynomial {monomial in variable indices: coefficient}.  Variables are
    named x_<flat>, with the flat written as a digit string or {a,b,...}."""
    names = {name: k for k, name in enumerate(R.names)}
    text = text.replace("**", "^").strip()
    if not text:
        raise MalformedSpec("empty polynomial")
    poly = {}
    # split on + and - that are not inside braces
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch in "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip():
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for term in terms:
        term = term.replace(" ", "")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        coef = coerce(sign, R.p)
        mono = []
        for factor in term.split("*"):
            if not factor:
                raise MalformedSpec(f"bad term {term!r}")
            base, _, power = factor.partition("^")
            e = int(power) if power else 1
            if base in names:
                mono.extend([names[base]] * e)
            else:
                try:
                    coef = coef * coerce(base, R.p) ** e
                except (ValueError, ZeroDivisionError):
                    raise MalformedSpec(f"unknown variable {base!r}") from None
        key = tuple(sorted(mono))
        poly[key] = poly.get(key, 0) + coef
    degs = {len(m) for m, c in poly.items() if c}
    if len(degs) > 1:
        from .quotient import InhomogeneousGenerator
        raise InhomogeneousGenerator(f"polynomial mixes degrees {sorted(degs)}")
    return {m: c for m, c in poly.items() if c}


def flat_from_text(text):
    """``1234`` or ``{10,11}`` or ``1,2,3`` -> frozenset of ints."""
    t = text.strip().strip("{}").replace(" ", "")
    if not t:
        return frozenset()
    if "," in t:
        return frozenset(int(x) for x in t.split(",") if x)
    return frozenset(int(ch) for ch in t)


def betti_to_json(table):
    return table.to_json()
