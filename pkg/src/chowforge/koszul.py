"""Koszul filtrations of (augmented) Chow rings, walked and checked.

The filtration consists of ideals generated by variables, of two kinds:

* ``F0(G)``: (x_G : G in G) for an up-set G of the variable flats;
* ``F1(F, S)``: (x_G : G ⊄ F) + (x_H : H in S) for a flat F and an
  initial segment S of coat(F) in the coatom order.

Every nonzero member I has a witness step: a variable x with I = J + (x),
J a smaller member, and (J : x) = C also a member, computed by closed form.
``verify_filtration`` follows these steps from the roots R_+ and (0),
checking each one against brute-force linear algebra in the ring.
"""

from __future__ import annotations

from collections import deque

from .quotient import colon, equals_ideal, ideal_span


class FiltrationError(ValueError):
    pass


class ZeroIdeal(FiltrationError):
    pass


class ClosedFormInapplicable(FiltrationError):
    pass


class WalkBudgetExceeded(FiltrationError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FiltrationIdeal:
    """A member of the filtration.  Flats are lattice indices of ``R.L``."""

    def __init__(self, R, kind, flats=(), F=None):
        if kind not in ("F0", "F1"):
            raise FiltrationError(f"unknown kind {kind!r}")
        self.R = R
        L = R.L
        if kind == "F1":
            seg = tuple(sorted(flats))
            if not seg:
                kind, flats, F = "F0", [g for g in R.var_flats if not L.leq(g, F)], None
            else:
                flats = seg
        self.kind = kind
        self.F = F
        self.flats = tuple(sorted(flats))
        if kind == "F0":
            gens = set(self.flats)
        else:
            gens = {g for g in R.var_flats if not L.leq(g, F)} | set(self.flats)
        self.generators = frozenset(g for g in gens if g in R.var_of)

    @classmethod
    def maximal(cls, R):
        return cls(R, "F0", R.var_flats)

    @classmethod
    def zero(cls, R):
        return cls(R, "F0", ())

    @property
    def key(self):
        return self.generators

    def is_zero(self):
        return not self.generators

    def polys(self):
        R = self.R
        return [{(R.var_of[g],): 1} for g in sorted(self.generators)]

    def describe(self):
        R = self.R
        from .matroid import set_label
        lab = lambda g: set_label(R.L.elements[g])
        if self.kind == "F0":
            if self.generators == frozenset(R.var_flats):
                return "R_+"
            if not self.generators:
                return "(0)"
            return "F0{" + ",".join(lab(g) for g in self.flats) + "}"
        return f"F1({lab(self.F)}; " + ",".join(lab(g) for g in self.flats) + ")"

    def __repr__(self):
        return f"FiltrationIdeal({self.describe()})"

    def __eq__(self, other):
        return isinstance(other, FiltrationIdeal) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _low_rank(R):
    """Colon becomes R_+ at flats of this rank (2, or 1 augmented)."""
    return 1 if R.augmented else 2


def filtration_witness_step(R, I):
    """Return (J, x, C) with I = J + (x_x) and (J : x_x) = C.

    ``x`` is the flat (lattice index) of the removed variable.
    """
    if I.is_zero():
        raise ZeroIdeal("the zero ideal has no witness step")
    L = R.L
    if I.kind == "F0":
        fam = set(I.flats)
        minimal = [g for g in I.flats
                   if not any(h != g and L.leq(h, g) for h in fam)]
        Gp = min(minimal)
        J = FiltrationIdeal(R, "F0", fam - {Gp})
        if L.rank[Gp] <= _low_rank(R):
            C = FiltrationIdeal.maximal(R)
        else:
            C = FiltrationIdeal(R, "F1", L.down[Gp], F=Gp)
        return J, Gp, C
    seg = list(I.flats)
    Gp = max(seg)
    J = FiltrationIdeal(R, "F1", [g for g in seg if g != Gp], F=I.F)
    if L.rank[Gp] <= _low_rank(R):
        # the coatoms of G' carry no variables: the colon is (0 : x_G')
        # when nothing else of the segment is left, and R_+ otherwise
        if len(seg) == 1:
            return J, Gp, FiltrationIdeal(R, "F1", (), F=Gp)
        return J, Gp, FiltrationIdeal.maximal(R)
    restricted = set()
    cov = set(L.down[Gp])
    for G in seg:
        m = L.meet_index(G, Gp)
        if m in cov:
            restricted.add(m)
    coat = sorted(L.down[Gp])
    k = len(restricted)
    if set(coat[:k]) != restricted:
        raise ClosedFormInapplicable(
            f"restricted coatoms of {L.elements[Gp]} do not form an initial segment")
    return J, Gp, FiltrationIdeal(R, "F1", restricted, F=Gp)


def verify_filtration(R, roots=None, budget=None, oracle=None):
    """Walk witness steps from the roots and check each against the oracle.

    ``oracle`` is the algebra used for the brute-force ideal computations
    (by default ``R`` itself); its variables must be indexed like ``R``'s.
    Returns a report dict.
    """
    Q = oracle if oracle is not None else R
    if roots is None:
        roots = [FiltrationIdeal.maximal(R), FiltrationIdeal.zero(R)]
    spans = {}
    principal = {}
    zero = ideal_span(Q, [])

    def principal_span(x):
        if x not in principal:
            principal[x] = ideal_span(Q, [{(R.var_of[x],): 1}])
        return principal[x]

    def span(I):
        # I = J + (x) holds on generators by construction, so the span of I
        # is built from the span of J; fall back to a direct span when the
        # step does not apply
        todo = [I]
        while todo:
            K = todo[-1]
            if K.key in spans:
                todo.pop()
                continue
            if K.is_zero():
                spans[K.key] = zero
                todo.pop()
                continue
            try:
                J, x, _ = filtration_witness_step(R, K)
            except ClosedFormInapplicable:
                J = None
            if J is None or J.key | {x} != K.key:
                spans[K.key] = ideal_span(Q, K.polys())
                todo.pop()
                continue
            if J.key not in spans:
                todo.append(J)
                continue
            spans[K.key] = spans[J.key] + principal_span(x)
            todo.pop()
        return spans[I.key]

    seen = set()
    queue = deque()
    for r in roots:
        if r.key not in seen:
            seen.add(r.key)
            queue.append(r)
    violations = []
    steps = 0
    while queue:
        I = queue.popleft()
        if I.is_zero():
            continue
        if budget is not None and steps >= budget:
            raise WalkBudgetExceeded(
                f"walk stopped after {steps} steps",
                {"visited": len(seen), "steps": steps, "violations": violations,
                 "pass": False, "complete": False})
        steps += 1
        try:
            J, x, C = filtration_witness_step(R, I)
        except ClosedFormInapplicable as exc:
            violations.append({"ideal": I.describe(), "problem": str(exc)})
            continue
        SI, SJ, SC = span(I), span(J), span(C)
        xpoly = {(R.var_of[x],): 1}
        problems = []
        if not all(SJ.dim(d) <= SI.dim(d) for d in range(Q.top + 1)) or SJ == SI:
            problems.append("J is not strictly smaller than I")
        if J.key | {x} != I.key and not equals_ideal(SI, SJ + principal_span(x)):
            problems.append("I differs from J + (x)")
        if not equals_ideal(colon(Q, SJ, xpoly), SC):
            problems.append("(J : x) differs from the closed form")
        if problems:
            violations.append({"ideal": I.describe(), "J": J.describe(),
                               "C": C.describe(), "problem": "; ".join(problems)})
        for nxt in (J, C):
            if nxt.key not in seen:
                seen.add(nxt.key)
                queue.append(nxt)
    return {"visited": len(seen), "steps": steps, "violations": violations,
            "pass": not violations, "complete": True}


def sample_members(R, count, seed=0):
    """Random filtration members (up-sets and F1 ideals) for spot checks."""
    import random
    rng = random.Random(seed)
    L = R.L
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            picks = [g for g in R.var_flats if rng.random() < 0.3]
            up = {g for g in R.var_flats if any(L.leq(h, g) for h in picks)}
            out.append(FiltrationIdeal(R, "F0", up))
        else:
            F = rng.choice(R.var_flats)
            coat = sorted(g for g in L.down[F] if g in R.var_of)
            if not coat:
                continue
            k = rng.randint(1, len(coat))
            out.append(FiltrationIdeal(R, "F1", coat[:k], F=F))
    return out

