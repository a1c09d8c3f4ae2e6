"""The built-in corpus of small matroids and lattices.

``simple_matroids(n_max)`` enumerates every simple matroid on at most
``n_max`` elements up to isomorphism, straight from basis systems: each
candidate family of r-subsets is tested for basis exchange and simplicity,
then reduced to a canonical form under relabelling.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .lattice import lattice_from_json
from .matroid import (Matroid, MatroidError, boolean, cycle_graph, from_bases,
                      linear, popcount, uniform)


def _permute_mask(m, perm):
    out = 0
    i = 0
    while m:
        if m & 1:
            out |= 1 << perm[i]
        m >>= 1
        i += 1
    return out


def _canonical(masks, n):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(_permute_mask(m, perm) for m in masks))
        if best is None or key < best:
            best = key
    return best


def _exchange_ok(masks, n):
    mask_set = set(masks)
    for B1 in masks:
        for B2 in masks:
            diff = B1 & ~B2
            if not diff:
                continue
            for i in range(n):
                if diff >> i & 1:
                    rest = B1 & ~(1 << i)
                    if not any((rest | (1 << j)) in mask_set
                               for j in range(n) if (B2 & ~B1) >> j & 1):
                        return False
    return True


def _simple(masks, n):
    """No loops and no parallel pairs: every element and every pair lies
    in some basis (for rank >= 2)."""
    union = 0
    for B in masks:
        union |= B
    if union != (1 << n) - 1:
        return False
    r = popcount(masks[0])
    if r < 2:
        return n == 1
    for i, j in combinations(range(n), 2):
        pair = (1 << i) | (1 << j)
        if not any(B & pair == pair for B in masks):
            return False
    return True


@lru_cache(maxsize=None)
def _basis_systems(n, r):
    cands = [sum(1 << i for i in c) for c in combinations(range(n), r)]
    found = {}
    # the full family is always a matroid; search all nonempty subfamilies
    for k in range(1, 2 ** len(cands)):
        masks = [cands[t] for t in range(len(cands)) if k >> t & 1]
        if not _simple(masks, n):
            continue
        if not _exchange_ok(masks, n):
            continue
        key = _canonical(masks, n)
        found.setdefault(key, key)
    return sorted(found, key=lambda key: (-len(key), key))


def _mask_sets(masks):
    out = []
    for m in masks:
        out.append([i + 1 for i in range(m.bit_length()) if m >> i & 1])
    return out


def simple_matroids(n_max=5):
    """All simple matroids with 1 <= n <= n_max up to isomorphism."""
    out = []
    for n in range(1, n_max + 1):
        for r in range(1, n + 1):
            for k, key in enumerate(_basis_systems(n, r)):
                M = from_bases(n, _mask_sets(key))
                if len(key) == len(list(combinations(range(n), r))):
                    M.name = f"U{r},{n}" if r < n else f"B{n}"
                else:
                    M.name = f"S{n}.{r}.{k}"
                out.append(M)
    return out


FIGURE2_MATRIX = [[1, 0, 0, 1, 0],
                  [0, 1, 0, 1, 0],
                  [0, 0, 1, 1, 0],
                  [0, 0, 0, 0, 1]]

FIGURE3_LATTICE = {
    "name": "figure3",
    "elements": ["0", "a", "b", "c", "d", "e", "f", "1"],
    "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["0", "d"],
               ["a", "e"], ["b", "e"], ["c", "f"], ["d", "f"],
               ["e", "1"], ["f", "1"]],
}


def figure2_matroid():
    M = linear(FIGURE2_MATRIX)
    M.name = "fig2"
    return M


def figure3_lattice():
    return lattice_from_json(FIGURE3_LATTICE)


def named_matroids():
    """The named examples reachable from the command line."""
    return {
        "fig2": figure2_matroid,
        "U5,6": lambda: uniform(5, 6),
        "C4": lambda: cycle_graph(4),
        "B3": lambda: boolean(3),
    }


def corpus(n_max=5, extras=True):
    """Matroids of the test corpus: all simple ones on <= n_max elements,
    then U5,6 and the Figure-2 matroid."""
    out = simple_matroids(n_max)
    if extras:
        out.append(uniform(5, 6))
        out.append(figure2_matroid())
    return out


def lookup(name):
    """A corpus matroid by name (``U3,4``, ``B3``, ``fig2``, ``S5.3.2`` ...)."""
    named = named_matroids()
    if name in named:
        return named[name]()
    for M in simple_matroids(5):
        if M.name == name:
            return M
    if name.startswith("U") and "," in name:
        r, n = name[1:].split(",")
        return uniform(int(r), int(n))
    if name.startswith("B") and name[1:].isdigit():
        return boolean(int(name[1:]))
    raise MatroidError(f"unknown corpus matroid {name!r}")


__all__ = ["corpus", "simple_matroids", "figure2_matroid", "figure3_lattice",
           "named_matroids", "lookup", "Matroid"]
