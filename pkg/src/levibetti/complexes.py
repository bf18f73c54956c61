"""Simplicial complexes, monomial ideals, and the functors between them.

Faces are bitmasks over at most 63 vertices; a complex stores only its
facets.  Two degenerate complexes are distinct values and both matter:

  * the void complex    — no faces at all,     facets = ()
  * the irrelevant {0}  — only the empty face, facets = (0,)

Monomials are dense exponent tuples; the minimal generators of an ideal
form an antichain under divisibility.  The zero ideal has no generators;
the unit ideal is the single generator 1 (all exponents zero) and appears
only as the Stanley-Reisner ideal of the void complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .bipartite import BipartiteGraph
from .errors import CapExceeded, InputError, NonSquarefree

# faces are Python-int bitsets, so the width guard is generous; the real
# work limits are the configured caps (subset enumeration, faces, lattice)
MAX_VERTICES = 2048


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & (-mask)
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[int, ...]  # bitmasks, sorted, forming an antichain

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise CapExceeded(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if list(self.facets) != sorted(set(self.facets)):
            raise InputError("facets must be sorted and duplicate-free")
        for f in self.facets:
            if f >> self.n:
                raise InputError("facet uses a vertex outside the vertex set")
        for a in self.facets:
            for b in self.facets:
                if a != b and a & b == a:
                    raise InputError("facets must form an antichain")

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; -1 for the irrelevant complex.  Void has no dimension."""
        if self.is_void:
            raise InputError("the void complex has no dimension")
        return max(popcount(f) for f in self.facets) - 1

    def has_face(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.facets)

    def faces_by_size(self, cap: int = 1 << 18) -> dict[int, list[int]]:
        """All faces grouped by cardinality, each list sorted.  The empty
        face has size 0; the void complex yields {}."""
        if self.is_void:
            return {}
        seen: set[int] = set()
        for f in self.facets:
            vs = bits(f)
            for r in range(len(vs) + 1):
                for c in combinations(vs, r):
                    m = 0
                    for v in c:
                        m |= 1 << v
                    seen.add(m)
            if len(seen) > cap:
                raise CapExceeded(f"face count exceeds cap {cap}")
        out: dict[int, list[int]] = {}
        for m in seen:
            out.setdefault(popcount(m), []).append(m)
        for lst in out.values():
            lst.sort()
        return out

    def f_vector(self, cap: int = 1 << 18) -> tuple[int, ...]:
        """(f_0, f_1, ...) where f_i counts i-dimensional faces; the empty
        face is not counted."""
        by = self.faces_by_size(cap)
        if not by:
            return ()
        top = max(by)
        return tuple(len(by.get(s, [])) for s in range(1, top + 1))


def make_complex(n: int, facets) -> SimplicialComplex:
    """Normalize an arbitrary face list to its maximal antichain."""
    fs = sorted(set(facets))
    maximal = [f for f in fs if not any(f != g and f & g == f for g in fs)]
    return SimplicialComplex(n, tuple(sorted(maximal)))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: tuple[tuple[int, ...], ...]  # minimal, canonically sorted
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) != self.n:
            raise InputError("need one variable name per variable")
        for g in self.gens:
            if len(g) != self.n or any(e < 0 for e in g):
                raise InputError("bad exponent vector")
        for a in self.gens:
            for b in self.gens:
                if a != b and _divides(a, b):
                    raise InputError("generators must be minimal")
        if list(self.gens) != sorted(self.gens, key=_gen_key):
            raise InputError("generators must be canonically sorted")

    @property
    def squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(g) for g in self.gens)

    def gen_strings(self) -> tuple[str, ...]:
        out = []
        for g in self.gens:
            parts = []
            for v, e in enumerate(g):
                if e == 1:
                    parts.append(self.names[v])
                elif e > 1:
                    parts.append(f"{self.names[v]}^{e}")
            out.append("*".join(parts) if parts else "1")
        return tuple(out)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _gen_key(g: tuple[int, ...]):
    return (sum(g), g)


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"z{i + 1}" for i in range(n))


def graph_names(g: BipartiteGraph) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(g.s)) + tuple(
        f"y{j + 1}" for j in range(g.k)
    )


def make_ideal(n: int, gens, names=None) -> MonomialIdeal:
    """Minimalize, deduplicate, and sort a generator list."""
    gens = [tuple(g) for g in set(map(tuple, gens))]
    minimal = [g for g in gens if not any(h != g and _divides(h, g) for h in gens)]
    minimal.sort(key=_gen_key)
    return MonomialIdeal(n, tuple(minimal), tuple(names or default_names(n)))


def edge_ideal(g: BipartiteGraph) -> MonomialIdeal:
    """One squarefree quadric x_i y_j per edge, in variables x1..xs, y1..yk."""
    n = g.n
    gens = []
    for (x, y) in g.edges:
        e = [0] * n
        e[x] = 1
        e[g.s + y] = 1
        gens.append(tuple(e))
    return make_ideal(n, gens, graph_names(g))


def adjacency_masks(g: BipartiteGraph) -> list[int]:
    """Symmetric adjacency bitmasks over the combined vertex set."""
    adj = [0] * g.n
    for (x, y) in g.edges:
        a, b = x, g.s + y
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def independence_complex(g: BipartiteGraph) -> SimplicialComplex:
    """Facets are the maximal independent sets of g, enumerated by
    Bron-Kerbosch with pivoting on the complement graph."""
    n = g.n
    if n > MAX_VERTICES:
        raise CapExceeded(f"{n} vertices exceeds bitset width")
    if n == 0:
        return SimplicialComplex(0, (0,))
    adj = adjacency_masks(g)
    full = (1 << n) - 1
    comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    facets: list[int] = []

    def bk(r: int, p: int, x: int):
        if p == 0 and x == 0:
            facets.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & comp[u]))
        for v in bits(p & ~comp[pivot]):
            vb = 1 << v
            bk(r | vb, p & comp[v], x & comp[v])
            p &= ~vb
            x |= vb

    bk(0, full, 0)
    return SimplicialComplex(n, tuple(sorted(facets)))


def stanley_reisner_ideal(cx: SimplicialComplex, names=None) -> MonomialIdeal:
    """Squarefree ideal generated by the minimal non-faces of cx.

    Void complex -> unit ideal; full simplex -> zero ideal.
    """
    names = tuple(names or default_names(cx.n))
    if cx.is_void:
        return make_ideal(cx.n, [tuple([0] * cx.n)], names)
    gens = []
    # grow candidates level by level: a minimal non-face of size r+1 has all
    # its r-subsets among the faces of size r
    current = [0]
    for _ in range(cx.n):
        nxt_faces = []
        seen: set[int] = set()
        for f in current:
            free = ((1 << cx.n) - 1) & ~f
            for v in bits(free):
                m = f | (1 << v)
                if m in seen:
                    continue
                seen.add(m)
                if not all(cx.has_face(m & ~(1 << w)) for w in bits(m)):
                    continue
                if cx.has_face(m):
                    nxt_faces.append(m)
                else:
                    gens.append(m)
        current = nxt_faces
    exps = []
    for m in gens:
        e = [0] * cx.n
        for v in bits(m):
            e[v] = 1
        exps.append(tuple(e))
    return make_ideal(cx.n, exps, names)


def complex_of_ideal(ideal: MonomialIdeal) -> SimplicialComplex:
    """Inverse Stanley-Reisner functor: faces are the subsets containing no
    generator support."""
    if not ideal.squarefree:
        raise NonSquarefree("Stanley-Reisner complex needs a squarefree ideal")
    n = ideal.n
    if ideal.is_unit:
        return SimplicialComplex(n, ())
    if ideal.is_zero:
        return SimplicialComplex(n, ((1 << n) - 1,) if n else (0,))
    supports = [_support_mask(g) for g in ideal.gens]
    found: set[int] = set()
    visited: set[int] = set()

    def expand(allowed: int):
        if allowed in visited:
            return
        visited.add(allowed)
        hit = next((s for s in supports if s & allowed == s), None)
        if hit is None:
            found.add(allowed)
            return
        for v in bits(hit):
            expand(allowed & ~(1 << v))

    expand((1 << n) - 1)
    return make_complex(n, found)


def _support_mask(g: tuple[int, ...]) -> int:
    m = 0
    for v, e in enumerate(g):
        if e:
            m |= 1 << v
    return m


def alexander_dual(ideal: MonomialIdeal) -> MonomialIdeal:
    """Generators are the complements of the facets of the associated
    complex; an involution on nonzero proper squarefree ideals."""
    if not ideal.squarefree:
        raise NonSquarefree("Alexander dual needs a squarefree ideal")
    if ideal.is_zero or ideal.is_unit:
        raise InputError("Alexander dual undefined for the zero/unit ideal")
    cx = complex_of_ideal(ideal)
    full = (1 << ideal.n) - 1
    exps = []
    for f in cx.facets:
        comp = full & ~f
        e = [0] * ideal.n
        for v in bits(comp):
            e[v] = 1
        exps.append(tuple(e))
    return make_ideal(ideal.n, exps, ideal.names)


def power(ideal: MonomialIdeal, q: int) -> MonomialIdeal:
    """Minimal generators of the q-th ordinary power."""
    if q < 1:
        raise InputError("q must be >= 1")
    if ideal.is_zero:
        return ideal
    prods = set()
    for combo in combinations_with_replacement(ideal.gens, q):
        prods.add(tuple(sum(col) for col in zip(*combo)))
    return make_ideal(ideal.n, prods, ideal.names)


@dataclass(frozen=True)
class LcmLattice:
    """All lcms of nonempty generator subsets plus an artificial bottom,
    ordered by divisibility."""

    n: int
    elements: tuple[tuple[int, ...], ...]  # sorted by (degree, exponents); [0] is bottom
    names: tuple[str, ...]

    @property
    def bottom(self) -> tuple[int, ...]:
        return self.elements[0]

    @property
    def top(self) -> tuple[int, ...]:
        return self.elements[-1]


def lcm_lattice(ideal: MonomialIdeal, cap: int = 1 << 14) -> LcmLattice:
    if ideal.is_zero:
        raise InputError("lcm lattice undefined for the zero ideal")
    elems: set[tuple[int, ...]] = set(ideal.gens)
    frontier = set(ideal.gens)
    while frontier:
        fresh: set[tuple[int, ...]] = set()
        for a in frontier:
            for g in ideal.gens:
                m = tuple(max(x, y) for x, y in zip(a, g))
                if m not in elems:
                    fresh.add(m)
        elems |= fresh
        if len(elems) > cap:
            raise CapExceeded(f"lcm lattice exceeds cap {cap}")
        frontier = fresh
    bottom = tuple([0] * ideal.n)
    ordered = [bottom] + sorted(elems, key=_gen_key)
    return LcmLattice(ideal.n, tuple(ordered), ideal.names)


def open_interval_complex(
    lattice: LcmLattice, m: tuple[int, ...], cap: int = 1 << 18
) -> SimplicialComplex:
    """Order complex of the open interval (bottom, m): vertices are the
    lattice elements strictly between, facets are the maximal chains."""
    inside = [z for z in lattice.elements[1:] if z != m and _divides(z, m)]
    if not inside:
        return SimplicialComplex(0, (0,))
    if len(inside) > MAX_VERTICES:
        raise CapExceeded(
            f"open interval has {len(inside)} elements, exceeds bitset width"
        )
    size = len(inside)
    strictly_below = [0] * size  # bitmask of elements strictly below i
    strictly_above = [0] * size
    for i, z in enumerate(inside):
        for j, w in enumerate(inside):
            if i != j and _divides(w, z):
                strictly_below[i] |= 1 << j
                strictly_above[j] |= 1 << i
    covers_of = [[] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            # j covers i: i < j with nothing strictly between
            if (strictly_below[j] >> i) & 1 and not (
                strictly_below[j] & strictly_above[i]
            ):
                covers_of[i].append(j)
    chains: list[int] = []
    budget = cap

    def grow(mask: int, last: int):
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise CapExceeded(f"order complex exceeds chain cap {cap}")
        if not covers_of[last]:
            chains.append(mask)
            return
        for w in covers_of[last]:
            grow(mask | (1 << w), w)

    for i in range(size):
        if not strictly_below[i]:
            grow(1 << i, i)
    return make_complex(size, chains)


def ideal_to_json(ideal: MonomialIdeal) -> str:
    obj = {
        "n": ideal.n,
        "names": list(ideal.names),
        "gens": [list(g) for g in ideal.gens],
    }
    return json.dumps(obj, separators=(",", ":"))


def ideal_from_json(text: str) -> MonomialIdeal:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    return make_ideal(int(obj["n"]), obj["gens"], obj.get("names"))


def ideal_to_text(ideal: MonomialIdeal) -> str:
    """One generator per line, e.g. ``x1*y1``."""
    return "\n".join(ideal.gen_strings())
