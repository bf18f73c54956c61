"""Graded Betti tables of monomial quotients S/I.

Two independent routes compute the same tables:

  * betti_squarefree — Hochster's formula.  For each vertex subset W the
    reduced homology of the induced subcomplex contributes
    dim H~_{|W|-i-1} to beta_{i,|W|}.
  * betti_general    — the lcm-lattice formula.  Each lattice element m
    contributes dim H~_{i-2} of the order complex of the open interval
    (bottom, m) to beta_{i, deg m}.

On squarefree ideals the two must agree entrywise; that cross-check is a
test invariant, not an assumption.  All tables are tables of the quotient
(beta_{0,0} = 1); the regularity of the ideal itself is reg(S/I) + 1.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .complexes import (
    MonomialIdeal,
    SimplicialComplex,
    alexander_dual,
    bits,
    complex_of_ideal,
    edge_ideal,
    independence_complex,
    lcm_lattice,
    popcount,
    stanley_reisner_ideal,
)
from .bipartite import BipartiteGraph
from .errors import CapExceeded, InputError
from .homology import PrimeField, homology_dims_from_faces

HOCHSTER_VERTEX_CAP = 16
LATTICE_CAP = 1 << 14
FACE_CAP = 1 << 18


@dataclass(frozen=True)
class BettiTable:
    n: int
    entries: dict[tuple[int, int], int] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.entries.get((0, 0)) != 1:
            raise InputError("quotient table must have beta_{0,0} = 1")
        for (i, j), b in self.entries.items():
            if b < 1 or i < 0 or j < i or (i == 0 and j > 0):
                raise InputError(f"illegal table entry beta_{{{i},{j}}} = {b}")

    @property
    def pd(self) -> int:
        return max(i for (i, _) in self.entries)

    @property
    def reg(self) -> int:
        """Regularity of the quotient S/I."""
        return max(j - i for (i, j) in self.entries)

    @property
    def reg_ideal(self) -> int | None:
        """reg(I) = reg(S/I) + 1; None for the zero ideal."""
        if self.pd == 0:
            return None
        return self.reg + 1

    def totals(self) -> tuple[int, ...]:
        out = [0] * (self.pd + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return tuple(out)

    def row(self, r: int) -> tuple[int, ...]:
        """Entries beta_{i, i+r} for i = 0..pd."""
        return tuple(self.entries.get((i, i + r), 0) for i in range(self.pd + 1))


def table_from_entries(n: int, entries: dict[tuple[int, int], int]) -> BettiTable:
    return BettiTable(n, {k: v for k, v in sorted(entries.items()) if v})


def table_to_json(t: BettiTable) -> str:
    triples = sorted([i, j, b] for (i, j), b in t.entries.items())
    return json.dumps({"n": t.n, "entries": triples}, separators=(",", ":"))


def table_from_json(text: str) -> BettiTable:
    obj = json.loads(text)
    return table_from_entries(
        int(obj["n"]), {(int(i), int(j)): int(b) for i, j, b in obj["entries"]}
    )


def render_diagram(t: BettiTable) -> str:
    """Singular-style Betti diagram: rows j-i, columns i, '-' for zero,
    totals row.  Column width auto-sized."""
    pd, reg = t.pd, t.reg
    cells = [str(b) for b in t.entries.values()] + [str(x) for x in t.totals()]
    width = max(max(len(c) for c in cells), len(str(pd))) + 2
    label_w = max(len("total"), len(str(reg))) + 1
    header = " " * (label_w + 1) + "".join(f"{i:>{width}}" for i in range(pd + 1))
    rule = "-" * len(header)
    lines = [header, rule]
    for r in range(reg + 1):
        row = t.row(r)
        body = "".join(f"{(str(v) if v else '-'):>{width}}" for v in row)
        lines.append(f"{str(r) + ':':>{label_w}} " + body)
    lines.append(rule)
    body = "".join(f"{v:>{width}}" for v in t.totals())
    lines.append(f"{'total:':>{label_w}} " + body)
    return "\n".join(lines)


def _nonface_context(cx: SimplicialComplex):
    """Per-vertex nonface structure: bitmask of partners from 2-element
    nonfaces plus explicit lists of larger nonfaces."""
    nf = stanley_reisner_ideal(cx)
    if nf.is_unit:
        raise InputError("void complex has no Betti table")
    n = cx.n
    pair = [0] * n
    big_at: list[list[int]] = [[] for _ in range(n)]
    singles = 0
    for g in nf.gens:
        mask = 0
        for v, e in enumerate(g):
            if e:
                mask |= 1 << v
        vs = bits(mask)
        if len(vs) == 1:
            singles |= mask
            big_at[vs[0]].append(mask)
        elif len(vs) == 2:
            a, b = vs
            pair[a] |= 1 << b
            pair[b] |= 1 << a
        else:
            for v in vs:
                big_at[v].append(mask)
    return pair, big_at, singles


def _chunk_entries(args) -> dict[tuple[int, int], int]:
    n, pair, big_at, prune, p, w_lo, w_hi = args
    entries: dict[tuple[int, int], int] = {}
    for w in range(w_lo, w_hi):
        if prune and w:
            cone = False
            m = w
            while m:
                low = m & (-m)
                v = low.bit_length() - 1
                if not (pair[v] & w) and not any(
                    nfm & ~w == 0 for nfm in big_at[v]
                ):
                    cone = True
                    break
                m ^= low
            if cone:
                continue
        by_size = _faces_within(n, pair, big_at, w)
        dims = homology_dims_from_faces(by_size, p)
        if not dims:
            continue
        j = popcount(w)
        for d, h in dims.items():
            key = (j - d - 1, j)
            entries[key] = entries.get(key, 0) + h
    return entries


def _faces_within(n, pair, big_at, w) -> dict[int, list[int]]:
    """Faces of the induced subcomplex on vertex set w, grouped by size."""
    by_size: dict[int, list[int]] = {0: [0]}
    verts = bits(w)

    def ok(v: int, mask: int) -> bool:
        if pair[v] & mask:
            return False
        nxt = mask | (1 << v)
        for nfm in big_at[v]:
            if nfm & ~nxt == 0:
                return False
        return True

    def rec(start: int, mask: int):
        for idx in range(start, len(verts)):
            v = verts[idx]
            if not ok(v, mask):
                continue
            new = mask | (1 << v)
            by_size.setdefault(popcount(new), []).append(new)
            rec(idx + 1, new)

    rec(0, 0)
    return by_size


def betti_squarefree(
    cx: SimplicialComplex,
    field: PrimeField,
    cap_vertices: int = HOCHSTER_VERTEX_CAP,
    prune: bool = True,
    threads: int = 1,
) -> BettiTable:
    """Exact graded Betti table of the Stanley-Reisner quotient of cx via
    subset-wise reduced homology.

    Cone-pruning skips subsets W in which some vertex meets no minimal
    nonface inside W (the induced complex is then a cone, hence acyclic);
    disabling it must not change the result.
    """
    if cx.n > cap_vertices:
        raise CapExceeded(
            f"{cx.n} vertices exceeds the subset-enumeration cap {cap_vertices}"
        )
    pair, big_at, singles = _nonface_context(cx)
    total = 1 << cx.n
    if threads <= 1:
        entries = _chunk_entries((cx.n, pair, big_at, prune, field.p, 0, total))
    else:
        chunks = []
        step = max(1, math.ceil(total / (threads * 8)))
        for lo in range(0, total, step):
            chunks.append(
                (cx.n, pair, big_at, prune, field.p, lo, min(lo + step, total))
            )
        entries = {}
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_chunk_entries, chunks):
                for k, v in part.items():
                    entries[k] = entries.get(k, 0) + v
    return table_from_entries(cx.n, entries)


def upper_koszul_faces(
    m: tuple[int, ...], gens, cap_faces: int = FACE_CAP
) -> dict[int, list[int]]:
    """Faces (grouped by size) of the multidegree-m Koszul complex: subsets
    tau of the support of m with x^(m-tau) still inside the ideal.

    This complex is homotopy equivalent to the order complex of the open
    interval below m in the lcm lattice (both compute dim H~_{i-2} =
    beta_{i,m}); it lives on at most n vertices, which keeps the lattice
    route feasible where full chain enumeration is not.
    """
    supp = [v for v, e in enumerate(m) if e]
    forbids = []
    for g in gens:
        if all(ge <= me for ge, me in zip(g, m)):
            fb = 0
            for pos, v in enumerate(supp):
                if g[v] >= m[v]:
                    fb |= 1 << pos
            forbids.append(fb)
    if len(supp) > 20 or (1 << len(supp)) > cap_faces:
        raise CapExceeded(f"Koszul complex on {len(supp)} vertices exceeds cap")
    by_size: dict[int, list[int]] = {}
    for tau in range(1 << len(supp)):
        if any(not (tau & fb) for fb in forbids):
            by_size.setdefault(popcount(tau), []).append(tau)
    return by_size


def betti_general(
    ideal: MonomialIdeal,
    field: PrimeField,
    cap_lattice: int = LATTICE_CAP,
    cap_faces: int = FACE_CAP,
) -> BettiTable:
    """Betti table of S/I for an arbitrary monomial ideal via its lcm
    lattice: the lattice elements are the only multidegrees that can carry
    Betti numbers, and each contributes the reduced homology of its Koszul
    complex (equivalently, of the open-interval order complex)."""
    if ideal.is_unit:
        raise InputError("unit ideal has no Betti table")
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    if ideal.is_zero:
        return table_from_entries(ideal.n, entries)
    lat = lcm_lattice(ideal, cap_lattice)
    for m in lat.elements[1:]:
        dims = homology_dims_from_faces(
            upper_koszul_faces(m, ideal.gens, cap_faces), field.p
        )
        deg = sum(m)
        for d, h in dims.items():
            key = (d + 2, deg)
            entries[key] = entries.get(key, 0) + h
    return table_from_entries(ideal.n, entries)


def betti_of_ideal(ideal: MonomialIdeal, field: PrimeField, **caps) -> BettiTable:
    """Dispatch: Hochster route for squarefree ideals, lcm lattice otherwise."""
    if ideal.squarefree and not ideal.is_unit:
        return betti_squarefree(
            complex_of_ideal(ideal),
            field,
            cap_vertices=caps.get("cap_vertices", HOCHSTER_VERTEX_CAP),
            threads=caps.get("threads", 1),
        )
    return betti_general(
        ideal,
        field,
        cap_lattice=caps.get("cap_lattice", LATTICE_CAP),
        cap_faces=caps.get("cap_faces", FACE_CAP),
    )


@dataclass(frozen=True)
class HomologicalSummary:
    n: int
    pd: int
    reg_quotient: int
    reg_ideal: int | None
    dim: int  # Krull dimension of S/I
    depth: int
    codim: int
    is_cm: bool


def summarize(t: BettiTable, cx: SimplicialComplex) -> HomologicalSummary:
    """Auslander-Buchsbaum bookkeeping for the quotient whose complex is cx."""
    krull = cx.dim + 1
    depth = t.n - t.pd
    codim = t.n - krull
    if depth > krull:
        raise InputError("depth exceeded dimension; table and complex disagree")
    return HomologicalSummary(
        n=t.n,
        pd=t.pd,
        reg_quotient=t.reg,
        reg_ideal=t.reg_ideal,
        dim=krull,
        depth=depth,
        codim=codim,
        is_cm=depth == krull,
    )


def has_linear_resolution(ideal: MonomialIdeal, field: PrimeField, **caps) -> bool:
    """True iff all generators share one degree d0 and every beta_{i,j} with
    i >= 1 sits at j = i + d0 - 1."""
    if ideal.is_zero or ideal.is_unit:
        raise InputError("linear resolution question needs a proper nonzero ideal")
    degs = set(ideal.degrees())
    if len(degs) > 1:
        return False
    d0 = degs.pop()
    t = betti_of_ideal(ideal, field, **caps)
    return all(j == i + d0 - 1 for (i, j) in t.entries if i >= 1)


def eagon_reiner_check(
    g: BipartiteGraph, field: PrimeField, **caps
) -> tuple[bool, bool]:
    """(direct Cohen-Macaulay check, Alexander dual has linear resolution).

    The two booleans must agree; their agreement is a corpus-wide test."""
    if not g.edges:
        raise InputError("zero edge ideal: Cohen-Macaulay question is trivial")
    cx = independence_complex(g)
    t = betti_squarefree(
        cx,
        field,
        cap_vertices=caps.get("cap_vertices", HOCHSTER_VERTEX_CAP),
        threads=caps.get("threads", 1),
    )
    direct = summarize(t, cx).is_cm
    dual = alexander_dual(edge_ideal(g))
    linear = has_linear_resolution(dual, field, **caps)
    return direct, linear
