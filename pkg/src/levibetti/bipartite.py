"""Bipartite (Levi) graphs and the graph invariants the bounds consume.

Vertices are split into an x-part (points, indices 0..s-1) and a y-part
(curves, indices 0..k-1).  Edges are (x, y) index pairs.  Everything is
immutable; all algorithms are exact and deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .arrangements import Arrangement
from .errors import CapExceeded, InputError


@dataclass(frozen=True)
class BipartiteGraph:
    s: int
    k: int
    edges: tuple[tuple[int, int], ...]  # sorted, duplicate-free

    def __post_init__(self):
        if self.s < 0 or self.k < 0:
            raise InputError("negative part size")
        seen = set()
        for (x, y) in self.edges:
            if not (0 <= x < self.s and 0 <= y < self.k):
                raise InputError(f"edge ({x},{y}) outside declared parts")
            if (x, y) in seen:
                raise InputError(f"duplicate edge ({x},{y})")
            seen.add((x, y))
        if list(self.edges) != sorted(self.edges):
            raise InputError("edges must be sorted")

    @property
    def n(self) -> int:
        return self.s + self.k

    def x_neighbors(self, x: int) -> tuple[int, ...]:
        return tuple(b for (a, b) in self.edges if a == x)

    def y_neighbors(self, y: int) -> tuple[int, ...]:
        return tuple(a for (a, b) in self.edges if b == y)

    def x_label(self, x: int) -> str:
        return f"x{x + 1}"

    def y_label(self, y: int) -> str:
        return f"y{y + 1}"


def make_graph(s: int, k: int, edges) -> BipartiteGraph:
    return BipartiteGraph(s, k, tuple(sorted(set(map(tuple, edges)))))


def levi_graph(a: Arrangement) -> BipartiteGraph:
    """One x-vertex per point (in arrangement order), one y-vertex per curve,
    edge for each incidence."""
    edges = []
    for i, p in enumerate(a.points):
        for j in p.curves:
            edges.append((i, j))
    return make_graph(a.s, a.k, edges)


@dataclass(frozen=True)
class MatchingResult:
    nu: int
    witness: tuple[tuple[int, int], ...]


def max_matching(g: BipartiteGraph) -> MatchingResult:
    """Maximum matching by augmenting paths (Kuhn).  Deterministic: vertices
    are scanned in index order."""
    adj = [sorted(g.x_neighbors(x)) for x in range(g.s)]
    match_x = [-1] * g.s
    match_y = [-1] * g.k

    def try_augment(x: int, seen: list[bool]) -> bool:
        for y in adj[x]:
            if seen[y]:
                continue
            seen[y] = True
            if match_y[y] == -1 or try_augment(match_y[y], seen):
                match_x[x] = y
                match_y[y] = x
                return True
        return False

    nu = 0
    for x in range(g.s):
        if try_augment(x, [False] * g.k):
            nu += 1
    witness = tuple(sorted((x, match_x[x]) for x in range(g.s) if match_x[x] != -1))
    return MatchingResult(nu, witness)


@dataclass(frozen=True)
class HallResult:
    holds: bool
    side: str
    violating: tuple[int, ...] | None  # subset S of the chosen side with |N(S)| < |S|


def hall_check(g: BipartiteGraph, side: str = "y") -> HallResult:
    """Hall's condition on one side, certified.

    Pass iff a maximum matching saturates the side.  On failure the witness
    S is built from alternating paths out of an unsaturated vertex, which
    guarantees |N(S)| = |S| - 1.
    """
    if side not in ("x", "y"):
        raise InputError("side must be 'x' or 'y'")
    m = max_matching(g)
    size = g.k if side == "y" else g.s
    if m.nu == size:
        return HallResult(True, side, None)
    if side == "y":
        match_of = {y: x for (x, y) in m.witness}
        nbrs = [g.y_neighbors(y) for y in range(g.k)]
        back = {x: y for (x, y) in m.witness}
    else:
        match_of = {x: y for (x, y) in m.witness}
        nbrs = [g.x_neighbors(x) for x in range(g.s)]
        back = {y: x for (x, y) in m.witness}
    free = next(v for v in range(size) if v not in match_of)
    S = {free}
    reachable_other: set[int] = set()
    frontier = [free]
    while frontier:
        nxt = []
        for v in frontier:
            for w in nbrs[v]:
                if w in reachable_other:
                    continue
                reachable_other.add(w)
                if w in back and back[w] not in S:
                    S.add(back[w])
                    nxt.append(back[w])
        frontier = nxt
    return HallResult(False, side, tuple(sorted(S)))


def neighborhood(g: BipartiteGraph, side: str, subset) -> set[int]:
    subset = set(subset)
    if side == "y":
        return {x for (x, y) in g.edges if y in subset}
    return {y for (x, y) in g.edges if x in subset}


def induced_matching(g: BipartiteGraph, cap: int = 40) -> int:
    """Maximum induced matching by exact backtracking on the edge conflict
    graph; raises CapExceeded instead of approximating beyond the cap."""
    edges = list(g.edges)
    m = len(edges)
    if m > cap:
        raise CapExceeded(f"{m} edges exceeds induced-matching cap {cap}")
    if m == 0:
        return 0
    adjacent = set(g.edges)
    conflict = [0] * m
    for i, (x1, y1) in enumerate(edges):
        for j, (x2, y2) in enumerate(edges):
            if i == j:
                continue
            if (
                x1 == x2
                or y1 == y2
                or (x1, y2) in adjacent
                or (x2, y1) in adjacent
            ):
                conflict[i] |= 1 << j

    best = 0

    def rec(idx: int, forbidden: int, count: int):
        nonlocal best
        if count + (m - idx) <= best:
            return
        if idx == m:
            best = max(best, count)
            return
        if not (forbidden >> idx) & 1:
            rec(idx + 1, forbidden | conflict[idx], count + 1)
        rec(idx + 1, forbidden, count)

    rec(0, 0, 0)
    return best


@dataclass(frozen=True)
class DegreeProfile:
    x_degrees: tuple[int, ...]
    y_degrees: tuple[int, ...]
    min_x_degree: int
    min_y_degree: int
    degree_one: tuple[str, ...]
    isolated: tuple[str, ...]


def degree_profile(g: BipartiteGraph) -> DegreeProfile:
    xd = [0] * g.s
    yd = [0] * g.k
    for (x, y) in g.edges:
        xd[x] += 1
        yd[y] += 1
    deg1 = [g.x_label(i) for i in range(g.s) if xd[i] == 1]
    deg1 += [g.y_label(j) for j in range(g.k) if yd[j] == 1]
    iso = [g.x_label(i) for i in range(g.s) if xd[i] == 0]
    iso += [g.y_label(j) for j in range(g.k) if yd[j] == 0]
    return DegreeProfile(
        tuple(xd),
        tuple(yd),
        min(xd, default=0),
        min(yd, default=0),
        tuple(deg1),
        tuple(iso),
    )


def brute_force_matching_number(g: BipartiteGraph) -> int:
    """Oracle: try all edge subsets, keep the largest matching.  Only for
    tiny graphs (tests)."""
    edges = list(g.edges)
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for sub in combinations(edges, r):
            xs = [e[0] for e in sub]
            ys = [e[1] for e in sub]
            if len(set(xs)) == r and len(set(ys)) == r:
                best = r
                break
    return best


def brute_force_min_vertex_cover(g: BipartiteGraph) -> int:
    """Oracle: minimum vertex cover size by subset enumeration."""
    verts = [("x", i) for i in range(g.s)] + [("y", j) for j in range(g.k)]
    for r in range(0, len(verts) + 1):
        for sub in combinations(verts, r):
            cover = set(sub)
            if all(("x", x) in cover or ("y", y) in cover for (x, y) in g.edges):
                return r
    return len(verts)


def to_json(g: BipartiteGraph) -> str:
    obj = {"s": g.s, "k": g.k, "edges": [list(e) for e in g.edges]}
    return json.dumps(obj, separators=(",", ":"))


def from_json(text: str) -> BipartiteGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    try:
        return make_graph(int(obj["s"]), int(obj["k"]), obj["edges"])
    except (KeyError, TypeError) as e:
        raise InputError(f"graph JSON missing field: {e}") from e
