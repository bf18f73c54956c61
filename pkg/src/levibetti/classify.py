"""Classification of edge rings of Levi graphs, with certificates.

Cohen-Macaulayness of a bipartite edge ring is decided by two searches
that must agree:

  * herzog_hibi_search — backtracking for a vertex re-ordering with
    (a) x_i y_i an edge, (b) edges only upward (x_i y_j => i <= j),
    (c) transitivity (x_i y_j, x_j y_k edges => x_i y_k an edge).
  * cross_free_pure_order — backtracking over perfect matchings for one
    that is transitive and cross-free (no i != j with both x_i y_j and
    x_j y_i edges), then linearly extended so the returned order also
    satisfies (b).

Sequential Cohen-Macaulayness for bipartite graphs is shellability of the
independence complex; decided by stripping isolated vertices (cone points),
the degree-one fast rejection, and otherwise a definitional facet-ordering
search whose certificates re-verify against the closure definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangements import Arrangement, t_vector
from .bipartite import (
    BipartiteGraph,
    degree_profile,
    levi_graph,
    make_graph,
    max_matching,
)
from .complexes import (
    bits,
    edge_ideal,
    independence_complex,
    popcount,
    power,
)
from .errors import CapExceeded
from .homology import GF2, PrimeField
from .resolutions import (
    HomologicalSummary,
    betti_general,
    betti_squarefree,
    summarize,
)

HH_PART_CAP = 12
FACET_CAP = 24
SEARCH_NODE_CAP = 1_000_000


@dataclass(frozen=True)
class PureOrder:
    """Positions -> original indices; x_order[p] is matched to y_order[p]."""

    x_order: tuple[int, ...]
    y_order: tuple[int, ...]


def _edge_set(g: BipartiteGraph) -> set[tuple[int, int]]:
    return set(g.edges)


def verify_pure_order(g: BipartiteGraph, po: PureOrder) -> bool:
    """Independent check of (a), (b), and cross-freeness."""
    n = g.s
    if g.s != g.k:
        return False
    if sorted(po.x_order) != list(range(n)) or sorted(po.y_order) != list(range(n)):
        return False
    e = _edge_set(g)
    for p in range(n):
        if (po.x_order[p], po.y_order[p]) not in e:
            return False
    for p in range(n):
        for q in range(n):
            if (po.x_order[p], po.y_order[q]) in e and p > q:
                return False
    for p in range(n):
        for q in range(n):
            if p != q and (po.x_order[p], po.y_order[q]) in e and (
                po.x_order[q], po.y_order[p]
            ) in e:
                return False
    return True


def verify_herzog_hibi(g: BipartiteGraph, po: PureOrder) -> bool:
    """Independent check of (a), (b), (c)."""
    if not verify_pure_order(g, po):
        return False
    n = g.s
    e = _edge_set(g)
    for i in range(n):
        for j in range(n):
            if (po.x_order[i], po.y_order[j]) not in e:
                continue
            for k in range(n):
                if (po.x_order[j], po.y_order[k]) in e and (
                    po.x_order[i], po.y_order[k]
                ) not in e:
                    return False
    return True


@dataclass(frozen=True)
class SearchWitness:
    reason: str  # "parts_unequal" | "exhausted"
    nodes: int
    max_depth: int


@dataclass(frozen=True)
class HHResult:
    order: PureOrder | None
    witness: SearchWitness | None


def herzog_hibi_search(g: BipartiteGraph, cap: int = HH_PART_CAP) -> HHResult:
    """Exhaustive backtracking for an ordering satisfying (a), (b), (c).

    Positions are filled left to right; the y placed at position p must
    have every neighbor already placed except the single x placed with it,
    which makes condition (b) hold by construction.  Condition (c) is
    checked incrementally on the filled prefix.
    """
    if g.s != g.k:
        return HHResult(None, SearchWitness("parts_unequal", 0, 0))
    n = g.s
    if n > cap:
        raise CapExceeded(f"parts of size {n} exceed search cap {cap}")
    y_nbrs = [set(g.y_neighbors(y)) for y in range(g.k)]
    x_nbrs = [set(g.x_neighbors(x)) for x in range(g.s)]
    nodes = 0
    max_depth = 0
    xs: list[int] = []
    ys: list[int] = []

    def transitive_ok(x_new: int, y_new: int) -> bool:
        # triples ending at the new position: x_i y_j, x_j y_new => x_i y_new
        depth = len(xs)
        for j in range(depth):
            if xs[j] not in y_nbrs[y_new]:
                continue
            for i in range(j + 1):
                if ys[j] in x_nbrs[xs[i]] and y_new not in x_nbrs[xs[i]]:
                    return False
        # j = new position: x_i y_new, x_new y_k with k unplaced is deferred;
        # k already placed cannot happen because y_k has no unplaced neighbors
        return True

    def rec() -> PureOrder | None:
        nonlocal nodes, max_depth
        nodes += 1
        if nodes > SEARCH_NODE_CAP:
            raise CapExceeded("herzog-hibi search node budget exhausted")
        depth = len(xs)
        max_depth = max(max_depth, depth)
        if depth == n:
            return PureOrder(tuple(xs), tuple(ys))
        used_x = set(xs)
        used_y = set(ys)
        candidates = []
        for y in range(n):
            if y in used_y:
                continue
            free = [x for x in y_nbrs[y] if x not in used_x]
            if not free:
                return None  # y can never be placed; dead branch
            if len(free) == 1:
                candidates.append((y, free[0]))
        for y, x in candidates:
            if not transitive_ok(x, y):
                continue
            xs.append(x)
            ys.append(y)
            found = rec()
            if found is not None:
                return found
            xs.pop()
            ys.pop()
        return None

    order = rec()
    if order is not None:
        return HHResult(order, None)
    return HHResult(None, SearchWitness("exhausted", nodes, max_depth))


def cross_free_pure_order(
    g: BipartiteGraph, cap: int = HH_PART_CAP
) -> PureOrder | None:
    """Search perfect matchings for a cross-free transitive one; linearly
    extend the induced partial order so (b) holds for the returned order."""
    if g.s != g.k:
        return None
    n = g.s
    if n > cap:
        raise CapExceeded(f"parts of size {n} exceed search cap {cap}")
    e = _edge_set(g)
    x_nbrs = [sorted(g.x_neighbors(x)) for x in range(n)]
    match: list[int] = [-1] * n  # x index -> y index
    nodes = 0

    def cross_with_prefix(i: int, y: int) -> bool:
        for j in range(i):
            if (i, match[j]) in e and (j, y) in e:
                return True
        return False

    def rec(i: int) -> PureOrder | None:
        nonlocal nodes
        nodes += 1
        if nodes > SEARCH_NODE_CAP:
            raise CapExceeded("pure-order search node budget exhausted")
        if i == n:
            return _extend_if_transitive(n, match, e)
        used = set(match[:i])
        for y in x_nbrs[i]:
            if y in used or cross_with_prefix(i, y):
                continue
            match[i] = y
            found = rec(i + 1)
            if found is not None:
                return found
            match[i] = -1
        return None

    return rec(0)


def _extend_if_transitive(n, match, e) -> PureOrder | None:
    rel = [0] * n  # rel[i] bit j set iff x_i y_match[j] is an edge
    for i in range(n):
        for j in range(n):
            if (i, match[j]) in e:
                rel[i] |= 1 << j
    for i in range(n):
        m = rel[i]
        while m:
            low = m & (-m)
            j = low.bit_length() - 1
            if rel[j] & ~rel[i]:
                return None  # transitivity fails
            m ^= low
    # linear extension of the (cross-free, hence antisymmetric) relation
    placed: list[int] = []
    remaining = set(range(n))
    while remaining:
        pick = min(
            i
            for i in remaining
            if all(not ((rel[j] >> i) & 1) for j in remaining if j != i)
        )
        placed.append(pick)
        remaining.remove(pick)
    return PureOrder(tuple(placed), tuple(match[i] for i in placed))


def shelling_order(
    facets: list[int], node_cap: int = SEARCH_NODE_CAP
) -> tuple[int, ...] | None:
    """Depth-first search for a shelling order of the given facet masks.

    A facet F may follow the placed set P iff for every A in P some L in P
    has F&A inside F&L with |F \\ L| = 1.  That condition depends only on
    the set P, so dead placement sets are memoized.
    """
    m = len(facets)
    if m <= 1:
        return tuple(facets)
    order_pref = sorted(range(m), key=lambda i: (-popcount(facets[i]), facets[i]))
    dead: set[int] = set()
    nodes = 0

    def can_follow(f: int, placed: list[int]) -> bool:
        for a in placed:
            inter = f & a
            if not any(
                inter & (f & l) == inter and popcount(f & ~l) == 1 for l in placed
            ):
                return False
        return True

    def rec(placed_mask: int, placed: list[int]) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceeded("shelling search node budget exhausted")
        if len(placed) == m:
            return placed[:]
        if placed_mask in dead:
            return None
        for i in order_pref:
            if (placed_mask >> i) & 1:
                continue
            f = facets[i]
            if placed and not can_follow(f, placed):
                continue
            placed.append(f)
            found = rec(placed_mask | (1 << i), placed)
            if found is not None:
                return found
            placed.pop()
        dead.add(placed_mask)
        return None

    found = rec(0, [])
    return tuple(found) if found is not None else None


def verify_shelling(order: tuple[int, ...]) -> bool:
    """Closure-definition check, independent of the search: each facet must
    meet the union of its predecessors in a pure (|F|-1)-sized family."""
    for j in range(1, len(order)):
        f = order[j]
        target = popcount(f) - 1
        inters = {f & p for p in order[:j]}
        maxi = [
            a for a in inters if not any(a != b and a & b == a for b in inters)
        ]
        if any(popcount(a) != target for a in maxi):
            return False
    return True


@dataclass(frozen=True)
class ShellabilityVerdict:
    shellable: bool
    shelling: tuple[int, ...] | None  # facet masks of the full complex, in order
    obstruction: str | None
    facet_count: int


def is_shellable(g: BipartiteGraph, facet_cap: int = FACET_CAP) -> ShellabilityVerdict:
    """Three stages: strip isolated vertices (cone points), reject when no
    degree-one vertex remains (bipartite shellability needs one), otherwise
    search facet orderings of the independence complex."""
    xd = [0] * g.s
    yd = [0] * g.k
    for (x, y) in g.edges:
        xd[x] += 1
        yd[y] += 1
    iso_mask = 0
    for i in range(g.s):
        if xd[i] == 0:
            iso_mask |= 1 << i
    for j in range(g.k):
        if yd[j] == 0:
            iso_mask |= 1 << (g.s + j)
    if not g.edges:
        full = (1 << g.n) - 1 if g.n else 0
        return ShellabilityVerdict(True, (full,), None, 1)
    degrees = [d for d in xd + yd if d > 0]
    if min(degrees) >= 2:
        return ShellabilityVerdict(
            False, None, "no degree-one vertex after stripping isolated ones", 0
        )
    keep_x = [i for i in range(g.s) if xd[i] > 0]
    keep_y = [j for j in range(g.k) if yd[j] > 0]
    xmap = {v: i for i, v in enumerate(keep_x)}
    ymap = {v: j for j, v in enumerate(keep_y)}
    core = make_graph(
        len(keep_x), len(keep_y), [(xmap[x], ymap[y]) for (x, y) in g.edges]
    )
    cx = independence_complex(core)
    if len(cx.facets) > facet_cap:
        raise CapExceeded(
            f"{len(cx.facets)} facets exceed shelling search cap {facet_cap}"
        )
    # transport core facets back into original vertex numbering
    back = keep_x + [g.s + j for j in keep_y]
    lifted = []
    for f in cx.facets:
        mask = iso_mask
        for v in bits(f):
            mask |= 1 << back[v]
        lifted.append(mask)
    found = shelling_order(lifted)
    if found is None:
        return ShellabilityVerdict(False, None, "facet-order search exhausted", len(lifted))
    return ShellabilityVerdict(True, found, None, len(lifted))


@dataclass(frozen=True)
class ClassificationVerdict:
    is_cm: bool
    cm_order: PureOrder | None
    cm_witness: SearchWitness | None
    is_scm: bool
    shelling: tuple[int, ...] | None
    scm_obstruction: str | None
    buchsbaum_note: str


def classification_verdict(
    g: BipartiteGraph, hh_cap: int = HH_PART_CAP, facet_cap: int = FACET_CAP
) -> ClassificationVerdict:
    hh = herzog_hibi_search(g, hh_cap)
    sh = is_shellable(g, facet_cap)
    complete = len(g.edges) == g.s * g.k
    if complete and g.edges:
        note = (
            "edge ring of a complete bipartite graph: the Buchsbaum <=> "
            "Cohen-Macaulay equivalence is stated for non-complete graphs"
        )
    else:
        cm = "IS" if hh.order is not None else "is NOT"
        note = (
            f"bipartite edge ring: Cohen-Macaulay <=> Buchsbaum <=> k-Buchsbaum, "
            f"so the ring {cm} Buchsbaum and k-Buchsbaum for every k >= 1"
        )
    return ClassificationVerdict(
        is_cm=hh.order is not None,
        cm_order=hh.order,
        cm_witness=hh.witness,
        is_scm=sh.shellable,
        shelling=sh.shelling,
        scm_obstruction=sh.obstruction,
        buchsbaum_note=note,
    )


def is_pencil(a: Arrangement) -> bool:
    return any(p.multiplicity == a.k for p in a.points)


@dataclass(frozen=True)
class TheoremBResult:
    pencil: bool
    scm: bool

    @property
    def consistent(self) -> bool:
        return self.pencil == self.scm


def theorem_b_verify(a: Arrangement) -> TheoremBResult:
    """Sequentially Cohen-Macaulay iff the arrangement is a pencil."""
    sh = is_shellable(levi_graph(a))
    return TheoremBResult(is_pencil(a), sh.shellable)


@dataclass(frozen=True)
class TheoremAEntry:
    name: str
    hh_is_none: bool
    confirmed_by_pd: bool | None  # None when outside the homology cap
    pd: int | None
    codim: int | None


def theorem_a_verify(
    members: list[tuple[str, BipartiteGraph]],
    field: PrimeField = GF2,
    hochster_cap: int = 16,
    hh_cap: int = 26,
    threads: int = 1,
) -> list[TheoremAEntry]:
    """Run the Cohen-Macaulay criterion search on each member; within the
    homology cap additionally confirm pd != codim independently."""
    out = []
    for name, g in members:
        hh = herzog_hibi_search(g, cap=hh_cap)
        entry_pd = entry_codim = None
        confirmed = None
        if g.n <= hochster_cap:
            cx = independence_complex(g)
            t = betti_squarefree(cx, field, cap_vertices=hochster_cap, threads=threads)
            s = summarize(t, cx)
            entry_pd, entry_codim = s.pd, s.codim
            confirmed = s.pd != s.codim
        out.append(
            TheoremAEntry(name, hh.order is None, confirmed, entry_pd, entry_codim)
        )
    return out


@dataclass(frozen=True)
class BoundReport:
    """The bound certificates attached to an arrangement, kept as exact
    rationals.  Bounds that need t_k = 0 (the pd interval, the global
    regularity bound, the guaranteed matching of size k) carry an
    applicability flag instead of a silently wrong number."""

    s: int
    k: int
    d: int
    t_k_zero: bool
    pd_lower: int
    pd_upper: Fraction
    dhs_upper: Fraction
    max_degree: int
    nu: int
    reg_upper_matching: int
    reg_upper_global: int
    rees_reg: int
    power_applicable: bool  # needs k <= s

    def power_bound(self, q: int) -> int:
        return 2 * q + self.k - 1


def bounds_report(a: Arrangement) -> BoundReport:
    g = levi_graph(a)
    tv = t_vector(a)
    n = a.s + a.k
    prof = degree_profile(g)
    m = max(max(prof.x_degrees, default=0), max(prof.y_degrees, default=0))
    nu = max_matching(g).nu
    return BoundReport(
        s=a.s,
        k=a.k,
        d=a.d,
        t_k_zero=tv.get(a.k) == 0,
        pd_lower=-(-n // 2),
        pd_upper=Fraction(n) * (1 - Fraction(1, 2 * a.d * a.d * (a.k - 1))),
        dhs_upper=Fraction(n) * (1 - Fraction(1, 2 * m)),
        max_degree=m,
        nu=nu,
        reg_upper_matching=nu + 1,
        reg_upper_global=a.k + 1,
        rees_reg=a.k,
        power_applicable=a.k <= a.s,
    )


@dataclass(frozen=True)
class BoundCheck:
    name: str
    applicable: bool
    holds: bool | None
    detail: str


def bounds_verify(
    a: Arrangement, summary: HomologicalSummary, nu: int
) -> list[BoundCheck]:
    """Compare every applicable bound against computed pd and reg; exact
    rational comparisons throughout."""
    rep = bounds_report(a)
    checks = []
    if rep.t_k_zero:
        lo_ok = rep.pd_lower <= summary.pd
        hi_ok = Fraction(summary.pd) <= rep.pd_upper
        checks.append(
            BoundCheck(
                "pd interval",
                True,
                lo_ok and hi_ok,
                f"{rep.pd_lower} <= pd = {summary.pd} <= {rep.pd_upper}",
            )
        )
        reg_i = summary.reg_ideal
        checks.append(
            BoundCheck(
                "reg(I) <= nu + 1 <= k + 1",
                True,
                reg_i is not None
                and reg_i <= rep.reg_upper_matching <= rep.reg_upper_global,
                f"reg(I) = {reg_i}, nu + 1 = {rep.reg_upper_matching}, "
                f"k + 1 = {rep.reg_upper_global}",
            )
        )
        checks.append(
            BoundCheck(
                "matching saturates the curves",
                True,
                nu == rep.k,
                f"nu = {nu}, k = {rep.k}",
            )
        )
    else:
        checks.append(
            BoundCheck(
                "pd interval",
                False,
                None,
                "inapplicable: t_k != 0 (some point lies on every curve)",
            )
        )
        reg_i = summary.reg_ideal
        checks.append(
            BoundCheck(
                "reg(I) <= nu + 1",
                True,
                reg_i is not None and reg_i <= rep.reg_upper_matching,
                f"reg(I) = {reg_i}, nu + 1 = {rep.reg_upper_matching}",
            )
        )
    dhs_ok = Fraction(summary.pd) <= rep.dhs_upper
    checks.append(
        BoundCheck(
            "pd <= n(1 - 1/(2 max-degree))",
            True,
            dhs_ok,
            f"pd = {summary.pd}, bound = {rep.dhs_upper}",
        )
    )
    return checks


@dataclass(frozen=True)
class PowerBoundResult:
    q: int
    reg_ideal: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.reg_ideal <= self.bound


def power_bound_check(
    g: BipartiteGraph,
    q: int,
    field: PrimeField = GF2,
    cap_lattice: int = 1 << 14,
    cap_faces: int = 1 << 18,
) -> PowerBoundResult:
    """reg(I(G)^q) against 2q + k - 1, computed through the lcm lattice."""
    ideal = power(edge_ideal(g), q)
    t = betti_general(ideal, field, cap_lattice=cap_lattice, cap_faces=cap_faces)
    reg_i = t.reg_ideal
    if reg_i is None:
        raise ValueError("zero ideal has no regularity")
    return PowerBoundResult(q, reg_i, 2 * q + g.k - 1)
