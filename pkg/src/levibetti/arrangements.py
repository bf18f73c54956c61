"""Incidence combinatorics of plane curve arrangements.

An arrangement here is a purely combinatorial object: k curves of a common
degree d, a list of marked points, and for each point the sorted list of
curves through it.  No coordinates are kept; everything downstream depends
only on this incidence data.

Strict arrangements must satisfy the two combinatorial counts

    d^2 * C(k,2)  = sum_p C(m_p, 2)                 (global count)
    d^2 * (k-1)   = sum_{p on curve j} (m_p - 1)    (per-curve count)

together with k >= 3 and every multiplicity m_p >= 2.  Configuration mode
relaxes all of that and admits marked points lying on a single curve.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .errors import InputError, InvalidArrangement

MODE_STRICT = "strict"
MODE_CONFIGURATION = "configuration"


@dataclass(frozen=True)
class Point:
    """A marked point: label plus the sorted curve ids through it."""

    id: str
    curves: tuple[int, ...]

    def __post_init__(self):
        if not self.curves:
            raise InvalidArrangement(f"point {self.id!r} lies on no curve")
        if list(self.curves) != sorted(set(self.curves)):
            raise InvalidArrangement(
                f"point {self.id!r} has unsorted or duplicate curve ids"
            )

    @property
    def multiplicity(self) -> int:
        return len(self.curves)


@dataclass(frozen=True)
class Check:
    """One validation check with both sides of the count it compares."""

    name: str
    lhs: int
    rhs: int
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class TVector:
    """t_r = number of points of multiplicity exactly r."""

    counts: tuple[tuple[int, int], ...]  # (r, t_r) pairs, r ascending

    @property
    def s(self) -> int:
        return sum(t for _, t in self.counts)

    def get(self, r: int) -> int:
        return dict(self.counts).get(r, 0)


@dataclass(frozen=True)
class Arrangement:
    d: int
    k: int
    points: tuple[Point, ...]
    mode: str = MODE_STRICT

    def __post_init__(self):
        if self.d < 1 or self.k < 1:
            raise InvalidArrangement("d and k must be positive")
        if self.mode not in (MODE_STRICT, MODE_CONFIGURATION):
            raise InvalidArrangement(f"unknown mode {self.mode!r}")
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise InvalidArrangement("duplicate point ids")
        for p in self.points:
            if p.curves[-1] >= self.k or p.curves[0] < 0:
                raise InvalidArrangement(
                    f"point {p.id!r} references a curve id outside 0..{self.k - 1}"
                )
        if self.mode == MODE_STRICT:
            report = validate(self)
            if not report.passed:
                bad = ", ".join(
                    f"{c.name}: {c.lhs} != {c.rhs}" for c in report.failures()
                )
                raise InvalidArrangement(f"strict arrangement rejected ({bad})")

    @property
    def s(self) -> int:
        return len(self.points)


def validate(a: Arrangement) -> ValidationReport:
    """Evaluate every strict-mode check and report both sides of each count.

    Pure report: configuration-mode arrangements can be inspected with it
    too, the checks are simply not enforced there.
    """
    checks = [Check("k >= 3", a.k, 3, a.k >= 3)]
    min_mult = min((p.multiplicity for p in a.points), default=2)
    checks.append(Check("min multiplicity >= 2", min_mult, 2, min_mult >= 2))
    lhs = a.d * a.d * comb(a.k, 2)
    rhs = sum(comb(p.multiplicity, 2) for p in a.points)
    checks.append(Check("global count", lhs, rhs, lhs == rhs))
    per_curve_lhs = a.d * a.d * (a.k - 1)
    for j in range(a.k):
        rhs_j = sum(p.multiplicity - 1 for p in a.points if j in p.curves)
        checks.append(
            Check(f"curve {j} count", per_curve_lhs, rhs_j, per_curve_lhs == rhs_j)
        )
    return ValidationReport(tuple(checks))


def t_vector(a: Arrangement) -> TVector:
    counts: dict[int, int] = {}
    for p in a.points:
        counts[p.multiplicity] = counts.get(p.multiplicity, 0) + 1
    return TVector(tuple(sorted(counts.items())))


def _point(i: int, curves) -> Point:
    return Point(f"p{i:02d}", tuple(sorted(curves)))


def gen_pencil(k: int) -> Arrangement:
    """k lines through a single common point."""
    if k < 3:
        raise InvalidArrangement("pencil needs k >= 3")
    return Arrangement(1, k, (_point(1, range(k)),))


def gen_quasi_pencil(k: int) -> Arrangement:
    """Hirzebruch quasi-pencil: one (k-1)-fold point and k-1 double points.

    Point 1 lies on lines 0..k-2; point i (2 <= i <= k-1) is line i-1 meet
    line k-1; point k is line 0 meet line k-1.
    """
    if k < 3:
        raise InvalidArrangement("quasi-pencil needs k >= 3")
    pts = [_point(1, range(k - 1))]
    for i in range(2, k):
        pts.append(_point(i, (i - 1, k - 1)))
    pts.append(_point(k, (0, k - 1)))
    return Arrangement(1, k, tuple(pts))


def gen_generic_lines(k: int) -> Arrangement:
    """k lines in general position: one double point per pair of lines."""
    if k < 3:
        raise InvalidArrangement("generic lines need k >= 3")
    pts = []
    idx = 1
    for a in range(k):
        for b in range(a + 1, k):
            pts.append(_point(idx, (a, b)))
            idx += 1
    return Arrangement(1, k, tuple(pts))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def gen_projective_plane(q: int) -> Arrangement:
    """The finite projective plane PG(2, q) as a line arrangement, q prime.

    Points and lines are both the q^2+q+1 projective classes of nonzero
    vectors over GF(q); incidence is vanishing of the dot product.  The
    coordinates are only used here and then discarded.
    """
    if not _is_prime(q):
        raise InvalidArrangement("projective plane generator supports prime q only")
    reps = []
    seen = set()
    for a in range(q):
        for b in range(q):
            for c in range(q):
                v = (a, b, c)
                if v == (0, 0, 0) or v in seen:
                    continue
                for scale in range(1, q):
                    seen.add((a * scale % q, b * scale % q, c * scale % q))
                reps.append(v)
    pts = []
    for i, p in enumerate(reps):
        incident = tuple(
            j
            for j, line in enumerate(reps)
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0
        )
        pts.append(Point(f"p{i + 1:02d}", incident))
    return canonical_order(Arrangement(1, len(reps), tuple(pts)))


def gen_conic_6_5() -> Arrangement:
    """The (6_5, 6_5) point-conic configuration: six conics through six
    5-fold points, point i missing exactly conic 7-i (1-based)."""
    pts = []
    for i in range(1, 7):
        pts.append(_point(i, (j for j in range(6) if j != 6 - i)))
    return Arrangement(2, 6, tuple(pts))


def canonical_order(a: Arrangement) -> Arrangement:
    """Points sorted by (multiplicity descending, incidence list lex)."""
    pts = sorted(a.points, key=lambda p: (-p.multiplicity, p.curves))
    return Arrangement(a.d, a.k, tuple(pts), a.mode)


def to_json(a: Arrangement) -> str:
    """Canonical JSON form; deterministic byte output."""
    c = canonical_order(a)
    obj = {
        "d": c.d,
        "k": c.k,
        "mode": c.mode,
        "points": [{"id": p.id, "curves": list(p.curves)} for p in c.points],
    }
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def from_json(text: str) -> Arrangement:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    try:
        pts = tuple(Point(p["id"], tuple(p["curves"])) for p in obj["points"])
        return Arrangement(int(obj["d"]), int(obj["k"]), pts, obj.get("mode", MODE_STRICT))
    except (KeyError, TypeError) as e:
        raise InputError(f"arrangement JSON missing field: {e}") from e


def gen_cm_configuration() -> Arrangement:
    """Three points on three lines: a triple point plus one simple marked
    point on each of two lines.  The smallest point-line configuration whose
    edge ring is Cohen-Macaulay; only representable in configuration mode
    because two points are not intersection points."""
    pts = (
        Point("p01", (0,)),
        Point("p02", (0, 1, 2)),
        Point("p03", (2,)),
    )
    return Arrangement(1, 3, pts, MODE_CONFIGURATION)
