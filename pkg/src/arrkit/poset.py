"""Intersection posets of line arrangements and their projective closures.

The rank-2 combinatorics of a planar arrangement is exactly (points with
incident line sets, parallel classes).  The projective closure adds one
point at infinity per direction class, incident to the class members and
the line at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .geometry import Arrangement, EQUAL_LINES, PARALLEL, Point, intersect


@dataclass(frozen=True)
class IntersectionPoint:
    location: Point
    incident: frozenset[str]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


@dataclass(frozen=True)
class ParallelClass:
    direction: tuple
    members: frozenset[str]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class AffinePoset:
    points: tuple[IntersectionPoint, ...]
    classes: tuple[ParallelClass, ...]
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def nontrivial_classes(self) -> tuple[ParallelClass, ...]:
        return tuple(cls for cls in self.classes if cls.size >= 2)

    def multiplicity_profile(self) -> dict[int, int]:
        profile: dict[int, int] = {}
        for point in self.points:
            profile[point.multiplicity] = profile.get(point.multiplicity, 0) + 1
        return profile

    def points_on(self, label: str) -> tuple[IntersectionPoint, ...]:
        return tuple(p for p in self.points if label in p.incident)


@dataclass(frozen=True)
class ProjectivePoint:
    incident: frozenset[str]
    location: Point | None = None   # None for points at infinity
    direction: tuple | None = None  # set for points at infinity

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    @property
    def at_infinity(self) -> bool:
        return self.location is None


@dataclass(frozen=True)
class ProjectiveClosurePoset:
    points: tuple[ProjectivePoint, ...]
    labels: tuple[str, ...]          # includes the line at infinity
    infinity_label: str

    @property
    def n(self) -> int:
        return len(self.labels)

    def multiplicity_profile(self) -> dict[int, int]:
        profile: dict[int, int] = {}
        for point in self.points:
            profile[point.multiplicity] = profile.get(point.multiplicity, 0) + 1
        return profile

    def points_on(self, label: str) -> tuple[ProjectivePoint, ...]:
        return tuple(p for p in self.points if label in p.incident)


@dataclass(frozen=True)
class BettiData:
    b1: int
    b2: int


def _point_sort_key(point: IntersectionPoint):
    x, y = point.location
    return (x.re, x.im, y.re, y.im)


def build_affine_poset(arr: Arrangement) -> AffinePoset:
    """Group all pairwise intersections exactly; every unordered line pair
    is accounted for either at a point or inside a parallel class."""
    located: dict[Point, set[str]] = {}
    for i, l1 in enumerate(arr.lines):
        for l2 in arr.lines[i + 1:]:
            hit = intersect(l1, l2)
            if hit is PARALLEL:
                continue
            if hit is EQUAL_LINES:
                raise ValueError(f"arrangement contains equal lines {l1.label}, {l2.label}")
            located.setdefault(hit, set()).update((l1.label, l2.label))

    points = tuple(sorted(
        (IntersectionPoint(loc, frozenset(inc)) for loc, inc in located.items()),
        key=_point_sort_key,
    ))

    by_direction: dict[tuple, set[str]] = {}
    for line in arr.lines:
        by_direction.setdefault(line.direction(), set()).add(line.label)
    classes = tuple(sorted(
        (ParallelClass(direction, frozenset(members))
         for direction, members in by_direction.items()),
        key=lambda cls: tuple(sorted(cls.members)),
    ))

    poset = AffinePoset(points, classes, arr.labels())
    _check_affine_accounting(poset)
    return poset


def _check_affine_accounting(poset: AffinePoset) -> None:
    pairs = sum(comb(p.multiplicity, 2) for p in poset.points)
    pairs += sum(comb(cls.size, 2) for cls in poset.classes)
    if pairs != comb(poset.n, 2):
        raise AssertionError("pair accounting failed; arrangement is inconsistent")


def _fresh_infinity_label(labels) -> str:
    candidate = "Linf"
    taken = set(labels)
    while candidate in taken:
        candidate += "'"
    return candidate


def projective_closure(arr: Arrangement) -> ProjectiveClosurePoset:
    """Cone the arrangement: one extra point per direction class, each
    incident to the class members and the added line at infinity."""
    affine = build_affine_poset(arr)
    inf_label = _fresh_infinity_label(affine.labels)
    points = [ProjectivePoint(p.incident, location=p.location) for p in affine.points]
    for cls in affine.classes:
        points.append(ProjectivePoint(
            cls.members | {inf_label},
            direction=cls.direction,
        ))
    closed = ProjectiveClosurePoset(tuple(points), affine.labels + (inf_label,), inf_label)
    pairs = sum(comb(p.multiplicity, 2) for p in closed.points)
    if pairs != comb(closed.n, 2):
        raise AssertionError("projective pair accounting failed")
    return closed


def betti(poset: AffinePoset) -> BettiData:
    """First and second Betti numbers of the complement, from combinatorics."""
    if not isinstance(poset, AffinePoset):
        raise TypeError("betti is defined on affine posets")
    return BettiData(poset.n, sum(p.multiplicity - 1 for p in poset.points))


# ---------------------------------------------------------------------------
# Isomorphism of posets as incidence structures on line labels.
#
# A label bijection is an isomorphism iff it maps the set of point-incidence
# sets onto the other side's.  Crossing pairs are then preserved in both
# directions, hence so is parallelism, hence parallel classes map to classes.
# ---------------------------------------------------------------------------

def _incidence_sets(poset) -> list[frozenset[str]]:
    return [p.incident for p in poset.points]


def _class_size_of(poset, label: str) -> int:
    if isinstance(poset, AffinePoset):
        for cls in poset.classes:
            if label in cls.members:
                return cls.size
    return 0


def _line_signature(poset, label: str):
    mults = sorted(len(block) for block in _incidence_sets(poset) if label in block)
    return (tuple(mults), _class_size_of(poset, label))


def poset_isomorphic(p, q):
    """Return a label bijection preserving the incidence structure, or None.

    Both arguments must be the same kind of poset.  The search assigns labels
    in a fixed order with candidates sorted, so the returned witness is the
    lexicographically least bijection.
    """
    if type(p) is not type(q):
        raise TypeError("cannot compare posets of different kinds")
    p_labels = sorted(p.labels)
    q_labels = sorted(q.labels)
    if len(p_labels) != len(q_labels):
        return None

    p_blocks = _incidence_sets(p)
    q_blocks = _incidence_sets(q)
    if len(p_blocks) != len(q_blocks):
        return None
    if sorted(map(len, p_blocks)) != sorted(map(len, q_blocks)):
        return None

    q_block_set = set(q_blocks)
    p_sig = {lbl: _line_signature(p, lbl) for lbl in p_labels}
    q_sig = {lbl: _line_signature(q, lbl) for lbl in q_labels}
    candidates = {
        lbl: [m for m in q_labels if q_sig[m] == p_sig[lbl]]
        for lbl in p_labels
    }
    if any(not opts for opts in candidates.values()):
        return None

    # Crossing relation for early pairwise pruning.
    def crossing_pairs(blocks):
        pairs = set()
        for block in blocks:
            members = sorted(block)
            for i, u in enumerate(members):
                for v in members[i + 1:]:
                    pairs.add((u, v))
        return pairs

    p_cross = crossing_pairs(p_blocks)
    q_cross = crossing_pairs(q_blocks)

    # Assigning in sorted label order with sorted candidates makes the first
    # full solution the lexicographically least bijection.
    order = p_labels
    position = {lbl: k for k, lbl in enumerate(order)}
    # Blocks become checkable once their last label (in assignment order) maps.
    ready_at: list[list[frozenset]] = [[] for _ in order]
    for block in p_blocks:
        ready_at[max(position[lbl] for lbl in block)].append(block)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def assign(k: int) -> bool:
        if k == len(order):
            return True
        label = order[k]
        for target in candidates[label]:
            if target in used:
                continue
            ok = True
            for prev in mapping:
                a, b = (label, prev) if label < prev else (prev, label)
                fa, fb = mapping.get(a, target), mapping.get(b, target)
                fa, fb = (fa, fb) if fa < fb else (fb, fa)
                if ((a, b) in p_cross) != ((fa, fb) in q_cross):
                    ok = False
                    break
            if not ok:
                continue
            mapping[label] = target
            used.add(target)
            if all(frozenset(mapping[lbl] for lbl in block) in q_block_set
                   for block in ready_at[k]):
                if assign(k + 1):
                    return True
            del mapping[label]
            used.discard(target)
        return False

    if assign(0):
        return dict(sorted(mapping.items()))
    return None
