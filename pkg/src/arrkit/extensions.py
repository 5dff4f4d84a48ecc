"""Attaching a pencil or a parallel family to a base arrangement.

Both constructions are 2-generic: every added line meets the untouched base
lines in double points only.  The exterior pencil model re-coordinatizes the
base so the chosen line has strictly minimal slope, then hangs the pencil
far east of everything; its real picture then simplifies cleanly to the
expected presentation with one generator per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from .arvola import shear_arrangement
from .errors import (
    BadRelators,
    MultiplicityTooSmall,
    SearchExhausted,
    ShapeMismatch,
    ToolkitError,
)
from .gaussian import gaussian
from .geometry import Arrangement, Line, Point, intersect, normalize_line
from .poset import AffinePoset, build_affine_poset
from .presentations import (
    Gen,
    Presentation,
    _nf_cyclic,
    tietze2_eliminate,
    tietze2_introduce,
)
from .words import (
    canonical_cyclic,
    commutator,
    concat,
    free_reduce,
    pencil_commutators,
    support,
)


@dataclass(frozen=True)
class PencilAttachment:
    base_labels: tuple[str, ...]
    h: str
    m: int
    point: Point
    slopes: tuple[Fraction, ...]
    added_labels: tuple[str, ...]


@dataclass(frozen=True)
class ParallelAttachment:
    base_labels: tuple[str, ...]
    count: int
    slope: Fraction
    offsets: tuple[Fraction, ...]
    added_labels: tuple[str, ...]


def _small_rationals(max_denominator: int = 8, max_magnitude: int = 500):
    """0, -1, 1, -2, 2, ... then the same with growing denominators."""
    for den in range(1, max_denominator + 1):
        for mag in range(0, max_magnitude + 1):
            if mag == 0:
                if den == 1:
                    yield Fraction(0)
                continue
            if gcd(mag, den) != 1:
                continue
            yield Fraction(-mag, den)
            yield Fraction(mag, den)


def _pencil_slope_candidates(limit: int = 600):
    """-3, -4, -5, ...; the first admissible run reproduces the worked
    nine-line example literally."""
    for k in range(3, limit):
        yield Fraction(-k)


def _fresh_labels(existing, prefix: str, count: int) -> tuple[str, ...]:
    taken = set(existing)
    out = []
    i = 1
    while len(out) < count:
        candidate = f"{prefix}{i}"
        while candidate in taken:
            candidate = prefix + candidate
        out.append(candidate)
        taken.add(candidate)
        i += 1
    return tuple(out)


def _point_on(line: Line, t: Fraction) -> Point:
    if line.is_vertical:
        return Point(-line.c / line.a, gaussian(t))
    return Point(gaussian(t), line.y_at(t))


def _line_through(point: Point, slope: Fraction, label: str) -> Line:
    # y - y0 = slope * (x - x0)
    return normalize_line(-slope, 1, slope * point.x - point.y, label)


def _slope_or_none(line: Line) -> Fraction | None:
    return None if line.is_vertical else line.real_slope()


def build_pencil_extension(arr: Arrangement, h_label: str, m: int):
    """Attach m-1 lines through a fresh point of the chosen line, producing
    one point of multiplicity m and nothing but double points elsewhere.

    The pencil point is the smallest-height admissible point of the line and
    the slopes are the first admissible candidates of -3, -4, -5, ...
    """
    if m < 3:
        raise MultiplicityTooSmall("pencil multiplicity must be at least 3")
    if not arr.is_real:
        raise ToolkitError("pencil extension needs a real base arrangement")
    h = arr.line(h_label)
    others = [line for line in arr.lines if line.label != h_label]
    poset = build_affine_poset(arr)

    point = None
    for t in _small_rationals():
        candidate = _point_on(h, t)
        if all(not g.contains(candidate) for g in others):
            point = candidate
            break
    if point is None:
        raise SearchExhausted("no admissible pencil point found")

    base_slopes = {_slope_or_none(line) for line in arr.lines}
    slopes: list[Fraction] = []
    added: list[Line] = []
    labels = _fresh_labels(arr.labels(), "P", m - 1)
    for w in _pencil_slope_candidates():
        if len(slopes) == m - 1:
            break
        if w in base_slopes or w in slopes:
            continue
        line = _line_through(point, w, labels[len(slopes)])
        if any(line.contains(p.location) for p in poset.points):
            continue
        slopes.append(w)
        added.append(line)
    if len(slopes) < m - 1:
        raise SearchExhausted("pencil slope search exhausted")

    ext = arr.extended(added)
    attachment = PencilAttachment(arr.labels(), h_label, m, point, tuple(slopes), labels)
    _validate_pencil(arr, ext, attachment)
    return ext, attachment


def _validate_pencil(base: Arrangement, ext: Arrangement, att: PencilAttachment) -> None:
    added = set(att.added_labels)
    base_points = {p.incident for p in build_affine_poset(base).points}
    pencil_incident = added | {att.h}
    seen_pencil = False
    for p in build_affine_poset(ext).points:
        new = p.incident & added
        if not new:
            if p.incident not in base_points:
                raise ToolkitError("base poset changed under pencil attachment")
            continue
        if p.incident == pencil_incident:
            if p.location != att.point:
                raise ToolkitError("pencil point moved")
            seen_pencil = True
            continue
        if len(new) != 1 or p.multiplicity != 2 or att.h in p.incident:
            raise ToolkitError("pencil attachment is not 2-generic")
    if not seen_pencil:
        raise ToolkitError("pencil point of full multiplicity missing")


def build_parallel_extension(arr: Arrangement, m: int):
    """Attach m-1 parallel lines in a fresh direction, all crossings double.

    The direction is the first of -3, -4, ... not parallel to the base; the
    offsets are the first m-1 admissible values of 0, -1, 1, -2, 2, ...
    """
    if m < 3:
        raise MultiplicityTooSmall("parallel extension needs multiplicity at least 3")
    if not arr.is_real:
        raise ToolkitError("parallel extension needs a real base arrangement")
    poset = build_affine_poset(arr)
    base_slopes = {_slope_or_none(line) for line in arr.lines}

    slope = None
    for w in _pencil_slope_candidates():
        if w not in base_slopes:
            slope = w
            break
    if slope is None:
        raise SearchExhausted("parallel direction search exhausted")

    labels = _fresh_labels(arr.labels(), "D", m - 1)
    offsets: list[Fraction] = []
    added: list[Line] = []
    for d in _small_rationals():
        if len(offsets) == m - 1:
            break
        line = normalize_line(-slope, 1, -d, labels[len(offsets)])
        if any(line.contains(p.location) for p in poset.points):
            continue
        offsets.append(d)
        added.append(line)
    if len(offsets) < m - 1:
        raise SearchExhausted("parallel offset search exhausted")

    ext = arr.extended(added)
    attachment = ParallelAttachment(arr.labels(), m - 1, slope, tuple(offsets), labels)
    _validate_parallel(arr, ext, attachment)
    return ext, attachment


def _validate_parallel(base: Arrangement, ext: Arrangement, att: ParallelAttachment) -> None:
    added = set(att.added_labels)
    base_points = {p.incident for p in build_affine_poset(base).points}
    ext_poset = build_affine_poset(ext)
    for p in ext_poset.points:
        new = p.incident & added
        if not new:
            if p.incident not in base_points:
                raise ToolkitError("base poset changed under parallel attachment")
            continue
        if len(new) != 1 or p.multiplicity != 2:
            raise ToolkitError("parallel attachment is not 2-generic")
    for cls in ext_poset.classes:
        inside = cls.members & added
        if inside and inside != added:
            raise ToolkitError("added direction merged with a base direction")


def analyze_pencil_extension(base: Arrangement, h_label: str, ext: Arrangement) -> PencilAttachment:
    """Recover and validate the attachment data of a prebuilt extension."""
    base_labels = set(base.labels())
    for line in base.lines:
        if not ext.line(line.label).same_locus(line):
            raise ToolkitError("extension does not contain the base verbatim")
    added = tuple(lbl for lbl in ext.labels() if lbl not in base_labels)
    m = len(added) + 1
    if m < 3:
        raise MultiplicityTooSmall("extension adds fewer than two lines")
    h = ext.line(h_label)
    first = ext.line(added[0])
    hit = intersect(h, first)
    if not isinstance(hit, Point):
        raise ToolkitError("added lines do not meet the chosen line")
    slopes = tuple(ext.line(lbl).real_slope() for lbl in added)
    att = PencilAttachment(base.labels(), h_label, m, hit, slopes, added)
    _validate_pencil(base, ext, att)
    return att


def analyze_parallel_extension(base: Arrangement, ext: Arrangement) -> ParallelAttachment:
    base_labels = set(base.labels())
    for line in base.lines:
        if not ext.line(line.label).same_locus(line):
            raise ToolkitError("extension does not contain the base verbatim")
    added = tuple(lbl for lbl in ext.labels() if lbl not in base_labels)
    if len(added) < 2:
        raise MultiplicityTooSmall("extension adds fewer than two lines")
    slopes = {ext.line(lbl).real_slope() for lbl in added}
    if len(slopes) != 1:
        raise ToolkitError("added lines are not parallel")
    slope = slopes.pop()
    offsets = tuple(-ext.line(lbl).c.re for lbl in added)
    att = ParallelAttachment(base.labels(), len(added), slope, offsets, added)
    _validate_parallel(base, ext, att)
    return att


# ---------------------------------------------------------------------------
# Exterior pencil model
# ---------------------------------------------------------------------------


def _slope_cut(arr: Arrangement, h_label: str) -> Fraction:
    """A value on the slope circle just below the chosen line's slope, so a
    Moebius change of coordinates makes that slope strictly minimal."""
    s_h = _slope_or_none(arr.line(h_label))
    finite = sorted({s for s in (_slope_or_none(l) for l in arr.lines) if s is not None})
    if s_h is None:
        return (finite[-1] + 1) if finite else Fraction(0)
    below = [s for s in finite if s < s_h]
    if below:
        return (s_h + below[-1]) / 2
    return s_h - 1


def _normalize_for_pencil(arr: Arrangement, h_label: str) -> Arrangement:
    """Exact coordinate changes making h the line y = 0 and every other base
    slope finite and strictly positive, then a small shear so vertex
    x-coordinates are distinct."""
    c = _slope_cut(arr, h_label)
    # Slopes move by s -> -1/(s - c); nothing stays vertical.
    step1 = arr.substituted(0, 1, 0, -1, c, 0)
    h1 = step1.line(h_label)
    a, b, cc = h1.a.re, h1.b.re, h1.c.re
    if b < 0:
        a, b, cc = -a, -b, -cc
    step2 = step1.substituted(1, 0, 0, -a / b, 1 / b, -cc / b)

    # Lines parallel to h keep slope 0; they never share a vertex with it.
    slopes = [line.real_slope() for line in step2.lines if line.label != h_label]
    smax = max(slopes, default=Fraction(0))
    if any(s < 0 for s in slopes):
        raise AssertionError("slope normalization failed")
    scale = 977 * (ceil(smax) + 1)
    points = [p.location for p in build_affine_poset(step2).points]
    for k in range(977):
        delta = Fraction(k, scale)
        xs = [(p.x - delta * p.y).re for p in points]
        if len(set(xs)) == len(xs):
            return shear_arrangement(step2, delta)
    raise SearchExhausted("no admissible shear for the pencil model")


def exterior_pencil_model(arr: Arrangement, h_label: str, m: int) -> Arrangement:
    """A pencil extension whose picture keeps the pencil outside the base:
    the pencil vertex and every added crossing sit strictly east of all base
    intersection points, and the chosen line has minimal slope throughout.
    Its poset is label-identical to build_pencil_extension's output."""
    reference, attachment = build_pencil_extension(arr, h_label, m)
    ref_poset = build_affine_poset(reference)
    base = _normalize_for_pencil(arr, h_label)
    base_poset = build_affine_poset(base)
    box = max(
        (max(abs(p.location.x.re), abs(p.location.y.re)) for p in base_poset.points),
        default=Fraction(0),
    )
    bound = ceil(box) + 1
    smax = max(
        (line.real_slope() for line in base.lines if line.label != h_label),
        default=Fraction(0),
    )
    sigma_base = 8 * (ceil(smax) + 1)
    others = [line for line in base.lines if line.label != h_label]

    for attempt in range(60):
        shift = attempt % 10
        reach = 4 ** (attempt // 10)
        big = 8 * (bound + 1) * reach
        vertex = Point(gaussian(big), gaussian(0))
        fan = [
            _line_through(vertex, Fraction(sigma_base + i + shift), label)
            for i, label in enumerate(attachment.added_labels)
        ]
        if not _fan_is_clean(base_poset, others, fan, vertex, bound):
            continue
        model = base.extended(fan)
        if _identity_poset_match(build_affine_poset(model), ref_poset):
            return model
    raise SearchExhausted("exterior pencil model search exhausted")


def _fan_is_clean(base_poset: AffinePoset, others, fan, vertex, bound) -> bool:
    xs = [p.location.x.re for p in base_poset.points]
    xs.append(vertex.x.re)
    for line in fan:
        for g in others:
            hit = intersect(line, g)
            if not isinstance(hit, Point):
                return False
            if hit.x.re <= bound:
                return False
            xs.append(hit.x.re)
        for p in base_poset.points:
            if line.contains(p.location):
                return False
    return len(set(xs)) == len(xs)


def _identity_poset_match(p: AffinePoset, q: AffinePoset) -> bool:
    if set(p.labels) != set(q.labels):
        return False
    if {pt.incident for pt in p.points} != {pt.incident for pt in q.points}:
        return False
    p_classes = {cls.members for cls in p.classes}
    q_classes = {cls.members for cls in q.classes}
    return p_classes == q_classes


# ---------------------------------------------------------------------------
# Target presentation of a pencil extension, and its canonical form
# ---------------------------------------------------------------------------


def attached_pencil_presentation(n: int, m: int, base_relators) -> Presentation:
    """Presentation of a base-plus-exterior-pencil arrangement:

        generators h1..hn, l2..lm
        relators   [l_k, h_j]       for 2 <= k <= m, 2 <= j <= n
                   the m-1 relators expanding [h1, l_m, ..., l_2]
                   the base relators over h1..hn only
    """
    if n < 1:
        raise ValueError("need at least the pencil line itself")
    if m < 2:
        raise ValueError("a pencil has multiplicity at least 2")
    h_names = [f"h{j}" for j in range(1, n + 1)]
    l_names = [f"l{k}" for k in range(2, m + 1)]
    gens = tuple(Gen(i + 1, name) for i, name in enumerate(h_names + l_names))
    ids = {g.name: g.id for g in gens}

    relators = []
    for k in range(2, m + 1):
        for j in range(2, n + 1):
            relators.append(commutator((ids[f"l{k}"],), (ids[f"h{j}"],)))
    bottom_to_top = [(ids[name],) for name in l_names] + [(ids["h1"],)]
    relators.extend(pencil_commutators(bottom_to_top))

    h_ids = {ids[name] for name in h_names}
    for tokens in base_relators:
        for token in tokens:
            name = token[1:] if token.startswith("-") else token
            if name not in ids or ids[name] not in h_ids:
                raise BadRelators(f"base relator mentions non-base generator {name!r}")
        word = tuple(
            ids[t[1:]] * -1 if t.startswith("-") else ids[t]
            for t in tokens
        )
        relators.append(free_reduce(word))

    return Presentation(gens, tuple(relators), 0)


def _target_shape(p: Presentation):
    """Recover (n, m) from an attached-pencil presentation, or raise."""
    h_idx, l_idx = [], []
    for g in p.generators:
        kind, digits = g.name[:1], g.name[1:]
        if kind == "h" and digits.isdigit():
            h_idx.append(int(digits))
        elif kind == "l" and digits.isdigit():
            l_idx.append(int(digits))
        else:
            raise ShapeMismatch(f"unexpected generator {g.name!r}")
    n, m = len(h_idx), len(l_idx) + 1
    if sorted(h_idx) != list(range(1, n + 1)) or sorted(l_idx) != list(range(2, m + 1)):
        raise ShapeMismatch("generator names do not form h1..hn, l2..lm")
    return n, m


def canonicalize_pencil_presentation(p: Presentation) -> Presentation:
    """Replay the preferred rewriting of an attached-pencil presentation:
    introduce g = h1*l_m*...*l_2, eliminate h1, turn the pencil relators into
    [g, l_k] bottom-up, and scrub the l's out of the base relators using the
    commutations.  Only homotopy-preserving moves are used, so the sphere
    count, Euler characteristic, and abelianization are unchanged."""
    n, m = _target_shape(p)
    ids = p.ids()
    expected = attached_pencil_presentation(n, m, [])
    head = (m - 1) * (n - 1)
    if len(p.relators) < head + (m - 1):
        raise ShapeMismatch("too few relators for an attached pencil")
    rename = {expected.gen_id(g.name): ids[g.name] for g in expected.generators}
    for mine, theirs in zip(expected.relators, p.relators[:head + m - 1]):
        if tuple(rename[abs(x)] * (1 if x > 0 else -1) for x in mine) != theirs:
            raise ShapeMismatch("leading relators do not match the pencil template")
    h_ids = {ids[f"h{j}"] for j in range(1, n + 1)}
    for r in p.relators[head + m - 1:]:
        if not support(r) <= h_ids:
            raise ShapeMismatch("trailing relators must involve h generators only")

    g_word = concat((ids["h1"],), *[(ids[f"l{k}"],) for k in range(m, 1, -1)])
    work = tietze2_introduce(p, "g", g_word)
    work = tietze2_eliminate(work, "h1", len(work.relators) - 1)
    ids = work.ids()
    g_id = ids["g"]

    rels = list(work.relators)
    pairs: set[tuple[int, int]] = set()
    for j in range(m - 2, -1, -1):
        k = m - j
        idx = head + j
        rels[idx] = _nf_cyclic(rels[idx], pairs)
        want = canonical_cyclic(commutator((g_id,), (ids[f"l{k}"],)))
        if canonical_cyclic(rels[idx]) != want:
            raise ShapeMismatch("pencil relator did not reduce to a commutator")
        rels[idx] = commutator((g_id,), (ids[f"l{k}"],))
        pairs.add((min(g_id, ids[f"l{k}"]), max(g_id, ids[f"l{k}"])))

    for k in range(2, m + 1):
        for j in range(2, n + 1):
            a, b = ids[f"l{k}"], ids[f"h{j}"]
            pairs.add((min(a, b), max(a, b)))
    allowed = {ids[f"h{j}"] for j in range(2, n + 1)} | {g_id}
    for idx in range(head + m - 1, len(rels)):
        rels[idx] = _nf_cyclic(rels[idx], pairs)
        if not support(rels[idx]) <= allowed:
            raise ShapeMismatch("base relator kept pencil generators after scrubbing")

    order = ["g"] + [f"h{j}" for j in range(2, n + 1)] + [f"l{k}" for k in range(2, m + 1)]
    gens = tuple(next(g for g in work.generators if g.name == name) for name in order)
    return Presentation(gens, tuple(rels), work.sphere_count)
