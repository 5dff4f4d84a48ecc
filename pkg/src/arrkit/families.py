"""One-parameter families of arrangements with polynomial coefficients.

A family line has coefficients a(t), b(t), c(t), polynomials in a real
parameter t over the Gaussian rationals.  Sampling the family at exact
rational t values and comparing the labeled posets gives a finite check
that the family is a lattice isotopy; genuinely complex intermediate
arrangements are the point, so everything stays Gaussian.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, DegenerateAtSample
from .gaussian import GaussianRational, gaussian
from .geometry import Arrangement, Line, normalize_line
from .poset import build_affine_poset

# Coefficient polynomials are tuples of GaussianRational, low degree first.
TPoly = tuple

DEFAULT_SAMPLES = (
    Fraction(0), Fraction(1, 7), Fraction(1, 3),
    Fraction(1, 2), Fraction(5, 7), Fraction(1),
)


def tpoly(*coeffs) -> TPoly:
    out = [gaussian(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def tpoly_eval(p: TPoly, t: Fraction) -> GaussianRational:
    value = GaussianRational(0)
    for coeff in reversed(p):
        value = value * t + coeff
    return value


@dataclass(frozen=True)
class FamilyLine:
    label: str
    a: TPoly
    b: TPoly
    c: TPoly

    def at(self, t: Fraction) -> Line:
        a = tpoly_eval(self.a, t)
        b = tpoly_eval(self.b, t)
        if not a and not b:
            raise DegenerateAtSample(f"line {self.label!r} degenerates at t = {t}")
        return normalize_line(a, b, tpoly_eval(self.c, t), self.label)


@dataclass(frozen=True)
class IsotopyFamily:
    lines: tuple[FamilyLine, ...]
    samples: tuple[Fraction, ...] = DEFAULT_SAMPLES

    def __post_init__(self):
        if Fraction(0) not in self.samples or Fraction(1) not in self.samples:
            raise BadParameters("sample set must contain t = 0 and t = 1")

    def lines_at(self, t: Fraction) -> list[Line]:
        return [line.at(t) for line in self.lines]

    def at(self, t: Fraction) -> Arrangement:
        return Arrangement(tuple(self.lines_at(t)))


@dataclass(frozen=True)
class ConstancyReport:
    constant: bool
    samples: tuple[Fraction, ...]
    witness_t: Fraction | None = None
    witness: str | None = None


def _combinatorics(arr: Arrangement):
    poset = build_affine_poset(arr)
    points = {p.incident for p in poset.points}
    classes = {cls.members for cls in poset.classes}
    return points, classes


def check_lattice_constancy(family: IsotopyFamily) -> ConstancyReport:
    """Evaluate exactly at every sample and compare each labeled poset with
    the t = 0 poset through the identity labeling.  Sampling only: a clean
    report certifies the sampled values, not all of t."""
    samples = tuple(sorted(set(family.samples)))
    ordered = (Fraction(0),) + tuple(t for t in samples if t != 0)
    base = None
    for t in ordered:
        lines = family.lines_at(t)
        for i, l1 in enumerate(lines):
            for l2 in lines[i + 1:]:
                if l1.same_locus(l2):
                    return ConstancyReport(
                        False, samples, t,
                        f"lines {l1.label!r} and {l2.label!r} coincide",
                    )
        points, classes = _combinatorics(Arrangement(tuple(lines)))
        if base is None:
            base = (points, classes)
            continue
        if points != base[0]:
            diff = sorted(
                tuple(sorted(s)) for s in points.symmetric_difference(base[0])
            )[0]
            return ConstancyReport(
                False, samples, t,
                f"incidence {'+'.join(diff)} differs from t = 0",
            )
        if classes != base[1]:
            diff = sorted(
                tuple(sorted(s)) for s in classes.symmetric_difference(base[1])
            )[0]
            return ConstancyReport(
                False, samples, t,
                f"parallel class {{{', '.join(diff)}}} differs from t = 0",
            )
    return ConstancyReport(True, samples)


# ---------------------------------------------------------------------------
# The standard family shapes used by the equivalence arguments.  Each keeps
# the base subarrangement x * prod(y - w_j x + a_j) fixed and perturbs the
# attached lines, picking up an exact imaginary term (t - t^2)i that keeps
# intermediate arrangements off every real degeneration.
# ---------------------------------------------------------------------------

I = GaussianRational(0, 1)


def _base_lines(base_slopes, base_offsets) -> list[FamilyLine]:
    if len(base_slopes) != len(base_offsets):
        raise BadParameters("base slopes and offsets differ in length")
    lines = [FamilyLine("H1", tpoly(1), tpoly(), tpoly())]
    for j, (w, a) in enumerate(zip(base_slopes, base_offsets), start=2):
        lines.append(FamilyLine(
            f"H{j}", tpoly(Fraction(-w)), tpoly(1), tpoly(Fraction(a)),
        ))
    return lines


def pencil_translate_family(pencil_slopes, base_slopes, base_offsets, big_r,
                            samples=DEFAULT_SAMPLES) -> IsotopyFamily:
    """Slide a pencil based at the origin out along the vertical line:
    factor y - m_k x - R*t + (t - t^2)i for each pencil slope."""
    if not pencil_slopes:
        raise BadParameters("need at least one pencil slope")
    lines = _base_lines(base_slopes, base_offsets)
    for k, m_k in enumerate(pencil_slopes, start=2):
        lines.append(FamilyLine(
            f"C{k}",
            tpoly(Fraction(-m_k)), tpoly(1),
            tpoly(0, gaussian(Fraction(-big_r)) + I, -I),
        ))
    return IsotopyFamily(tuple(lines), tuple(samples))


def slope_fan_family(pencil_slopes, base_slopes, base_offsets, big_r, q,
                     samples=DEFAULT_SAMPLES) -> IsotopyFamily:
    """Spread the slopes of a translated pencil toward the window ending at
    q: the k-th slope moves from m_k to (q - m_2)k/m + m_2, keeping the
    bottom line fixed."""
    if len(pencil_slopes) < 1:
        raise BadParameters("need at least one pencil slope")
    m = len(pencil_slopes) + 1
    m2 = Fraction(pencil_slopes[0])
    lines = _base_lines(base_slopes, base_offsets)
    lines.append(FamilyLine(
        "C2", tpoly(-m2), tpoly(1), tpoly(Fraction(-big_r)),
    ))
    for k, m_k in enumerate(pencil_slopes[1:], start=3):
        drift = (Fraction(q) - m2) * k / m + m2 - Fraction(m_k)
        lines.append(FamilyLine(
            f"C{k}",
            tpoly(Fraction(-m_k), -gaussian(drift) - I, I),
            tpoly(1),
            tpoly(Fraction(-big_r)),
        ))
    return IsotopyFamily(tuple(lines), tuple(samples))


def offset_slide_family(direction, offsets, clearance, base_slopes, base_offsets,
                        samples=DEFAULT_SAMPLES) -> IsotopyFamily:
    """Slide parallel lines y - u*x - b_k to the evenly spaced offsets
    clearance + k: factor y - u x - (b_k (1-t) + (S+k) t + (t - t^2)i)."""
    if not offsets:
        raise BadParameters("need at least one parallel line")
    lines = _base_lines(base_slopes, base_offsets)
    u = Fraction(direction)
    s = Fraction(clearance)
    for k, b_k in enumerate(offsets, start=1):
        b = Fraction(b_k)
        lines.append(FamilyLine(
            f"K{k}",
            tpoly(-u), tpoly(1),
            tpoly(-b, gaussian(b - s - k) - I, I),
        ))
    return IsotopyFamily(tuple(lines), tuple(samples))


def direction_turn_family(direction_start, direction_end, count, clearance,
                          base_slopes, base_offsets,
                          samples=DEFAULT_SAMPLES) -> IsotopyFamily:
    """Turn a spaced parallel family from slope u1 to slope u2:
    factor y - (u1 (1-t) + u2 t + i(t - t^2)) x - (S + k)."""
    if count < 1:
        raise BadParameters("need at least one parallel line")
    u1, u2 = Fraction(direction_start), Fraction(direction_end)
    s = Fraction(clearance)
    lines = _base_lines(base_slopes, base_offsets)
    for k in range(1, count + 1):
        lines.append(FamilyLine(
            f"K{k}",
            tpoly(-u1, gaussian(u1 - u2) - I, I),
            tpoly(1),
            tpoly(-(s + k)),
        ))
    return IsotopyFamily(tuple(lines), tuple(samples))


_KINDS = {
    "pencil-translate": (pencil_translate_family,
                         ("pencil_slopes", "base_slopes", "base_offsets", "big_r")),
    "slope-fan": (slope_fan_family,
                  ("pencil_slopes", "base_slopes", "base_offsets", "big_r", "q")),
    "offset-slide": (offset_slide_family,
                     ("direction", "offsets", "clearance", "base_slopes", "base_offsets")),
    "direction-turn": (direction_turn_family,
                       ("direction_start", "direction_end", "count", "clearance",
                        "base_slopes", "base_offsets")),
}


def build_family(kind: str, parameters: dict, samples=DEFAULT_SAMPLES) -> IsotopyFamily:
    """Dispatch to one of the standard family shapes by name."""
    try:
        builder, required = _KINDS[kind]
    except KeyError:
        raise BadParameters(f"unknown family kind {kind!r}; "
                            f"choose from {sorted(_KINDS)}") from None
    missing = [key for key in required if key not in parameters]
    if missing:
        raise BadParameters(f"missing parameters for {kind!r}: {missing}")
    extra = [key for key in parameters if key not in required]
    if extra:
        raise BadParameters(f"unknown parameters for {kind!r}: {extra}")
    args = [parameters[key] for key in required]
    return builder(*args, samples=samples)
