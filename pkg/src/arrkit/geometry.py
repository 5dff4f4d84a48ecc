"""Exact affine lines in C^2 and ordered arrangements of them.

A line is a*x + b*y + c = 0 with Gaussian-rational coefficients, normalized
so that the first nonzero entry of (a, b) equals 1.  Under that convention
two lines cut out the same locus exactly when their coefficient triples are
equal, so geometric equality is syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DegenerateLine, ParseError
from .expr import parse_polynomial
from .gaussian import GaussianRational, format_rational, gaussian


class Point(NamedTuple):
    x: GaussianRational
    y: GaussianRational

    @property
    def is_real(self) -> bool:
        return self.x.is_real and self.y.is_real


@dataclass(frozen=True)
class Line:
    """Normalized line a*x + b*y + c = 0 with a display label."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    label: str = ""

    def coeffs(self) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
        return (self.a, self.b, self.c)

    @property
    def is_real(self) -> bool:
        return self.a.is_real and self.b.is_real and self.c.is_real

    @property
    def is_vertical(self) -> bool:
        return not self.b

    def slope(self) -> GaussianRational:
        if self.is_vertical:
            raise DegenerateLine(f"line {self.label or self.coeffs()} is vertical")
        return -self.a / self.b

    def real_slope(self) -> Fraction:
        s = self.slope()
        if not s.is_real:
            raise ValueError("complex line has no real slope")
        return s.re

    def evaluate(self, x, y) -> GaussianRational:
        return self.a * gaussian(x) + self.b * gaussian(y) + self.c

    def y_at(self, x) -> GaussianRational:
        if self.is_vertical:
            raise DegenerateLine("vertical line has no y(x)")
        return (-self.c - self.a * gaussian(x)) / self.b

    def contains(self, point: Point) -> bool:
        return not self.evaluate(point.x, point.y)

    def direction(self) -> tuple[GaussianRational, GaussianRational]:
        """Parallel-class key; equal for two lines iff a1*b2 - a2*b1 = 0."""
        return (self.a, self.b)

    def with_label(self, label: str) -> "Line":
        return Line(self.a, self.b, self.c, label)

    def same_locus(self, other: "Line") -> bool:
        return self.coeffs() == other.coeffs()

    def substituted(self, mxx, mxy, tx, myx, myy, ty, label=None) -> "Line":
        """Replace x by mxx*x + mxy*y + tx and y by myx*x + myy*y + ty.

        The linear part must be invertible; the result is the arrangement in
        the new coordinates and has the same incidence combinatorics.
        """
        mxx, mxy, tx = gaussian(mxx), gaussian(mxy), gaussian(tx)
        myx, myy, ty = gaussian(myx), gaussian(myy), gaussian(ty)
        if not (mxx * myy - mxy * myx):
            raise ValueError("substitution matrix is singular")
        a2 = self.a * mxx + self.b * myx
        b2 = self.a * mxy + self.b * myy
        c2 = self.a * tx + self.b * ty + self.c
        return normalize_line(a2, b2, c2, self.label if label is None else label)

    def render(self) -> str:
        """Canonical factor text; parse_linear_factor inverts this."""
        parts = []
        for coeff, var in ((self.a, "x"), (self.b, "y"), (self.c, "")):
            if not coeff:
                continue
            parts.append(_render_term(coeff, var, first=not parts))
        return "".join(parts) if parts else "0"

    def __str__(self):
        body = self.render()
        return f"{self.label}: {body} = 0" if self.label else f"{body} = 0"


def _render_term(coeff: GaussianRational, var: str, first: bool) -> str:
    if coeff.im and coeff.re:
        text = f"({coeff})" + var
        return text if first else "+" + text
    if coeff.im:
        mag = abs(coeff.im)
        body = ("" if mag == 1 else format_rational(mag)) + "i" + var
        sign = "-" if coeff.im < 0 else ("" if first else "+")
        return sign + body
    mag = abs(coeff.re)
    body = format_rational(mag) + var if (mag != 1 or not var) else var
    sign = "-" if coeff.re < 0 else ("" if first else "+")
    return sign + body


def normalize_line(a, b, c, label: str = "") -> Line:
    """Scale so the first nonzero of (a, b) is 1; reject a = b = 0."""
    a, b, c = gaussian(a), gaussian(b), gaussian(c)
    lead = a if a else b
    if not lead:
        raise DegenerateLine("both x and y coefficients vanish")
    return Line(a / lead, b / lead, c / lead, label)


class _Parallel:
    __slots__ = ()

    def __repr__(self):
        return "Parallel"


class _EqualLines:
    __slots__ = ()

    def __repr__(self):
        return "EqualLines"


PARALLEL = _Parallel()
EQUAL_LINES = _EqualLines()


def intersect(l1: Line, l2: Line):
    """Exact intersection: a Point, PARALLEL, or EQUAL_LINES."""
    det = l1.a * l2.b - l2.a * l1.b
    if not det:
        return EQUAL_LINES if l1.same_locus(l2) else PARALLEL
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


def parse_linear_factor(text: str, label: str = "") -> Line:
    """Parse a degree-one factor such as ``y+3x+1`` into its zero-set line."""
    poly = parse_polynomial(text, ("x", "y"))
    a = poly.get((1, 0), GaussianRational(0))
    b = poly.get((0, 1), GaussianRational(0))
    c = poly.get((0, 0), GaussianRational(0))
    for mono in poly:
        if sum(mono) > 1:
            raise ParseError("nonlinear term in linear factor", token=text)
    if not a and not b:
        raise DegenerateLine(f"constant polynomial {text!r} defines no line")
    return normalize_line(a, b, c, label)


@dataclass(frozen=True)
class Arrangement:
    """Ordered, labeled collection of pairwise distinct lines."""

    lines: tuple[Line, ...]

    def __post_init__(self):
        seen_labels = set()
        for line in self.lines:
            if not line.label:
                raise ValueError("every arrangement line needs a label")
            if line.label in seen_labels:
                raise ValueError(f"duplicate label {line.label!r}")
            seen_labels.add(line.label)
        for i, l1 in enumerate(self.lines):
            for l2 in self.lines[i + 1:]:
                if l1.same_locus(l2):
                    raise ValueError(f"lines {l1.label!r} and {l2.label!r} coincide")

    def __iter__(self):
        return iter(self.lines)

    def __len__(self):
        return len(self.lines)

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def is_real(self) -> bool:
        return all(line.is_real for line in self.lines)

    def labels(self) -> tuple[str, ...]:
        return tuple(line.label for line in self.lines)

    def line(self, label: str) -> Line:
        for candidate in self.lines:
            if candidate.label == label:
                return candidate
        raise KeyError(label)

    def restrict(self, labels) -> "Arrangement":
        wanted = set(labels)
        return Arrangement(tuple(line for line in self.lines if line.label in wanted))

    def extended(self, new_lines) -> "Arrangement":
        return Arrangement(self.lines + tuple(new_lines))

    def substituted(self, mxx, mxy, tx, myx, myy, ty) -> "Arrangement":
        return Arrangement(tuple(
            line.substituted(mxx, mxy, tx, myx, myy, ty) for line in self.lines
        ))


def arrangement_from_factors(factors, labels=None) -> Arrangement:
    """Build an arrangement from factor texts, defaulting labels to L1, L2, ..."""
    factors = list(factors)
    if labels is None:
        labels = [f"L{i + 1}" for i in range(len(factors))]
    lines = tuple(parse_linear_factor(text, label) for text, label in zip(factors, labels))
    return Arrangement(lines)
