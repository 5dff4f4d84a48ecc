"""Flat-file formats for arrangements and families.

Arrangement files (.arr)::

    # comment lines start with '#'
    arr v1
    line 1 0 0            # coefficients a b c, rationals or 3+1/2i forms
    line 0 1 -1 Ltop      # optional trailing label
    factor y+3x+1         # a linear factor instead of raw coefficients

Family files (.fam)::

    fam v1
    fline 1 ; 0 ; 0                      # a(t) ; b(t) ; c(t)
    fline -3 ; 1 ; 5*t - (t - t^2)i
    samples 0 1/7 1/3 1/2 5/7 1          # optional; must contain 0 and 1

Labels default to L1, L2, ... (arrangements) and F1, F2, ... (families) in
declaration order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateLine, ParseError
from .expr import parse_gaussian_literal, parse_polynomial
from .families import DEFAULT_SAMPLES, FamilyLine, IsotopyFamily
from .gaussian import GaussianRational, format_rational
from .geometry import Arrangement, Line, normalize_line, parse_linear_factor


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield lineno, body


def _located(exc: ParseError, lineno: int, offset: int = 0) -> ParseError:
    column = (exc.column + offset + 1) if exc.column is not None else None
    return ParseError(exc.message, line=lineno, column=column, token=exc.token)


def parse_arr(text: str) -> Arrangement:
    rows = list(_meaningful_lines(text))
    if not rows:
        raise ParseError("empty arrangement file")
    lineno, header = rows[0]
    if header.strip() != "arr v1":
        raise ParseError("expected header 'arr v1'", line=lineno, token=header.strip())

    lines: list[Line] = []
    taken: set[str] = set()
    for lineno, body in rows[1:]:
        parts = body.split()
        directive = parts[0]
        if directive == "line":
            rest = parts[1:]
            if len(rest) not in (3, 4):
                raise ParseError("'line' needs three coefficients and an optional label",
                                 line=lineno, token=body.strip())
            coeffs = []
            for token in rest[:3]:
                try:
                    coeffs.append(parse_gaussian_literal(token))
                except ParseError as exc:
                    raise _located(exc, lineno) from None
            label = rest[3] if len(rest) == 4 else None
            try:
                line = normalize_line(*coeffs, label or "")
            except DegenerateLine as exc:
                raise ParseError(str(exc), line=lineno, token=body.strip()) from None
        elif directive == "factor":
            expression = body.split(None, 1)[1] if len(parts) > 1 else ""
            try:
                line = parse_linear_factor(expression)
            except DegenerateLine as exc:
                raise ParseError(str(exc), line=lineno, token=expression) from None
            except ParseError as exc:
                raise _located(exc, lineno, offset=body.index(expression)) from None
            label = None
        else:
            raise ParseError("unknown directive", line=lineno, token=directive)
        if label is None:
            label = f"L{len(lines) + 1}"
            while label in taken:
                label += "'"
        if label in taken:
            raise ParseError(f"duplicate label {label!r}", line=lineno, token=label)
        taken.add(label)
        lines.append(line.with_label(label))

    if not lines:
        raise ParseError("arrangement file declares no lines")
    try:
        return Arrangement(tuple(lines))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_arr(arr: Arrangement) -> str:
    out = ["arr v1"]
    for line in arr.lines:
        out.append(f"line {line.a} {line.b} {line.c} {line.label}")
    return "\n".join(out) + "\n"


def _poly_coeffs(text: str, lineno: int, offset: int) -> tuple:
    try:
        poly = parse_polynomial(text, ("t",))
    except ParseError as exc:
        raise _located(exc, lineno, offset) from None
    if not poly:
        return ()
    degree = max(mono[0] for mono in poly)
    return tuple(poly.get((d,), GaussianRational(0)) for d in range(degree + 1))


def parse_fam(text: str) -> IsotopyFamily:
    rows = list(_meaningful_lines(text))
    if not rows:
        raise ParseError("empty family file")
    lineno, header = rows[0]
    if header.strip() != "fam v1":
        raise ParseError("expected header 'fam v1'", line=lineno, token=header.strip())

    lines: list[FamilyLine] = []
    samples = None
    for lineno, body in rows[1:]:
        directive = body.split()[0]
        if directive == "fline":
            rest = body.split(None, 1)[1] if len(body.split()) > 1 else ""
            pieces = rest.split(";")
            if len(pieces) != 3:
                raise ParseError("'fline' needs a(t) ; b(t) ; c(t)",
                                 line=lineno, token=body.strip())
            offset = body.index(rest)
            coeffs = [_poly_coeffs(piece, lineno, offset) for piece in pieces]
            label = f"F{len(lines) + 1}"
            lines.append(FamilyLine(label, *coeffs))
        elif directive == "samples":
            samples = []
            for token in body.split()[1:]:
                try:
                    samples.append(Fraction(token))
                except ValueError:
                    raise ParseError("bad sample value", line=lineno, token=token) from None
            if Fraction(0) not in samples or Fraction(1) not in samples:
                raise ParseError("sample list must contain 0 and 1", line=lineno,
                                 token=body.strip())
        else:
            raise ParseError("unknown directive", line=lineno, token=directive)

    if not lines:
        raise ParseError("family file declares no lines")
    return IsotopyFamily(tuple(lines), tuple(samples) if samples else DEFAULT_SAMPLES)


def format_fraction(q: Fraction) -> str:
    return format_rational(q)
