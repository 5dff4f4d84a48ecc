"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for everything this package raises on purpose."""


class DegenerateLine(ToolkitError):
    """Both the x and the y coefficient vanish, so the equation cuts out no line."""


class ParseError(ToolkitError):
    """Malformed input text.  Carries position data for diagnostics."""

    def __init__(self, message, line=None, column=None, token=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        what = f" (near {token!r})" if token else ""
        super().__init__(f"{message}{where}{what}")


class NotGeneric(ToolkitError):
    """The arrangement violates the sweep preconditions (vertical line or shared vertex x)."""


class NonRealLine(ToolkitError):
    """A real-picture operation was applied to a line with complex coefficients."""


class BadMultiplicity(ToolkitError):
    """A vertex star needs at least two incident lines."""


class MultiplicityTooSmall(ToolkitError):
    """Pencil and parallel extensions need multiplicity at least three."""


class SearchExhausted(ToolkitError):
    """A bounded deterministic search ran out of candidates."""


class NotEliminable(ToolkitError):
    """The chosen relator is not of the form a*w^-1 with w free of a."""


class IndexOutOfRange(ToolkitError, IndexError):
    """Relator index outside the presentation."""


class SameIndex(ToolkitError, ValueError):
    """Relator multiplication needs two distinct indices."""


class BadRelators(ToolkitError):
    """Supplied base relators mention generators they must not."""


class ShapeMismatch(ToolkitError):
    """Input presentation does not have the expected structural shape."""


class BadParameters(ToolkitError):
    """Family constructor called with missing or inconsistent parameters."""


class DegenerateAtSample(ToolkitError):
    """A family line loses its leading coefficients at a sample value."""
