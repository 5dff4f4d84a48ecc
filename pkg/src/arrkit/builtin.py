"""The bundled nine-line example: a six-line base extended once by a pencil
of multiplicity four and once by three parallel lines.  Both extensions are
stored verbatim as factored defining polynomials."""

from .geometry import Arrangement, arrangement_from_factors

BASE_FACTORS = ("x", "y", "y-1", "y-2", "y+x-2", "y-x")

PENCIL_FACTORS = BASE_FACTORS + ("y+3x+1", "y+4x+1", "y+5x+1")

PARALLEL_FACTORS = BASE_FACTORS + ("y+3x+3", "y+3x+2", "y+3x+1")

PENCIL_LINE = "L1"
MULTIPLICITY = 4


def example_base() -> Arrangement:
    return arrangement_from_factors(BASE_FACTORS)


def example_pencil_extension() -> Arrangement:
    return arrangement_from_factors(PENCIL_FACTORS)


def example_parallel_extension() -> Arrangement:
    return arrangement_from_factors(PARALLEL_FACTORS)
