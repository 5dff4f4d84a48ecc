from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit.errors import DegenerateLine, ParseError
from arrkit.gaussian import GaussianRational, gaussian
from arrkit.geometry import (
    EQUAL_LINES,
    PARALLEL,
    Point,
    arrangement_from_factors,
    intersect,
    normalize_line,
    parse_linear_factor,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def gaussians(allow_zero=True):
    base = st.builds(GaussianRational, rationals, rationals)
    if allow_zero:
        return base
    return base.filter(bool)


class TestNormalize:
    def test_scales_leading_x(self):
        line = normalize_line(2, 0, 0)
        assert line.coeffs() == (gaussian(1), gaussian(0), gaussian(0))

    def test_scales_leading_y(self):
        line = normalize_line(0, 3, -3)
        assert line.coeffs() == (gaussian(0), gaussian(1), gaussian(-1))

    def test_degenerate(self):
        with pytest.raises(DegenerateLine):
            normalize_line(0, 0, 1)

    @given(a=gaussians(), b=gaussians(), c=gaussians(), scale=gaussians(allow_zero=False))
    @settings(max_examples=120)
    def test_scale_invariant_and_idempotent(self, a, b, c, scale):
        if not a and not b:
            return
        line = normalize_line(a, b, c)
        scaled = normalize_line(scale * a, scale * b, scale * c)
        assert line.coeffs() == scaled.coeffs()
        again = normalize_line(*line.coeffs())
        assert again.coeffs() == line.coeffs()


class TestIntersect:
    def test_axes(self):
        hit = intersect(parse_linear_factor("x"), parse_linear_factor("y"))
        assert hit == Point(gaussian(0), gaussian(0))

    def test_parallel(self):
        assert intersect(parse_linear_factor("y"), parse_linear_factor("y-1")) is PARALLEL

    def test_equal(self):
        assert intersect(normalize_line(0, 2, -2), parse_linear_factor("y-1")) is EQUAL_LINES

    def test_solves_two_by_two_system(self):
        # x = 0 and y + 3x + 1 = 0 meet where y = -1.
        hit = intersect(parse_linear_factor("x"), parse_linear_factor("y+3x+1"))
        assert hit == Point(gaussian(0), gaussian(-1))

    @given(data=st.tuples(*(gaussians() for _ in range(6))))
    @settings(max_examples=100)
    def test_symmetric(self, data):
        a1, b1, c1, a2, b2, c2 = data
        if (not a1 and not b1) or (not a2 and not b2):
            return
        l1, l2 = normalize_line(a1, b1, c1), normalize_line(a2, b2, c2)
        assert intersect(l1, l2) == intersect(l2, l1)

    def test_real_lines_give_real_points(self):
        arr = arrangement_from_factors(["y-x", "y+2x-3"])
        hit = intersect(*arr.lines)
        assert isinstance(hit, Point) and hit.is_real


class TestParse:
    def test_single_variable(self):
        assert parse_linear_factor("x").coeffs() == (gaussian(1), gaussian(0), gaussian(0))

    def test_offset(self):
        assert parse_linear_factor("y-1").coeffs() == (gaussian(0), gaussian(1), gaussian(-1))

    def test_normalizes(self):
        line = parse_linear_factor("y+3x+1")
        third = GaussianRational(Fraction(1, 3))
        assert line.coeffs() == (gaussian(1), third, third)

    def test_complex_coefficients(self):
        line = parse_linear_factor("y-(1-i)x+1/2i")
        expected = normalize_line(
            GaussianRational(-1, 1), gaussian(1), GaussianRational(0, Fraction(1, 2)))
        assert line.coeffs() == expected.coeffs()
        assert not line.is_real

    def test_nonlinear_rejected(self):
        with pytest.raises(ParseError):
            parse_linear_factor("x^2+y")

    def test_constant_rejected(self):
        with pytest.raises(DegenerateLine):
            parse_linear_factor("3")

    def test_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_linear_factor("y+$x")

    @given(a=gaussians(), b=gaussians(), c=gaussians())
    @settings(max_examples=150)
    def test_round_trip(self, a, b, c):
        if not a and not b:
            return
        line = normalize_line(a, b, c)
        assert parse_linear_factor(line.render()).coeffs() == line.coeffs()


class TestGaussianField:
    @given(x=gaussians(allow_zero=False), y=gaussians(allow_zero=False))
    @settings(max_examples=100)
    def test_division_inverts_multiplication(self, x, y):
        assert (x * y) / y == x

    def test_components(self):
        z = GaussianRational(Fraction(3), Fraction(1, 2))
        assert str(z) == "3+1/2i"
        assert z.conjugate() * z == gaussian(z.norm2())


class TestArrangement:
    def test_duplicate_locus_rejected(self):
        with pytest.raises(ValueError):
            arrangement_from_factors(["y", "2y"])

    def test_duplicate_label_rejected(self):
        with pytest.raises(ValueError):
            arrangement_from_factors(["x", "y"], labels=["A", "A"])

    def test_restrict_preserves_order(self):
        arr = arrangement_from_factors(["x", "y", "y-1"])
        sub = arr.restrict(["L3", "L1"])
        assert sub.labels() == ("L1", "L3")
