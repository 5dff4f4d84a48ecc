from fractions import Fraction

import pytest

from arrkit.errors import BadParameters, DegenerateAtSample
from arrkit.families import (
    FamilyLine,
    IsotopyFamily,
    build_family,
    check_lattice_constancy,
    direction_turn_family,
    offset_slide_family,
    pencil_translate_family,
    slope_fan_family,
    tpoly,
    tpoly_eval,
)
from arrkit.geometry import arrangement_from_factors

# Base data for the six-line example in the coordinate frame the family
# constructions expect (first line x = 0, rest y - w x + a):
BASE_SLOPES = [0, 0, 0, -1, 1]
BASE_OFFSETS = [0, -1, -2, -2, 0]
# Same base with the pencil point moved to the origin (y -> y - 1).
SHIFTED_OFFSETS = [-1, -2, -3, -3, -1]

PARALLEL_OFFSETS = [-3, -2, -1]   # lines y + 3x + 3, y + 3x + 2, y + 3x + 1
CLEARANCE = 12                    # all base points lie below y - u x = S for both u


def engineered_degeneration():
    # Third line passes through the origin exactly at t = 1/2.
    return IsotopyFamily((
        FamilyLine("L1", tpoly(1), tpoly(), tpoly()),
        FamilyLine("L2", tpoly(), tpoly(1), tpoly()),
        FamilyLine("L3", tpoly(-1), tpoly(1), tpoly(Fraction(-1, 2), 1)),
    ))


class TestEvaluation:
    def test_interior_samples_pick_up_imaginary_part(self):
        family = offset_slide_family(-3, PARALLEL_OFFSETS, CLEARANCE,
                                     BASE_SLOPES, BASE_OFFSETS)
        line = family.lines[-1]
        # The moving offset is -c; its perturbation is (t - t^2)i = i/4 at 1/2.
        offset_half = -tpoly_eval(line.c, Fraction(1, 2))
        assert offset_half.im == Fraction(1, 4)
        assert tpoly_eval(line.c, Fraction(0)).is_real
        assert tpoly_eval(line.c, Fraction(1)).is_real

    def test_degenerate_sample_raises(self):
        family = IsotopyFamily((
            FamilyLine("L1", tpoly(0, 1), tpoly(0, 1), tpoly(1)),
            FamilyLine("L2", tpoly(1), tpoly(), tpoly()),
        ))
        with pytest.raises(DegenerateAtSample):
            family.lines_at(Fraction(0))

    def test_samples_must_contain_endpoints(self):
        with pytest.raises(BadParameters):
            IsotopyFamily((FamilyLine("L1", tpoly(1), tpoly(), tpoly()),),
                          (Fraction(0), Fraction(1, 2)))


class TestEndpoints:
    def test_offset_slide_starts_at_parallel_extension(self):
        family = offset_slide_family(-3, PARALLEL_OFFSETS, CLEARANCE,
                                     BASE_SLOPES, BASE_OFFSETS)
        start = family.at(Fraction(0))
        expected = arrangement_from_factors(
            ["x", "y", "y-1", "y-2", "y+x-2", "y-x",
             "y+3x+3", "y+3x+2", "y+3x+1"],
            labels=[line.label for line in start.lines],
        )
        assert {l.coeffs() for l in start.lines} == {l.coeffs() for l in expected.lines}

    def test_slide_then_turn_share_endpoints(self):
        slide = offset_slide_family(-3, PARALLEL_OFFSETS, CLEARANCE,
                                    BASE_SLOPES, BASE_OFFSETS)
        turn = direction_turn_family(-3, -4, 3, CLEARANCE, BASE_SLOPES, BASE_OFFSETS)
        slide_end = {l.label: l.coeffs() for l in slide.at(Fraction(1)).lines}
        turn_start = {l.label: l.coeffs() for l in turn.at(Fraction(0)).lines}
        assert slide_end == turn_start

    def test_turn_lands_on_second_slide(self):
        turn = direction_turn_family(-3, -4, 3, CLEARANCE, BASE_SLOPES, BASE_OFFSETS)
        second = offset_slide_family(-4, PARALLEL_OFFSETS, CLEARANCE,
                                     BASE_SLOPES, BASE_OFFSETS)
        assert {l.coeffs() for l in turn.at(Fraction(1)).lines} == \
               {l.coeffs() for l in second.at(Fraction(1)).lines}

    def test_pencil_translate_starts_at_pencil_extension(self):
        family = pencil_translate_family([-3, -4, -5], BASE_SLOPES,
                                         SHIFTED_OFFSETS, 100)
        start = family.at(Fraction(0))
        # The pencil-side arrangement with its multiple point moved to the
        # origin (y shifted by +1): factors y - w x + a over the shifted data.
        expected = arrangement_from_factors(
            ["x", "y-1", "y-2", "y-3", "y+x-3", "y-x-1",
             "y+3x", "y+4x", "y+5x"],
            labels=[line.label for line in start.lines],
        )
        assert {l.coeffs() for l in start.lines} == {l.coeffs() for l in expected.lines}


class TestConstancy:
    @pytest.mark.parametrize("direction", [-3, -4])
    def test_offset_slide_constant(self, direction):
        family = offset_slide_family(direction, PARALLEL_OFFSETS, CLEARANCE,
                                     BASE_SLOPES, BASE_OFFSETS)
        assert check_lattice_constancy(family).constant

    def test_direction_turn_constant(self):
        family = direction_turn_family(-3, -4, 3, CLEARANCE, BASE_SLOPES, BASE_OFFSETS)
        assert check_lattice_constancy(family).constant

    def test_pencil_translate_constant(self):
        family = pencil_translate_family([-3, -4, -5], BASE_SLOPES,
                                         SHIFTED_OFFSETS, 100)
        assert check_lattice_constancy(family).constant

    def test_slope_fan_constant(self):
        family = slope_fan_family([-3, -4, -5], BASE_SLOPES, SHIFTED_OFFSETS, 100, 40)
        assert check_lattice_constancy(family).constant

    def test_constant_family_without_t(self):
        family = IsotopyFamily((
            FamilyLine("L1", tpoly(1), tpoly(), tpoly()),
            FamilyLine("L2", tpoly(), tpoly(1), tpoly()),
        ))
        assert check_lattice_constancy(family).constant

    def test_engineered_degeneration_caught(self):
        report = check_lattice_constancy(engineered_degeneration())
        assert not report.constant
        assert report.witness_t == Fraction(1, 2)
        assert "L1" in report.witness and "L2" in report.witness

    def test_coinciding_lines_reported(self):
        family = IsotopyFamily((
            FamilyLine("L1", tpoly(), tpoly(1), tpoly(-2)),          # y - 2
            FamilyLine("L2", tpoly(), tpoly(1), tpoly(-1, -1)),      # y - 1 - t
        ))
        report = check_lattice_constancy(family)
        assert not report.constant
        assert report.witness_t == Fraction(1)
        assert "coincide" in report.witness

    def test_coinciding_lines_at_baseline_reported(self):
        family = IsotopyFamily((
            FamilyLine("L1", tpoly(), tpoly(1), tpoly(-1)),          # y - 1
            FamilyLine("L2", tpoly(), tpoly(1), tpoly(-1, 1)),       # y - 1 + t
        ))
        report = check_lattice_constancy(family)
        assert not report.constant
        assert report.witness_t == Fraction(0)


class TestDispatch:
    def test_build_family_by_kind(self):
        family = build_family("offset-slide", {
            "direction": -3, "offsets": PARALLEL_OFFSETS, "clearance": CLEARANCE,
            "base_slopes": BASE_SLOPES, "base_offsets": BASE_OFFSETS,
        })
        assert check_lattice_constancy(family).constant

    def test_unknown_kind(self):
        with pytest.raises(BadParameters):
            build_family("spiral", {})

    def test_missing_parameters(self):
        with pytest.raises(BadParameters):
            build_family("offset-slide", {"direction": -3})

    def test_extra_parameters(self):
        with pytest.raises(BadParameters):
            build_family("direction-turn", {
                "direction_start": -3, "direction_end": -4, "count": 2,
                "clearance": 5, "base_slopes": [], "base_offsets": [],
                "bogus": 1,
            })
