from fractions import Fraction

import pytest

from arrkit.builtin import (
    example_base,
    example_parallel_extension,
    example_pencil_extension,
)
from arrkit.errors import BadRelators, MultiplicityTooSmall, ShapeMismatch
from arrkit.extensions import (
    analyze_parallel_extension,
    analyze_pencil_extension,
    attached_pencil_presentation,
    build_parallel_extension,
    build_pencil_extension,
    canonicalize_pencil_presentation,
    exterior_pencil_model,
)
from arrkit.gaussian import gaussian
from arrkit.geometry import arrangement_from_factors
from arrkit.poset import build_affine_poset, poset_isomorphic
from arrkit.presentations import (
    abelianization,
    euler_characteristic,
    match_up_to_renaming,
    presentation,
    simplify,
    to_serializable,
)


def loci(arr):
    return {line.coeffs() for line in arr.lines}


class TestPencilExtension:
    def test_reproduces_worked_example(self):
        ext, att = build_pencil_extension(example_base(), "L1", 4)
        assert (att.point.x, att.point.y) == (gaussian(0), gaussian(-1))
        assert att.slopes == (Fraction(-3), Fraction(-4), Fraction(-5))
        assert loci(ext) == loci(example_pencil_extension())

    def test_single_line_base(self):
        ext, att = build_pencil_extension(arrangement_from_factors(["x"]), "L1", 3)
        poset = build_affine_poset(ext)
        assert poset.multiplicity_profile() == {3: 1}

    def test_multiplicity_too_small(self):
        with pytest.raises(MultiplicityTooSmall):
            build_pencil_extension(example_base(), "L1", 2)

    def test_analyze_validates_verbatim_extension(self):
        att = analyze_pencil_extension(example_base(), "L1", example_pencil_extension())
        assert att.m == 4
        assert (att.point.x, att.point.y) == (gaussian(0), gaussian(-1))
        assert set(att.added_labels) == {"L7", "L8", "L9"}


class TestParallelExtension:
    def test_reproduces_worked_example(self):
        ext, att = build_parallel_extension(example_base(), 4)
        assert att.slope == Fraction(-3)
        assert loci(ext) == loci(example_parallel_extension())

    def test_single_line_base(self):
        ext, _ = build_parallel_extension(arrangement_from_factors(["x"]), 3)
        assert build_affine_poset(ext).multiplicity_profile() == {2: 2}

    def test_multiplicity_too_small(self):
        with pytest.raises(MultiplicityTooSmall):
            build_parallel_extension(example_base(), 2)

    def test_analyze_validates_verbatim_extension(self):
        att = analyze_parallel_extension(example_base(), example_parallel_extension())
        assert att.count == 3
        assert att.slope == Fraction(-3)


class TestExteriorModel:
    def test_poset_identical_to_plain_extension(self):
        base = example_base()
        model = exterior_pencil_model(base, "L1", 4)
        ext, _ = build_pencil_extension(base, "L1", 4)
        mapping = poset_isomorphic(build_affine_poset(model), build_affine_poset(ext))
        assert mapping == {lbl: lbl for lbl in model.labels()}

    def test_pencil_sits_east_of_the_base(self):
        base = example_base()
        model = exterior_pencil_model(base, "L1", 4)
        poset = build_affine_poset(model)
        added = {lbl for lbl in model.labels() if lbl not in base.labels()}
        base_xs = [p.location.x.re for p in poset.points
                   if not (p.incident & added)]
        new_xs = [p.location.x.re for p in poset.points if p.incident & added]
        assert max(base_xs) < min(new_xs)

    def test_minimal_base(self):
        base = arrangement_from_factors(["x"])
        model = exterior_pencil_model(base, "L1", 3)
        assert build_affine_poset(model).multiplicity_profile() == {3: 1}

    def test_multiplicity_too_small(self):
        with pytest.raises(MultiplicityTooSmall):
            exterior_pencil_model(example_base(), "L1", 2)


class TestAttachedPresentation:
    def test_counts_for_worked_example_shape(self):
        base_relators = [["h2", "h3", "-h2", "-h3"]] * 9
        target = attached_pencil_presentation(6, 4, base_relators)
        assert len(target.generators) == 9
        assert len(target.relators) == 15 + 3 + 9
        assert target.sphere_count == 0

    def test_minimal_instance(self):
        target = attached_pencil_presentation(1, 3, [])
        assert [g.name for g in target.generators] == ["h1", "l2", "l3"]
        assert len(target.relators) == 2

    def test_base_relators_must_avoid_pencil_generators(self):
        with pytest.raises(BadRelators):
            attached_pencil_presentation(2, 3, [["h1", "-l2"]])


class TestCanonicalize:
    def test_minimal_instance(self):
        target = attached_pencil_presentation(1, 3, [])
        canonical = canonicalize_pencil_presentation(target)
        data = to_serializable(canonical)
        assert data["generators"] == ["g", "l2", "l3"]
        assert sorted(data["relators"]) == [
            ["g", "l2", "-g", "-l2"],
            ["g", "l3", "-g", "-l3"],
        ]

    def test_preserves_invariants_on_worked_example_shape(self):
        base_relators = [["h2", "h5", "-h2", "-h5"],
                         ["h3", "h4", "-h3", "-h4"],
                         ["h1", "h2", "-h1", "-h2"]]
        target = attached_pencil_presentation(5, 4, base_relators)
        canonical = canonicalize_pencil_presentation(target)
        assert euler_characteristic(canonical) == euler_characteristic(target)
        assert abelianization(canonical) == abelianization(target)
        assert canonical.sphere_count == 0
        assert len(canonical.relators) == len(target.relators)
        names = [g.name for g in canonical.generators]
        assert names[0] == "g" and "h1" not in names

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            canonicalize_pencil_presentation(presentation(["a"], [["a"]]))

    def test_shape_mismatch_on_wrong_relators(self):
        bad = presentation(["h1", "h2", "l2"], [["h1", "h2"]])
        with pytest.raises(ShapeMismatch):
            canonicalize_pencil_presentation(bad)


class TestEndToEndMatch:
    def test_exterior_model_matches_attached_presentation(self):
        base = arrangement_from_factors(["x", "y", "y-x-1"])
        model = exterior_pencil_model(base, "L2", 3)
        from arrkit.arvola import real_picture_presentation
        base_pres, _ = simplify(
            real_picture_presentation(model.restrict(base.labels())))
        order = ["L2", "L1", "L3"]
        rename = {lbl: f"h{i + 1}" for i, lbl in enumerate(order)}
        names = base_pres.names()
        tokens = [
            [("-" + rename[names[-x]]) if x < 0 else rename[names[x]] for x in r]
            for r in base_pres.relators
        ]
        target, _ = simplify(attached_pencil_presentation(3, 3, tokens))
        model_pres, _ = simplify(real_picture_presentation(model))
        assert match_up_to_renaming(model_pres, target) is not None
