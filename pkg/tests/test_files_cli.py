import json

import pytest

from arrkit.cli import main
from arrkit.errors import ParseError
from arrkit.files import parse_arr, parse_fam, write_arr
from arrkit.geometry import arrangement_from_factors
from arrkit.poset import build_affine_poset

PENCIL_ARR = """\
arr v1
# the nine-line pencil-side arrangement
factor x
factor y
factor y-1
factor y-2
factor y+x-2
factor y-x
factor y+3x+1
factor y+4x+1
factor y+5x+1
"""

PARALLEL_ARR = PENCIL_ARR.replace("y+4x+1", "y+3x+2").replace("y+5x+1", "y+3x+3")

TWO_LINES = "arr v1\nfactor y-x\nfactor y+x\n"

GOOD_FAM = """\
fam v1
fline 1 ; 0 ; 0
fline 0 ; 1 ; 0
fline -1 ; 1 ; -1/2 + t
"""

CONSTANT_FAM = """\
fam v1
fline 1 ; 0 ; 0
fline -3 ; 1 ; -1 + 5*t - (t - t^2)i
samples 0 1/7 1/3 1/2 5/7 1
"""


@pytest.fixture
def arr_file(tmp_path):
    def write(text, name="input.arr"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


class TestArrFormat:
    def test_parse_factors(self):
        arr = parse_arr(PENCIL_ARR)
        assert arr.n == 9
        assert arr.labels() == tuple(f"L{i}" for i in range(1, 10))

    def test_line_directive_with_label_and_complex_coefficient(self):
        arr = parse_arr("arr v1\nline 1 0 0 Lv\nline 0 1 3+1/2i\n")
        assert arr.labels() == ("Lv", "L2")
        assert not arr.is_real

    def test_round_trip(self):
        arr = arrangement_from_factors(["x", "y", "y+3x+1"])
        again = parse_arr(write_arr(arr))
        assert {l.coeffs() for l in again.lines} == {l.coeffs() for l in arr.lines}
        assert again.labels() == arr.labels()

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_arr("factor x\n")

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse_arr("arr v1\nfactor y+$x\n")
        assert info.value.line == 2
        assert info.value.token == "$"

    def test_bad_directive(self):
        with pytest.raises(ParseError) as info:
            parse_arr("arr v1\nsegment 1 2\n")
        assert info.value.token == "segment"


class TestFamFormat:
    def test_parse_defaults(self):
        fam = parse_fam(GOOD_FAM)
        assert len(fam.lines) == 3
        assert len(fam.samples) == 6

    def test_parse_samples(self):
        fam = parse_fam(CONSTANT_FAM)
        assert len(fam.samples) == 6

    def test_polynomial_coefficients(self):
        fam = parse_fam(CONSTANT_FAM)
        c = fam.lines[1].c
        assert len(c) == 3  # degree two: -1 + (5 - i) t + i t^2

    def test_samples_need_endpoints(self):
        bad = GOOD_FAM + "samples 0 1/2\n"
        with pytest.raises(ParseError):
            parse_fam(bad)

    def test_symbolic_constants_rejected(self):
        with pytest.raises(ParseError) as info:
            parse_fam("fam v1\nfline R ; 1 ; 0\n")
        assert info.value.token == "R"


class TestCli:
    def test_lattice_json(self, arr_file, capsys):
        assert main(["lattice", arr_file(TWO_LINES), "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["betti"] == {"b1": 2, "b2": 1}
        assert data["points"][0]["x"] == "0"

    def test_lattice_projective_shows_heavy_infinity_points(self, arr_file, capsys):
        assert main(["lattice", arr_file(PARALLEL_ARR), "--projective", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        heavy = [p for p in data["infinity_points"] if p["multiplicity"] == 4]
        assert len(heavy) == 2

    def test_lattice_parse_error_exit_2(self, arr_file, capsys):
        path = arr_file("arr v1\nfactor 3\n")
        assert main(["lattice", path]) == 2
        assert "error" in capsys.readouterr().err

    def test_pi1_simplified(self, arr_file, capsys):
        path = arr_file("arr v1\nfactor x\nfactor y\nfactor y-x\n")
        assert main(["pi1", path, "--simplified", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["generators"]) == 3
        assert len(data["relators"]) == 2

    def test_pi1_raw(self, arr_file, capsys):
        assert main(["pi1", arr_file(TWO_LINES), "--raw", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["generators"]) == 4
        assert len(data["relators"]) == 3

    def test_pi1_complex_exit_3(self, arr_file, capsys):
        path = arr_file("arr v1\nline 1 0 i\nline 0 1 0\n")
        assert main(["pi1", path]) == 3

    def test_compare_match_on_reordered_copy(self, arr_file, capsys):
        a = arr_file(PARALLEL_ARR, "a.arr")
        reordered = "arr v1\n" + "\n".join(
            f"factor {f}" for f in
            ["y+3x+3", "y-x", "x", "y", "y+3x+2", "y-1", "y+x-2", "y-2", "y+3x+1"]
        ) + "\n"
        b = arr_file(reordered, "b.arr")
        assert main(["compare-pi1", a, b]) == 0
        out = capsys.readouterr().out
        assert out.startswith("MATCH")

    def test_compare_pencil_vs_parallel_sides(self, arr_file, capsys):
        # The two nine-line extensions have homotopy-equivalent complements,
        # but their directly simplified presentations keep different relator
        # shapes (the multiplicity-four point survives on the pencil side);
        # certifying the equivalence is what `verify` is for.
        a = arr_file(PENCIL_ARR, "a.arr")
        b = arr_file(PARALLEL_ARR, "b.arr")
        assert main(["compare-pi1", a, b]) == 1
        assert "NO-MATCH" in capsys.readouterr().out

    def test_compare_no_match(self, arr_file, capsys):
        pencil3 = arr_file("arr v1\nfactor x\nfactor y\nfactor y-x\n", "p.arr")
        generic3 = arr_file("arr v1\nfactor x\nfactor y\nfactor y-x-1\n", "g.arr")
        assert main(["compare-pi1", pencil3, generic3]) == 1
        assert "NO-MATCH" in capsys.readouterr().out

    def test_compare_self_identity(self, arr_file, capsys):
        a = arr_file(TWO_LINES)
        assert main(["compare-pi1", a, a]) == 0

    def test_verify_paper_example(self, capsys):
        assert main(["verify", "--paper-example"]) == 0
        out = capsys.readouterr().out
        assert "RESULT: PASS" in out
        assert "cones NOT isomorphic" in out

    def test_verify_usage_checks(self, arr_file):
        with pytest.raises(SystemExit) as info:
            main(["verify", "--arrangement", arr_file(TWO_LINES), "--line", "L1",
                  "--mult", "2"])
        assert info.value.code == 64
        with pytest.raises(SystemExit) as info:
            main(["verify"])
        assert info.value.code == 64

    def test_verify_arrangement(self, arr_file, capsys):
        path = arr_file("arr v1\nfactor x\nfactor y\n")
        assert main(["verify", "--arrangement", path, "--line", "L1",
                     "--mult", "3", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True

    def test_verify_all_lines(self, arr_file, capsys):
        path = arr_file("arr v1\nfactor x\nfactor y\nfactor y-x-1\n")
        assert main(["verify", "--arrangement", path, "--line", "L1",
                     "--mult", "3", "--all-lines", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True
        assert len(data["runs"]) == 3
        assert len(data["pairwise"]) == 3
        assert all(p["match"] for p in data["pairwise"])

    def test_isotopy_check_constant(self, arr_file, capsys):
        path = arr_file(CONSTANT_FAM, "fam.fam")
        assert main(["isotopy-check", path]) == 0
        assert "constant across 6 samples" in capsys.readouterr().out

    def test_isotopy_check_non_constant(self, arr_file, capsys):
        path = arr_file(GOOD_FAM, "fam.fam")
        assert main(["isotopy-check", path]) == 1
        assert "NON-CONSTANT at t = 1/2" in capsys.readouterr().out

    def test_build_round_trip(self, arr_file, capsys, tmp_path):
        base = arr_file("arr v1\nfactor x\nfactor y\nfactor y-1\nfactor y-x\n")
        out = tmp_path / "built.arr"
        assert main(["build", "--pencil", base, "--line", "L1", "--mult", "4",
                     "-o", str(out)]) == 0
        rebuilt = parse_arr(out.read_text())
        from arrkit.extensions import build_pencil_extension
        expected, _ = build_pencil_extension(parse_arr((tmp_path / "input.arr").read_text()), "L1", 4)
        assert {l.coeffs() for l in rebuilt.lines} == {l.coeffs() for l in expected.lines}
        assert build_affine_poset(rebuilt).multiplicity_profile() == \
            build_affine_poset(expected).multiplicity_profile()

    def test_build_parallel_stdout(self, arr_file, capsys):
        base = arr_file(TWO_LINES)
        assert main(["build", "--parallel", base, "--mult", "3"]) == 0
        text = capsys.readouterr().out
        rebuilt = parse_arr(text)
        assert rebuilt.n == 4

    def test_build_pencil_needs_line(self, arr_file, capsys):
        assert main(["build", "--pencil", arr_file(TWO_LINES), "--mult", "3"]) == 64

    def test_svg(self, arr_file, capsys):
        assert main(["svg", arr_file(PARALLEL_ARR)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("<?xml")
        assert out.count("<line ") == 9
        assert out.count("<circle ") == 3  # the three triple points

    def test_usage_exit_code(self):
        with pytest.raises(SystemExit) as info:
            main(["no-such-command"])
        assert info.value.code == 64
