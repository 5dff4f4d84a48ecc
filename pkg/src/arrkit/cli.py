"""Command-line front end.

Exit codes: 0 success or MATCH; 1 a verified negative (NO-MATCH, a
non-constant family, a failed verification); 2 parse errors; 3 domain
errors; 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arvola import real_picture_presentation
from .builtin import (
    MULTIPLICITY,
    PENCIL_LINE,
    example_base,
    example_parallel_extension,
    example_pencil_extension,
)
from .errors import NonRealLine, ParseError, ToolkitError
from .extensions import build_parallel_extension, build_pencil_extension
from .families import check_lattice_constancy
from .files import parse_arr, parse_fam, write_arr
from .geometry import Arrangement
from .poset import betti, build_affine_poset, projective_closure
from .presentations import match_up_to_renaming, simplify, to_serializable
from .svgfig import render_svg
from .verify import (
    canonical_pencil_presentation_for,
    verify_pencil_parallel_equivalence,
)

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def _load_arrangement(path: str) -> Arrangement:
    return parse_arr(_read(path))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _point_json(p):
    return {
        "x": str(p.location.x),
        "y": str(p.location.y),
        "lines": sorted(p.incident),
        "multiplicity": p.multiplicity,
    }


def cmd_lattice(args) -> int:
    arr = _load_arrangement(args.file)
    poset = build_affine_poset(arr)
    b = betti(poset)
    data = {
        "lines": [{"label": line.label, "equation": line.render()} for line in arr.lines],
        "points": [_point_json(p) for p in poset.points],
        "parallel_classes": sorted(
            sorted(cls.members) for cls in poset.classes if cls.size >= 2
        ),
        "betti": {"b1": b.b1, "b2": b.b2},
    }
    if args.projective:
        proj = projective_closure(arr)
        data["infinity_label"] = proj.infinity_label
        data["infinity_points"] = [
            {"lines": sorted(p.incident), "multiplicity": p.multiplicity}
            for p in proj.points if p.at_infinity
        ]
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    print(f"{arr.n} lines; b1 = {b.b1}, b2 = {b.b2}")
    for p in poset.points:
        print(f"  point ({p.location.x}, {p.location.y})  "
              f"mult {p.multiplicity}  lines {', '.join(sorted(p.incident))}")
    for cls in poset.classes:
        if cls.size >= 2:
            print(f"  parallel class {{{', '.join(sorted(cls.members))}}}")
    if args.projective:
        print(f"projective closure (line at infinity {data['infinity_label']}):")
        for entry in data["infinity_points"]:
            print(f"  infinity point  mult {entry['multiplicity']}  "
                  f"lines {', '.join(entry['lines'])}")
    return 0


def cmd_pi1(args) -> int:
    arr = _load_arrangement(args.file)
    if not arr.is_real:
        print("error: the picture presentation needs a real arrangement", file=sys.stderr)
        return 3
    pres = real_picture_presentation(arr, raw=args.raw, simplified=not args.raw)
    data = to_serializable(pres)
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    kind = "raw edge" if args.raw else "simplified line"
    print(f"{kind} presentation: {len(pres.generators)} generators, "
          f"{len(pres.relators)} relators")
    print("generators:", " ".join(data["generators"]))
    for tokens in data["relators"]:
        print("  " + " ".join(tokens))
    return 0


def cmd_compare_pi1(args) -> int:
    left = _load_arrangement(args.file_a)
    right = _load_arrangement(args.file_b)
    for arr in (left, right):
        if not arr.is_real:
            print("error: both arrangements must be real", file=sys.stderr)
            return 3
    p, _ = simplify(real_picture_presentation(left))
    q, _ = simplify(real_picture_presentation(right))
    mapping = match_up_to_renaming(p, q)
    if args.json:
        print(json.dumps({"match": mapping is not None, "mapping": mapping}, indent=2))
        return 0 if mapping is not None else 1
    if mapping is None:
        print("NO-MATCH")
        return 1
    print("MATCH")
    for src, dst in mapping.items():
        print(f"  {src} -> {dst}")
    return 0


def _print_report(report, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for check in report.checks:
            flag = "PASS" if check.passed else "FAIL"
            detail = f"  ({check.detail})" if check.detail else ""
            print(f"[{flag}] {check.name}{detail}")
        if getattr(report, "projective_detail", ""):
            print(report.projective_detail)
        print("RESULT:", "PASS" if report.ok else "FAIL")
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    if args.paper_example:
        base = example_base()
        report = verify_pencil_parallel_equivalence(
            base, PENCIL_LINE, MULTIPLICITY,
            pencil_ext=example_pencil_extension(),
            parallel_ext=example_parallel_extension(),
        )
        return _print_report(report, args.json)

    base = _load_arrangement(args.arrangement)
    if not base.is_real:
        print("error: verification needs a real arrangement", file=sys.stderr)
        return 3
    if args.line not in base.labels():
        print(f"error: no line labeled {args.line!r}", file=sys.stderr)
        return 3

    if not args.all_lines:
        report = verify_pencil_parallel_equivalence(base, args.line, args.mult)
        return _print_report(report, args.json)

    reports = [
        verify_pencil_parallel_equivalence(base, label, args.mult)
        for label in base.labels()
    ]
    canonicals = {
        label: canonical_pencil_presentation_for(base, label, args.mult)
        for label in base.labels()
    }
    labels = list(base.labels())
    pair_results = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            mapping = match_up_to_renaming(canonicals[a], canonicals[b])
            pair_results.append({"lines": [a, b], "match": mapping is not None})
    ok = all(r.ok for r in reports) and all(p["match"] for p in pair_results)
    if args.json:
        print(json.dumps({
            "ok": ok,
            "runs": [r.to_dict() for r in reports],
            "pairwise": pair_results,
        }, indent=2))
    else:
        for report in reports:
            print(f"--- line {report.h} ---")
            _print_report(report, False)
        for pair in pair_results:
            flag = "MATCH" if pair["match"] else "NO-MATCH"
            print(f"{pair['lines'][0]} vs {pair['lines'][1]}: {flag}")
        print("RESULT:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_isotopy_check(args) -> int:
    family = parse_fam(_read(args.file))
    report = check_lattice_constancy(family)
    if args.json:
        print(json.dumps({
            "constant": report.constant,
            "samples": [str(t) for t in report.samples],
            "witness_t": str(report.witness_t) if report.witness_t is not None else None,
            "witness": report.witness,
        }, indent=2))
        return 0 if report.constant else 1
    if report.constant:
        print(f"constant across {len(report.samples)} samples")
        return 0
    print(f"NON-CONSTANT at t = {report.witness_t}: {report.witness}")
    return 1


def cmd_build(args) -> int:
    base = _load_arrangement(args.file)
    if not base.is_real:
        print("error: extensions need a real base arrangement", file=sys.stderr)
        return 3
    if args.pencil:
        if not args.line:
            print("error: --pencil needs --line", file=sys.stderr)
            return USAGE_EXIT
        if args.line not in base.labels():
            print(f"error: no line labeled {args.line!r}", file=sys.stderr)
            return 3
        ext, _ = build_pencil_extension(base, args.line, args.mult)
    else:
        ext, _ = build_parallel_extension(base, args.mult)
    _emit(write_arr(ext), args.output)
    return 0


def cmd_svg(args) -> int:
    arr = _load_arrangement(args.file)
    if not arr.is_real:
        print("error: only real arrangements have a picture", file=sys.stderr)
        return 3
    _emit(render_svg(arr), args.output)
    return 0


def _check_mult(parser: _Parser, value: int):
    if value < 3:
        parser.error("--mult must be at least 3")


def build_parser() -> _Parser:
    parser = _Parser(prog="arrkit",
                     description="Exact line-arrangement combinatorics and "
                                 "fundamental-group presentations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", parents=[], help="intersection poset and Betti data")
    p.add_argument("file")
    p.add_argument("--projective", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("pi1", help="fundamental-group presentation of the complement")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--raw", action="store_true")
    group.add_argument("--simplified", action="store_true")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("compare-pi1", help="match two presentations up to renaming")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare_pi1)

    p = sub.add_parser("verify", help="run the pencil-versus-parallel pipeline")
    p.add_argument("--paper-example", action="store_true",
                   help="use the bundled nine-line example")
    p.add_argument("--arrangement")
    p.add_argument("--line")
    p.add_argument("--mult", type=int)
    p.add_argument("--all-lines", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isotopy-check", help="sampled lattice constancy of a family")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_isotopy_check)

    p = sub.add_parser("build", help="emit a pencil or parallel extension")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--pencil", action="store_true")
    kind.add_argument("--parallel", action="store_true")
    p.add_argument("file")
    p.add_argument("--line")
    p.add_argument("--mult", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("svg", help="draw the real picture")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_svg)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify" and not args.paper_example:
        if not args.arrangement or not args.line or args.mult is None:
            parser.error("verify needs --paper-example or "
                         "--arrangement FILE --line LABEL --mult M")
        _check_mult(parser, args.mult)
    if args.command == "build":
        _check_mult(parser, args.mult)

    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonRealLine as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
