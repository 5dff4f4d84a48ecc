"""Fundamental-group presentations from the real picture of an arrangement.

The picture of a complexified-real arrangement is swept left to right.  Each
intersection point becomes a vertex; each segment or ray of a line becomes
an edge.  Edges generate, and every vertex contributes conjugation relators
(how edge expressions continue across the vertex) plus commutation relators
for the lines through it.  Eliminating all conjugation relators in sweep
order leaves one generator per line: its westmost ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadMultiplicity, NonRealLine, NotGeneric, ToolkitError
from .geometry import Arrangement
from .poset import IntersectionPoint, build_affine_poset
from .presentations import Gen, Presentation, simplify, tietze2_eliminate
from .words import Word, pencil_commutators, vertex_conjugation_words, concat, inverse


@dataclass(frozen=True)
class SweepConfig:
    """Coordinate change x -> x + shear*y; the sweep direction is +x."""

    shear: Fraction


def shear_arrangement(arr: Arrangement, eps: Fraction) -> Arrangement:
    """Apply x -> x + eps*y to every equation.  Incidences and parallelism
    are untouched; a point (px, py) moves to (px - eps*py, py)."""
    return arr.substituted(1, eps, 0, 0, 1, 0)


def forbidden_shears(arr: Arrangement) -> set[Fraction]:
    """Exactly the shear values that leave a vertical line or make two
    vertices share an x-coordinate."""
    if not arr.is_real:
        raise NonRealLine("shear search needs a real arrangement")
    bad: set[Fraction] = set()
    for line in arr.lines:
        if line.a:
            bad.add((-line.b / line.a).re)
    points = [p.location for p in build_affine_poset(arr).points]
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if p.y != q.y:
                bad.add(((p.x - q.x) / (p.y - q.y)).re)
    return bad


def generic_shear(arr: Arrangement) -> tuple[Arrangement, SweepConfig]:
    """First valid shear in the sequence 0, 1/97, 2/97, ..."""
    bad = forbidden_shears(arr)
    k = 0
    while k <= 97 * (len(bad) + 2):
        eps = Fraction(k, 97)
        if eps not in bad:
            config = SweepConfig(eps)
            return shear_arrangement(arr, eps), config
        k += 1
    raise ToolkitError("shear search exhausted; this cannot happen for rational input")


@dataclass(frozen=True)
class VertexStar:
    """One vertex with its incident edges.

    West edges are listed bottom to top as met by a vertical line just west
    of the vertex, which is decreasing slope order; east[k] continues the
    same line as west[k] on the other side.
    """

    vertex: IntersectionPoint
    lines: tuple[str, ...]
    west: tuple[int, ...]
    east: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class ArrangementGraph:
    arrangement: Arrangement
    vertices: tuple[IntersectionPoint, ...]
    stars: tuple[VertexStar, ...]
    line_edges: dict
    generators: tuple[Gen, ...]

    @property
    def n_lines(self) -> int:
        return self.arrangement.n

    @property
    def edge_count(self) -> int:
        return len(self.generators)


def build_graph(arr: Arrangement) -> ArrangementGraph:
    """Planar graph of the real picture; requires a sheared arrangement."""
    if not arr.is_real:
        raise NonRealLine("the real picture needs real coefficients")
    for line in arr.lines:
        if line.is_vertical:
            raise NotGeneric(f"line {line.label!r} is vertical; shear first")

    poset = build_affine_poset(arr)
    vertices = tuple(sorted(poset.points, key=lambda p: p.location.x.re))
    xs = [v.location.x.re for v in vertices]
    if len(set(xs)) != len(xs):
        raise NotGeneric("two vertices share an x-coordinate; shear first")

    on_line: dict[str, list[int]] = {line.label: [] for line in arr.lines}
    for vi, vertex in enumerate(vertices):
        for label in vertex.incident:
            on_line[label].append(vi)

    line_edges: dict[str, tuple[int, ...]] = {}
    gens: list[Gen] = []
    next_id = 1
    for line in arr.lines:
        count = len(on_line[line.label]) + 1
        ids = []
        for i in range(count):
            name = line.label if i == 0 else f"{line.label}_{i}"
            gens.append(Gen(next_id, name))
            ids.append(next_id)
            next_id += 1
        line_edges[line.label] = tuple(ids)

    stars = []
    for vi, vertex in enumerate(vertices):
        incident = sorted(
            vertex.incident,
            key=lambda lbl: arr.line(lbl).real_slope(),
            reverse=True,
        )
        west, east = [], []
        for label in incident:
            k = on_line[label].index(vi)
            west.append(line_edges[label][k])
            east.append(line_edges[label][k + 1])
        stars.append(VertexStar(vertex, tuple(incident), tuple(west), tuple(east)))

    return ArrangementGraph(arr, vertices, tuple(stars), line_edges, tuple(gens))


def vertex_relators(star: VertexStar) -> list[Word]:
    """Relators at one vertex: n conjugation relators followed by the n-1
    commutation relators of the bracket [g_n, ..., g_1]."""
    n = star.multiplicity
    if n < 2:
        raise BadMultiplicity("a vertex needs at least two lines")
    west_words = [(gid,) for gid in star.west]
    crossed = vertex_conjugation_words(west_words)
    relators = [
        concat((east_gid,), inverse(expr))
        for east_gid, expr in zip(star.east, crossed)
    ]
    relators.extend(pencil_commutators(west_words))
    return relators


def assemble_presentation(graph: ArrangementGraph) -> Presentation:
    """One generator per edge, all vertex relators, no spheres."""
    relators: list[Word] = []
    for star in graph.stars:
        relators.extend(vertex_relators(star))
    return Presentation(graph.generators, tuple(relators), 0)


def line_generator_presentation(graph: ArrangementGraph) -> Presentation:
    """Reduce to one generator per line (its westmost ray) by eliminating
    every conjugation relator in sweep order."""
    pres = assemble_presentation(graph)
    tags: list[tuple] = []
    for vi, star in enumerate(graph.stars):
        tags.extend(("conj", vi, k) for k in range(star.multiplicity))
        tags.extend(("comm", vi, k) for k in range(star.multiplicity - 1))

    for vi, star in enumerate(graph.stars):
        for k in range(star.multiplicity):
            idx = tags.index(("conj", vi, k))
            pres = tietze2_eliminate(pres, star.east[k], idx)
            tags.pop(idx)

    expected_relators = sum(star.multiplicity - 1 for star in graph.stars)
    if len(pres.generators) != graph.n_lines or len(pres.relators) != expected_relators:
        raise AssertionError("line-generator reduction lost count")
    return pres


def real_picture_presentation(arr: Arrangement, *, raw: bool = False,
                              shear: Fraction | None = None,
                              simplified: bool = False) -> Presentation:
    """Pipeline: shear, build the graph, and present.

    raw=True keeps the full edge-generator presentation; simplified=True
    additionally canonicalizes the line-generator presentation.
    """
    if shear is None:
        sheared, _ = generic_shear(arr)
    else:
        sheared = shear_arrangement(arr, shear)
    graph = build_graph(sheared)
    if raw:
        return assemble_presentation(graph)
    pres = line_generator_presentation(graph)
    if simplified:
        pres, _ = simplify(pres)
    return pres
