"""Exact 2D chart geometry for matrices with at most three rows, and SVG rendering.

The chart of a nucleus point is ``(f(c1) - f(c0), f(c2) - f(c0))`` with ``c0``
the base row.  All polygon vertices are computed as rationals and checked
against the cell membership predicate before they are converted to floats
for drawing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .errors import InputError, UnsupportedError
from .extreal import ext, render_fraction
from .chambers import CellChambers, ChamberGraph
from .gap import Pair
from .polyhedra import CellDescriptor, in_cell
from .profunctor import NucleusPoint, Potential, Profunctor, isbell_upper

Point2 = tuple[Fraction, Fraction]
# a half-plane a*x + b*y <= c
HalfPlane = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ChartProjection:
    """Affine chart on presheaves modulo translation, pinned at ``base_row``."""

    M: Profunctor
    base_row: str
    axes: tuple[str, ...]

    @classmethod
    def of(cls, M: Profunctor, base_row: str | None = None) -> ChartProjection:
        if len(M.rows) > 3:
            raise UnsupportedError("charts are drawn only for matrices with at most 3 rows")
        base_row = M.rows[0] if base_row is None else base_row
        M.row_index(base_row)
        return cls(M, base_row, tuple(c for c in M.rows if c != base_row))

    def coords(self, p: NucleusPoint | Potential) -> Point2:
        f = p.f if isinstance(p, NucleusPoint) else p
        base = f[self.base_row].value
        xs = [f[c].value - base for c in self.axes]
        xs += [Fraction(0)] * (2 - len(xs))
        return xs[0], xs[1]

    def presheaf(self, x: Point2) -> Potential:
        vals = {self.base_row: Fraction(0)}
        for c, v in zip(self.axes, x):
            vals[c] = v
        return Potential.presheaf(self.M, {c: ext(v) for c, v in vals.items()})

    def lift(self, x: Point2) -> NucleusPoint:
        """The nucleus point over a chart point that lies in some cell."""
        f = self.presheaf(x)
        return NucleusPoint(self.M, f, isbell_upper(self.M, f))

    def cell_halfplanes(self, tight: frozenset[Pair]) -> list[HalfPlane]:
        """Chart region of a covering witness set.

        ``(c, d)`` is a witness iff ``M(c,d) - f(c) <= M(c',d) - f(c')`` for all ``c'``.
        """
        M = self.M
        out = []

        def unit(c):
            if c == self.base_row:
                return (Fraction(0), Fraction(0))
            k = self.axes.index(c)
            return (Fraction(1), Fraction(0)) if k == 0 else (Fraction(0), Fraction(1))

        for c, d in tight:
            for c2 in M.rows:
                if c2 == c:
                    continue
                # f(c2) - f(c) <= M(c2,d) - M(c,d)
                u2, u = unit(c2), unit(c)
                out.append((u2[0] - u[0], u2[1] - u[1],
                            M(c2, d).value - M(c, d).value))
        return out + self._padding()

    def _padding(self) -> list[HalfPlane]:
        one, zero = Fraction(1), Fraction(0)
        pad = []
        if len(self.axes) < 2:
            pad += [(zero, one, zero), (zero, -one, zero)]
        if len(self.axes) < 1:
            pad += [(one, zero, zero), (-one, zero, zero)]
        return pad


def polygon_vertices(halfplanes: Sequence[HalfPlane]) -> list[Point2]:
    """Vertices of a bounded 2D polyhedron in counter-clockwise order.

    A segment comes back as its two endpoints and a point as one vertex.
    """
    hs = [h for h in halfplanes if h[0] != 0 or h[1] != 0]
    for a, b, c in halfplanes:
        if a == 0 and b == 0 and c < 0:
            return []
    pts = set()
    for (a1, b1, c1), (a2, b2, c2) in combinations(hs, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        if all(a * x + b * y <= c for a, b, c in hs):
            pts.add((x, y))
    if len(pts) <= 2:
        return sorted(pts)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return _ccw(sorted(pts), (cx, cy))


def _ccw(pts: list[Point2], center: Point2) -> list[Point2]:
    # exact angular sort by half-plane then cross product
    def half(p):
        dx, dy = p[0] - center[0], p[1] - center[1]
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = ((p[0] - center[0]) * (q[1] - center[1])
                 - (p[1] - center[1]) * (q[0] - center[0]))
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(pts, key=cmp_to_key(cmp))


def metric_ball_polygon(center: Point2, radius) -> list[Point2]:
    """The max-spread ball of ``radius`` around ``center`` in a three-row chart."""
    r = ext(radius)
    if not r.is_finite:
        raise InputError("ball radius must be finite")
    r = r.value
    if r < 0:
        raise InputError(f"negative radius {r}")
    x, y = Fraction(center[0]), Fraction(center[1])
    if r == 0:
        return [(x, y)]
    offsets = [(r, 0), (r, r), (0, r), (-r, 0), (-r, -r), (0, -r)]
    return [(x + a, y + b) for a, b in offsets]


def in_ball(center: Point2, radius, x: Point2) -> bool:
    a, b = x[0] - center[0], x[1] - center[1]
    return max(0, a, b) - min(0, a, b) <= Fraction(radius)


@dataclass(frozen=True)
class ChartPolygon:
    kind: str
    label: str
    vertices: tuple[Point2, ...]
    color: int | None = None


def cell_polygon(chart: ChartProjection, cell: CellDescriptor) -> ChartPolygon:
    verts = polygon_vertices(chart.cell_halfplanes(cell.tight_set))
    if not verts:
        raise InputError(f"cell {sorted(cell.tight_set)} has an empty chart image")
    M = chart.M
    for v in verts:
        f = chart.presheaf(v)
        if not in_cell(M, cell.tight_set, f, isbell_upper(M, f), chart.base_row):
            raise AssertionError(f"chart vertex {v} is outside its cell")
    label = ",".join(f"{c}{d}" for c, d in sorted(cell.tight_set))
    return ChartPolygon(f"cell{cell.dimension}", label, tuple(verts))


def chamber_polygons(chart: ChartProjection, res: CellChambers,
                     coloring: dict | None = None, cell_index: int = 0) -> list[ChartPolygon]:
    """Closed chambers of a two-dimensional cell, drawn in the chart."""
    if res.chart.dim != 2:
        return []
    cc = res.chart
    base = [(a[0], a[1], c) for a, c in ((con.coeffs, -con.const) for con in cc.closed_cell())]
    out = []
    for k, ch in enumerate(res.chambers):
        hs = list(base)
        for h, s in zip(res.hyperplanes, ch.signs):
            # s > 0 means h(t) >= 0
            if s > 0:
                hs.append((-h.coeffs[0], -h.coeffs[1], h.const))
            else:
                hs.append((h.coeffs[0], h.coeffs[1], -h.const))
        tverts = polygon_vertices(hs)
        verts = []
        for t in tverts:
            p = cc.point(t).normalized(chart.base_row)
            if not in_cell(chart.M, res.cell.tight_set, p.f, p.g, chart.base_row):
                raise AssertionError(f"chamber vertex {t} is outside its cell")
            verts.append(chart.coords(p))
        color = None if coloring is None else coloring.get((cell_index, k))
        out.append(ChartPolygon("chamber", str(k), tuple(verts), color))
    return out


def _fmt(q: Fraction) -> float:
    return float(round(q, 6))


def render_svg(path, cells: list[ChartPolygon], chambers: list[ChartPolygon] = (),
               balls: list[ChartPolygon] = (), points: dict[str, Point2] | None = None,
               title: str = "") -> None:
    """Write the chart as SVG with byte-stable output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Polygon

    with matplotlib.rc_context({"svg.hashsalt": "isbell", "svg.fonttype": "none",
                                "path.simplify": False}):
        fig, ax = plt.subplots(figsize=(6, 6))
        shades = {0: "#cfe2f3", 1: "#f9cb9c"}
        for poly in cells:
            xy = [(_fmt(x), _fmt(y)) for x, y in poly.vertices]
            if len(xy) >= 3:
                ax.add_patch(Polygon(xy, closed=True, facecolor="#eeeeee",
                                     edgecolor="black", linewidth=0.8))
            elif len(xy) == 2:
                ax.plot(*zip(*xy), color="black", linewidth=1.2)
            else:
                ax.plot(*xy[0], "o", color="black", markersize=3)
        for poly in chambers:
            xy = [(_fmt(x), _fmt(y)) for x, y in poly.vertices]
            if len(xy) >= 3:
                ax.add_patch(Polygon(xy, closed=True, linewidth=0.4, edgecolor="gray",
                                     facecolor=shades.get(poly.color, "#dddddd"), alpha=0.8))
        for poly in balls:
            xy = [(_fmt(x), _fmt(y)) for x, y in poly.vertices]
            if len(xy) >= 3:
                ax.add_patch(Polygon(xy, closed=True, fill=False, linestyle="--",
                                     edgecolor="#3d85c6", linewidth=0.8))
        for name, (x, y) in sorted((points or {}).items()):
            ax.plot(_fmt(x), _fmt(y), "o", color="#cc0000", markersize=4)
            ax.annotate(name, (_fmt(x), _fmt(y)), textcoords="offset points", xytext=(4, 4),
                        fontsize=7)
        ax.set_aspect("equal")
        ax.autoscale_view()
        ax.margins(0.05)
        if title:
            ax.set_title(title)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def polygon_json(poly: ChartPolygon) -> dict:
    from .io import ext_str

    out = {"kind": poly.kind, "label": poly.label,
           "vertices": [[ext_str(x), ext_str(y)] for x, y in poly.vertices]}
    if poly.color is not None:
        out["color"] = poly.color
    return out


def chart_figure(M: Profunctor, cells: list[CellDescriptor], out: Path,
                 point: NucleusPoint | None = None, radii=(),
                 chambers: list[CellChambers] | None = None,
                 graph: ChamberGraph | None = None, base_row: str | None = None,
                 stem: str = "chart") -> dict:
    """Render cells (and optionally chambers and metric balls) and return the sidecar."""
    chart = ChartProjection.of(M, base_row)
    cell_polys = [cell_polygon(chart, c) for c in cells]
    chamber_polys = []
    if chambers is not None:
        coloring = graph.coloring if graph is not None else None
        for ci, res in enumerate(chambers):
            chamber_polys += chamber_polygons(chart, res, coloring, ci)
    balls, points = [], {}
    if point is not None:
        center = chart.coords(point)
        points["p"] = center
        if len(chart.axes) == 2:
            for r in radii:
                balls.append(ChartPolygon("ball", str(r), tuple(metric_ball_polygon(center, r))))
    out.mkdir(parents=True, exist_ok=True)
    svg = out / f"{stem}.svg"
    render_svg(svg, cell_polys, chamber_polys, balls, points)
    return {
        "svg": svg.name,
        "base_row": chart.base_row,
        "axes": list(chart.axes),
        "polygons": [polygon_json(p) for p in cell_polys + chamber_polys + balls],
        "points": {k: [render_fraction(v[0]), render_fraction(v[1])] for k, v in points.items()},
    }
