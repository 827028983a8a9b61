"""Planar polygons, quadrilaterals with marked boundary points, and ring condensers.

All loops are stored positively oriented (counterclockwise, signed area > 0).
Coordinates are 64-bit floats; simplicity is checked by pairwise segment
tests with sign-of-cross-product predicates, which is plenty for the small
vertex counts these domains have.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class GeometryError(ValueError):
    """Invalid geometric input. ``code`` is a stable machine-readable slug."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError("non-finite", f"point coordinates must be finite, got ({self.x}, {self.y})")

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def as_point(p) -> Point:
    """Coerce a Point, complex number, or (x, y) pair to a Point."""
    if isinstance(p, Point):
        return p
    if isinstance(p, complex):
        return Point(p.real, p.imag)
    if isinstance(p, (int, float)):
        return Point(float(p), 0.0)
    x, y = p
    return Point(float(x), float(y))


def _signed_area2(pts: Sequence[Point]) -> float:
    """Twice the signed area of the closed loop through ``pts`` (shoelace)."""
    s = 0.0
    n = len(pts)
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s


def _orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """Whether collinear point p lies on the closed segment ab."""
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Whether closed segments ab and cd share any point."""
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def _check_simple(pts: Sequence[Point]) -> None:
    """Reject self-intersecting or self-touching loops (O(n^2) pairwise test)."""
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = pts[j], pts[(j + 1) % n]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                # Consecutive edges share exactly one endpoint; a spike
                # (zero interior angle) folds the shared point's neighbours
                # onto one ray and counts as a self-touch.
                shared, pa, pb = (b, a, d) if j == i + 1 else (a, c, b)
                if _orient(shared, pa, pb) == 0:
                    da = (pa.x - shared.x) * (pb.x - shared.x) + (pa.y - shared.y) * (pb.y - shared.y)
                    if da > 0.0:
                        raise GeometryError("self-intersection", f"spike at vertex ({shared.x}, {shared.y})")
                continue
            if segments_intersect(a, b, c, d):
                raise GeometryError(
                    "self-intersection",
                    f"edges {i} and {j} of the boundary intersect",
                )


@dataclass(frozen=True)
class Polygon:
    """Simple, positively oriented closed vertex loop.

    Construct via :func:`validate_polygon` to get orientation auto-fix;
    direct construction rejects negatively oriented input.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.vertices)
        object.__setattr__(self, "vertices", pts)
        if len(pts) < 3:
            raise GeometryError("too-few-vertices", f"polygon needs at least 3 vertices, got {len(pts)}")
        for i, p in enumerate(pts):
            q = pts[(i + 1) % len(pts)]
            if p.x == q.x and p.y == q.y:
                raise GeometryError("duplicate-point", f"consecutive vertices {i} and {(i + 1) % len(pts)} coincide")
        _check_simple(pts)
        if _signed_area2(pts) <= 0.0:
            raise GeometryError("orientation", "polygon is not positively oriented (signed area <= 0)")

    def edge(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    @property
    def n_edges(self) -> int:
        return len(self.vertices)


def validate_polygon(vertices: Iterable) -> Polygon:
    """Build a Polygon, reversing a negatively oriented simple loop.

    Raises GeometryError for fewer than 3 vertices, repeated consecutive
    points, degenerate (zero-area) loops, or self-intersection.
    """
    pts = [as_point(p) for p in vertices]
    if len(pts) >= 3 and _signed_area2(pts) < 0.0:
        pts.reverse()
    return Polygon(tuple(pts))


def polygon_area(p: Polygon) -> float:
    """Shoelace area; positive by the orientation invariant."""
    return 0.5 * _signed_area2(p.vertices)


def point_in_polygon(pt: Point, poly: Polygon) -> bool:
    """Strict interior test by crossing number; boundary points count as outside."""
    x, y = pt.x, pt.y
    inside = False
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if _orient(a, b, pt) == 0 and _on_segment(a, b, pt):
            return False
        if (a.y > y) != (b.y > y):
            xcross = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x < xcross:
                inside = not inside
    return inside


@dataclass(frozen=True)
class Quadrilateral:
    """A polygon with four marked boundary vertices z1, z2, z3, z4.

    The marked indices must be distinct and occur in the polygon's
    (counterclockwise) cyclic order; the four boundary arcs between them
    carry the mixed boundary conditions of the potential problem.
    """

    domain: Polygon
    marked: tuple[int, int, int, int]

    def __post_init__(self):
        m = tuple(int(i) for i in self.marked)
        object.__setattr__(self, "marked", m)
        n = len(self.domain.vertices)
        if len(set(m)) != 4:
            raise GeometryError("bad-marking", f"marked indices must be four distinct values, got {m}")
        if any(i < 0 or i >= n for i in m):
            raise GeometryError("bad-marking", f"marked index out of range for {n} vertices: {m}")
        # Cyclic order: walking i1 -> i2 -> i3 -> i4 -> i1 must wrap exactly once.
        descents = sum(1 for k in range(4) if m[(k + 1) % 4] <= m[k])
        if descents != 1:
            raise GeometryError("bad-marking", f"marked indices not in cyclic boundary order: {m}")

    @property
    def points(self) -> tuple[Point, Point, Point, Point]:
        v = self.domain.vertices
        return tuple(v[i] for i in self.marked)

    def arc_edges(self) -> dict[str, tuple[int, ...]]:
        """Edge indices of the four arcs Gamma1..Gamma4 (Gammaj runs z_j -> z_{j+1})."""
        n = self.domain.n_edges
        out: dict[str, tuple[int, ...]] = {}
        for j in range(4):
            start = self.marked[j]
            stop = self.marked[(j + 1) % 4]
            edges = []
            k = start
            while k != stop:
                edges.append(k)
                k = (k + 1) % n
            out[f"Gamma{j + 1}"] = tuple(edges)
        return out


def quad_from_points(z1, z2, z3, z4) -> Quadrilateral:
    """Quadrilateral whose boundary is the straight-segment loop z1 z2 z3 z4.

    The points must already be in positive (counterclockwise) order; reversed
    input is an error, because the marked order is part of the problem.
    """
    pts = tuple(as_point(z) for z in (z1, z2, z3, z4))
    poly = Polygon(pts)  # strict: no orientation auto-fix here
    return Quadrilateral(poly, (0, 1, 2, 3))


@dataclass(frozen=True)
class RingCondenser:
    """Region between two nested polygons: outer plate at u=0, inner plate at u=1."""

    outer: Polygon
    inner: Polygon

    def __post_init__(self):
        for p in self.inner.vertices:
            if not point_in_polygon(p, self.outer):
                raise GeometryError("not-inside", f"inner vertex ({p.x}, {p.y}) is not strictly inside the outer polygon")
        no = self.outer.n_edges
        ni = self.inner.n_edges
        for i in range(no):
            a, b = self.outer.edge(i)
            for j in range(ni):
                c, d = self.inner.edge(j)
                if segments_intersect(a, b, c, d):
                    raise GeometryError("not-inside", "inner and outer boundaries touch or cross")


def similarity(p: Polygon, scale: float, rotation: float, translation) -> Polygon:
    """Map every vertex by z -> scale * e^(i rotation) * z + translation."""
    if not scale > 0.0:
        raise GeometryError("bad-scale", f"similarity scale must be positive, got {scale}")
    t = as_point(translation)
    c = scale * math.cos(rotation)
    s = scale * math.sin(rotation)
    pts = tuple(Point(c * v.x - s * v.y + t.x, s * v.x + c * v.y + t.y) for v in p.vertices)
    return Polygon(pts)


def example3_q1(r: float, s: float, alpha: float, beta: float) -> Quadrilateral:
    """Slanted quadrilateral (1 + 2r e^{i alpha}, 2s e^{i beta}, 0, 1)."""
    z1 = complex(1.0, 0.0) + 2.0 * r * complex(math.cos(alpha), math.sin(alpha))
    z2 = 2.0 * s * complex(math.cos(beta), math.sin(beta))
    return quad_from_points(z1, z2, 0.0 + 0.0j, 1.0 + 0.0j)


def example3_q2(t: float, r: float, s: float) -> Quadrilateral:
    """Axis-aligned trapezoid (t + ir, is, -is, t - ir)."""
    return quad_from_points(complex(t, r), complex(0.0, s), complex(0.0, -s), complex(t, -r))


def equal_area_t(r: float, s: float, alpha: float, beta: float) -> float:
    """Width t > 0 making the trapezoid (t+ir, is, -is, t-ir) match the area
    of (1 + 2r e^{i alpha}, 2s e^{i beta}, 0, 1).

    The trapezoid has parallel vertical sides 2s at x=0 and 2r at x=t, so its
    area is t*(r+s); the checked closed form is t = area(Q1)/(r+s).
    """
    if not (r > 0.0 and s > 0.0):
        raise GeometryError("bad-parameter", f"r and s must be positive, got r={r}, s={s}")
    if not (0.0 < alpha <= math.pi / 2.0 and math.pi / 2.0 <= beta < math.pi):
        raise GeometryError("bad-parameter", f"need alpha in (0, pi/2] and beta in [pi/2, pi), got alpha={alpha}, beta={beta}")
    area1 = polygon_area(example3_q1(r, s, alpha, beta).domain)
    return area1 / (r + s)


# --- JSON exchange format ------------------------------------------------
#
# Polygon: {"vertices": [[x, y], ...]}
# Quadrilateral: {"vertices": [[x, y], ...], "marked": [i1, i2, i3, i4]}
# Ring: {"outer": {...}, "inner": {...}}


def polygon_to_json(p: Polygon) -> dict:
    return {"vertices": [[v.x, v.y] for v in p.vertices]}


def polygon_from_json(obj: dict) -> Polygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise GeometryError("bad-json", "polygon JSON must be an object with a 'vertices' key")
    return validate_polygon(obj["vertices"])


def quad_to_json(q: Quadrilateral) -> dict:
    return {"vertices": [[v.x, v.y] for v in q.domain.vertices], "marked": list(q.marked)}


def quad_from_json(obj: dict) -> Quadrilateral:
    """Parse Quadrilateral JSON, auto-fixing a clockwise vertex loop.

    On reversal the marked indices are re-derived so that the Dirichlet arcs
    (z2->z3 and z4->z1) keep the boundary pieces the caller selected; the two
    Neumann arcs swap labels, which does not change the problem.
    """
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise GeometryError("bad-json", "quadrilateral JSON must be an object with a 'vertices' key")
    verts = [as_point(v) for v in obj["vertices"]]
    marked = obj.get("marked")
    if marked is None:
        if len(verts) != 4:
            raise GeometryError("bad-json", "'marked' is required when the polygon has more than 4 vertices")
        marked = [0, 1, 2, 3]
    marked = [int(i) for i in marked]
    n = len(verts)
    if n >= 3 and _signed_area2(verts) < 0.0:
        verts.reverse()
        marked = [n - 1 - i for i in reversed(marked)]
    poly = Polygon(tuple(verts))
    return Quadrilateral(poly, tuple(marked))


def ring_to_json(r: RingCondenser) -> dict:
    return {"outer": polygon_to_json(r.outer), "inner": polygon_to_json(r.inner)}


def ring_from_json(obj: dict) -> RingCondenser:
    if not isinstance(obj, dict) or "outer" not in obj or "inner" not in obj:
        raise GeometryError("bad-json", "ring JSON must have 'outer' and 'inner' polygons")
    return RingCondenser(polygon_from_json(obj["outer"]), polygon_from_json(obj["inner"]))


def regular_polygon(n: int, radius: float, center=(0.0, 0.0)) -> Polygon:
    """Regular n-gon inscribed in the circle of the given radius."""
    if n < 3:
        raise GeometryError("too-few-vertices", f"regular polygon needs n >= 3, got {n}")
    cx, cy = as_point(center).x, as_point(center).y
    pts = []
    for k in range(n):
        th = 2.0 * math.pi * k / n
        pts.append(Point(cx + radius * math.cos(th), cy + radius * math.sin(th)))
    return Polygon(tuple(pts))
