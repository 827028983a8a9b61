"""Conforming triangulations of quadrilaterals and ring condensers.

``triangulate`` produces a Delaunay mesh whose boundary edges exactly
subdivide the polygon edges, tagged by the arc (Gamma1..Gamma4) or plate
(PlateE/PlateF) they belong to. It works by sampling the boundary, seeding
the interior with a hex lattice, and then iterating batched Ruppert-style
refinement on top of scipy's (Qhull) Delaunay kernel: missing boundary
subsegments are bisected until every subsegment is a Delaunay edge, and
oversized or skinny triangles get circumcenter insertions, with encroached
subsegments split instead of accepting a point near the boundary.

``refine`` is newest-vertex bisection with closure: the bisection edge of
every triangle is the edge between its first two stored vertices (the
longest edge on generator output), children are nested in their parent, and
boundary tags propagate to child edges. Nestedness is what makes the
discrete energies decrease monotonically along an adaptive run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import Delaunay, cKDTree

from qmod.geometry import Polygon, Quadrilateral, RingCondenser

QUAD_TAGS = ("Gamma1", "Gamma2", "Gamma3", "Gamma4")
RING_TAGS = ("PlateE", "PlateF")

_MIN_ANGLE_DEG = 25.0
_SMALL_CORNER_DEG = 60.0  # corners sharper than this exempt their triangles from the angle target
_MAX_ROUNDS = 60
_ANGLE_STALL_ROUNDS = 25
DOERFLER_THETA = 0.5


class MeshError(RuntimeError):
    """Meshing failed; degenerate geometry or refinement budget exhausted."""


@dataclass(frozen=True)
class Mesh:
    """Conforming triangulation with tagged boundary edges.

    ``triangles`` rows are CCW node triples; the edge between the first two
    vertices of a row is that triangle's bisection edge for ``refine``.
    ``parents`` (index into the pre-refinement triangle list) and
    ``new_nodes`` ((mid, a, b) with mid the midpoint of nodes a and b, in
    creation order) are lineage left behind by ``refine`` so solutions can
    be carried to the refined mesh; both are None on generator output.
    Treat all arrays as immutable.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary_edges: tuple[tuple[int, int, str], ...]
    parents: tuple[int, ...] | None = None
    new_nodes: tuple[tuple[int, int, int], ...] | None = None

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]

    @cached_property
    def areas(self) -> np.ndarray:
        return triangle_areas(self.nodes, self.triangles)

    @cached_property
    def boundary_tag_map(self) -> dict[frozenset, str]:
        return {frozenset((a, b)): tag for a, b, tag in self.boundary_edges}

    def tags(self) -> frozenset[str]:
        return frozenset(tag for _, _, tag in self.boundary_edges)


@dataclass(frozen=True)
class RefinementMarking:
    """Per-triangle error indicators plus the set picked for bisection."""

    indicators: np.ndarray
    marked: tuple[int, ...] = field(default=())

    def __post_init__(self):
        ind = np.asarray(self.indicators, dtype=float)
        object.__setattr__(self, "indicators", ind)
        object.__setattr__(self, "marked", tuple(int(i) for i in self.marked))
        if ind.size and ind.min() < 0.0:
            raise ValueError("error indicators must be nonnegative")
        if ind.size and ind.max() > 0.0 and not self.marked:
            raise ValueError("marking must be nonempty when any indicator is positive")


def doerfler_marking(indicators: np.ndarray, theta: float = DOERFLER_THETA) -> RefinementMarking:
    """Smallest triangle set carrying at least theta of the squared-indicator mass."""
    ind = np.asarray(indicators, dtype=float)
    mass = ind * ind
    total = float(mass.sum())
    if total <= 0.0:
        return RefinementMarking(ind, ())
    order = np.argsort(-mass, kind="stable")
    csum = np.cumsum(mass[order])
    k = int(np.searchsorted(csum, theta * total)) + 1
    return RefinementMarking(ind, tuple(int(i) for i in order[:k]))


def triangle_areas(nodes: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p = nodes[triangles]
    return 0.5 * (
        (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
        - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1])
    )


def triangle_min_angles(nodes: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    """Smallest interior angle of each triangle, in radians."""
    p = nodes[triangles]
    angs = np.empty((triangles.shape[0], 3))
    for i in range(3):
        u = p[:, (i + 1) % 3] - p[:, i]
        v = p[:, (i + 2) % 3] - p[:, i]
        dot = (u * v).sum(axis=1)
        cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
        angs[:, i] = np.abs(np.arctan2(cross, dot))
    return angs.min(axis=1)


def mesh_edges(triangles: np.ndarray) -> np.ndarray:
    """Unique undirected edges as an (E, 2) array of sorted node pairs."""
    e = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    e.sort(axis=1)
    return np.unique(e, axis=0)


def mesh_to_json(mesh: Mesh) -> dict:
    return {
        "nodes": [[float(x), float(y)] for x, y in mesh.nodes],
        "triangles": [[int(a), int(b), int(c)] for a, b, c in mesh.triangles],
        "boundary": [[int(a), int(b), tag] for a, b, tag in mesh.boundary_edges],
    }


# --- point-in-polygon and distance helpers (vectorized) -------------------


def _poly_array(poly: Polygon) -> np.ndarray:
    return np.array([[v.x, v.y] for v in poly.vertices], dtype=float)


def _points_in_polygon(pts: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Even-odd crossing test for an array of query points."""
    x, y = pts[:, 0:1], pts[:, 1:2]
    ax, ay = poly[:, 0][None, :], poly[:, 1][None, :]
    bx, by = np.roll(poly[:, 0], -1)[None, :], np.roll(poly[:, 1], -1)[None, :]
    straddles = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = ax + (y - ay) * (bx - ax) / (by - ay)
    crossings = (straddles & (x < xc)).sum(axis=1)
    return crossings % 2 == 1


def _dist_to_segments(pts: np.ndarray, seg_a: np.ndarray, seg_b: np.ndarray) -> np.ndarray:
    """Min distance of each point to any of the segments (a_i, b_i)."""
    d = seg_b - seg_a
    ln2 = (d * d).sum(axis=1)
    ln2 = np.where(ln2 == 0.0, 1.0, ln2)
    w = pts[:, None, :] - seg_a[None, :, :]
    t = np.clip((w * d[None, :, :]).sum(axis=2) / ln2[None, :], 0.0, 1.0)
    proj = seg_a[None, :, :] + t[:, :, None] * d[None, :, :]
    return np.sqrt(((pts[:, None, :] - proj) ** 2).sum(axis=2)).min(axis=1)


# --- boundary chains -------------------------------------------------------


class _Chain:
    """One polygon edge with its ordered subdivision points."""

    __slots__ = ("p", "q", "tag", "ts", "ids")

    def __init__(self, p, q, tag, node_p, node_q):
        self.p = np.asarray(p, dtype=float)
        self.q = np.asarray(q, dtype=float)
        self.tag = tag
        self.ts = [0.0, 1.0]
        self.ids = [node_p, node_q]

    def point_at(self, t: float) -> tuple[float, float]:
        return (
            self.p[0] + t * (self.q[0] - self.p[0]),
            self.p[1] + t * (self.q[1] - self.p[1]),
        )

    def split(self, k: int, add_pt) -> None:
        """Insert the midpoint of subsegment k (between ts[k] and ts[k+1])."""
        t = 0.5 * (self.ts[k] + self.ts[k + 1])
        nid = add_pt(*self.point_at(t))
        self.ts.insert(k + 1, t)
        self.ids.insert(k + 1, nid)

    def subsegments(self):
        for k in range(len(self.ids) - 1):
            yield k, self.ids[k], self.ids[k + 1]


def _quad_edge_tags(quad: Quadrilateral) -> list[str]:
    tags = [""] * quad.domain.n_edges
    for tag, edges in quad.arc_edges().items():
        for e in edges:
            tags[e] = tag
    return tags


def triangulate(domain: Quadrilateral | RingCondenser, max_area: float) -> Mesh:
    """Delaunay mesh of the domain with all triangle areas <= max_area.

    Boundary edges are tagged Gamma1..Gamma4 (quadrilateral arcs, Gammaj
    from marked point j to j+1) or PlateE/PlateF (ring inner/outer). The
    angle target is 25 degrees, relaxed at input corners sharper than 60
    degrees and abandoned (never silently violating the area bound) if the
    geometry resists.
    """
    if not max_area > 0.0:
        raise MeshError(f"max_area must be positive, got {max_area}")
    if isinstance(domain, Quadrilateral):
        polys = [_poly_array(domain.domain)]
        tags_per_poly = [_quad_edge_tags(domain)]
        hole = None
    elif isinstance(domain, RingCondenser):
        polys = [_poly_array(domain.outer), _poly_array(domain.inner)]
        tags_per_poly = [
            ["PlateF"] * domain.outer.n_edges,
            ["PlateE"] * domain.inner.n_edges,
        ]
        hole = 1
    else:
        raise TypeError(f"cannot mesh {type(domain).__name__}")

    outer = polys[0]
    total_area = _polygon_area_np(outer) - (_polygon_area_np(polys[1]) if hole else 0.0)
    target_len = math.sqrt(2.0 * max_area)
    scale = max(np.ptp(outer[:, 0]), np.ptp(outer[:, 1]))
    area_eps = 1e-14 * scale * scale

    pts: list[tuple[float, float]] = []

    def add_pt(x: float, y: float) -> int:
        pts.append((float(x), float(y)))
        return len(pts) - 1

    vert_ids = []
    for poly in polys:
        vert_ids.append([add_pt(x, y) for x, y in poly])

    chains: list[_Chain] = []
    for poly, tags, vids in zip(polys, tags_per_poly, vert_ids):
        n = poly.shape[0]
        for k in range(n):
            p, q = poly[k], poly[(k + 1) % n]
            chain = _Chain(p, q, tags[k], vids[k], vids[(k + 1) % n])
            nseg = max(1, math.ceil(math.hypot(*(q - p)) / target_len))
            for j in range(1, nseg):
                t = j / nseg
                nid = add_pt(*chain.point_at(t))
                chain.ts.insert(-1, t)
                chain.ids.insert(-1, nid)
            chains.append(chain)

    # sharp input corners: node ids whose triangles skip the angle criterion
    sharp_ids = _sharp_corner_ids(polys, vert_ids)

    _seed_interior(pts, add_pt, polys, hole, target_len)

    expected = total_area / max_area
    max_points = int(60 * expected + len(pts) * 8 + 4000)

    angle_enabled = True
    seg_a_all = np.concatenate([p for p in polys])  # original edges, for seed filtering only

    for round_no in range(_MAX_ROUNDS):
        if len(pts) > max_points:
            raise MeshError(
                f"refinement budget exhausted ({len(pts)} points for target area {max_area}); "
                "geometry may be degenerate"
            )
        arr = np.asarray(pts, dtype=float)
        try:
            dela = Delaunay(arr)
        except Exception as exc:  # qhull failures on degenerate input
            raise MeshError(f"Delaunay triangulation failed: {exc}") from exc
        tris = dela.simplices.astype(np.int64)
        areas = triangle_areas(arr, tris)
        flip = areas < 0.0
        tris[flip] = tris[flip][:, ::-1]
        areas = np.abs(areas)

        edge_keys = _edge_key_set(tris, len(pts))

        # 1. every boundary subsegment must be a Delaunay edge
        missing = []
        for ci, chain in enumerate(chains):
            for k, a, b in chain.subsegments():
                if _ekey(a, b, len(pts)) not in edge_keys:
                    missing.append((ci, k))
        if missing:
            for ci, k in sorted(missing, reverse=True):
                chains[ci].split(k, add_pt)
            continue

        # 2. keep triangles inside the domain
        cent = arr[tris].mean(axis=1)
        keep = _points_in_polygon(cent, polys[0]) & (areas > area_eps)
        if hole is not None:
            keep &= ~_points_in_polygon(cent, polys[1])
        kept = tris[keep]
        kept_areas = areas[keep]
        if kept.shape[0] == 0:
            raise MeshError("no triangles remain after filtering; degenerate domain")

        sub_keys = {
            _ekey(a, b, len(pts)) for chain in chains for _, a, b in chain.subsegments()
        }
        heal = _conformity_defects(kept, sub_keys, len(pts))
        if heal:
            for a, b in heal:
                add_pt(*(0.5 * (arr[a] + arr[b])))
            continue

        # 3. quality scan
        if round_no >= _ANGLE_STALL_ROUNDS:
            angle_enabled = False
        min_angles = triangle_min_angles(arr, kept)
        bad_area = kept_areas > max_area
        bad_angle = np.zeros_like(bad_area)
        if angle_enabled:
            bad_angle = min_angles < math.radians(_MIN_ANGLE_DEG)
            if sharp_ids:
                exempt = np.isin(kept, np.fromiter(sharp_ids, dtype=np.int64)).any(axis=1)
                bad_angle &= ~exempt
        bad = np.flatnonzero(bad_area | bad_angle)
        if bad.size == 0:
            return _build_mesh(arr, kept, chains)

        n_new = _insert_quality_points(arr, pts, add_pt, kept, bad, chains, polys, hole, target_len)
        if n_new == 0:
            if bad_area.any():
                _split_longest_edges(arr, pts, add_pt, kept[np.flatnonzero(bad_area)], chains)
            else:
                angle_enabled = False  # geometry-forced small angles; accept

    raise MeshError(f"triangulation did not settle within {_MAX_ROUNDS} rounds")


def _polygon_area_np(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _ekey(a: int, b: int, n: int) -> int:
    return (a * n + b) if a < b else (b * n + a)


def _edge_key_set(tris: np.ndarray, n: int) -> set:
    e = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    e.sort(axis=1)
    return set((e[:, 0] * n + e[:, 1]).tolist())


def _sharp_corner_ids(polys, vert_ids) -> set[int]:
    sharp = set()
    for poly, vids in zip(polys, vert_ids):
        n = poly.shape[0]
        for i in range(n):
            u = poly[(i - 1) % n] - poly[i]
            v = poly[(i + 1) % n] - poly[i]
            ang = abs(math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1]))
            if ang < math.radians(_SMALL_CORNER_DEG):
                sharp.add(vids[i])
    return sharp


def _seed_interior(pts, add_pt, polys, hole, target_len) -> None:
    outer = polys[0]
    xmin, ymin = outer.min(axis=0)
    xmax, ymax = outer.max(axis=0)
    dy = target_len * math.sqrt(3.0) / 2.0
    rows = int((ymax - ymin) / dy)
    cand = []
    for r in range(1, rows + 1):
        y = ymin + r * dy
        off = (r % 2) * target_len / 2.0
        ncols = int((xmax - xmin - off) / target_len)
        for c in range(0, ncols + 1):
            cand.append((xmin + off + c * target_len, y))
    if not cand:
        return
    cand = np.array(cand)
    ok = _points_in_polygon(cand, outer)
    if hole is not None:
        ok &= ~_points_in_polygon(cand, polys[hole])
    cand = cand[ok]
    if cand.size == 0:
        return
    seg_a = np.concatenate([p for p in polys])
    seg_b = np.concatenate([np.roll(p, -1, axis=0) for p in polys])
    dist = _dist_to_segments(cand, seg_a, seg_b)
    for x, y in cand[dist >= 0.7 * target_len]:
        add_pt(x, y)


def _conformity_defects(kept: np.ndarray, sub_keys: set, n: int) -> list[tuple[int, int]]:
    """Edges breaking conformity: subsegments not on exactly one triangle,
    or rim edges (single-triangle) that are not subsegments."""
    e = np.concatenate([kept[:, [0, 1]], kept[:, [1, 2]], kept[:, [2, 0]]])
    e.sort(axis=1)
    keys = e[:, 0] * n + e[:, 1]
    uniq, counts = np.unique(keys, return_counts=True)
    defects = []
    count_of = dict(zip(uniq.tolist(), counts.tolist()))
    for k in sub_keys:
        if count_of.get(k, 0) != 1:
            defects.append((k // n, k % n))
    rim = uniq[counts == 1]
    for k in rim.tolist():
        if k not in sub_keys:
            defects.append((k // n, k % n))
    return defects


def _circumcenters(p: np.ndarray) -> np.ndarray:
    a, b, c = p[:, 0], p[:, 1], p[:, 2]
    ab = b - a
    ac = c - a
    d = 2.0 * (ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0])
    d = np.where(d == 0.0, np.inf, d)
    ab2 = (ab * ab).sum(axis=1)
    ac2 = (ac * ac).sum(axis=1)
    ux = (ac[:, 1] * ab2 - ab[:, 1] * ac2) / d
    uy = (ab[:, 0] * ac2 - ac[:, 0] * ab2) / d
    return a + np.stack([ux, uy], axis=1)


def _insert_quality_points(arr, pts, add_pt, kept, bad, chains, polys, hole, target_len) -> int:
    """Insert circumcenters of bad triangles; split encroached subsegments
    instead of accepting points that crowd the boundary. Returns the number
    of changes applied (new points plus splits)."""
    centers = _circumcenters(arr[kept[bad]])
    finite = np.isfinite(centers).all(axis=1)
    centers = centers[finite]
    if centers.shape[0] == 0:
        return 0

    sub_mid, sub_rad2, sub_where = [], [], []
    for ci, chain in enumerate(chains):
        for k, a, b in chain.subsegments():
            m = 0.5 * (arr[a] + arr[b])
            r2 = 0.25 * ((arr[a] - arr[b]) ** 2).sum()
            sub_mid.append(m)
            sub_rad2.append(r2)
            sub_where.append((ci, k))
    sub_mid = np.array(sub_mid)
    sub_rad2 = np.array(sub_rad2)

    d2 = ((centers[:, None, :] - sub_mid[None, :, :]) ** 2).sum(axis=2)
    encroach = d2 < sub_rad2[None, :]

    inside = _points_in_polygon(centers, polys[0])
    if hole is not None:
        inside &= ~_points_in_polygon(centers, polys[hole])

    splits: set[tuple[int, int]] = set()
    accepted: list[tuple[float, float]] = []
    tree = cKDTree(arr)
    min_space = 0.35 * target_len
    for i in range(centers.shape[0]):
        enc = np.flatnonzero(encroach[i])
        if enc.size:
            for j in enc:
                splits.add(sub_where[j])
            continue
        if not inside[i]:
            continue  # unreachable center with no encroachment: leave to fallback
        c = centers[i]
        if tree.query(c, k=1)[0] < min_space:
            continue
        if accepted and cKDTree(np.array(accepted)).query(c, k=1)[0] < min_space:
            continue
        accepted.append((float(c[0]), float(c[1])))

    for ci, k in sorted(splits, reverse=True):
        chains[ci].split(k, add_pt)
    for x, y in accepted:
        add_pt(x, y)
    return len(accepted) + len(splits)


def _split_longest_edges(arr, pts, add_pt, bad_tris, chains) -> None:
    """Fallback: bisect the longest edge of each oversized triangle."""
    sub_lookup = {}
    for ci, chain in enumerate(chains):
        for k, a, b in chain.subsegments():
            sub_lookup[frozenset((a, b))] = (ci, k)
    boundary_splits = set()
    fresh = []
    for t in bad_tris:
        pairs = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
        lengths = [((arr[a] - arr[b]) ** 2).sum() for a, b in pairs]
        a, b = pairs[int(np.argmax(lengths))]
        key = frozenset((int(a), int(b)))
        if key in sub_lookup:
            boundary_splits.add(sub_lookup[key])
        else:
            fresh.append(0.5 * (arr[a] + arr[b]))
    for ci, k in sorted(boundary_splits, reverse=True):
        chains[ci].split(k, add_pt)
    seen = set()
    for m in fresh:
        key = (round(float(m[0]), 12), round(float(m[1]), 12))
        if key not in seen:
            seen.add(key)
            add_pt(float(m[0]), float(m[1]))


def _build_mesh(arr: np.ndarray, kept: np.ndarray, chains: list[_Chain]) -> Mesh:
    used = np.unique(kept)
    remap = -np.ones(arr.shape[0], dtype=np.int64)
    remap[used] = np.arange(used.size)
    nodes = arr[used]
    tris = remap[kept]
    tris = _rotate_longest_first(nodes, tris)
    boundary = []
    for chain in chains:
        for _, a, b in chain.subsegments():
            boundary.append((int(remap[a]), int(remap[b]), chain.tag))
    return Mesh(nodes=nodes, triangles=tris.astype(np.int64), boundary_edges=tuple(boundary))


def _rotate_longest_first(nodes: np.ndarray, tris: np.ndarray) -> np.ndarray:
    """Cyclically rotate each row so the longest edge joins the first two vertices."""
    p = nodes[tris]
    l01 = ((p[:, 0] - p[:, 1]) ** 2).sum(axis=1)
    l12 = ((p[:, 1] - p[:, 2]) ** 2).sum(axis=1)
    l20 = ((p[:, 2] - p[:, 0]) ** 2).sum(axis=1)
    which = np.argmax(np.stack([l01, l12, l20], axis=1), axis=1)
    out = tris.copy()
    out[which == 1] = tris[which == 1][:, [1, 2, 0]]
    out[which == 2] = tris[which == 2][:, [2, 0, 1]]
    return out


def refine(mesh: Mesh, marking: RefinementMarking) -> Mesh:
    """Newest-vertex bisection of the marked triangles, with closure.

    Children of (a, b, c) are (c, a, m) and (b, c, m) where m is the
    midpoint of the bisection edge (a, b); both children keep orientation
    and have m as their peak. Closure bisects any triangle with a hanging
    midpoint on one of its edges until the mesh conforms again. Boundary
    tags propagate to the two halves of a split boundary edge.
    """
    if len(marking.marked) == 0:
        return mesh
    if marking.indicators.shape[0] != mesh.n_triangles:
        raise ValueError("marking does not match mesh triangle count")

    coords = [tuple(xy) for xy in mesh.nodes.tolist()]
    tag_of: dict[frozenset, tuple[int, int, str]] = {
        frozenset((a, b)): (a, b, tag) for a, b, tag in mesh.boundary_edges
    }
    midpoint: dict[frozenset, int] = {}
    new_nodes: list[tuple[int, int, int]] = []

    def get_mid(a: int, b: int) -> int:
        key = frozenset((a, b))
        m = midpoint.get(key)
        if m is not None:
            return m
        xa, ya = coords[a]
        xb, yb = coords[b]
        coords.append((0.5 * (xa + xb), 0.5 * (ya + yb)))
        m = len(coords) - 1
        midpoint[key] = m
        new_nodes.append((m, a, b))
        if key in tag_of:
            oa, ob, tag = tag_of.pop(key)
            tag_of[frozenset((oa, m))] = (oa, m, tag)
            tag_of[frozenset((m, ob))] = (m, ob, tag)
        return m

    marked_set = set(marking.marked)
    work = [
        (int(t[0]), int(t[1]), int(t[2]), i, i in marked_set)
        for i, t in enumerate(mesh.triangles)
    ]
    for _ in range(64):
        changed = False
        out = []
        for a, b, c, orig, mk in work:
            needs = mk or any(
                frozenset(e) in midpoint for e in ((a, b), (b, c), (c, a))
            )
            if needs:
                m = get_mid(a, b)
                out.append((c, a, m, orig, False))
                out.append((b, c, m, orig, False))
                changed = True
            else:
                out.append((a, b, c, orig, mk))
        work = out
        if not changed:
            break
    else:
        raise MeshError("bisection closure did not terminate")

    nodes = np.array(coords, dtype=float)
    tris = np.array([[a, b, c] for a, b, c, _, _ in work], dtype=np.int64)
    parents = tuple(orig for _, _, _, orig, _ in work)
    boundary = tuple((a, b, tag) for a, b, tag in tag_of.values())
    return Mesh(
        nodes=nodes,
        triangles=tris,
        boundary_edges=boundary,
        parents=parents,
        new_nodes=tuple(new_nodes),
    )
