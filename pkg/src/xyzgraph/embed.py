"""Integer coordinates from coloured surfaces and back, drawing metrics,
SVG export and connected sums."""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import IncompatibleGluing, MalformedDocument
from .graph import Check, CubicGraph
from .surface import AXES, ColoredSurface, FaceSet, diagnose_xyz_surface

EMBEDDING_FORMAT = "xyz-embedding/1"


@dataclass(frozen=True)
class Embedding3D:
    coords: tuple[tuple[int, int, int], ...]

    def __len__(self) -> int:
        return len(self.coords)

    def to_dict(self) -> dict:
        return {"format": EMBEDDING_FORMAT, "coords": [list(p) for p in self.coords]}

    @classmethod
    def from_dict(cls, doc: Mapping) -> Embedding3D:
        try:
            pts = tuple(tuple(int(c) for c in p) for p in doc["coords"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad embedding document: {exc}") from exc
        if any(len(p) != 3 for p in pts):
            raise MalformedDocument("every coordinate must have three components")
        return cls(pts)


@dataclass(frozen=True)
class DrawingMetrics:
    n_xy: int
    n_yz: int
    n_xz: int
    volume: int
    crossings: int

    def to_dict(self) -> dict:
        return {
            "n_xy": self.n_xy,
            "n_yz": self.n_yz,
            "n_xz": self.n_xz,
            "volume": self.volume,
            "crossings": self.crossings,
        }


# ---------------------------------------------------------------------------
# Surface <-> coordinates
# ---------------------------------------------------------------------------


def face_numbering(s: ColoredSurface) -> dict[str, list[int]]:
    """Face ids of each colour class, ordered by smallest contained vertex."""
    out: dict[str, list[int]] = {a: [] for a in AXES}
    for f in sorted(range(len(s.faces)), key=lambda f: min(s.faces[f])):
        out[s.colors[f]].append(f)
    return out


def coordinates_from_surface(s: ColoredSurface) -> Embedding3D:
    """Each vertex gets the indices of its x-, y- and z-coloured faces."""
    number = {}
    for faces in face_numbering(s).values():
        for i, f in enumerate(faces):
            number[f] = i
    pts = []
    for v in range(s.graph.n):
        at = s.faces_at(v)
        pts.append((number[at["x"]], number[at["y"]], number[at["z"]]))
    return Embedding3D(tuple(pts))


def apply_override(s: ColoredSurface, override: Mapping) -> Embedding3D:
    """Coordinates from user-chosen per-face plane values.

    ``override = {"face_coords": {"x": [...], "y": [...], "z": [...]}}`` with
    one value per face in :func:`face_numbering` order. The result is
    validated; an invalid choice raises ``ValueError`` carrying the witness.
    """
    try:
        table = override["face_coords"]
    except (KeyError, TypeError) as exc:
        raise MalformedDocument("override needs a 'face_coords' object") from exc
    numbering = face_numbering(s)
    value = {}
    for axis in AXES:
        vals = table.get(axis)
        faces = numbering[axis]
        if vals is None:
            vals = list(range(len(faces)))
        if len(vals) != len(faces):
            raise MalformedDocument(f"override for {axis!r} needs {len(faces)} values, got {len(vals)}")
        for f, val in zip(faces, vals):
            value[f] = int(val)
    pts = []
    for v in range(s.graph.n):
        at = s.faces_at(v)
        pts.append((value[at["x"]], value[at["y"]], value[at["z"]]))
    emb = Embedding3D(tuple(pts))
    check = validate_xyz_embedding(s.graph, emb)
    if not check:
        raise ValueError(f"override coordinates are not an xyz drawing: {check.witness}")
    return emb


def _lines(coords: Sequence[Sequence[int]]) -> list[dict[tuple, list[int]]]:
    lines: list[dict[tuple, list[int]]] = [defaultdict(list) for _ in range(3)]
    for v, p in enumerate(coords):
        for a in range(3):
            key = tuple(p[i] for i in range(3) if i != a)
            lines[a][key].append(v)
    return lines


def validate_xyz_embedding(g: CubicGraph, e: Embedding3D) -> Check:
    """Axis lines through vertices hold exactly two points, and those pairs are exactly the edges."""
    if len(e) != g.n:
        return Check(False, ("size", len(e), g.n))
    lines = _lines(e.coords)
    for a in range(3):
        for key, pts in lines[a].items():
            if len(pts) != 2:
                return Check(False, ("line", AXES[a], key, tuple(pts)))
            u, v = pts
            if e.coords[u][a] == e.coords[v][a]:
                return Check(False, ("coincident", u, v))
            if not g.has_edge(u, v):
                return Check(False, ("non-edge", u, v))
    for eid, (u, v) in enumerate(g.edges):
        same = sum(1 for i in range(3) if e.coords[u][i] == e.coords[v][i])
        if same != 2:
            return Check(False, ("edge", eid))
    return Check(True)


def grid_extent(e: Embedding3D) -> tuple[int, int, int]:
    return tuple(len({p[a] for p in e.coords}) for a in range(3))


def faces_from_embedding(g: CubicGraph, e: Embedding3D) -> tuple[FaceSet, tuple[str, ...]]:
    """Cycles lying in axis-parallel planes, coloured by the plane's normal axis."""
    faces = []
    colors = []
    for a in range(3):
        by_plane: dict[int, list[int]] = defaultdict(list)
        for v, p in enumerate(e.coords):
            by_plane[p[a]].append(v)
        for val in sorted(by_plane):
            members = set(by_plane[val])
            seen = set()
            for start in sorted(members):
                if start in seen:
                    continue
                cyc = [start]
                seen.add(start)
                prev, x = None, start
                while True:
                    nxt = [w for w in g.adjacency[x] if w in members and w != prev]
                    if prev is None:
                        nxt = nxt[:1]
                    if not nxt or nxt[0] == start:
                        break
                    prev, x = x, nxt[0]
                    if x in seen:
                        break
                    seen.add(x)
                    cyc.append(x)
                faces.append(tuple(cyc))
                colors.append(AXES[a])
    return FaceSet(tuple(faces)), tuple(colors)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


def _segments(g: CubicGraph, e: Embedding3D):
    out = []
    for u, v in g.edges:
        p, q = e.coords[u], e.coords[v]
        axis = next(i for i in range(3) if p[i] != q[i])
        lo, hi = sorted((p[axis], q[axis]))
        out.append((axis, p, lo, hi))
    return out


def count_crossings(g: CubicGraph, e: Embedding3D) -> int:
    """Pairs of edges whose segments meet at a point interior to both.

    Exact integer comparisons; parallel segments never overlap in a valid
    drawing, so only perpendicular pairs in a common plane are examined.
    """
    segs = _segments(g, e)
    bucket: dict[tuple[int, int, int], list] = defaultdict(list)
    for axis, p, lo, hi in segs:
        for other in range(3):
            if other == axis:
                continue
            third = 3 - axis - other
            bucket[(axis, third, p[third])].append((p, lo, hi))
    total = 0
    for a in range(3):
        for b in range(a + 1, 3):
            c = 3 - a - b
            planes = {k[2] for k in bucket if k[0] == a and k[1] == c}
            for val in planes:
                for p, lo1, hi1 in bucket.get((a, c, val), ()):
                    for q, lo2, hi2 in bucket.get((b, c, val), ()):
                        if lo1 < q[a] < hi1 and lo2 < p[b] < hi2:
                            total += 1
    return total


def drawing_metrics(g: CubicGraph, e: Embedding3D) -> DrawingMetrics:
    nx_, ny_, nz_ = grid_extent(e)
    # faces parallel to the yz-plane use distinct x values, and so on
    n_yz, n_xz, n_xy = nx_, ny_, nz_
    volume = (n_xy - 1) * (n_yz - 1) * (n_xz - 1)
    return DrawingMetrics(n_xy, n_yz, n_xz, volume, count_crossings(g, e))


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

# Isometric axes, with z tilted 7 degrees off vertical so that points which
# differ by a multiple of (1,1,1) do not land on the same spot.
_SCREEN_AXES = (
    (math.cos(math.radians(-30)), math.sin(math.radians(-30))),
    (math.cos(math.radians(210)), math.sin(math.radians(210))),
    (math.cos(math.radians(97)), math.sin(math.radians(97))),
)
_AXIS_COLORS = {"x": "#d62728", "y": "#2ca02c", "z": "#1f77b4"}


def _project(p: Sequence[int], scale: float) -> tuple[float, float]:
    sx = sum(p[i] * _SCREEN_AXES[i][0] for i in range(3)) * scale
    sy = -sum(p[i] * _SCREEN_AXES[i][1] for i in range(3)) * scale
    return sx, sy


def export_svg(e: Embedding3D, scale: float = 40.0) -> str:
    """Deterministic isometric SVG; edges are recovered from the axis lines."""
    if len(e) == 0:
        raise ValueError("cannot draw an empty embedding")
    pts = [_project(p, scale) for p in e.coords]
    segs = []
    for a, lines in enumerate(_lines(e.coords)):
        for key in sorted(lines):
            members = lines[key]
            if len(members) == 2:
                segs.append((AXES[a], *sorted(members)))
    segs.sort(key=lambda s: (s[1], s[2]))
    margin = 30.0
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    minx, miny = min(xs) - margin, min(ys) - margin
    width = max(xs) - minx + margin
    height = max(ys) - miny + margin + 40.0

    def fx(v):
        return f"{v - minx:.3f}"

    def fy(v):
        return f"{v - miny:.3f}"

    out = [(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3f}" height="{height:.3f}" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">'
    )]
    out.append('<g class="edges" stroke-width="2">')
    for axis, u, v in segs:
        out.append(
            f'<line x1="{fx(pts[u][0])}" y1="{fy(pts[u][1])}" x2="{fx(pts[v][0])}" '
            f'y2="{fy(pts[v][1])}" stroke="{_AXIS_COLORS[axis]}" data-axis="{axis}"/>'
        )
    out.append("</g>")
    out.append('<g class="vertices" fill="black">')
    for v, (x, y) in enumerate(pts):
        out.append(f'<circle cx="{fx(x)}" cy="{fy(y)}" r="4" data-vertex="{v}"/>')
    out.append("</g>")
    out.append('<g class="legend" font-family="sans-serif" font-size="12">')
    ox, oy = 20.0, height - 20.0
    for i, axis in enumerate(AXES):
        dx, dy = _SCREEN_AXES[i]
        out.append(
            f'<path d="M {ox:.3f} {oy:.3f} l {dx * 15:.3f} {-dy * 15:.3f}" '
            f'stroke="{_AXIS_COLORS[axis]}" stroke-width="2"/>'
        )
        out.append(f'<text x="{ox + dx * 20:.3f}" y="{oy - dy * 20:.3f}">{axis}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Connected sum
# ---------------------------------------------------------------------------


def _rotate_to_end(face: Sequence[int], v: int) -> list[int]:
    i = face.index(v)
    return list(face[i + 1 :]) + list(face[: i + 1])


def connected_sum(
    a: tuple[CubicGraph, ColoredSurface, int],
    b: tuple[CubicGraph, ColoredSurface, int],
    color_map: Mapping[str, str] | None = None,
    pairing: Sequence[tuple[int, int]] | None = None,
) -> tuple[CubicGraph, ColoredSurface]:
    """Delete ``v`` from ``a`` and ``v'`` from ``b`` and splice like-coloured faces.

    ``color_map`` renames ``b``'s colours before gluing (default identity).
    With colours matched, each dangling edge end at ``v`` joins the end at
    ``v'`` of the same axis; an explicit ``pairing`` of (a-neighbour,
    b-neighbour) is checked against that and rejected if inconsistent.
    Vertices of ``a`` keep their order and come first.
    """
    ga, sa, va = a
    gb, sb, vb = b
    cmap = dict(color_map or {k: k for k in AXES})
    if sorted(cmap) != list(AXES) or sorted(cmap.values()) != list(AXES):
        raise IncompatibleGluing(f"color_map must permute x, y, z: {cmap}")
    colors_b = [cmap[k] for k in sb.colors]

    def axis_b(e):
        f, h = sb.edge_faces[e]
        (ax,) = set(AXES) - {colors_b[f], colors_b[h]}
        return ax

    end_a = {sa.edge_axis(e): ga.other(e, va) for e in ga.incident[va]}
    end_b = {axis_b(e): gb.other(e, vb) for e in gb.incident[vb]}
    partner = {end_a[k]: end_b[k] for k in AXES}
    if pairing is not None:
        given = dict(pairing)
        if given != partner:
            raise IncompatibleGluing(
                f"pairing {sorted(given.items())} does not join edges of matching axes", partner
            )

    ida = {v: i for i, v in enumerate(x for x in range(ga.n) if x != va)}
    off = ga.n - 1
    idb = {v: off + i for i, v in enumerate(x for x in range(gb.n) if x != vb)}
    edges = [(ida[u], ida[w]) for u, w in ga.edges if va not in (u, w)]
    edges += [(idb[u], idb[w]) for u, w in gb.edges if vb not in (u, w)]
    for k in AXES:
        edges.append((ida[end_a[k]], idb[end_b[k]]))
    g = CubicGraph(ga.n + gb.n - 2, tuple(edges))

    faces, colors = [], []
    for f, col in zip(sa.faces, sa.colors):
        if va not in f:
            faces.append(tuple(ida[x] for x in f))
            colors.append(col)
    for f, col in zip(sb.faces, colors_b):
        if vb not in f:
            faces.append(tuple(idb[x] for x in f))
            colors.append(col)
    at_a = sa.faces_at(va)
    fb_by_color = {}
    for e in gb.incident[vb]:
        for f in sb.edge_faces[e]:
            fb_by_color[colors_b[f]] = f
    for col in AXES:
        pa = _rotate_to_end(sa.faces[at_a[col]], va)[:-1]  # q .. p, v removed
        pb = _rotate_to_end(sb.faces[fb_by_color[col]], vb)[:-1]
        if partner[pa[-1]] == pb[0]:
            joined = pa + pb
        elif partner[pa[-1]] == pb[-1]:
            joined = pa + pb[::-1]
        else:
            raise IncompatibleGluing(f"faces of colour {col} cannot be spliced", col)
        if partner[pa[0]] != joined[-1]:
            raise IncompatibleGluing(f"faces of colour {col} do not close up", col)
        faces.append(tuple(ida[x] if i < len(pa) else idb[x] for i, x in enumerate(joined)))
        colors.append(col)
    surf, reason, witness = diagnose_xyz_surface(g, FaceSet(tuple(faces)), colors)
    if surf is None:
        raise IncompatibleGluing(f"glued surface is not an xyz surface ({reason})", witness)
    return g, surf
