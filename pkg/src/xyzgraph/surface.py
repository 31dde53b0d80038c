"""Face sets on cubic graphs: manifold and polyhedral checks, face 3-colouring,
orientation and topological classification.

A face colour names the axis *perpendicular* to the face: an ``"x"`` face
lies in a plane ``x = const`` and so only uses y- and z-parallel edges.
The axis of an edge is therefore the one colour missing from its two faces.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import FaceNotCycle, MalformedDocument, NotXYZSurface
from .graph import Check, CubicGraph, graph_from_dict, is_connected

AXES = ("x", "y", "z")
MAP_FORMAT = "xyz-map/1"
SURFACE_FORMAT = "xyz-surface/1"


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceSet:
    """Multiset of faces, each a cyclic vertex sequence."""

    faces: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, faces: Iterable[Sequence[int]]) -> FaceSet:
        return cls(tuple(tuple(int(v) for v in f) for f in faces))

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.faces[i]


@dataclass(frozen=True)
class TopologyClass:
    euler_characteristic: int
    orientable: bool
    genus: int | None = None
    crosscaps: int | None = None

    def to_dict(self) -> dict:
        d = {"euler_characteristic": self.euler_characteristic, "orientable": self.orientable}
        if self.orientable:
            d["genus"] = self.genus
        else:
            d["crosscaps"] = self.crosscaps
        return d


@dataclass(frozen=True, eq=False)
class ColoredSurface:
    """A face set whose colouring satisfies the xyz-surface axioms.

    Build these through :func:`check_xyz_surface`; the constructor trusts its input.
    """

    graph: CubicGraph
    faces: FaceSet
    colors: tuple[str, ...]
    face_edges: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    edge_faces: tuple[tuple[int, int], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        fe = tuple(face_edges(self.graph, f) for f in self.faces)
        ef: list[list[int]] = [[] for _ in range(self.graph.m)]
        for i, edges in enumerate(fe):
            for e in edges:
                ef[e].append(i)
        object.__setattr__(self, "face_edges", fe)
        object.__setattr__(self, "edge_faces", tuple(tuple(x) for x in ef))

    def edge_axis(self, e: int) -> str:
        f, h = self.edge_faces[e]
        (axis,) = set(AXES) - {self.colors[f], self.colors[h]}
        return axis

    def partition(self) -> tuple[str, ...]:
        return tuple(self.edge_axis(e) for e in range(self.graph.m))

    def faces_at(self, v: int) -> dict[str, int]:
        out = {}
        for e in self.graph.incident[v]:
            for f in self.edge_faces[e]:
                out[self.colors[f]] = f
        return out

    def key(self) -> tuple:
        return face_set_key(self.face_edges)

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["format"] = SURFACE_FORMAT
        d["faces"] = [list(f) for f in self.faces]
        d["colors"] = list(self.colors)
        return d


def face_set_key(face_edge_lists: Iterable[Iterable[int]]) -> tuple:
    """Canonical form of a face set: sorted tuple of sorted edge-id tuples."""
    return tuple(sorted(tuple(sorted(f)) for f in face_edge_lists))


# ---------------------------------------------------------------------------
# JSON I/O
# ---------------------------------------------------------------------------


def map_from_dict(doc: dict) -> tuple[CubicGraph, FaceSet, tuple[str, ...] | None]:
    g = graph_from_dict(doc)
    if "faces" not in doc:
        raise MalformedDocument("map document needs a 'faces' field")
    faces = doc["faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise MalformedDocument("'faces' must be a list of vertex lists")
    c = FaceSet.of(faces)
    colors = doc.get("colors")
    if colors is not None:
        if len(colors) != len(c) or any(k not in AXES for k in colors):
            raise MalformedDocument("'colors' must hold one of 'x','y','z' per face")
        colors = tuple(colors)
    return g, c, colors


def parse_map(text: str | bytes):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    return map_from_dict(doc)


def map_to_dict(g: CubicGraph, c: FaceSet, colors: Sequence[str] | None = None) -> dict:
    d = g.to_dict()
    d["format"] = MAP_FORMAT if colors is None else SURFACE_FORMAT
    d["faces"] = [list(f) for f in c]
    if colors is not None:
        d["colors"] = list(colors)
    return d


# ---------------------------------------------------------------------------
# Face helpers
# ---------------------------------------------------------------------------


def walk_edges(g: CubicGraph, face: Sequence[int]) -> tuple[int, ...]:
    """Edge ids of a closed walk given by its vertex sequence."""
    k = len(face)
    out = []
    for i in range(k):
        u, v = face[i], face[(i + 1) % k]
        e = g.edge_id(u, v)
        if e is None:
            raise FaceNotCycle(f"face {list(face)} steps {u}->{v}, which is not an edge", tuple(face))
        out.append(e)
    return tuple(out)


def face_edges(g: CubicGraph, face: Sequence[int]) -> tuple[int, ...]:
    """Edge ids of a face, which must be a simple cycle of length >= 3."""
    if len(face) < 3:
        raise FaceNotCycle(f"face {list(face)} has fewer than 3 vertices", tuple(face))
    if len(set(face)) != len(face):
        raise FaceNotCycle(f"face {list(face)} repeats a vertex", tuple(face))
    return walk_edges(g, face)


def edge_face_incidence(g: CubicGraph, c: FaceSet) -> list[list[int]]:
    inc: list[list[int]] = [[] for _ in range(g.m)]
    for i, f in enumerate(c):
        for e in face_edges(g, f):
            inc[e].append(i)
    return inc


def faces_containing(g: CubicGraph, c: FaceSet) -> list[list[int]]:
    """For each vertex, the faces through it."""
    out: list[list[int]] = [[] for _ in range(g.n)]
    for i, f in enumerate(c):
        for v in f:
            out[v].append(i)
    return out


# ---------------------------------------------------------------------------
# Manifold / polyhedral
# ---------------------------------------------------------------------------


def check_manifold(g: CubicGraph, c: FaceSet) -> Check:
    """Every edge on exactly two faces; the witness is the first offending edge id.

    For cubic graphs this alone makes the cell complex a closed 2-manifold.
    """
    inc = edge_face_incidence(g, c)
    for e, fs in enumerate(inc):
        if len(fs) != 2:
            return Check(False, e)
    return Check(True)


def _bucket_sort_pairs(pairs: list[tuple[int, int]], nbuckets: int) -> list[tuple[int, int]]:
    """Stable two-pass bucket sort, least significant component first."""
    for key in (1, 0):
        buckets: list[list[tuple[int, int]]] = [[] for _ in range(nbuckets)]
        for p in pairs:
            buckets[p[key]].append(p)
        pairs = [p for b in buckets for p in b]
    return pairs


def check_polyhedral(g: CubicGraph, c: FaceSet, inc: list[list[int]] | None = None) -> Check:
    """No two faces share two or more edges; witness is the offending face pair.

    Each edge contributes its ordered pair of incident face ids; after a
    bucket sort any repeated pair sits next to a copy of itself.
    """
    if inc is None:
        inc = edge_face_incidence(g, c)
    pairs = []
    for fs in inc:
        if len(fs) != 2:
            raise ValueError("check_polyhedral needs a manifold face set")
        a, b = fs
        pairs.append((a, b) if a <= b else (b, a))
    pairs = _bucket_sort_pairs(pairs, max(len(c), 1))
    for p, q in zip(pairs, pairs[1:]):
        if p == q:
            return Check(False, p)
    return Check(True)


def _face_adjacency(inc: list[list[int]], nfaces: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(nfaces)]
    for a, b in inc:
        adj[a].append(b)
        adj[b].append(a)
    return adj


# ---------------------------------------------------------------------------
# Colouring
# ---------------------------------------------------------------------------


def three_color_faces(g: CubicGraph, c: FaceSet, inc: list[list[int]] | None = None) -> list[str] | None:
    """Forced-choice face 3-colouring.

    The two faces of the lowest-id edge get ``x`` and ``y``; afterwards a
    face is only coloured once a single colour remains available to it.
    Complete for connected polyhedral maps, so no backtracking.
    """
    if inc is None:
        inc = edge_face_incidence(g, c)
    nf = len(c)
    if nf == 0:
        return None
    adj = _face_adjacency(inc, nf)
    avail = [7] * nf
    color = [-1] * nf
    pending: deque[int] = deque()

    def assign(f: int, k: int) -> bool:
        if not avail[f] & (1 << k):
            return False
        color[f] = k
        avail[f] = 1 << k
        for h in adj[f]:
            if color[h] == k:
                return False
            if color[h] < 0 and avail[h] & (1 << k):
                avail[h] &= ~(1 << k)
                if avail[h] == 0:
                    return False
                if avail[h] & (avail[h] - 1) == 0:
                    pending.append(h)
        return True

    f0, f1 = inc[0]
    if f0 == f1 or not assign(f0, 0) or not assign(f1, 1):
        return None
    while pending:
        f = pending.popleft()
        if color[f] >= 0:
            continue
        k = avail[f].bit_length() - 1
        if not assign(f, k):
            return None
    if min(color) < 0:
        return None
    return [AXES[k] for k in color]


def _coloring_conflict(inc: list[list[int]], colors: Sequence[str]) -> int | None:
    for e, (a, b) in enumerate(inc):
        if colors[a] == colors[b]:
            return e
    return None


def diagnose_xyz_surface(
    g: CubicGraph, c: FaceSet, colors: Sequence[str] | None = None
) -> tuple[ColoredSurface | None, str | None, object]:
    """Run the full xyz-surface test; returns ``(surface, reason, witness)``.

    With ``colors`` supplied the colouring is verified instead of searched.
    """
    if not is_connected(g):
        return None, "disconnected", None
    try:
        inc = edge_face_incidence(g, c)
    except FaceNotCycle as exc:
        return None, "face-not-cycle", exc.witness
    for e, fs in enumerate(inc):
        if len(fs) != 2:
            return None, "not-manifold", e
    poly = check_polyhedral(g, c, inc)
    if not poly:
        return None, "not-polyhedral", poly.witness
    for i, f in enumerate(c):
        if len(f) % 2 or len(f) < 4:
            return None, "odd-face", i
    if colors is None:
        colors = three_color_faces(g, c, inc)
        if colors is None:
            return None, "not-3-colorable", None
    else:
        if len(colors) != len(c):
            return None, "bad-coloring", None
        bad = _coloring_conflict(inc, colors)
        if bad is not None:
            return None, "bad-coloring", bad
    return ColoredSurface(g, c, tuple(colors)), None, None


def check_xyz_surface(g: CubicGraph, c: FaceSet, colors: Sequence[str] | None = None) -> ColoredSurface | None:
    return diagnose_xyz_surface(g, c, colors)[0]


def require_xyz_surface(g: CubicGraph, c: FaceSet, colors: Sequence[str] | None = None) -> ColoredSurface:
    s, reason, witness = diagnose_xyz_surface(g, c, colors)
    if s is None:
        raise NotXYZSurface(reason, f"not an xyz surface: {reason}", witness)
    return s


# ---------------------------------------------------------------------------
# Topology
# ---------------------------------------------------------------------------


def euler_characteristic(g: CubicGraph, c: FaceSet) -> int:
    return g.n - g.m + len(c)


def _directed_steps(g: CubicGraph, face: Sequence[int]) -> dict[int, int]:
    """Edge id -> +1 if the face lists it low->high, -1 otherwise."""
    k = len(face)
    out = {}
    for i in range(k):
        u, v = face[i], face[(i + 1) % k]
        out[g.edge_id(u, v)] = 1 if u < v else -1
    return out


def orient_faces(g: CubicGraph, c: FaceSet) -> Check:
    """Consistent orientation of all faces, or an orientation-reversing face walk.

    On success the witness holds ``+1``/``-1`` per face (keep or reverse the
    listed order). On failure it is a closed list of faces ``f0, ..., f0``,
    consecutive ones sharing an edge, around which propagation flips sign.
    """
    inc = edge_face_incidence(g, c)
    steps = [_directed_steps(g, f) for f in c]
    nf = len(c)
    sign = [0] * nf
    parent = [-1] * nf
    for root in range(nf):
        if sign[root]:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for e in steps[f]:
                a, b = inc[e]
                h = b if a == f else a
                want = -sign[f] * steps[f][e] * steps[h][e]
                if sign[h] == 0:
                    sign[h] = want
                    parent[h] = f
                    queue.append(h)
                elif sign[h] != want:
                    return Check(False, _face_walk(parent, f, h))
    return Check(True, tuple(sign))


def _face_walk(parent: list[int], f: int, h: int) -> list[int]:
    def up(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pf, ph = up(f), up(h)
    return pf[::-1] + ph


def walk_flips_orientation(g: CubicGraph, c: FaceSet, walk: Sequence[int]) -> bool:
    """Transport an orientation along a closed face walk; True if it comes back reversed."""
    steps = [_directed_steps(g, f) for f in c]
    sign = 1
    for f, h in zip(walk, walk[1:]):
        shared = set(steps[f]) & set(steps[h])
        if not shared:
            raise ValueError(f"faces {f} and {h} share no edge")
        e = min(shared)
        sign = -sign * steps[f][e] * steps[h][e]
    return sign == -1


def classify_topology(g: CubicGraph, c: FaceSet) -> TopologyClass:
    chi = euler_characteristic(g, c)
    if orient_faces(g, c):
        return TopologyClass(chi, True, genus=(2 - chi) // 2)
    return TopologyClass(chi, False, crosscaps=2 - chi)


# ---------------------------------------------------------------------------
# Perfect face covers
# ---------------------------------------------------------------------------


def perfect_face_cover(g: CubicGraph, c: FaceSet) -> list[int] | None:
    """Faces meeting every vertex exactly once, found as one component of the
    auxiliary face graph linking the two faces at the ends of each edge that
    avoid that edge."""
    inc = edge_face_incidence(g, c)
    at = faces_containing(g, c)
    nf = len(c)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v) in enumerate(g.edges):
        on = set(inc[e])
        fu = [f for f in at[u] if f not in on]
        fv = [f for f in at[v] if f not in on]
        for a in fu:
            for b in fv:
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for f in range(nf):
        groups.setdefault(find(f), []).append(f)
    for comp in sorted(groups.values()):
        hit = [0] * g.n
        for f in comp:
            for v in c[f]:
                hit[v] += 1
        if all(h == 1 for h in hit):
            return comp
    return None
