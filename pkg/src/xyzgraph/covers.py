"""Covering constructions: voltage covers over Z2^k and the sixfold axis cover."""

from __future__ import annotations

import itertools
import random
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import FaceNotCycle, ParallelEdge, PreconditionViolated, SelfLoop, TooLarge
from .graph import CubicGraph, components, is_connected
from .surface import (
    AXES,
    FaceSet,
    check_manifold,
    check_polyhedral,
    check_xyz_surface,
    perfect_face_cover,
    walk_edges,
)

COVER_FORMAT = "xyz-cover/1"
DEFAULT_EDGE_CAP = 14


@dataclass(frozen=True, eq=False)
class CoverResult:
    """A cover as a (possibly disconnected) graph with faces and a projection.

    ``ply`` is the fibre size of one component: ``fibre / components``.
    """

    graph: CubicGraph
    faces: FaceSet
    projection: tuple[int, ...]
    fibre: int
    components: int
    colors: tuple[str, ...] | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def ply(self) -> int:
        return self.fibre // self.components

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["format"] = COVER_FORMAT
        d["faces"] = [list(f) for f in self.faces]
        if self.colors is not None:
            d["colors"] = list(self.colors)
        d["projection"] = list(self.projection)
        d["fibre"] = self.fibre
        d["components"] = self.components
        d["ply"] = self.ply
        d["metadata"] = dict(self.metadata)
        return d


def is_covering(cover: CubicGraph, base: CubicGraph, projection: Sequence[int]) -> bool:
    """Every base edge at ``f(u)`` lifts to exactly one edge at ``u``."""
    if len(projection) != cover.n:
        return False
    for u in range(cover.n):
        images = sorted(projection[w] for w in cover.adjacency[u])
        if images != list(base.adjacency[projection[u]]):
            return False
    return True


def _count_components(g: CubicGraph) -> int:
    return len(components(g))


# ---------------------------------------------------------------------------
# Voltage covers over Z2^k
# ---------------------------------------------------------------------------


def _as_walks(g: CubicGraph, faces) -> list[tuple[int, ...]]:
    walks = [tuple(f) for f in faces]
    for f in walks:
        walk_edges(g, f)  # validates consecutive adjacency
    return walks


def voltage_cover(g: CubicGraph, faces, labels: Sequence[int], k: int) -> CoverResult:
    """Lift ``g`` along edge labels in Z2^k (bitmasks); vertex ``(v,x)`` gets id ``v*2^k + x``.

    Each base face, a closed walk, lifts to the closed walks obtained by
    following it from every fibre point until the start recurs.
    """
    size = 1 << k
    if len(labels) != g.m or any(not 0 <= x < size for x in labels):
        raise ValueError(f"need {g.m} labels in 0..{size - 1}")
    walks = _as_walks(g, faces)
    edges = []
    for e, (u, v) in enumerate(g.edges):
        for x in range(size):
            edges.append((u * size + x, v * size + (x ^ labels[e])))
    cover = CubicGraph(g.n * size, tuple(edges))
    projection = tuple(v for v in range(g.n) for _ in range(size))
    out_faces = []
    for walk in walks:
        es = walk_edges(g, walk)
        L = len(walk)
        seen = set()
        for x0 in range(size):
            if x0 in seen:
                continue
            face = []
            x = x0
            while True:
                seen.add(x)
                for i in range(L):
                    face.append(walk[i] * size + x)
                    x ^= labels[es[i]]
                if x == x0:
                    break
            out_faces.append(tuple(face))
    return CoverResult(
        cover, FaceSet.of(out_faces), projection, size, _count_components(cover),
        metadata={"k": k, "labels": list(labels)},
    )


def even_polyhedral_cover(g: CubicGraph, faces, cap: int = DEFAULT_EDGE_CAP) -> CoverResult:
    """Label edge ``e`` with the generator ``2^e`` of Z2^m; every face lifts at double length."""
    if g.m > cap:
        raise TooLarge(f"{g.m} edges exceeds the cap of {cap} (cover would have 2^{g.m} sheets)", g.m)
    for u, v in g.edges:
        if u == v:
            raise SelfLoop("map has a self-loop", (u, v))
    res = voltage_cover(g, faces, [1 << e for e in range(g.m)], g.m)
    res.metadata["mode"] = "full"
    return res


def cover_surface_ok(res: CoverResult) -> bool:
    """Manifold, polyhedral and all faces even, checked on the cover itself."""
    try:
        if not check_manifold(res.graph, res.faces):
            return False
    except FaceNotCycle:
        return False
    if any(len(f) % 2 for f in res.faces):
        return False
    return bool(check_polyhedral(res.graph, res.faces))


@dataclass(frozen=True)
class RandomCoverRun:
    result: CoverResult | None
    attempts: int
    seed: int
    k: int


def reduced_cover(g: CubicGraph, faces, k: int, seed: int, budget: int = 64) -> RandomCoverRun:
    """Random labels in Z2^k from ``random.Random(seed)``; keep the first polyhedral even cover."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        labels = [rng.randrange(1 << k) for _ in range(g.m)]
        try:
            res = voltage_cover(g, faces, labels, k)
        except (SelfLoop, ParallelEdge):
            continue
        if cover_surface_ok(res):
            res.metadata.update({"mode": "random", "seed": seed, "attempts": attempt})
            return RandomCoverRun(res, attempt, seed, k)
    return RandomCoverRun(None, budget, seed, k)


# ---------------------------------------------------------------------------
# Sixfold cover
# ---------------------------------------------------------------------------

_PERMS = tuple(itertools.permutations(range(3)))


def _require_even_polyhedral(g: CubicGraph, faces: FaceSet) -> None:
    if not is_connected(g):
        raise PreconditionViolated("map must be connected", "connected")
    try:
        man = check_manifold(g, faces)
    except FaceNotCycle as exc:
        raise PreconditionViolated(f"faces must be simple cycles: {exc}", "manifold") from exc
    if not man:
        raise PreconditionViolated("every edge must lie on exactly two faces", "manifold")
    poly = check_polyhedral(g, faces)
    if not poly:
        raise PreconditionViolated(f"faces {poly.witness} share more than one edge", "polyhedral")
    odd = [i for i, f in enumerate(faces) if len(f) % 2]
    if odd:
        raise PreconditionViolated(f"face {odd[0]} has odd length", "even-faces")


def _face_pairs(g: CubicGraph, faces: FaceSet) -> dict[tuple[int, int], tuple[int, int]]:
    """(face, vertex) -> the two edges of that face at that vertex."""
    out = {}
    for f, face in enumerate(faces):
        L = len(face)
        for i, v in enumerate(face):
            a = g.edge_id(face[i - 1], v)
            b = g.edge_id(v, face[(i + 1) % L])
            out[(f, v)] = (a, b)
    return out


def _edge_faces(g: CubicGraph, faces: FaceSet) -> list[list[int]]:
    ef: list[list[int]] = [[] for _ in range(g.m)]
    for f, pairs in enumerate(faces):
        L = len(pairs)
        for i in range(L):
            ef[g.edge_id(pairs[i], pairs[(i + 1) % L])].append(f)
    return ef


def sixfold_cover(g: CubicGraph, faces: FaceSet) -> CoverResult:
    """Cover whose vertices are (v, assignment of distinct axes to v's edges).

    Vertex ``(v, s)`` has id ``6*v + s`` with ``s`` indexing the
    permutations of ``(0,1,2)`` in lexicographic order, read against
    ``g.incident[v]``. Crossing edge ``e = vw`` keeps e's axis and hands each
    face's other axis across to the face's next edge at w.
    """
    _require_even_polyhedral(g, faces)
    pairs = _face_pairs(g, faces)
    ef = _edge_faces(g, faces)
    pos = {p: i for i, p in enumerate(_PERMS)}

    def step(v: int, s: int, e: int) -> tuple[int, int]:
        w = g.other(e, v)
        axis_v = dict(zip(g.incident[v], _PERMS[s]))
        new = {e: axis_v[e]}
        for f in ef[e]:
            ev = next(x for x in pairs[(f, v)] if x != e)
            ew = next(x for x in pairs[(f, w)] if x != e)
            new[ew] = axis_v[ev]
        return w, pos[tuple(new[x] for x in g.incident[w])]

    edges = []
    for e, (u, w) in enumerate(g.edges):
        for s in range(6):
            w2, t = step(u, s, e)
            edges.append((6 * u + s, 6 * w2 + t))
    cover = CubicGraph(6 * g.n, tuple(edges))
    out_faces, colors = [], []
    for face in faces:
        L = len(face)
        for s0 in range(6):
            v, s = face[0], s0
            cyc = []
            for i in range(L):
                cyc.append(6 * v + s)
                e = g.edge_id(v, face[(i + 1) % L])
                v, s = step(v, s, e)
            if (v, s) != (face[0], s0):
                raise AssertionError("lifted face failed to close")
            e0 = g.edge_id(face[0], face[1])
            e1 = g.edge_id(face[0], face[-1])
            perm = dict(zip(g.incident[face[0]], _PERMS[s0]))
            (missing,) = {0, 1, 2} - {perm[e0], perm[e1]}
            out_faces.append(tuple(cyc))
            colors.append(AXES[missing])
    projection = tuple(v for v in range(g.n) for _ in range(6))
    c = _count_components(cover)
    return CoverResult(
        cover, FaceSet.of(out_faces), projection, 6, c, tuple(colors),
        metadata={"mode": "sixfold", "case": 6 // c},
    )


def cover_component(res: CoverResult, index: int = 0):
    """Component ``index`` (ordered by smallest vertex) relabelled from 0.

    Returns ``(graph, faces, colors, projection)``.
    """
    comps = sorted(sorted(cmp) for cmp in components(res.graph))
    keep = comps[index]
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in res.graph.edges if u in new]
    g = CubicGraph(len(keep), tuple(edges))
    faces, colors = [], []
    for i, f in enumerate(res.faces):
        if f[0] in new:
            faces.append(tuple(new[v] for v in f))
            if res.colors is not None:
                colors.append(res.colors[i])
    proj = tuple(res.projection[v] for v in keep)
    return g, FaceSet.of(faces), (tuple(colors) if res.colors is not None else None), proj


# ---------------------------------------------------------------------------
# Case prediction
# ---------------------------------------------------------------------------


def edge_orientation_flips(g: CubicGraph, faces: FaceSet) -> list[bool]:
    """Per edge: does transporting the local rotation across it reverse it?

    Each vertex v carries the rotation ``g.incident[v]``. Across ``e = uv``
    the rotation ``(e, a, b)`` at u arrives at w as ``(e, c_b, c_a)`` where
    ``c_a`` is the edge following ``a``'s face past e; the edge flips when
    that disagrees with w's own rotation.
    """
    pairs = _face_pairs(g, faces)
    ef = _edge_faces(g, faces)

    def rotated(v: int, e: int) -> tuple[int, int]:
        r = list(g.incident[v])
        i = r.index(e)
        return r[(i + 1) % 3], r[(i + 2) % 3]

    def face_with(v: int, e: int, other: int) -> int:
        return next(f for f in ef[e] if other in pairs[(f, v)])

    flips = []
    for e, (u, w) in enumerate(g.edges):
        a, b = rotated(u, e)
        fa, fb = face_with(u, e, a), face_with(u, e, b)
        ca = next(x for x in pairs[(fa, w)] if x != e)
        cb = next(x for x in pairs[(fb, w)] if x != e)
        flips.append(rotated(w, e) != (cb, ca))
    return flips


def walk_voltages(g: CubicGraph, faces: FaceSet) -> set[tuple[int, int]]:
    """(length parity, orientation flip) pairs realised by closed walks at vertex 0.

    Breadth-first search on the four-state product of the graph with Z2 x Z2.
    """
    flips = edge_orientation_flips(g, faces)
    start = (0, 0, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        v, p, o = queue.popleft()
        for e in g.incident[v]:
            state = (g.other(e, v), p ^ 1, o ^ int(flips[e]))
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return {(p, o) for v, p, o in seen if v == 0}


def classify_cover_case(g: CubicGraph, faces: FaceSet) -> int:
    """Predicted ply of the sixfold cover's components, from the map alone."""
    _require_even_polyhedral(g, faces)
    if check_xyz_surface(g, faces) is not None:
        return 1
    if perfect_face_cover(g, faces) is not None:
        return 2
    volts = walk_voltages(g, faces)
    # ply three exactly when no closed walk is odd and orientation-preserving
    # or even and orientation-reversing
    if (1, 0) in volts or (0, 1) in volts:
        return 6
    return 3


def orientable_by_walks(g: CubicGraph, faces: FaceSet) -> bool:
    """Orientability from the rotation transport; agrees with :func:`orient_faces`."""
    return all(o == 0 for _, o in walk_voltages(g, faces))


__all__ = [
    "CoverResult",
    "RandomCoverRun",
    "classify_cover_case",
    "cover_component",
    "cover_surface_ok",
    "edge_orientation_flips",
    "even_polyhedral_cover",
    "is_covering",
    "orientable_by_walks",
    "reduced_cover",
    "sixfold_cover",
    "voltage_cover",
    "walk_voltages",
]
