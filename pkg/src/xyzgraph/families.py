"""Generators for the concrete graphs and surfaces used throughout the package."""

from __future__ import annotations

import re
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .embed import Embedding3D, faces_from_embedding
from .errors import (
    DegenerateVector,
    GroupTooLarge,
    MalformedDocument,
    NotAManifoldMap,
    NotCubicCayley,
    UnknownName,
)
from .graph import CubicGraph, graph_from_edges
from .recognize import MatchingPartition
from .surface import AXES, FaceSet, face_edges


class MapInstance(NamedTuple):
    """Graph, faces and (when known) a face colouring; unpacks as a triple."""

    graph: CubicGraph
    faces: FaceSet
    colors: tuple[str, ...] | None


# ---------------------------------------------------------------------------
# Small named graphs
# ---------------------------------------------------------------------------


def prism(m: int) -> CubicGraph:
    """Two m-cycles ``0..m-1`` and ``m..2m-1`` joined by rungs ``i -- m+i``.

    Edge order: top cycle, bottom cycle, rungs.
    """
    if m < 3:
        raise ValueError("prism needs m >= 3")
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(m + i, m + (i + 1) % m) for i in range(m)]
    edges += [(i, m + i) for i in range(m)]
    return graph_from_edges(edges, 2 * m)


def generalized_petersen(n: int, k: int) -> CubicGraph:
    """GP(n,k): outer cycle ``0..n-1``, spokes ``i -- n+i``, inner star ``n+i -- n+i+k``."""
    if n < 3 or not 1 <= k < n / 2:
        raise ValueError(f"GP({n},{k}) needs n >= 3 and 1 <= k < n/2")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    return graph_from_edges(edges, 2 * n)


def lcf(jumps: Sequence[int], repeat: int) -> CubicGraph:
    """Hamiltonian cycle ``0..n-1`` plus chords from LCF notation."""
    seq = list(jumps) * repeat
    n = len(seq)
    edges = [(i, (i + 1) % n) for i in range(n)]
    seen = set()
    for i, j in enumerate(seq):
        w = (i + j) % n
        key = (min(i, w), max(i, w))
        if key not in seen:
            seen.add(key)
            edges.append(key)
    return graph_from_edges(edges, n)


def complete_bipartite_33() -> CubicGraph:
    """K3,3 with sides ``0,1,2`` and ``3,4,5``."""
    return graph_from_edges([(a, b) for a in range(3) for b in range(3, 6)], 6)


def k4() -> CubicGraph:
    return graph_from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4)


def mobius_ladder(n: int) -> CubicGraph:
    """Rim ``0..n-1`` plus the diagonals ``i -- i+n/2``."""
    if n < 4 or n % 2:
        raise ValueError("mobius_ladder needs even n >= 4")
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, i + n // 2) for i in range(n // 2)]
    return graph_from_edges(edges, n)


_BUILTINS: dict[str, Callable[[], CubicGraph]] = {
    "k4": k4,
    "k33": complete_bipartite_33,
    "cube": lambda: prism(4),
    "petersen": lambda: generalized_petersen(5, 2),
    "heawood": lambda: lcf([5, -5], 7),
    "pappus": lambda: lcf([5, 7, -7, 7, -7, -5], 3),
    "desargues": lambda: generalized_petersen(10, 3),
    "mobius_kantor": lambda: generalized_petersen(8, 3),
    "dodecahedron": lambda: generalized_petersen(10, 2),
    "durer": lambda: generalized_petersen(6, 2),
    "dyck": lambda: grid_mod(4)[0],
}


def builtin_names() -> list[str]:
    return sorted(set(_BUILTINS) | set(_BUILTIN_MAPS))


def builtin(name: str) -> CubicGraph:
    """Named graph. Generalised Petersen graphs use :func:`generalized_petersen` numbering,
    Heawood and Pappus use LCF numbering along their Hamiltonian cycle."""
    key = name.lower().replace("-", "_")
    if key in _BUILTINS:
        return _BUILTINS[key]()
    if key in _BUILTIN_MAPS:
        return _BUILTIN_MAPS[key]().graph
    raise UnknownName(f"unknown graph name {name!r}; known: {', '.join(builtin_names())}", name)


# ---------------------------------------------------------------------------
# Polygonal maps (multigraphs allowed) and graph-encoded maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolygonalMap:
    """Embedded multigraph: ``faces[f]`` is the cyclic sequence of edge ids around f."""

    n: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]

    def face_vertices(self, f: int) -> tuple[int, ...]:
        es = self.faces[f]
        out = []
        for k, e in enumerate(es):
            nxt = self.edges[es[(k + 1) % len(es)]]
            a, b = self.edges[e]
            out.append(b if b in nxt else a)
        # vertex shared by edge k and edge k+1 comes after edge k; rotate so
        # the first listed vertex starts edge 0
        return tuple(out[-1:] + out[:-1])

    def euler_characteristic(self) -> int:
        return self.n - len(self.edges) + len(self.faces)


def map_of(g: CubicGraph, faces: FaceSet) -> PolygonalMap:
    return PolygonalMap(g.n, g.edges, tuple(face_edges(g, f) for f in faces))


def torus_grid(a: int, b: int) -> PolygonalMap:
    """a-by-b grid of squares on the torus; vertex ``(i,j)`` has id ``i*b+j``.

    Edge ``2*(i*b+j)`` runs ``(i,j)->(i,j+1)``, edge ``2*(i*b+j)+1`` runs
    ``(i,j)->(i+1,j)``; face ``i*b+j`` is the square with corner ``(i,j)``.
    """
    if a < 2 or b < 2:
        raise ValueError("torus_grid needs both sides >= 2")

    def vid(i, j):
        return (i % a) * b + (j % b)

    edges = []
    for i in range(a):
        for j in range(b):
            edges.append((vid(i, j), vid(i, j + 1)))
            edges.append((vid(i, j), vid(i + 1, j)))

    def h(i, j):
        return 2 * vid(i, j)

    def v(i, j):
        return 2 * vid(i, j) + 1

    faces = tuple((h(i, j), v(i, j + 1), h(i + 1, j), v(i, j)) for i in range(a) for j in range(b))
    return PolygonalMap(a * b, tuple(edges), faces)


@dataclass(frozen=True)
class GEM:
    """Flag graph of a map. ``flags[i] = (vertex, edge, face)`` of the base map.

    Edge classes: ``"x"`` joins flags differing in the vertex, ``"y"`` in the
    edge, ``"z"`` in the face. Faces of colour ``x`` come from base vertices,
    ``y`` from base edges (always quadrilaterals) and ``z`` from base faces.
    """

    graph: CubicGraph
    faces: FaceSet
    colors: tuple[str, ...]
    flags: tuple[tuple[int, int, int], ...]
    edge_class: tuple[str, ...]

    @property
    def instance(self) -> MapInstance:
        return MapInstance(self.graph, self.faces, self.colors)


def gem(m: PolygonalMap | tuple) -> GEM:
    """Graph-encoded map of a manifold map whose faces are simple cycles."""
    if not isinstance(m, PolygonalMap):
        m = map_of(m[0], m[1])
    nfaces_of_edge: list[list[int]] = [[] for _ in m.edges]
    for f, es in enumerate(m.faces):
        if len(es) < 3:
            raise NotAManifoldMap(f"face {f} has fewer than three edges", f)
        verts = m.face_vertices(f)
        if len(set(verts)) != len(verts):
            raise NotAManifoldMap(f"face {f} is not bounded by a simple cycle", f)
        for e in es:
            nfaces_of_edge[e].append(f)
    for e, fs in enumerate(nfaces_of_edge):
        if len(fs) != 2 or fs[0] == fs[1]:
            raise NotAManifoldMap(f"edge {e} must lie on two distinct faces, found {fs}", e)
        a, b = m.edges[e]
        if a == b:
            raise NotAManifoldMap(f"edge {e} is a loop", e)

    flags: list[tuple[int, int, int]] = []
    fid: dict[tuple[int, int, int], int] = {}
    for f, es in enumerate(m.faces):
        verts = m.face_vertices(f)
        for k, e in enumerate(es):
            for v in (verts[k], verts[(k + 1) % len(es)]):
                fid[(v, e, f)] = len(flags)
                flags.append((v, e, f))

    other_edge: dict[tuple[int, int], int] = {}  # (face, vertex) -> the pair of edges
    for f, es in enumerate(m.faces):
        verts = m.face_vertices(f)
        L = len(es)
        for k in range(L):
            v = verts[(k + 1) % L]
            other_edge[(f, v, es[k])] = es[(k + 1) % L]
            other_edge[(f, v, es[(k + 1) % L])] = es[k]

    edges = []
    classes = []
    for i, (v, e, f) in enumerate(flags):
        a, b = m.edges[e]
        partners = (
            ("x", (b if v == a else a, e, f)),
            ("y", (v, other_edge[(f, v, e)], f)),
            ("z", (v, e, next(h for h in nfaces_of_edge[e] if h != f))),
        )
        for cls, p in partners:
            j = fid[p]
            if i < j:
                edges.append((i, j))
                classes.append(cls)
    g = graph_from_edges(edges, len(flags))

    def walk(start: int, classes_cycle: tuple[str, str]) -> tuple[int, ...]:
        cyc = [start]
        cur, step = start, 0
        while True:
            cls = classes_cycle[step % 2]
            nxt = next(g.other(e, cur) for e in g.incident[cur] if classes[e] == cls)
            step += 1
            if nxt == start:
                return tuple(cyc)
            cyc.append(nxt)
            cur = nxt

    faces, colors = [], []
    seen = {c: set() for c in AXES}
    # vertex faces alternate y,z; edge faces alternate x,z; face faces alternate x,y
    for color, pair in (("x", ("y", "z")), ("y", ("x", "z")), ("z", ("x", "y"))):
        for i in range(len(flags)):
            if i in seen[color]:
                continue
            cyc = walk(i, pair)
            seen[color].update(cyc)
            faces.append(cyc)
            colors.append(color)
    # link check: each base vertex must give exactly one vertex face
    vertex_faces = [f for f, c in zip(faces, colors) if c == "x"]
    owners = [flags[f[0]][0] for f in vertex_faces]
    if len(set(owners)) != len(owners):
        v = next(x for x in owners if owners.count(x) > 1)
        raise NotAManifoldMap(f"the neighbourhood of vertex {v} is not a disk", v)
    return GEM(g, FaceSet.of(faces), tuple(colors), tuple(flags), tuple(classes))


def tetrahedron_map() -> PolygonalMap:
    g = k4()
    faces = FaceSet.of([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    return map_of(g, faces)


def k33_projective_map() -> PolygonalMap:
    """K3,3 in the projective plane: hexagon a0 b0 a1 b1 a2 b2 and three quadrilaterals.

    Vertices ``a0,a1,a2 = 0,1,2`` and ``b0,b1,b2 = 3,4,5``.
    """
    g = complete_bipartite_33()
    faces = FaceSet.of([(0, 3, 1, 4, 2, 5), (0, 4, 1, 5), (1, 5, 2, 3), (2, 3, 0, 4)])
    return map_of(g, faces)


def _k33_projective_instance() -> MapInstance:
    g = complete_bipartite_33()
    return MapInstance(g, FaceSet.of([(0, 3, 1, 4, 2, 5), (0, 4, 1, 5), (1, 5, 2, 3), (2, 3, 0, 4)]), None)


# Two embeddings of GP(8,3) found by a search over rotation systems and
# stored as data: eight hexagons on the torus (polyhedral), and six octagons
# on the double torus (two octagons meet in more than one edge).
_MOBIUS_KANTOR_HEXAGONS = (
    (0, 1, 9, 14, 11, 8), (1, 0, 7, 15, 10, 2), (1, 2, 3, 4, 12, 9), (3, 2, 10, 13, 8, 11),
    (4, 3, 11, 14, 6, 5), (4, 5, 13, 10, 15, 12), (5, 6, 7, 0, 8, 13), (7, 6, 14, 9, 12, 15),
)
_MOBIUS_KANTOR_OCTAGONS = (
    (0, 1, 9, 12, 4, 5, 13, 8), (1, 0, 7, 6, 5, 4, 3, 2), (1, 2, 10, 13, 5, 6, 14, 9),
    (2, 3, 11, 14, 6, 7, 15, 10), (3, 4, 12, 15, 7, 0, 8, 11), (11, 8, 13, 10, 15, 12, 9, 14),
)


def _mobius_kantor_torus() -> MapInstance:
    return MapInstance(generalized_petersen(8, 3), FaceSet.of(_MOBIUS_KANTOR_HEXAGONS), None)


def _mobius_kantor_genus2() -> MapInstance:
    return MapInstance(generalized_petersen(8, 3), FaceSet.of(_MOBIUS_KANTOR_OCTAGONS), None)


def _cube_instance() -> MapInstance:
    g = prism(4)
    faces = FaceSet.of([(0, 1, 2, 3), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7)])
    return MapInstance(g, faces, ("z", "z", "y", "x", "y", "x"))


def _tetrahedron_instance() -> MapInstance:
    return MapInstance(k4(), FaceSet.of([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]), None)


_BUILTIN_MAPS: dict[str, Callable[[], MapInstance]] = {
    "tetrahedron_map": _tetrahedron_instance,
    "k33_projective": _k33_projective_instance,
    "mobius_kantor_torus": _mobius_kantor_torus,
    "mobius_kantor_genus2": _mobius_kantor_genus2,
    "cube_map": _cube_instance,
}


def builtin_map(name: str) -> MapInstance:
    key = name.lower().replace("-", "_")
    if key not in _BUILTIN_MAPS:
        raise UnknownName(f"unknown map name {name!r}; known: {', '.join(sorted(_BUILTIN_MAPS))}", name)
    return _BUILTIN_MAPS[key]()


def mobius_ladder_map(n: int) -> tuple[CubicGraph, tuple[tuple[int, ...], ...]]:
    """Möbius ladder with its rim n-gon and one closed 2n-walk face.

    The long face alternates rim steps ``+1`` and diagonal steps ``+n/2`` and
    passes every vertex twice, so it is returned as a closed walk rather than
    a :class:`FaceSet`.
    """
    if n < 4 or n % 4:
        raise ValueError("mobius_ladder_map needs n a positive multiple of 4")
    g = mobius_ladder(n)
    walk = [0]
    for t in range(2 * n - 1):
        walk.append((walk[-1] + (1 if t % 2 == 0 else n // 2)) % n)
    return g, (tuple(range(n)), tuple(walk))


# ---------------------------------------------------------------------------
# Cube-connected cycles
# ---------------------------------------------------------------------------


def ccc(n: int) -> MapInstance:
    """Cube-connected cycles with vertex ``(x,y)`` numbered ``x*n + y``.

    Faces are the cycles ``c_x`` and the octagons ``e_{x,i}`` (deduplicated,
    first occurrence in increasing x kept). Even n also gets the colouring
    c / e with even i / e with odd i.
    """
    if n < 3:
        raise ValueError("ccc needs n >= 3")
    N = 1 << n

    def vid(x, y):
        return x * n + y

    edges = []
    for x in range(N):
        for y in range(n):
            edges.append((vid(x, y), vid(x, (y + 1) % n)))
    for x in range(N):
        for y in range(n):
            w = x ^ (1 << y)
            if x < w:
                edges.append((vid(x, y), vid(w, y)))
    g = graph_from_edges(edges, n * N)
    faces, colors = [], []
    for x in range(N):
        faces.append(tuple(vid(x, y) for y in range(n)))
        colors.append("x")
    seen = set()
    for i in range(n):
        j = (i + 1) % n
        bi, bj = 1 << i, 1 << j
        for x in range(N):
            cyc = (
                vid(x, i), vid(x ^ bi, i), vid(x ^ bi, j), vid(x ^ bi ^ bj, j),
                vid(x ^ bi ^ bj, i), vid(x ^ bj, i), vid(x ^ bj, j), vid(x, j),
            )
            key = frozenset(cyc)
            if key in seen:
                continue
            seen.add(key)
            faces.append(cyc)
            colors.append("y" if i % 2 == 0 else "z")
    return MapInstance(g, FaceSet.of(faces), tuple(colors) if n % 2 == 0 else None)


# ---------------------------------------------------------------------------
# Toroidal families
# ---------------------------------------------------------------------------


def grid_mod(k: int) -> tuple[CubicGraph, Embedding3D]:
    """Points of the k-cube grid with coordinate sum 0 or 1 mod k, in lexicographic order."""
    if k < 3:
        raise ValueError("grid_mod needs k >= 3")
    pts = [
        (x, y, z)
        for x in range(k)
        for y in range(k)
        for z in range(k)
        if (x + y + z) % k in (0, 1)
    ]
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for i, p in enumerate(pts):
        for a in range(3):
            for val in range(k):
                if val == p[a]:
                    continue
                q = list(p)
                q[a] = val
                j = index.get(tuple(q))
                if j is not None and i < j:
                    edges.append((i, j))
    return graph_from_edges(edges, len(pts)), Embedding3D(tuple(pts))


def grid_mod_surface(k: int) -> MapInstance:
    g, e = grid_mod(k)
    faces, colors = faces_from_embedding(g, e)
    return MapInstance(g, faces, colors)


def _hnf(v1: tuple[int, int], v2: tuple[int, int]) -> tuple[int, int, int]:
    """Basis ``(a,0), (c,d)`` with ``0 <= c < a`` of the lattice spanned by v1, v2."""
    r1, r2 = list(v1), list(v2)
    while r2[1] != 0:
        q = r1[1] // r2[1]
        r1 = [r1[0] - q * r2[0], r1[1] - q * r2[1]]
        r1, r2 = r2, r1
    a = abs(r2[0])
    c, d = r1
    if d < 0:
        c, d = -c, -d
    if a == 0 or d == 0:
        raise DegenerateVector(f"vectors {v1} and {v2} do not span a lattice")
    return a, c % a, d


@dataclass(frozen=True)
class HexTorus:
    """Torus quotient of the hexagonal tiling by the lattice spanned by two centre vectors.

    Hexagon centres are points ``(i,j)`` of the triangular lattice; tiling
    vertices are its triangles ``("U",i,j) = {(i,j),(i+1,j),(i,j+1)}`` and
    ``("D",i,j) = {(i+1,j),(i,j+1),(i+1,j+1)}``.
    """

    graph: CubicGraph
    faces: FaceSet
    colors: tuple[str, ...] | None
    triangles: tuple[tuple[str, int, int], ...]
    centres: tuple[tuple[int, int], ...]

    @property
    def instance(self) -> MapInstance:
        return MapInstance(self.graph, self.faces, self.colors)


def hex_torus(v1: tuple[int, int], v2: tuple[int, int]) -> HexTorus:
    a, c, d = _hnf(tuple(v1), tuple(v2))

    def reduce(i, j):
        t = j // d
        i, j = i - t * c, j - t * d
        return i % a, j

    triangles = []
    tid = {}
    for j in range(d):
        for i in range(a):
            for kind in ("U", "D"):
                tid[(kind, i, j)] = len(triangles)
                triangles.append((kind, i, j))

    def T(kind, i, j):
        return tid[(kind, *reduce(i, j))]

    edges = []
    for j in range(d):
        for i in range(a):
            u = T("U", i, j)
            for w in (T("D", i, j), T("D", i - 1, j), T("D", i, j - 1)):
                edges.append((u, w))
    g = graph_from_edges(edges, len(triangles))
    faces, centres = [], []
    for j in range(d):
        for i in range(a):
            centres.append((i, j))
            faces.append((
                T("U", i, j), T("D", i - 1, j), T("U", i - 1, j),
                T("D", i - 1, j - 1), T("U", i, j - 1), T("D", i, j - 1),
            ))
    colors = None
    if all((v[0] - v[1]) % 3 == 0 for v in (v1, v2)):
        colors = tuple(AXES[(i - j) % 3] for i, j in centres)
    return HexTorus(g, FaceSet.of(faces), colors, tuple(triangles), tuple(centres))


def hex_rhombus_torus(p: int, q: int) -> MapInstance:
    """Rhombus with sides ``(p,q)`` and its 60-degree rotation ``(-q,p+q)``.

    The rhombus holds ``p*p + p*q + q*q`` hexagons; its corners must be
    hexagon centres of one colour, i.e. ``p = q (mod 3)``.
    """
    if (p, q) == (0, 0) or (p - q) % 3:
        raise DegenerateVector(f"({p},{q}) is not a nonzero vector of the same-colour sublattice", (p, q))
    return hex_torus((p, q), (-q, p + q)).instance


def truncated_square_torus(v1: tuple[int, int], v2: tuple[int, int]) -> MapInstance:
    """Torus quotient of the square-octagon tiling by the lattice spanned by v1, v2.

    Square ``(i,j)`` (centre ``(i+1/2, j+1/2)``) has corners ``E,N,W,S``
    with ids ``4*s + d``; octagons sit at integer points. Squares form a
    perfect face cover. The colouring (squares / two octagon classes) is
    returned only when both vectors have even coordinate sum.
    """
    a, c, d = _hnf(tuple(v1), tuple(v2))

    def sq(i, j):
        t = j // d
        i, j = i - t * c, j - t * d
        return j * a + (i % a)

    E, N, W, S = range(4)

    def V(i, j, k):
        return 4 * sq(i, j) + k

    edges = []
    for j in range(d):
        for i in range(a):
            edges += [(V(i, j, E), V(i, j, N)), (V(i, j, N), V(i, j, W)),
                      (V(i, j, W), V(i, j, S)), (V(i, j, S), V(i, j, E))]
            edges += [(V(i, j, E), V(i + 1, j, W)), (V(i, j, N), V(i, j + 1, S))]
    g = graph_from_edges(edges, 4 * a * d)
    faces, colors = [], []
    for j in range(d):
        for i in range(a):
            faces.append((V(i, j, E), V(i, j, N), V(i, j, W), V(i, j, S)))
            colors.append("x")
    for j in range(d):
        for i in range(a):
            faces.append((
                V(i, j, S), V(i, j, W), V(i - 1, j, E), V(i - 1, j, S),
                V(i - 1, j - 1, N), V(i - 1, j - 1, E), V(i, j - 1, W), V(i, j - 1, N),
            ))
            colors.append("y" if (i + j) % 2 == 0 else "z")
    even = all((x + y) % 2 == 0 for x, y in (v1, v2))
    return MapInstance(g, FaceSet.of(faces), tuple(colors) if even else None)


def quotient_by_involution(g: CubicGraph, faces: FaceSet, perm: Sequence[int]) -> tuple[MapInstance, list[int]]:
    """Quotient of a map by a fixed-point-free involutive automorphism.

    Returns the quotient map and the projection (vertex -> orbit id, orbits
    numbered by their smaller vertex).
    """
    n = g.n
    if sorted(perm) != list(range(n)) or any(perm[perm[v]] != v or perm[v] == v for v in range(n)):
        raise ValueError("perm must be a fixed-point-free involution")
    for u, v in g.edges:
        if not g.has_edge(perm[u], perm[v]):
            raise ValueError(f"edge ({u},{v}) is not mapped to an edge")
        if {perm[u], perm[v]} == {u, v}:
            raise ValueError(f"edge ({u},{v}) is fixed by the involution")
    reps = sorted(min(v, perm[v]) for v in range(n) if v < perm[v])
    orbit = {}
    for i, r in enumerate(reps):
        orbit[r] = orbit[perm[r]] = i
    edges = sorted({tuple(sorted((orbit[u], orbit[v]))) for u, v in g.edges})
    q = graph_from_edges(edges, len(reps))
    keys = {}
    for f in faces:
        keys[frozenset(f)] = f
    out = []
    done = set()
    for f in faces:
        key = frozenset(f)
        image = frozenset(perm[v] for v in f)
        if image not in keys:
            raise ValueError("faces are not permuted by the involution")
        if image == key:
            raise ValueError("a face is mapped to itself")
        if key in done:
            continue
        done.update((key, image))
        out.append(tuple(orbit[v] for v in f))
    return MapInstance(q, FaceSet.of(out), None), [orbit[v] for v in range(n)]


def hex_klein_bottle(p: int, t: int) -> MapInstance:
    """Hexagonal tiling modulo a glide reflection along the hexagon-centre columns.

    The double cover is ``hex_torus((p,0), (-t,2t))`` and the glide maps
    centre ``(i,j)`` to ``(-i-j-t/2, j+t)``. ``t`` must be even.
    """
    if t % 2 or t <= 0 or p <= 0:
        raise DegenerateVector(f"need p > 0 and even t > 0, got ({p},{t})", (p, t))
    torus = hex_torus((p, 0), (-t, 2 * t))
    a, c, d = _hnf((p, 0), (-t, 2 * t))

    def reduce(i, j):
        s = j // d
        i, j = i - s * c, j - s * d
        return i % a, j

    index = {tri: k for k, tri in enumerate(torus.triangles)}
    half = t // 2
    perm = []
    for kind, i, j in torus.triangles:
        if kind == "U":
            img = ("U", *reduce(-i - j - 1 - half, j + t))
        else:
            img = ("D", *reduce(-i - j - 2 - half, j + t))
        perm.append(index[img])
    quotient, _ = quotient_by_involution(torus.graph, torus.faces, perm)
    return quotient


# ---------------------------------------------------------------------------
# The ambiguous torus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmbiguousTorus:
    """Graph-encoded map of the 2k-by-2k torus grid.

    Its 8k^2 quadrilateral faces are the diamonds; ``u,v`` are the ends of the
    lowest-id edge joining two diamonds.
    """

    k: int
    gem: GEM
    u: int
    v: int

    @property
    def graph(self) -> CubicGraph:
        return self.gem.graph


def ambiguous_torus(k: int) -> AmbiguousTorus:
    if k < 1:
        raise ValueError("ambiguous_torus needs k >= 1")
    G = gem(torus_grid(2 * k, 2 * k))
    e = G.edge_class.index("y")
    u, v = G.graph.edges[e]
    return AmbiguousTorus(k, G, u, v)


def ambiguous_torus_projection(k: int) -> list[int]:
    """Covering map from ``ambiguous_torus(k)`` onto ``ambiguous_torus(1)`` as a vertex list."""
    big = ambiguous_torus(k).gem
    small = ambiguous_torus(1).gem
    side = 2 * k
    small_index = {fl: i for i, fl in enumerate(small.flags)}
    big_grid = torus_grid(side, side)
    small_grid = torus_grid(2, 2)

    def face_rc(f, b):
        return divmod(f, b)

    out = []
    for v, e, f in big.flags:
        fi, fj = face_rc(f, side)
        sf = (fi % 2) * 2 + (fj % 2)
        pos = big_grid.faces[f].index(e)
        se = small_grid.faces[sf][pos]
        vpos = big_grid.face_vertices(f).index(v)
        sv = small_grid.face_vertices(sf)[vpos]
        out.append(small_index[(sv, se, sf)])
    return out


# ---------------------------------------------------------------------------
# Cayley graphs
# ---------------------------------------------------------------------------


Perm = tuple[int, ...]


def parse_cycles(text: str, degree: int) -> Perm:
    """Cycle notation with 1-based points, e.g. ``"(12)(34)"`` or ``"(1 2)(3 4)"``."""
    img = list(range(degree))
    for body in re.findall(r"\(([^()]*)\)", text):
        body = body.strip()
        tokens = re.split(r"[,\s]+", body) if re.search(r"[,\s]", body) else list(body)
        pts = [int(t) - 1 for t in tokens if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree:
                raise MalformedDocument(f"point {a + 1} outside 1..{degree}")
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise MalformedDocument(f"{text!r} is not a permutation")
    return tuple(img)


def compose(g: Perm, s: Perm) -> Perm:
    """``(g*s)[i] = g[s[i]]``; Cayley edges join ``g`` to ``g*s``."""
    return tuple(g[i] for i in s)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    ident = tuple(range(len(p)))
    q, k = p, 1
    while q != ident:
        q, k = compose(q, p), k + 1
    return k


def is_even(p: Perm) -> bool:
    seen = [False] * len(p)
    transpositions = 0
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            transpositions += length - 1
    return transpositions % 2 == 0


@dataclass(frozen=True)
class PermutationGroupSpec:
    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self) -> None:
        for p in self.generators:
            if len(p) != self.degree or sorted(p) != list(range(self.degree)):
                raise MalformedDocument(f"{p} is not a permutation of degree {self.degree}")

    @classmethod
    def from_cycles(cls, degree: int, *gens: str) -> PermutationGroupSpec:
        return cls(degree, tuple(parse_cycles(t, degree) for t in gens))

    @property
    def involution_flags(self) -> tuple[bool, ...]:
        ident = tuple(range(self.degree))
        return tuple(p != ident and compose(p, p) == ident for p in self.generators)


@dataclass(frozen=True)
class CayleyGraph:
    graph: CubicGraph
    elements: tuple[Perm, ...]
    kind: str  # "involutions" or "ab"
    generator_of_edge: tuple[int, ...]
    generators: tuple[Perm, ...]

    def natural_partition(self) -> MatchingPartition:
        if self.kind != "involutions":
            raise NotCubicCayley("only three-involution Cayley graphs have a natural partition")
        return MatchingPartition(tuple(AXES[i] for i in self.generator_of_edge))

    def ab_faces(self) -> FaceSet:
        """Orbits of ``b`` and alternating ``a,b`` walks that follow ``g -> g*b`` forward."""
        if self.kind != "ab":
            raise NotCubicCayley("face candidates need an (a,b) generator pair")
        a, b = self.generators
        index = {p: i for i, p in enumerate(self.elements)}
        faces = []
        done = set()
        for g in self.elements:
            if g in done:
                continue
            cyc, h = [], g
            while True:
                done.add(h)
                cyc.append(index[h])
                h = compose(h, b)
                if h == g:
                    break
            faces.append(tuple(cyc))
        done = set()
        ab = compose(a, b)
        for g in self.elements:
            if g in done:
                continue
            cyc, h = [], g
            while True:
                done.add(h)
                cyc.append(index[h])
                ha = compose(h, a)
                cyc.append(index[ha])
                h = compose(h, ab)
                if h == g:
                    break
            faces.append(tuple(cyc))
        return FaceSet.of(faces)


def cayley(spec: PermutationGroupSpec, cap: int = 100_000) -> CayleyGraph:
    """Right Cayley graph; vertex ids follow breadth-first order from the identity."""
    gens = spec.generators
    flags = spec.involution_flags
    ident = tuple(range(spec.degree))
    if len(gens) == 3 and all(flags) and len(set(gens)) == 3:
        kind = "involutions"
        steps = list(gens)
    elif len(gens) == 2 and flags[0] and not flags[1] and gens[1] != ident:
        kind = "ab"
        a, b = gens
        if a in (b, inverse(b)):
            raise NotCubicCayley("a must differ from b and its inverse")
        steps = [a, b, inverse(b)]
    else:
        raise NotCubicCayley(
            "need three distinct involutions, or an involution a followed by a non-involution b"
        )
    index = {ident: 0}
    elements = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in steps:
            h = compose(g, s)
            if h not in index:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"group has more than {cap} elements", cap)
                index[h] = len(elements)
                elements.append(h)
                queue.append(h)
    edges, gen_of = [], []
    seen = set()
    use = list(gens) if kind == "involutions" else [gens[0], gens[1]]
    for gi, g in enumerate(elements):
        for si, s in enumerate(use):
            j = index[compose(g, s)]
            key = (min(gi, j), max(gi, j))
            if key in seen:
                continue
            seen.add(key)
            edges.append(key)
            gen_of.append(si)
    graph = graph_from_edges(edges, len(elements))
    return CayleyGraph(graph, tuple(elements), kind, tuple(gen_of), tuple(gens))


# ---------------------------------------------------------------------------
# Census loader
# ---------------------------------------------------------------------------


def load_census(text: str) -> list[tuple[str, CubicGraph]]:
    """Parse an edge-list census file.

    One graph per non-blank line: ``name n u,v u,v ...``; ``#`` starts a comment.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            name, n = parts[0], int(parts[1])
            edges = [tuple(int(x) for x in tok.split(",")) for tok in parts[2:]]
        except (IndexError, ValueError) as exc:
            raise MalformedDocument(f"census line {lineno}: {exc}") from exc
        out.append((name, graph_from_edges(edges, n)))
    return out
