"""Cubic graph representation and the elementary structural predicates.

Vertices are the dense integers ``0..n-1`` and edges get dense ids in the
order they were supplied, so every derived object (faces, partitions,
coordinates) can refer to edges by id and stay reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    Disconnected,
    MalformedDocument,
    NotBiconnected,
    NotCubic,
    ParallelEdge,
    SelfLoop,
)

GRAPH_FORMAT = "xyz-graph/1"


class Check(NamedTuple):
    """Verdict of a predicate plus the object that proves it.

    Truthiness follows ``ok`` so ``if is_triangle_free(g):`` reads naturally.
    """

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CubicGraph:
    """Simple undirected 3-regular graph with stable edge ids.

    ``edges[e]`` is stored as ``(min, max)``; ``adjacency[v]`` lists the three
    neighbours of ``v`` sorted by id and ``incident[v]`` the matching edge ids.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    incident: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n <= 0:
            raise MalformedDocument(f"vertex count must be a positive integer, got {self.n!r}")
        if self.n % 2:
            raise NotCubic(f"a cubic graph needs an even vertex count, got n={self.n}")
        norm = []
        index: dict[tuple[int, int], int] = {}
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            for x in (u, v):
                if not isinstance(x, int) or not 0 <= x < self.n:
                    raise MalformedDocument(f"edge {eid} ({u},{v}) names vertex {x!r} outside 0..{self.n - 1}", eid)
            if u == v:
                raise SelfLoop(f"edge {eid} is a self-loop at vertex {u}", eid)
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise ParallelEdge(f"edge {eid} ({u},{v}) duplicates edge {index[key]}", (index[key], eid))
            index[key] = eid
            norm.append(key)
            nbrs[u].append((v, eid))
            nbrs[v].append((u, eid))
        for v, lst in enumerate(nbrs):
            if len(lst) != 3:
                raise NotCubic(f"vertex {v} has degree {len(lst)}, expected 3", v)
            lst.sort()
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(w for w, _ in lst) for lst in nbrs))
        object.__setattr__(self, "incident", tuple(tuple(e for _, e in lst) for lst in nbrs))
        object.__setattr__(self, "_index", index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def to_dict(self) -> dict:
        return {"format": GRAPH_FORMAT, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h


@dataclass(frozen=True)
class OpenCubicGraph:
    """Graph whose vertices are cubic once their dangling ports are counted.

    ``ports[i] = (name, vertex)``; port order is significant because gadget
    wiring refers to ports by index or by name.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    ports: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        deg = [0] * self.n
        seen = set()
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                raise SelfLoop(f"edge {eid} is a self-loop at vertex {u}", eid)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParallelEdge(f"edge {eid} ({u},{v}) is parallel to an earlier edge", eid)
            seen.add(key)
            deg[u] += 1
            deg[v] += 1
        names = set()
        for name, v in self.ports:
            if name in names:
                raise MalformedDocument(f"duplicate port name {name!r}")
            names.add(name)
            deg[v] += 1
        for v, d in enumerate(deg):
            if d != 3:
                raise NotCubic(f"internal vertex {v} has {d} edges+ports, expected 3", v)

    def port(self, name: str) -> int:
        for pname, v in self.ports:
            if pname == name:
                return v
        raise KeyError(name)

    def port_index(self, name: str) -> int:
        for i, (pname, _) in enumerate(self.ports):
            if pname == name:
                return i
        raise KeyError(name)

    @property
    def port_names(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.ports)


@dataclass(frozen=True)
class StNumbering:
    order: tuple[int, ...]
    split_vertices: frozenset[int]

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


# ---------------------------------------------------------------------------
# JSON I/O
# ---------------------------------------------------------------------------


def graph_from_dict(doc) -> CubicGraph:
    if not isinstance(doc, dict):
        raise MalformedDocument("graph document must be a JSON object")
    if "n" not in doc or "edges" not in doc:
        raise MalformedDocument("graph document needs fields 'n' and 'edges'")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise MalformedDocument(f"'n' must be an integer, got {n!r}")
    edges = []
    for i, pair in enumerate(doc["edges"]):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MalformedDocument(f"edge {i} must be a pair of vertex ids, got {pair!r}", i)
        u, v = pair
        if isinstance(u, bool) or isinstance(v, bool) or not isinstance(u, int) or not isinstance(v, int):
            raise MalformedDocument(f"edge {i} has non-integer endpoints {pair!r}", i)
        edges.append((u, v))
    return CubicGraph(n, tuple(edges))


def parse_graph(text: str | bytes) -> CubicGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    return graph_from_dict(doc)


def serialize_graph(g: CubicGraph) -> str:
    return json.dumps(g.to_dict(), sort_keys=True)


def graph_from_edges(edges: Iterable[tuple[int, int]], n: int | None = None) -> CubicGraph:
    edges = tuple((int(u), int(v)) for u, v in edges)
    if n is None:
        n = 1 + max(max(e) for e in edges)
    return CubicGraph(n, edges)


def relabel(g: CubicGraph, order: Sequence[int]) -> CubicGraph:
    """Graph whose vertex ``i`` is ``order[i]`` of ``g``; edge order preserved."""
    pos = {v: i for i, v in enumerate(order)}
    return CubicGraph(g.n, tuple((pos[u], pos[v]) for u, v in g.edges))


# ---------------------------------------------------------------------------
# Elementary predicates
# ---------------------------------------------------------------------------


def components(g: CubicGraph, removed: Iterable[int] = ()) -> list[list[int]]:
    gone = set(removed)
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s] or s in gone:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if not seen[w] and w not in gone:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: CubicGraph) -> bool:
    return len(components(g)) == 1


def is_bipartite(g: CubicGraph) -> Check:
    """Two-colour by BFS; on failure the witness is an odd closed cycle."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return Check(False, _odd_cycle(parent, v, w))
    return Check(True, tuple("black" if c == 0 else "white" for c in color))


def _odd_cycle(parent: list[int], v: int, w: int) -> tuple[int, ...]:
    def path_to_root(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pv, pw = path_to_root(v), path_to_root(w)
    on_pw = {x: i for i, x in enumerate(pw)}
    for i, x in enumerate(pv):
        if x in on_pw:
            return tuple(pv[: i + 1] + pw[: on_pw[x]][::-1])
    raise AssertionError("BFS tree paths must meet")


def is_triangle_free(g: CubicGraph) -> Check:
    for u in range(g.n):
        a, b, c = g.adjacency[u]
        for x, y in ((a, b), (a, c), (b, c)):
            if g.has_edge(x, y):
                return Check(False, tuple(sorted((u, x, y))))
    return Check(True)


def _articulation_points(g: CubicGraph, removed: int) -> list[int]:
    """Articulation points of ``g - removed`` (assumed connected), iterative DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out = []
    root = 0 if removed != 0 else 1
    timer = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(g.adjacency[root]))]
    while stack:
        v, par, it = stack[-1]
        advanced = False
        for w in it:
            if w == removed or w == par:
                continue
            if disc[w] < 0:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(g.adjacency[w])))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if par >= 0:
            low[par] = min(low[par], low[v])
            if par == root:
                root_children += 1
            elif low[v] >= disc[par]:
                out.append(par)
    if root_children > 1:
        out.append(root)
    return out


def is_three_connected(g: CubicGraph) -> Check:
    """True iff no pair of vertices disconnects ``g``; witness is such a pair.

    Each vertex is deleted in turn and the articulation points of the rest
    are found, which decides every pair deletion in O(n·m).
    """
    if not is_connected(g):
        raise Disconnected("graph is not connected", components(g))
    if g.n <= 4:
        # K4 is the only cubic graph this small; no pair separates it.
        return Check(True)
    for u in range(g.n):
        if len(components(g, [u])) > 1:
            return Check(False, (u,))
        cuts = _articulation_points(g, u)
        if cuts:
            return Check(False, tuple(sorted((u, min(cuts)))))
    return Check(True)


# ---------------------------------------------------------------------------
# st-numbering
# ---------------------------------------------------------------------------


def st_numbering(g: CubicGraph, s: int, t: int) -> StNumbering:
    """st-ordering by the DFS/low-point list insertion method.

    The DFS leaves ``s`` through the tree edge ``st`` first and scans
    neighbours in decreasing id order.
    """
    if not g.has_edge(s, t):
        raise NotBiconnected(f"source {s} and sink {t} must be adjacent")
    n = g.n
    pre = [-1] * n
    parent = [-1] * n
    low = list(range(n))  # vertex with smallest preorder reachable
    preorder = []

    def nbrs(v):
        if v == s:
            return [t] + [w for w in sorted(g.adjacency[v], reverse=True) if w != t]
        return sorted(g.adjacency[v], reverse=True)

    pre[s] = 0
    preorder.append(s)
    stack = [(s, iter(nbrs(s)))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if pre[w] < 0:
                pre[w] = len(preorder)
                preorder.append(w)
                parent[w] = v
                stack.append((w, iter(nbrs(w))))
                advanced = True
                break
            if w != parent[v] and pre[w] < pre[low[v]]:
                low[v] = w
        if advanced:
            continue
        stack.pop()
        p = parent[v]
        if p >= 0 and pre[low[v]] < pre[low[p]]:
            low[p] = low[v]
    if len(preorder) != n:
        raise NotBiconnected("graph is not connected")

    # doubly linked list seeded with s -> t
    nxt = {s: t, t: None}
    prv = {t: s, s: None}
    sign = {s: -1}

    def insert_before(x, y):
        p = prv[y]
        prv[x], nxt[x] = p, y
        prv[y] = x
        if p is not None:
            nxt[p] = x

    def insert_after(x, y):
        q = nxt[y]
        prv[x], nxt[x] = y, q
        nxt[y] = x
        if q is not None:
            prv[q] = x

    for v in preorder[2:]:
        p = parent[v]
        if sign.get(low[v], 1) == -1:
            insert_before(v, p)
            sign[p] = 1
        else:
            insert_after(v, p)
            sign[p] = -1
    order = []
    x = s
    while x is not None:
        order.append(x)
        x = nxt[x]

    pos = {v: i for i, v in enumerate(order)}
    split = set()
    for i, v in enumerate(order):
        earlier = sum(1 for w in g.adjacency[v] if pos[w] < i)
        if 0 < i < n - 1:
            if earlier == 0 or earlier == 3:
                raise NotBiconnected(f"vertex {v} has no {'earlier' if earlier == 0 else 'later'} neighbour", v)
            if earlier == 1:
                split.add(v)
    if order[0] != s or order[-1] != t:
        raise NotBiconnected("st-ordering does not run from s to t")
    return StNumbering(tuple(order), frozenset(split))


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


def is_planar(g: CubicGraph) -> dict[int, list[int]] | None:
    """Clockwise neighbour order per vertex for a planar embedding, else None."""
    import networkx as nx

    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return None
    return {v: list(emb.neighbors_cw_order(v)) for v in range(g.n)}


def rotation_faces(g: CubicGraph, rotation: dict[int, list[int]]) -> list[tuple[int, ...]]:
    """Trace the faces of a rotation system (orientable; every dart used once)."""
    succ = {}
    for v, order in rotation.items():
        k = len(order)
        for i, w in enumerate(order):
            succ[(v, w)] = order[(i + 1) % k]
    used = set()
    faces = []
    for u, v in g.edges:
        for dart in ((u, v), (v, u)):
            if dart in used:
                continue
            face = []
            a, b = dart
            while (a, b) not in used:
                used.add((a, b))
                face.append(a)
                a, b = b, succ[(b, a)]
            faces.append(tuple(face))
    return faces


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def double_cover(g: CubicGraph) -> CubicGraph:
    """Bipartite double cover: ``v`` is the black copy and ``v + n`` the white one."""
    n = g.n
    edges = []
    for u, v in g.edges:
        edges.append((u, v + n))
        edges.append((v, u + n))
    return CubicGraph(2 * n, tuple(edges))
