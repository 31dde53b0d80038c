"""Gadgets for the reduction from graph 3-colouring, their exhaustive
verification, and the assembled reduction."""

from __future__ import annotations

import itertools
import json
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import MalformedDocument, VerificationFailed
from .families import ambiguous_torus, prism
from .graph import CubicGraph, OpenCubicGraph, graph_from_edges, is_connected
from .recognize import enumerate_partitions, test_partition
from .surface import AXES

SIZE_FORMAT = "xyz-reduction/1"

Triple = tuple[str, str, str]
ALL_TRIPLES: tuple[Triple, ...] = tuple(itertools.permutations(AXES))


# ---------------------------------------------------------------------------
# Gadgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gadget:
    open: OpenCubicGraph
    left: tuple[str, ...]
    right: tuple[str, ...] = ()


def _circle(c: int, i: int) -> int:
    return 6 * c + (i % 6)


def connector_gadget() -> Gadget:
    """Honeycomb cylinder: three 6-cycles, rungs between circles 0-1 at even
    positions and 1-2 at odd positions.

    Vertex ``(c,i)`` has id ``6c+i``. Left ports hang off circle 0 at odd
    positions, right ports off circle 2 at even positions. Names follow the
    parallel classes found by :func:`verify_connector`: A, B, C at
    positions 1, 3, 5 and F, E, D at positions 4, 0, 2 respectively.
    """
    edges = []
    for c in range(3):
        for i in range(6):
            edges.append((_circle(c, i), _circle(c, i + 1)))
    for i in range(0, 6, 2):
        edges.append((_circle(0, i), _circle(1, i)))
    for i in range(1, 6, 2):
        edges.append((_circle(1, i), _circle(2, i)))
    ports = (
        ("A", _circle(0, 1)), ("B", _circle(0, 3)), ("C", _circle(0, 5)),
        ("D", _circle(2, 2)), ("E", _circle(2, 0)), ("F", _circle(2, 4)),
    )
    return Gadget(OpenCubicGraph(18, tuple(edges), ports), ("A", "B", "C"), ("D", "E", "F"))


# ---------------------------------------------------------------------------
# Exhaustive connector verification
# ---------------------------------------------------------------------------


@dataclass
class ConnectorReport:
    survivors: int
    per_triple: dict[Triple, int]
    relation: set[tuple[Triple, Triple]]
    parallel: dict[str, str]
    assignments_checked: int

    def to_dict(self) -> dict:
        return {
            "survivors": self.survivors,
            "per_triple": {"".join(k): v for k, v in sorted(self.per_triple.items())},
            "parallel": dict(sorted(self.parallel.items())),
            "assignments_checked": self.assignments_checked,
        }


def _edge_colourings(n: int, items: Sequence[tuple[int, ...]]) -> Iterable[list[int]]:
    """All axis assignments to ``items`` (edges as vertex tuples; ports have one
    vertex) such that every vertex sees three distinct axes."""
    at: list[list[int]] = [[] for _ in range(n)]
    for k, ends in enumerate(items):
        for v in ends:
            at[v].append(k)
    order: list[int] = []
    seen = set()
    for v in range(n):
        for k in at[v]:
            if k not in seen:
                seen.add(k)
                order.append(k)
    val = [-1] * len(items)
    used = [0] * n

    def rec(i: int):
        if i == len(order):
            yield val
            return
        k = order[i]
        for a in range(3):
            bit = 1 << a
            if any(used[v] & bit for v in items[k]):
                continue
            val[k] = a
            for v in items[k]:
                used[v] |= bit
            yield from rec(i + 1)
            for v in items[k]:
                used[v] &= ~bit
        val[k] = -1

    yield from rec(0)


def _trails(n: int, items: Sequence[tuple[int, ...]], axes: Sequence[int]) -> list[tuple[int, frozenset[int]]]:
    """Maximal two-axis trails: (missing axis, set of item ids). Each internal
    vertex has one item of every axis, so each pair-subgraph is paths and cycles."""
    at: list[list[int]] = [[] for _ in range(n)]
    for k, ends in enumerate(items):
        for v in ends:
            at[v].append(k)
    out = []
    for missing in range(3):
        keep = [k for k in range(len(items)) if axes[k] != missing]
        seen: set[int] = set()
        for k0 in keep:
            if k0 in seen:
                continue
            comp = {k0}
            stack = [k0]
            while stack:
                k = stack.pop()
                for v in items[k]:
                    for k2 in at[v]:
                        if axes[k2] != missing and k2 not in comp:
                            comp.add(k2)
                            stack.append(k2)
            seen |= comp
            out.append((missing, frozenset(comp)))
    return out


def local_surface_ok(n: int, items: Sequence[tuple[int, ...]], axes: Sequence[int]) -> bool:
    """No two trails of different axis pairs share two or more edges (ports count)."""
    trails = _trails(n, items, axes)
    for (m1, t1), (m2, t2) in itertools.combinations(trails, 2):
        if m1 != m2 and len(t1 & t2) >= 2:
            return False
    return True


def open_axis_assignments(gadget: Gadget, stats: dict | None = None) -> Iterable[dict[str, str]]:
    """Port axes of every locally valid axis assignment.

    ``stats["checked"]`` (when given) counts all proper assignments examined.
    """
    og = gadget.open
    items = [tuple(e) for e in og.edges] + [(v,) for _, v in og.ports]
    base = len(og.edges)
    for axes in _edge_colourings(og.n, items):
        if stats is not None:
            stats["checked"] = stats.get("checked", 0) + 1
        if local_surface_ok(og.n, items, axes):
            yield {name: AXES[axes[base + i]] for i, (name, _) in enumerate(og.ports)}


def delete_edge(gadget: Gadget, eid: int) -> Gadget:
    """The gadget with one internal edge cut; its ends become ports X0, X1."""
    og = gadget.open
    u, v = og.edges[eid]
    edges = tuple(e for i, e in enumerate(og.edges) if i != eid)
    ports = tuple(og.ports) + (("X0", u), ("X1", v))
    return Gadget(OpenCubicGraph(og.n, edges, ports), gadget.left, gadget.right)


def verify_connector(gadget: Gadget | None = None) -> ConnectorReport:
    """Enumerate every locally valid assignment and check the port claims.

    Raises :class:`VerificationFailed` with the offending port axes when a
    survivor has repeated axes on a side or breaks the A-F, B-E, C-D pairing.
    """
    gadget = gadget or connector_gadget()
    left, right = gadget.left, gadget.right
    if len(left) != 3 or len(right) != 3:
        raise VerificationFailed("connector needs three left and three right ports")
    pairing = {left[0]: right[2], left[1]: right[1], left[2]: right[0]}
    per_triple = {t: 0 for t in ALL_TRIPLES}
    relation = set()
    survivors = 0
    stats: dict = {}
    for ports in open_axis_assignments(gadget, stats):
        lt = tuple(ports[p] for p in left)
        rt = tuple(ports[p] for p in right)
        if len(set(lt)) != 3 or len(set(rt)) != 3:
            raise VerificationFailed(f"ports not mutually perpendicular: {ports}", ports)
        for a, b in pairing.items():
            if ports[a] != ports[b]:
                raise VerificationFailed(f"ports {a} and {b} not parallel: {ports}", ports)
        survivors += 1
        per_triple[lt] += 1
        relation.add((lt, rt))
    if survivors == 0:
        raise VerificationFailed("no locally valid assignment survives")
    return ConnectorReport(survivors, per_triple, relation, pairing, stats.get("checked", 0))


# ---------------------------------------------------------------------------
# Flip gadget
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlipGadget:
    graph: CubicGraph
    u: int
    v: int

    def star(self, w: int) -> tuple[int, int, int]:
        """Edge ids at w: the uv edge first, then the other two by id."""
        uv = self.graph.edge_id(self.u, self.v)
        rest = sorted(e for e in self.graph.incident[w] if e != uv)
        return (uv, rest[0], rest[1])


def flip_gadget() -> FlipGadget:
    t = ambiguous_torus(1)
    return FlipGadget(t.graph, t.u, t.v)


def flip_relation(fg: FlipGadget | None = None) -> set[tuple[Triple, Triple]]:
    """(u-triple, v-triple) over every valid partition and every axis renaming."""
    fg = fg or flip_gadget()
    g = fg.graph
    su, sv = fg.star(fg.u), fg.star(fg.v)
    out = set()
    for p in enumerate_partitions(g):
        if test_partition(g, p) is None:
            continue
        for perm in ALL_TRIPLES:
            q = p.permuted(perm)
            out.add((tuple(q.axes[e] for e in su), tuple(q.axes[e] for e in sv)))
    return out


def swap_last_two(t: Triple) -> Triple:
    return (t[0], t[2], t[1])


# ---------------------------------------------------------------------------
# Relational composition for the edge gadget
# ---------------------------------------------------------------------------


def connector_relation() -> set[tuple[Triple, Triple]]:
    """(A,B,C) -> (D,E,F) as forced by the pairing A||F, B||E, C||D."""
    return {(t, (t[2], t[1], t[0])) for t in ALL_TRIPLES}


def edge_gadget_relation(flip: set[tuple[Triple, Triple]] | None = None) -> set[tuple[Triple, Triple]]:
    """Free left triple of the first connector -> free right triple of the third.

    Wiring: first connector's F joins the first flip's uv edge at u, with D, E
    on u's other edges; second connector's A, B, C sit on v's star. Its E
    joins the second flip's uv edge at u (D, F on the rest), and the third
    connector's A, B, C sit on that flip's v star.
    """
    flip = flip if flip is not None else flip_relation()
    conn = connector_relation()
    out = set()
    for s, r1 in conn:
        d, e, f = r1
        for ut, vt in flip:
            if ut != (f, d, e):
                continue
            for s2, r2 in conn:
                if s2 != vt:
                    continue
                d2, e2, f2 = r2
                for ut2, vt2 in flip:
                    if ut2 != (e2, d2, f2):
                        continue
                    for s3, r3 in conn:
                        if s3 == vt2:
                            out.add((s, r3))
    return out


def different_colour_relation() -> set[tuple[Triple, Triple]]:
    """Colour of a left triple is its A axis; of a right triple its F axis."""
    return {(s, t) for s in ALL_TRIPLES for t in ALL_TRIPLES if s[0] != t[2]}


# ---------------------------------------------------------------------------
# Vertex gadget
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexGadget:
    """Even prism with rung matching M; slot i deletes the top end of rung i
    for even i and the bottom end for odd i, so slots are pairwise nonadjacent."""

    graph: CubicGraph
    m: int
    rungs: tuple[int, ...]
    slots: tuple[int, ...]

    def slot_roles(self, i: int) -> tuple[int, int, int]:
        """(rung partner, lower cycle neighbour, higher cycle neighbour) of slot i."""
        w = self.slots[i]
        partner = w + self.m if w < self.m else w - self.m
        others = sorted(x for x in self.graph.adjacency[w] if x != partner)
        return (partner, others[0], others[1])


def vertex_gadget(d: int) -> VertexGadget:
    if d < 1:
        raise ValueError("vertex gadget needs d >= 1")
    m = max(4, d + d % 2)
    g = prism(m)
    rungs = tuple(range(2 * m, 3 * m))
    slots = tuple(i if i % 2 == 0 else m + i for i in range(d))
    return VertexGadget(g, m, rungs, slots)


# ---------------------------------------------------------------------------
# Splicing connectors into graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConnectorUse:
    """Replace ``left`` by the connector's left side and ``right`` by its right side.

    ``left_roles`` lists the neighbours of ``left`` that attach to A, B, C;
    ``right_roles`` those of ``right`` attaching to D, E, F.
    """

    left: Hashable
    left_roles: tuple[Hashable, Hashable, Hashable]
    right: Hashable
    right_roles: tuple[Hashable, Hashable, Hashable]


def splice(edges: Iterable[tuple[Hashable, Hashable]], uses: Sequence[ConnectorUse]) -> tuple[CubicGraph, list]:
    """Delete the used vertices, insert one connector per use and rewire.

    Vertex labels are arbitrary hashables; connector vertices get labels
    ``("conn", k, i)``. Returns the graph (labels sorted by ``repr`` order
    of insertion) and the label list.
    """
    conn = connector_gadget().open
    port_vertex = dict(conn.ports)
    replaced: dict[tuple[Hashable, Hashable], Hashable] = {}
    deleted = set()
    for k, use in enumerate(uses):
        for w, roles, names in ((use.left, use.left_roles, "ABC"), (use.right, use.right_roles, "DEF")):
            if w in deleted:
                raise ValueError(f"vertex {w!r} used by two connectors")
            deleted.add(w)
            for nb, name in zip(roles, names):
                replaced[(w, nb)] = ("conn", k, port_vertex[name])
    labels: list = []
    index: dict = {}

    def lab(x):
        if x not in index:
            index[x] = len(labels)
            labels.append(x)
        return index[x]

    out = []
    edges = list(edges)
    incident: dict = {}
    for x, y in edges:
        incident.setdefault(x, []).append(y)
        incident.setdefault(y, []).append(x)
    for w in deleted:
        if w not in incident:
            raise ValueError(f"vertex {w!r} is not in the graph")
    for k, use in enumerate(uses):
        for w, roles in ((use.left, use.left_roles), (use.right, use.right_roles)):
            if sorted(map(repr, roles)) != sorted(map(repr, incident[w])):
                raise ValueError(f"roles {roles} do not match the neighbours of {w!r}")
    for x, y in edges:
        a = replaced[(x, y)] if x in deleted else x
        b = replaced[(y, x)] if y in deleted else y
        out.append((lab(a), lab(b)))
    for k in range(len(uses)):
        for u, v in conn.edges:
            out.append((lab(("conn", k, u)), lab(("conn", k, v))))
    return graph_from_edges(out, len(labels)), labels


def attach_connector(g: CubicGraph, u: int, v: int,
                     left_roles: Sequence[int] | None = None,
                     right_roles: Sequence[int] | None = None) -> tuple[CubicGraph, list]:
    """Replace u and v of ``g`` by the two sides of one connector.

    Default roles take each vertex's neighbours in increasing order.
    """
    lr = tuple(left_roles) if left_roles is not None else g.adjacency[u]
    rr = tuple(right_roles) if right_roles is not None else g.adjacency[v]
    return splice(g.edges, [ConnectorUse(u, lr, v, rr)])


# ---------------------------------------------------------------------------
# The reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        deg = [0] * self.n
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MalformedDocument(f"edge ({u},{v}) out of range")
            if u == v:
                raise MalformedDocument(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise MalformedDocument(f"repeated edge {key}")
            seen.add(key)
            deg[u] += 1
            deg[v] += 1
        if any(d == 0 for d in deg):
            raise MalformedDocument("isolated vertices are not allowed")

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    @classmethod
    def from_dict(cls, doc: Mapping) -> SimpleGraph:
        try:
            return cls(int(doc["n"]), tuple((int(a), int(b)) for a, b in doc["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad graph document: {exc}") from exc


@dataclass(frozen=True, eq=False)
class Reduction:
    graph: CubicGraph
    labels: tuple
    metadata: dict = field(default_factory=dict)


EDGE_GADGET_VERTICES = 3 * 18 + 2 * (32 - 2)


def reduce_3coloring(h: SimpleGraph) -> Reduction:
    """Cubic graph that is an xyz graph exactly when ``h`` is 3-colourable.

    Each vertex of h becomes an even prism; each edge (a,b) becomes the chain
    connector, flip, connector, flip, connector whose free ends replace one
    slot of a's prism (A on the rung) and one slot of b's prism (F on the rung).
    """
    edges: list[tuple] = []
    uses: list[ConnectorUse] = []
    gadgets = {}
    next_slot = {}
    for x in range(h.n):
        vg = vertex_gadget(h.degree(x))
        gadgets[x] = vg
        next_slot[x] = 0
        edges += [(("vertex", x, a), ("vertex", x, b)) for a, b in vg.graph.edges]
    fg = flip_gadget()
    for k, (a, b) in enumerate(h.edges):
        flips = []
        for j in range(2):
            edges += [(("flip", k, j, p), ("flip", k, j, q)) for p, q in fg.graph.edges]
            flips.append(j)

        def F(j, w):
            return ("flip", k, j, w)

        def star_roles(j, w):
            uv, e1, e2 = fg.star(w)
            nb = [fg.graph.other(e, w) for e in (uv, e1, e2)]
            return [F(j, x) for x in nb]

        def slot(x):
            vg = gadgets[x]
            i = next_slot[x]
            next_slot[x] += 1
            roles = vg.slot_roles(i)
            return ("vertex", x, vg.slots[i]), tuple(("vertex", x, r) for r in roles)

        wa, ra = slot(a)
        wb, rb = slot(b)
        u0 = star_roles(0, fg.u)
        v0 = star_roles(0, fg.v)
        u1 = star_roles(1, fg.u)
        v1 = star_roles(1, fg.v)
        # right side D,E,F; flip u star is (uv, other1, other2)
        uses.append(ConnectorUse(wa, ra, F(0, fg.u), (u0[1], u0[2], u0[0])))
        uses.append(ConnectorUse(F(0, fg.v), tuple(v0), F(1, fg.u), (u1[1], u1[0], u1[2])))
        uses.append(ConnectorUse(F(1, fg.v), tuple(v1), wb, (rb[2], rb[1], rb[0])))
    g, labels = splice(edges, uses)
    m, n = len(h.edges), h.n
    vertex_part = sum(2 * gadgets[x].m - h.degree(x) for x in range(n))
    genus = 3 * m - n + 1
    meta = {
        "format": SIZE_FORMAT,
        "input": {"n": n, "m": m},
        "sizes": {
            "vertex_gadgets": vertex_part,
            "edge_gadgets": EDGE_GADGET_VERTICES * m,
            "per_edge_gadget": EDGE_GADGET_VERTICES,
            "total": g.n,
        },
        "genus_claim": {"genus": genus, "euler_characteristic": 2 - 2 * genus, "verified": False},
        "connected": is_connected(g),
    }
    return Reduction(g, tuple(labels), meta)


def reduction_report(r: Reduction) -> str:
    return json.dumps(r.metadata, sort_keys=True, indent=2)
