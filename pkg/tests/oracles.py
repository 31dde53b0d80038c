"""Brute-force oracles, written without any of the package's algorithms.

They work on plain ``(n, edges)`` data so that a bug in the library cannot
leak into the expected values.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from fractions import Fraction

Edge = tuple[int, int]


# ---------------------------------------------------------------------------
# Edge labellings
# ---------------------------------------------------------------------------


def edge_labellings(n: int, edges: Sequence[Edge]) -> Iterable[tuple[int, ...]]:
    """Every map edges -> {0,1,2} with three distinct labels at each vertex.

    This is the 3^|E| labelling space, walked in edge order with a
    per-vertex clash test so dead prefixes are cut early.
    """
    m = len(edges)
    seen = [set() for _ in range(n)]
    lab = [0] * m

    def rec(i):
        if i == m:
            yield tuple(lab)
            return
        u, v = edges[i]
        for a in range(3):
            if a in seen[u] or a in seen[v]:
                continue
            lab[i] = a
            seen[u].add(a)
            seen[v].add(a)
            yield from rec(i + 1)
            seen[u].discard(a)
            seen[v].discard(a)

    yield from rec(0)


def two_label_cycles(n: int, edges: Sequence[Edge], lab: Sequence[int]) -> list[tuple[int, frozenset[int]]]:
    """(missing label, edge-id set) for each component of every two-label subgraph."""
    out = []
    for missing in range(3):
        keep = [i for i in range(len(edges)) if lab[i] != missing]
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in keep:
            a, b = edges[i]
            parent[find(a)] = find(b)
        groups: dict[int, set[int]] = {}
        for i in keep:
            groups.setdefault(find(edges[i][0]), set()).add(i)
        out += [(missing, frozenset(s)) for s in groups.values()]
    return out


def labelling_is_surface(n: int, edges: Sequence[Edge], lab: Sequence[int]) -> bool:
    """Pairwise test: no two faces share two or more edges."""
    faces = [f for _, f in two_label_cycles(n, edges, lab)]
    return all(len(a & b) <= 1 for a, b in itertools.combinations(faces, 2))


def xyz_labellings(n: int, edges: Sequence[Edge]) -> list[tuple[int, ...]]:
    return [lab for lab in edge_labellings(n, edges) if labelling_is_surface(n, edges, lab)]


def face_set_census(n: int, edges: Sequence[Edge]) -> set[frozenset[frozenset[int]]]:
    """Distinct face sets (as sets of edge-id sets) over all valid labellings."""
    return {
        frozenset(f for _, f in two_label_cycles(n, edges, lab))
        for lab in xyz_labellings(n, edges)
    }


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------


def face_edge_sets(edges: Sequence[Edge], faces: Sequence[Sequence[int]]) -> list[frozenset[int]]:
    index = {frozenset(e): i for i, e in enumerate(edges)}
    out = []
    for f in faces:
        ids = [index.get(frozenset((f[i], f[(i + 1) % len(f)]))) for i in range(len(f))]
        if None in ids or len(set(ids)) != len(ids):
            raise ValueError("face is not a cycle of the graph")
        out.append(frozenset(ids))
    return out


def face_colourings(edges: Sequence[Edge], faces: Sequence[Sequence[int]]) -> int:
    """Number of proper 3-colourings of the faces (exhaustive backtracking count)."""
    fe = face_edge_sets(edges, faces)
    adj = [[j for j in range(i) if fe[i] & fe[j]] for i in range(len(fe))]
    col = [-1] * len(fe)

    def rec(i):
        if i == len(fe):
            return 1
        total = 0
        for c in range(3):
            if all(col[j] != c for j in adj[i]):
                col[i] = c
                total += rec(i + 1)
        col[i] = -1
        return total

    return rec(0)


def is_xyz_map(n: int, edges: Sequence[Edge], faces: Sequence[Sequence[int]]) -> bool:
    """Manifold, polyhedral, even faces and a face 3-colouring (backtracking)."""
    try:
        fe = face_edge_sets(edges, faces)
    except ValueError:
        return False
    count = [0] * len(edges)
    for f in fe:
        for e in f:
            count[e] += 1
    if any(c != 2 for c in count):
        return False
    if any(len(a & b) > 1 for a, b in itertools.combinations(fe, 2)):
        return False
    if any(len(f) % 2 or len(f) < 4 for f in fe):
        return False
    adj = [[j for j in range(len(fe)) if j != i and fe[i] & fe[j]] for i in range(len(fe))]
    col = [-1] * len(fe)

    def rec(i):
        if i == len(fe):
            return True
        for c in range(3):
            if all(col[j] != c for j in adj[i]):
                col[i] = c
                if rec(i + 1):
                    return True
        col[i] = -1
        return False

    return rec(0)


def euler_characteristic(n: int, m: int, faces: int) -> int:
    return n - m + faces


def orientable(faces: Sequence[Sequence[int]]) -> bool:
    """Union-find with parity: each edge must be traversed once each way."""
    parent = list(range(len(faces)))
    parity = [0] * len(faces)

    def find(x):
        if parent[x] == x:
            return x, 0
        r, p = find(parent[x])
        parent[x] = r
        parity[x] ^= p
        return r, parity[x]

    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for i, f in enumerate(faces):
        for k in range(len(f)):
            a, b = f[k], f[(k + 1) % len(f)]
            key = (min(a, b), max(a, b))
            d = 0 if a < b else 1
            if key in seen:
                j, dj = seen[key]
                # same direction means exactly one of the two faces must flip
                need = 1 if d == dj else 0
                ri, pi = find(i)
                rj, pj = find(j)
                if ri == rj:
                    if pi ^ pj != need:
                        return False
                else:
                    parent[ri] = rj
                    parity[ri] = pi ^ pj ^ need
            else:
                seen[key] = (i, d)
    return True


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


def embedding_ok(n: int, edges: Sequence[Edge], coords: Sequence[Sequence[int]]) -> bool:
    """Quadratic check: adjacency is exactly sharing two coordinates, and every
    axis-parallel line through a point holds exactly two points."""
    if len(coords) != n or len({tuple(p) for p in coords}) != n:
        return False
    eset = {frozenset(e) for e in edges}
    for u, v in itertools.combinations(range(n), 2):
        same = sum(coords[u][a] == coords[v][a] for a in range(3))
        if (same == 2) != (frozenset((u, v)) in eset):
            return False
    for u in range(n):
        for a in range(3):
            on_line = [
                v for v in range(n)
                if all(coords[v][b] == coords[u][b] for b in range(3) if b != a)
            ]
            if len(on_line) != 2:
                return False
    return True


def crossings(edges: Sequence[Edge], coords: Sequence[Sequence[int]]) -> int:
    """Pairs of edges meeting at a point interior to both, by exact line solving."""
    total = 0
    segs = [(tuple(coords[u]), tuple(coords[v])) for u, v in edges]
    for (p, q), (r, s) in itertools.combinations(segs, 2):
        d1 = [q[i] - p[i] for i in range(3)]
        d2 = [s[i] - r[i] for i in range(3)]
        # solve p + t d1 = r + u d2 over rationals using each pair of coordinates
        hit = None
        for i, j in ((0, 1), (0, 2), (1, 2)):
            det = d1[i] * (-d2[j]) - d1[j] * (-d2[i])
            if det == 0:
                continue
            bi, bj = r[i] - p[i], r[j] - p[j]
            t = Fraction(bi * (-d2[j]) - bj * (-d2[i]), det)
            u = Fraction(d1[i] * bj - d1[j] * bi, det)
            hit = (t, u)
            break
        if hit is None:
            continue
        t, u = hit
        if not (0 < t < 1 and 0 < u < 1):
            continue
        if all(p[k] + t * d1[k] == r[k] + u * d2[k] for k in range(3)):
            total += 1
    return total
