from __future__ import annotations

import itertools

import oracles
import pytest
from corpus import accepted_surfaces
from hypothesis import given
from hypothesis import strategies as st

from xyzgraph.errors import FaceNotCycle, MalformedDocument, NotCubic, NotXYZSurface
from xyzgraph.families import (
    builtin_map,
    ccc,
    gem,
    grid_mod_surface,
    hex_klein_bottle,
    k33_projective_map,
    tetrahedron_map,
    truncated_square_torus,
)
from xyzgraph.graph import graph_from_edges
from xyzgraph.surface import (
    FaceSet,
    check_manifold,
    check_polyhedral,
    check_xyz_surface,
    classify_topology,
    diagnose_xyz_surface,
    euler_characteristic,
    face_edges,
    map_from_dict,
    map_to_dict,
    orient_faces,
    perfect_face_cover,
    require_xyz_surface,
    three_color_faces,
    walk_flips_orientation,
)

CUBE = builtin_map("cube_map")


def _proper(s):
    inc = [[] for _ in range(s.graph.m)]
    for i, f in enumerate(s.face_edges):
        for e in f:
            inc[e].append(i)
    return all(s.colors[a] != s.colors[b] for a, b in inc)


# ---------------------------------------------------------------------------
# Conditions one at a time
# ---------------------------------------------------------------------------


def test_cube_is_xyz_surface():
    s = require_xyz_surface(CUBE.graph, CUBE.faces)
    assert _proper(s)
    assert sorted(s.colors) == ["x", "x", "y", "y", "z", "z"]
    assert euler_characteristic(CUBE.graph, CUBE.faces) == 2


def test_declared_colours_are_verified():
    assert check_xyz_surface(CUBE.graph, CUBE.faces, CUBE.colors) is not None
    bad = ("x",) * 6
    s, reason, witness = diagnose_xyz_surface(CUBE.graph, CUBE.faces, bad)
    assert s is None and reason == "bad-coloring"


def test_missing_face_breaks_manifold():
    faces = FaceSet(CUBE.faces.faces[:-1])
    chk = check_manifold(CUBE.graph, faces)
    assert not chk
    e = chk.witness
    count = sum(e in face_edges(CUBE.graph, f) for f in faces)
    assert count != 2
    with pytest.raises(NotXYZSurface) as info:
        require_xyz_surface(CUBE.graph, faces)
    assert info.value.reason == "not-manifold"


def test_non_cycle_face_rejected():
    with pytest.raises(FaceNotCycle):
        face_edges(CUBE.graph, (0, 1, 2, 1))
    s, reason, _ = diagnose_xyz_surface(CUBE.graph, FaceSet.of([(0, 2, 1, 3)] + list(CUBE.faces)[1:]))
    assert s is None and reason == "face-not-cycle"


def test_polyhedral_witness_is_face_pair_sharing_two_edges():
    g, faces, _ = builtin_map("mobius_kantor_genus2")
    assert check_manifold(g, faces)
    chk = check_polyhedral(g, faces)
    assert not chk
    a, b = chk.witness
    shared = set(face_edges(g, faces[a])) & set(face_edges(g, faces[b]))
    assert len(shared) >= 2
    s, reason, _ = diagnose_xyz_surface(g, faces)
    assert s is None and reason == "not-polyhedral"


def test_polyhedral_agrees_with_pairwise_oracle():
    for name in ("cube_map", "mobius_kantor_torus", "mobius_kantor_genus2"):
        g, faces, _ = builtin_map(name)
        fe = oracles.face_edge_sets(g.edges, faces.faces)
        pairwise = all(len(x & y) <= 1 for x, y in itertools.combinations(fe, 2))
        assert bool(check_polyhedral(g, faces)) == pairwise, name


def test_odd_face_rejected():
    g = builtin_map("tetrahedron_map")
    s, reason, witness = diagnose_xyz_surface(g.graph, g.faces)
    assert s is None and reason == "odd-face"


def test_ccc3_has_fourteen_faces_and_fails():
    g, faces, colors = ccc(3)
    assert g.n == 24 and len(faces) == 14 and colors is None
    assert check_xyz_surface(g, faces) is None


def test_three_colouring_failure_reported():
    # hexagonal torus whose lattice does not preserve the colouring: polyhedral,
    # even, but not 3-colourable
    from xyzgraph.families import hex_torus

    t = hex_torus((4, 0), (0, 4))
    g, faces, _ = t.instance
    s, reason, _ = diagnose_xyz_surface(g, faces)
    assert s is None and reason == "not-3-colorable"
    assert oracles.face_colourings(g.edges, faces.faces) == 0


# ---------------------------------------------------------------------------
# Colouring vs exhaustive oracle
# ---------------------------------------------------------------------------


SMALL_MAPS = {
    "cube": CUBE[:2],
    "gem_tet": gem(tetrahedron_map()).instance[:2],
    "gem_k33": gem(k33_projective_map()).instance[:2],
    "sq_oct_33": truncated_square_torus((3, 0), (0, 3))[:2],
    "sq_oct_44": truncated_square_torus((4, 0), (0, 4))[:2],
    "klein_34": hex_klein_bottle(3, 4)[:2],
}


@pytest.mark.parametrize("name", sorted(SMALL_MAPS))
def test_face_colouring_agrees_with_oracle(name):
    g, faces = SMALL_MAPS[name]
    cols = three_color_faces(g, faces)
    if len(faces) <= 20:
        count = oracles.face_colourings(g.edges, faces.faces)
        assert (cols is not None) == (count > 0)
    assert (check_xyz_surface(g, faces) is not None) == oracles.is_xyz_map(g.n, g.edges, faces.faces)


@pytest.mark.parametrize("name", sorted(SMALL_MAPS))
def test_orientability_agrees_with_oracle(name):
    g, faces = SMALL_MAPS[name]
    chk = orient_faces(g, faces)
    assert bool(chk) == oracles.orientable(faces.faces)
    if not chk:
        walk = chk.witness
        assert walk[0] == walk[-1]
        assert walk_flips_orientation(g, faces, walk)


def test_orientation_signs_make_every_edge_opposite():
    g, faces, _ = grid_mod_surface(4)
    chk = orient_faces(g, faces)
    assert chk
    seen = {}
    for f, sgn in zip(faces, chk.witness):
        f = f if sgn == 1 else f[::-1]
        for i in range(len(f)):
            a, b = f[i], f[(i + 1) % len(f)]
            assert (a, b) not in seen
            seen[(a, b)] = True
    assert len(seen) == 2 * g.m


def test_topology_classes():
    assert classify_topology(*CUBE[:2]).to_dict() == {"euler_characteristic": 2, "orientable": True, "genus": 0}
    k33 = gem(k33_projective_map()).instance
    t = classify_topology(k33.graph, k33.faces)
    assert (t.euler_characteristic, t.orientable, t.crosscaps) == (1, False, 1)
    kb = hex_klein_bottle(3, 4)
    t = classify_topology(kb.graph, kb.faces)
    assert (t.euler_characteristic, t.orientable, t.crosscaps) == (0, False, 2)


# ---------------------------------------------------------------------------
# Perfect face covers
# ---------------------------------------------------------------------------


def test_perfect_face_cover_square_octagon():
    g, faces, _ = truncated_square_torus((3, 0), (0, 3))
    cover = perfect_face_cover(g, faces)
    assert cover is not None
    hit = [0] * g.n
    for f in cover:
        for v in faces[f]:
            hit[v] += 1
    assert hit == [1] * g.n
    assert all(len(faces[f]) == 4 for f in cover)


def test_no_perfect_face_cover_on_mobius_kantor_torus():
    mk = builtin_map("mobius_kantor_torus")
    # 8 hexagons on 16 vertices: a cover would need 16/6 faces
    assert perfect_face_cover(mk.graph, mk.faces) is None


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def test_map_json_round_trip():
    doc = map_to_dict(*CUBE)
    assert doc["format"] == "xyz-surface/1"
    g, faces, colors = map_from_dict(doc)
    assert g == CUBE.graph and faces == CUBE.faces and colors == CUBE.colors
    assert map_to_dict(CUBE.graph, CUBE.faces)["format"] == "xyz-map/1"


_EDGES = [list(e) for e in CUBE.graph.edges]


@pytest.mark.parametrize("doc, exc", [
    ({"n": 8, "edges": []}, NotCubic),
    ({"n": 8, "edges": _EDGES}, MalformedDocument),
    ({"n": 8, "edges": _EDGES, "faces": [[0, 1, 2, 3]], "colors": ["q"]}, MalformedDocument),
    ({"n": 8, "edges": _EDGES, "faces": "abc"}, MalformedDocument),
])
def test_map_json_errors(doc, exc):
    with pytest.raises(exc):
        map_from_dict(doc)


# ---------------------------------------------------------------------------
# Invariance under relabelling (hypothesis)
# ---------------------------------------------------------------------------


@given(st.sampled_from(range(len(accepted_surfaces()))), st.randoms(use_true_random=False))
def test_surface_check_invariant_under_relabelling(i, rnd):
    _, s = accepted_surfaces()[i]
    g = s.graph
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = graph_from_edges([(perm[u], perm[v]) for u, v in g.edges], g.n)
    faces = FaceSet.of([[perm[v] for v in f] for f in s.faces])
    order = list(range(len(faces)))
    rnd.shuffle(order)
    faces = FaceSet(tuple(faces[k] for k in order))
    t = check_xyz_surface(h, faces)
    assert t is not None
    assert euler_characteristic(h, faces) == euler_characteristic(g, s.faces)
    assert bool(orient_faces(h, faces)) == bool(orient_faces(g, s.faces))
    # colours agree up to a permutation of the axes
    pairs = {(s.colors[k], t.colors[j]) for j, k in enumerate(order)}
    assert len(pairs) == 3
