from __future__ import annotations

import pytest
from corpus import planar_corpus

from xyzgraph.covers import (
    classify_cover_case,
    cover_component,
    cover_surface_ok,
    even_polyhedral_cover,
    is_covering,
    orientable_by_walks,
    reduced_cover,
    sixfold_cover,
    voltage_cover,
)
from xyzgraph.errors import PreconditionViolated, TooLarge
from xyzgraph.families import (
    builtin_map,
    ccc,
    gem,
    grid_mod_surface,
    hex_klein_bottle,
    hex_rhombus_torus,
    hex_torus,
    k33_projective_map,
    mobius_ladder_map,
    prism,
    tetrahedron_map,
    truncated_square_torus,
)
from xyzgraph.graph import CubicGraph, is_bipartite
from xyzgraph.recognize import planar_faces
from xyzgraph.surface import check_xyz_surface, orient_faces

# ---------------------------------------------------------------------------
# Map corpus
# ---------------------------------------------------------------------------

XYZ_MAPS = {
    "cube": lambda: builtin_map("cube_map"),
    "ccc4": lambda: ccc(4),
    "gem_tetrahedron": lambda: gem(tetrahedron_map()).instance,
    "gem_k33": lambda: gem(k33_projective_map()).instance,
    "hex22": lambda: hex_rhombus_torus(2, 2),
    "hex30": lambda: hex_rhombus_torus(3, 0),
    "hex41": lambda: hex_rhombus_torus(4, 1),
    "grid3": lambda: grid_mod_surface(3),
    "grid4": lambda: grid_mod_surface(4),
}

# tori whose hexagons cannot be 3-coloured, and the polyhedral Möbius-Kantor torus
UNCOLOURABLE_TORI = {
    "mobius_kantor_torus": lambda: builtin_map("mobius_kantor_torus"),
    "hex_40_04": lambda: hex_torus((4, 0), (0, 4)).instance,
    "hex_40_12": lambda: hex_torus((4, 0), (1, 2)).instance,
    "hex_50_03": lambda: hex_torus((5, 0), (0, 3)).instance,
    "hex_30_13": lambda: hex_torus((3, 0), (1, 3)).instance,
    "hex_50_05": lambda: hex_torus((5, 0), (0, 5)).instance,
}

ALL_MAPS = {**XYZ_MAPS, **UNCOLOURABLE_TORI}


def _search_small_quotients():
    """Square-octagon tori and hexagonal Klein bottles that satisfy the cover
    preconditions, with their predicted case."""
    found = []
    vectors = [((a, b), (-b, a)) for a in range(1, 4) for b in range(3)]
    vectors += [((a, 0), (0, c)) for a in range(1, 4) for c in range(1, 4)]
    for v1, v2 in vectors:
        try:
            mi = truncated_square_torus(v1, v2)
            found.append((f"square_octagon{v1}{v2}", mi, classify_cover_case(mi.graph, mi.faces)))
        except PreconditionViolated:
            continue
    for p in range(3, 8):
        mi = hex_klein_bottle(p, 4)
        found.append((f"hex_klein({p},4)", mi, classify_cover_case(mi.graph, mi.faces)))
    return found


# ---------------------------------------------------------------------------
# Sixfold cover
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(ALL_MAPS))
def test_prediction_matches_measured_ply(name):
    g, faces, _ = ALL_MAPS[name]()
    res = sixfold_cover(g, faces)
    assert res.components in (1, 2, 3, 6)
    assert res.ply * res.components == 6
    assert classify_cover_case(g, faces) == res.ply
    assert res.metadata["case"] == res.ply


@pytest.mark.parametrize("name", sorted(XYZ_MAPS))
def test_xyz_surface_has_ply_one(name):
    g, faces, _ = XYZ_MAPS[name]()
    assert sixfold_cover(g, faces).ply == 1


@pytest.mark.parametrize("name", sorted(UNCOLOURABLE_TORI))
def test_uncolourable_orientable_bipartite_tori_have_ply_three(name):
    g, faces, _ = UNCOLOURABLE_TORI[name]()
    assert check_xyz_surface(g, faces) is None
    assert is_bipartite(g)
    assert orient_faces(g, faces)
    assert sixfold_cover(g, faces).ply == 3


def test_search_exhibits_cases_two_and_six():
    found = _search_small_quotients()
    cases = {case for _, _, case in found}
    assert {2, 6} <= cases
    for name, mi, case in found:
        assert sixfold_cover(mi.graph, mi.faces).ply == case, name


@pytest.mark.parametrize("p, case", [(3, 2), (4, 6), (5, 6), (6, 2), (7, 6)])
def test_hex_klein_bottle_cases(p, case):
    mi = hex_klein_bottle(p, 4)
    assert not orient_faces(mi.graph, mi.faces)
    res = sixfold_cover(mi.graph, mi.faces)
    assert res.ply == case == classify_cover_case(mi.graph, mi.faces)


def test_square_octagon_torus_case_two():
    mi = truncated_square_torus((2, 1), (-1, 2))
    assert check_xyz_surface(mi.graph, mi.faces) is None
    res = sixfold_cover(mi.graph, mi.faces)
    assert res.ply == 2 and res.components == 3


@pytest.mark.parametrize("name", ["cube", "mobius_kantor_torus", "hex_40_12"])
def test_sixfold_projection_is_covering(name):
    g, faces, _ = ALL_MAPS[name]()
    res = sixfold_cover(g, faces)
    assert res.graph.n == 6 * g.n
    assert is_covering(res.graph, g, res.projection)
    for i in range(res.components):
        h, _, _, proj = cover_component(res, i)
        assert is_covering(h, g, proj)


@pytest.mark.parametrize("mi_factory", [
    lambda: builtin_map("mobius_kantor_torus"),
    lambda: hex_klein_bottle(5, 4),
    lambda: truncated_square_torus((2, 1), (-1, 2)),
])
def test_sixfold_components_are_xyz_surfaces(mi_factory):
    g, faces, _ = mi_factory()
    res = sixfold_cover(g, faces)
    for i in range(res.components):
        h, hf, colors, proj = cover_component(res, i)
        assert h.n == res.ply * g.n
        assert check_xyz_surface(h, hf, colors) is not None
        assert is_covering(h, g, proj)


def test_cube_sixfold_splits_into_six_copies():
    g, faces, _ = builtin_map("cube_map")
    res = sixfold_cover(g, faces)
    assert res.components == 6
    assert sorted(len(f) for f in res.faces) == [4] * 36


def test_planar_even_maps_have_ply_one():
    checked = 0
    extra = [(f"prism{m}", prism(m)) for m in (8, 10, 12)]
    for name, g in planar_corpus() + tuple(extra):
        if not is_bipartite(g):
            continue
        faces = planar_faces(g)
        try:
            assert classify_cover_case(g, faces) == 1, name
        except PreconditionViolated:
            continue
        checked += 1
    assert checked >= 5


# ---------------------------------------------------------------------------
# Preconditions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("factory, check", [
    (lambda: ccc(3), "even-faces"),
    (lambda: builtin_map("tetrahedron_map"), "even-faces"),
    (lambda: hex_torus((1, 1), (-1, 2)).instance, "polyhedral"),
    (lambda: builtin_map("mobius_kantor_genus2"), "polyhedral"),
])
def test_precondition_named(factory, check):
    g, faces, _ = factory()
    for fn in (sixfold_cover, classify_cover_case):
        with pytest.raises(PreconditionViolated) as info:
            fn(g, faces)
        assert info.value.witness == check


def test_disconnected_map_rejected():
    g, faces, _ = builtin_map("cube_map")
    two = CubicGraph(16, g.edges + tuple((u + 8, v + 8) for u, v in g.edges))
    faces2 = list(faces) + [tuple(v + 8 for v in f) for f in faces]
    with pytest.raises(PreconditionViolated) as info:
        sixfold_cover(two, faces2)
    assert info.value.witness == "connected"


# ---------------------------------------------------------------------------
# Orientability through walk voltages
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("factory", [
    *ALL_MAPS.values(),
    lambda: hex_klein_bottle(3, 4),
    lambda: hex_klein_bottle(4, 4),
    lambda: truncated_square_torus((2, 1), (-1, 2)),
])
def test_orientable_by_walks_agrees_with_face_orientation(factory):
    g, faces, _ = factory()
    assert orientable_by_walks(g, faces) == bool(orient_faces(g, faces))


# ---------------------------------------------------------------------------
# Z2^k voltage covers
# ---------------------------------------------------------------------------


def test_k4_even_polyhedral_cover():
    g, faces, _ = builtin_map("tetrahedron_map")
    assert g.m == 6
    res = even_polyhedral_cover(g, faces)
    assert res.graph.n == 4 * 2 ** 6 == 256
    assert {len(f) for f in res.faces} == {6}
    assert cover_surface_ok(res)
    assert is_covering(res.graph, g, res.projection)


def test_k4_cover_component_ply_matches_prediction():
    g, faces, _ = builtin_map("tetrahedron_map")
    h, hf, _, _ = cover_component(even_polyhedral_cover(g, faces))
    assert sixfold_cover(h, hf).ply == classify_cover_case(h, hf)


def test_cube_cover_at_cap_has_octagons():
    g, faces, _ = builtin_map("cube_map")
    assert g.m == 12
    res = even_polyhedral_cover(g, faces)
    assert {len(f) for f in res.faces} == {8}
    assert cover_surface_ok(res)


def test_cover_cap_enforced():
    g, faces, _ = ccc(4)
    with pytest.raises(TooLarge):
        even_polyhedral_cover(g, faces)
    g, faces, _ = builtin_map("cube_map")
    with pytest.raises(TooLarge):
        even_polyhedral_cover(g, faces, cap=11)


def test_distinct_generators_match_full_cover():
    g, faces, _ = builtin_map("tetrahedron_map")
    full = even_polyhedral_cover(g, faces)
    direct = voltage_cover(g, faces, [1 << e for e in range(g.m)], g.m)
    assert full.graph.edges == direct.graph.edges
    assert list(full.faces) == list(direct.faces)


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_reduced_cover_deterministic(seed):
    g, faces, _ = builtin_map("tetrahedron_map")
    a = reduced_cover(g, faces, 3, seed)
    b = reduced_cover(g, faces, 3, seed)
    assert a.attempts == b.attempts
    assert (a.result is None) == (b.result is None)
    if a.result is not None:
        assert a.result.to_dict() == b.result.to_dict()
        assert a.result.metadata["seed"] == seed
        assert cover_surface_ok(a.result)
        assert a.result.ply <= 2 ** 3


def test_reduced_cover_k4_seed1():
    g, faces, _ = builtin_map("tetrahedron_map")
    run = reduced_cover(g, faces, 3, 1)
    assert run.result is not None
    assert cover_surface_ok(run.result)
    assert is_covering(run.result.graph, g, run.result.projection)


def test_reduced_cover_failure_is_a_value():
    g, faces = mobius_ladder_map(8)
    run = reduced_cover(g, faces, 2, seed=0, budget=16)
    assert run.result is None and run.attempts == 16


def test_reduced_cover_rejects_bad_k():
    g, faces, _ = builtin_map("tetrahedron_map")
    with pytest.raises(ValueError):
        reduced_cover(g, faces, 0, 0)
