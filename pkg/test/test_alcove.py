"""
Alcove face tests
A2 / C2 / A3 의 face 열거, 꼭짓점 중심성, affine Weyl 환원, toric cut 데이터
"""
import sys
from fractions import Fraction
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from app.engine.alcove import (
    barycenter,
    chamber_face_count,
    edge_weight_check,
    enumerate_faces,
    face_of_point,
    face_root_data,
    gamma_and_shift,
    reduce_point,
    reduce_to_alcove,
    toric_cut_data,
    vertex_coordinates,
    vertices_and_centrality,
    wall_value,
    with_gamma,
)
from app.engine.rootsys import apply_weyl_word, build_root_system, enumerate_weyl_group, in_coroot_lattice
from app.utils.rational import add, mat_vec, scale


def F(p, q=1):
    return Fraction(p, q)


def test_a2_face_order():
    datum = build_root_system("A", 2)
    poset = enumerate_faces(datum)

    ids = [f.face_id for f in poset.faces]
    labels = [f.label for f in poset.faces]
    assert ids == ["w1.w2", "w2.w3", "w1.w3", "w2", "w1", "w3", "A"], ids
    assert labels == ["0", "1", "2", "01", "02", "12", "A"], labels
    assert [f.dim for f in poset.faces] == [0, 0, 0, 1, 1, 1, 2]


def test_face_census():
    datum = build_root_system("A", 3)
    poset = enumerate_faces(datum)
    assert len(poset.faces) == 2 ** 4 - 1
    assert poset.dimension_census() == {0: 4, 1: 6, 2: 4, 3: 1}
    assert chamber_face_count(datum) == 8


def test_poset_lookup_and_order():
    datum = build_root_system("A", 2)
    poset = enumerate_faces(datum)
    vertex = poset.by_id("0")
    edge = poset.by_id("w2")
    assert vertex.face_id == "w1.w2"
    assert poset.leq(vertex, edge)
    assert not poset.leq(edge, vertex)
    assert poset.leq(edge, poset.open_face())
    assert {f.face_id for f in poset.star(vertex)} == {"w1.w2", "w1", "w2", "A"}
    assert len(poset.proper_subfaces(poset.open_face())) == 6

    with pytest.raises(ValueError):
        poset.by_id("w9")


def test_vertices_lie_on_their_walls():
    for key in (("A", 3), ("C", 3), ("G", 2), ("F", 4)):
        datum = build_root_system(*key)
        for face in enumerate_faces(datum).faces:
            for wall in range(1, datum.rank + 2):
                value = wall_value(datum, wall, face.interior_point)
                if wall in face.wall_set:
                    assert value == 0, f"{datum.name} {face.face_id}: wall {wall} value {value}"
                else:
                    assert value > 0, f"{datum.name} {face.face_id}: wall {wall} value {value}"
            assert face_of_point(datum, face.interior_point) == face


def test_c2_vertices():
    datum = build_root_system("C", 2)
    coords = vertex_coordinates(datum)
    assert coords[1] == (F(1, 2), F(0))
    assert coords[2] == (F(1, 2), F(1, 2))

    central = {v.vertex_id: v.is_central for v in vertices_and_centrality(datum)}
    assert central == {0: True, 1: False, 2: True}


def test_face_of_point_outside():
    datum = build_root_system("A", 2)
    with pytest.raises(ValueError):
        face_of_point(datum, (F(-1), F(1), F(0)))


def test_face_root_data_a2():
    datum = build_root_system("A", 2)
    poset = enumerate_faces(datum)

    origin = face_root_data(datum, poset.by_id("0"))
    assert origin.component_types == ("A2",)
    assert origin.dim_k_sigma == 8
    assert origin.dim_commutator == 8

    edge = face_root_data(datum, poset.by_id("01"))
    assert edge.component_types == ("A1",)
    assert edge.dim_k_sigma == 4
    assert edge.dim_commutator == 3
    assert edge.central_torus_dim == 1

    open_face = face_root_data(datum, poset.open_face())
    assert open_face.component_types == ()
    assert open_face.dim_k_sigma == 2
    assert open_face.dim_commutator == 0


def test_face_root_data_c2_vertex():
    datum = build_root_system("C", 2)
    poset = enumerate_faces(datum)
    assert face_root_data(datum, poset.by_id("w2.w3")).component_types == ("A1", "A1")
    assert face_root_data(datum, poset.by_id("w1.w2")).component_types == ("C2",)
    assert face_root_data(datum, poset.by_id("w1.w3")).component_types == ("C2",)


def test_face_data_is_cached_per_face():
    datum = build_root_system("E", 6)
    face = enumerate_faces(datum).by_id("w1.w2")
    first = face_root_data(datum, face)
    assert face_root_data(datum, face) is first
    assert face_root_data(build_root_system("E", 6), face) is first
    assert len(first.r_sigma) == 2 * len(first.r_sigma_positive)

    hits = gamma_and_shift.cache_info().hits
    assert with_gamma(datum, face) == with_gamma(datum, face)
    assert gamma_and_shift.cache_info().hits > hits


def test_gamma_orders_a2():
    datum = build_root_system("A", 2)
    poset = enumerate_faces(datum)
    orders = {f.label: with_gamma(datum, f).gamma_order for f in poset.faces}
    assert orders == {"0": 1, "1": 1, "2": 1, "01": 2, "02": 2, "12": 2, "A": 1}, orders


def test_gamma_a3_edge_w1_w3():
    """σ_02 has K_σ' = SU(2) × SU(2) with Γ_σ of order 2 and g_σ = 1"""
    datum = build_root_system("A", 3)
    data = with_gamma(datum, enumerate_faces(datum).by_id("w1.w3"))
    assert data.component_types == ("A1", "A1")
    assert data.gamma_order == 2
    assert data.g_sigma_trivial is True


def test_reduce_to_alcove_a2():
    datum = build_root_system("A", 2)
    xi = (F(7, 3), F(-1, 3), F(-2))
    result = reduce_to_alcove(datum, xi)

    face_of_point(datum, result.xi_reduced)
    assert in_coroot_lattice(datum, result.translation)
    assert mat_vec(result.linear_matrix, add(xi, result.translation)) == result.xi_reduced
    assert reduce_point(datum, xi) == result.xi_reduced
    assert result.steps > 0


def test_reduce_to_alcove_c2():
    datum = build_root_system("C", 2)
    xi = (F(7, 3), F(-5, 4))
    result = reduce_to_alcove(datum, xi)
    face_of_point(datum, result.xi_reduced)
    assert in_coroot_lattice(datum, result.translation)


def test_reduction_fixes_alcove_points():
    datum = build_root_system("G", 2)
    b = barycenter(datum)
    result = reduce_to_alcove(datum, b)
    assert result.steps == 0
    assert result.xi_reduced == b
    assert result.linear_word == ()


def test_weyl_images_reduce_to_barycenter():
    datum = build_root_system("B", 2)
    b = barycenter(datum)
    for word in enumerate_weyl_group(datum):
        image = apply_weyl_word(datum, word, b)
        assert reduce_point(datum, image) == b, f"word {word} reduced elsewhere"


def test_reduce_dimension_mismatch():
    datum = build_root_system("A", 2)
    with pytest.raises(ValueError):
        reduce_to_alcove(datum, (F(0), F(1)))
    with pytest.raises(ValueError):
        reduce_point(datum, (F(0), F(1)))


@pytest.mark.parametrize("key", [("A", 3), ("C", 3), ("G", 2), ("F", 4)])
def test_reduce_point_matches_reduction(key):
    datum = build_root_system(*key)
    for k in range(1, 6):
        xi = tuple(F(0) for _ in range(datum.ambient_dim))
        for i, c in enumerate(datum.simple_coroots):
            xi = add(xi, scale(F((7 * k + 3 * i) % 11 - 5, k + 1), c))
        result = reduce_to_alcove(datum, xi)
        assert reduce_point(datum, xi) == result.xi_reduced, f"{datum.name}: {xi}"
        face_of_point(datum, result.xi_reduced)


def test_toric_cut_data():
    f4 = toric_cut_data(build_root_system("F", 4))
    assert f4.weights_m == (2, 3, 2, 1, 1)
    assert f4.lcm_m == 6
    assert f4.l_coefficients == (3, 2, 3, 6, 6)
    assert not f4.is_standard_projective

    g2 = toric_cut_data(build_root_system("G", 2))
    assert g2.weights_m == (1, 2, 1)
    assert g2.l_coefficients == (2, 1, 2)

    c3 = toric_cut_data(build_root_system("C", 3))
    assert c3.is_standard_projective
    assert c3.l_coefficients == (1, 1, 1, 1)


@pytest.mark.parametrize("key", [("A", 2), ("C", 3), ("G", 2), ("F", 4), ("E", 6)])
def test_edge_weight_signs(key):
    datum = build_root_system(*key)
    edges = edge_weight_check(datum)
    assert len(edges) == (datum.rank + 1) * datum.rank
    bad = [(e.i, e.j) for e in edges if not e.ok]
    assert not bad, f"{datum.name}: edge weights with wrong signs {bad}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
