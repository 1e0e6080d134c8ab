"""
Implosion strata tests
층 차원, 특이점 제거 가능성, ζ 준동형, 대칭, appendix 스타일 검사
"""
import sys
from fractions import Fraction as F
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from app.engine.alcove import enumerate_faces
from app.engine.implosion import (
    alcove_symmetries,
    centralizer_intersection_check,
    centralizer_table,
    compose,
    integrality_triple_check,
    invert,
    smoothness_check,
    strata_table,
    su_stabilizer_pattern_check,
    zeta_homomorphism,
)
from app.engine.rootsys import build_root_system, center_structure, weyl_matrix

RANK6_TYPES = (
    [("A", r) for r in range(1, 7)]
    + [("B", r) for r in range(2, 7)]
    + [("C", r) for r in range(2, 7)]
    + [("D", r) for r in range(3, 7)]
    + [("E", 6), ("F", 4), ("G", 2)]
)
RANK4_TYPES = [key for key in RANK6_TYPES if 2 <= key[1] <= 4] + [("A", 5), ("D", 5)]
RANK8_TYPES = (
    [("A", r) for r in range(1, 9)]
    + [("B", r) for r in range(2, 9)]
    + [("C", r) for r in range(2, 9)]
    + [("D", r) for r in range(3, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


def _by_id(records):
    return {r.face_id: r for r in records}


def test_a2_strata():
    datum = build_root_system("A", 2)
    records = strata_table(datum)

    assert [r.stratum_dim for r in records] == [0, 0, 0, 6, 6, 6, 10]
    assert [r.is_point for r in records] == [True, True, True, False, False, False, False]
    for r in records[:3]:
        assert r.commutator_type == ("A2",)
        assert not r.is_removable, f"vertex {r.face_id} should not be removable"
    for r in records[3:6]:
        assert r.commutator_type == ("A1",)
        assert r.is_removable, f"edge {r.face_id} should be removable"


def test_a2_center_orbits_and_duality():
    records = _by_id(strata_table(build_root_system("A", 2)))

    assert records["w1.w2"].orbit_under_center == ("w1.w2", "w2.w3", "w1.w3")
    assert records["A"].orbit_under_center == ("A",)

    assert records["w1.w2"].dual_face_id == "w1.w2"
    assert records["w2.w3"].dual_face_id == "w1.w3"
    assert records["w2"].dual_face_id == "w1"
    assert records["w3"].dual_face_id == "w3"


def test_c2_strata():
    datum = build_root_system("C", 2)
    records = strata_table(datum)
    by_id = _by_id(records)

    assert [r.stratum_dim for r in records] == [0, 4, 0, 8, 8, 8, 12]
    assert sorted(r.stratum_dim for r in records) == [0, 0, 4, 8, 8, 8, 12]
    assert by_id["w2.w3"].commutator_type == ("A1", "A1")
    assert by_id["w1.w2"].commutator_type == ("C2",)
    assert by_id["w1.w3"].commutator_type == ("C2",)
    assert sum(1 for r in records if r.is_point) == 2

    for face_id in ("w1", "w2", "w3"):
        assert by_id[face_id].is_removable
    for face_id in ("w1.w2", "w2.w3", "w1.w3"):
        assert not by_id[face_id].is_removable


def test_c2_non_central_vertex_verdict():
    datum = build_root_system("C", 2)
    face = enumerate_faces(datum).by_id("w2.w3")
    verdict = smoothness_check(datum, face)

    assert verdict.all_components_a1
    assert verdict.central_vertices == ()
    assert not verdict.removable
    assert any("central" in reason for reason in verdict.reasons)


def test_a3_edge_with_a2_component():
    datum = build_root_system("A", 3)
    face = enumerate_faces(datum).by_id("01")
    assert face.face_id == "w2.w3"

    verdict = smoothness_check(datum, face)
    assert not verdict.removable
    assert not verdict.all_components_a1
    assert any("A2" in reason for reason in verdict.reasons)


@pytest.mark.parametrize("key", RANK8_TYPES)
def test_strata_invariants(key):
    datum = build_root_system(*key)
    records = strata_table(datum)
    top = [r for r in records if r.stratum_dim == datum.group_dim + datum.rank]
    assert len(top) == 1 and top[0].face_id == "A"
    assert sum(1 for r in records if r.is_point) == center_structure(datum).order


def test_centralizer_table_c2():
    rows = {row["face"]: row for row in centralizer_table(build_root_system("C", 2))}
    assert rows["w2.w3"]["k_sigma"] == "A1×A1"
    assert rows["w1.w2"]["commutator"] == "C2"
    assert rows["w1"]["k_sigma"] == "T^1 × A1"
    assert rows["A"]["k_sigma"] == "T^2"
    assert rows["A"]["commutator"] == "1"


def _vertex_map(datum, perm):
    """Face permutation restricted to vertices, as vertex label -> vertex label"""
    poset = enumerate_faces(datum)
    labels = {f.face_id: f.label for f in poset.faces}
    return {labels[f.face_id]: labels[perm[f.face_id]] for f in poset.vertices()}


def _powers(perm):
    """All powers of a face permutation"""
    identity = {k: k for k in perm}
    out, current = [identity], perm
    while current != identity:
        out.append(current)
        current = compose(current, perm)
    return out


@pytest.mark.parametrize("key", RANK6_TYPES)
def test_zeta_homomorphism_rank6(key):
    datum = build_root_system(*key)
    report = zeta_homomorphism(datum)
    assert report.is_homomorphism, f"{datum.name}: zeta is not a homomorphism"
    assert report.is_injective, f"{datum.name}: zeta is not injective"
    assert len(report.element_words) == center_structure(datum).order
    assert report.element_words[0] == ()


@pytest.mark.parametrize("rank", range(1, 7))
def test_zeta_a_is_cyclic_shift(rank):
    """x ↦ (x_{l+1}, x_1, ..., x_l) is the image of a generator of the centre"""
    datum = build_root_system("A", rank)
    report = zeta_homomorphism(datum)
    dim = rank + 1
    shift = tuple(tuple(F(1) if col == (row - 1) % dim else F(0) for col in range(dim)) for row in range(dim))
    images = {weyl_matrix(datum, word) for word in report.element_words}
    assert shift in images

    # 생성원의 상은 길이 l+1 의 순환 치환
    (word,) = report.generator_words.values()
    matrix = weyl_matrix(datum, word)
    perm = [row.index(F(1)) for row in matrix]
    cycle, current = 1, perm[0]
    while current != 0:
        current, cycle = perm[current], cycle + 1
    assert cycle == dim


def test_zeta_c2_exchanges_central_vertices():
    datum = build_root_system("C", 2)
    report = zeta_homomorphism(datum)
    assert len(report.element_words) == 2
    assert report.element_words[1] != ()

    (perm,) = alcove_symmetries(datum).center_face_permutations.values()
    assert _vertex_map(datum, perm) == {"0": "2", "1": "1", "2": "0"}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_a_center_rotates_vertices(n):
    datum = build_root_system("A", n - 1)
    (perm,) = alcove_symmetries(datum).center_face_permutations.values()
    rotations = [_vertex_map(datum, p) for p in _powers(perm)]
    step = {str(j): str((j + 1) % n) for j in range(n)}
    assert step in rotations
    assert len(rotations) == n


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_a_duality_reflects_vertices(n):
    datum = build_root_system("A", n - 1)
    symmetries = alcove_symmetries(datum)
    assert _vertex_map(datum, symmetries.duality_face_permutation) == {str(j): str((n - j) % n) for j in range(n)}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_a_inverse_center_then_duality_flips_edge_01(n):
    datum = build_root_system("A", n - 1)
    symmetries = alcove_symmetries(datum)
    (perm,) = symmetries.center_face_permutations.values()
    step = {str(j): str((j + 1) % n) for j in range(n)}
    c = next(p for p in _powers(perm) if _vertex_map(datum, p) == step)

    flip = compose(invert(c), symmetries.duality_face_permutation)
    edge = enumerate_faces(datum).by_id("01").face_id
    assert flip[edge] == edge
    assert _vertex_map(datum, flip)["0"] == "1"
    assert _vertex_map(datum, flip)["1"] == "0"


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("D", 4), ("E", 6)])
def test_alcove_symmetries(key):
    symmetries = alcove_symmetries(build_root_system(*key))
    failed = [name for name, ok in symmetries.checks.items() if not ok]
    assert not failed, f"{key}: failed symmetry checks {failed}"


@pytest.mark.parametrize("key", RANK4_TYPES)
def test_centralizer_intersection(key):
    report = centralizer_intersection_check(build_root_system(*key))
    assert report.passed, f"{report.group}: {[r for r in report.rows if not r['ok']]}"
    assert report.rows


def test_centralizer_intersection_needs_rank_two():
    with pytest.raises(ValueError):
        centralizer_intersection_check(build_root_system("A", 1))


@pytest.mark.parametrize("key", [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])
def test_integrality_triples(key):
    report = integrality_triple_check(build_root_system(*key))
    marks_count = len(report.rows[0]["marks"])
    assert marks_count == 3
    assert report.passed, f"{report.group}: {[r for r in report.rows if not r['ok']]}"


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_su_embedding_pattern(n):
    report = su_stabilizer_pattern_check(n)
    assert report.passed
    assert len(report.rows) == 2 ** n - 1


@pytest.mark.parametrize("n", [1, 9])
def test_su_embedding_range(n):
    with pytest.raises(ValueError):
        su_stabilizer_pattern_check(n)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
