"""
Moduli of flat connections tests
홀로노미 관계 샘플러, 등변성, master moduli space 차원 계산과 DK 교차 검증
"""
import sys
from dataclasses import replace
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

import app.engine.moduli as moduli_module
from app.engine.alcove import enumerate_faces
from app.engine.lie import haar_special_unitary
from app.engine.moduli import (
    GENERIC_CAVEAT,
    SurfaceData,
    act,
    boundary_moments,
    dk_cross_validation,
    dk_piece_dimension,
    expected_dimensions,
    flat_connection_from,
    holonomy,
    moment_equivariance_check,
    representation_space_point,
    sample_flat_connection,
    sampler_report,
    solve_last_boundary,
)
from app.engine.rootsys import build_root_system


def test_surface_validation():
    assert SurfaceData(0, 2).group_factors == 2
    assert SurfaceData(2, 1).group_factors == 4
    with pytest.raises(ValueError):
        SurfaceData(-1, 2)
    with pytest.raises(ValueError):
        SurfaceData(1, 0)
    with pytest.raises(ValueError):
        SurfaceData(0, 1)


@pytest.mark.parametrize("g,n,size", [(0, 2, 2), (0, 3, 3), (1, 1, 2), (2, 2, 3)])
def test_sampled_points_satisfy_relation(g, n, size):
    surface = SurfaceData(g, n)
    point = sample_flat_connection(surface, size, seed=0)
    assert point.residual <= 1e-12
    assert len(point.a) == g and len(point.u) == n and len(point.v) == n
    for v in point.v:
        assert np.linalg.norm(v.conj().T @ v - np.eye(size)) < 1e-12
        assert abs(np.linalg.det(v) - 1) < 1e-12
    assert np.allclose(boundary_moments(point)[-1], np.eye(size), atol=1e-12)


def test_solve_last_boundary_sphere_with_two_holes():
    """g = 0, n = 2: Ad(u_1)v_1⁻¹ · Ad(u_2)v_2⁻¹ = 1"""
    rng = np.random.default_rng(3)
    u = [haar_special_unitary(rng, 2) for _ in range(2)]
    v1 = haar_special_unitary(rng, 2)
    v2 = solve_last_boundary([], [], u, [v1])
    product = u[0] @ v1.conj().T @ u[0].conj().T @ u[1] @ v2.conj().T @ u[1].conj().T
    assert np.allclose(product, np.eye(2), atol=1e-12)


def test_solve_last_boundary_torus():
    """g = 1, n = 1, u = 1: v = [a, b]"""
    rng = np.random.default_rng(4)
    a, b = haar_special_unitary(rng, 2), haar_special_unitary(rng, 2)
    v = solve_last_boundary([a], [b], [np.eye(2, dtype=complex)], [])
    assert np.allclose(v, a @ b @ a.conj().T @ b.conj().T, atol=1e-12)


def test_solve_last_boundary_length_mismatch():
    eye = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        solve_last_boundary([], [], [eye, eye], [eye, eye])


def test_representation_space_slice():
    point = representation_space_point(SurfaceData(1, 2), 2, seed=9)
    assert all(np.allclose(u, np.eye(2)) for u in point.u)
    assert point.residual <= 1e-12


def test_sampler_size_check():
    with pytest.raises(ValueError):
        sample_flat_connection(SurfaceData(1, 1), 1, seed=0)


def test_action_preserves_relation():
    surface = SurfaceData(1, 2)
    point = sample_flat_connection(surface, 3, seed=2)
    rng = np.random.default_rng(5)
    ks = [haar_special_unitary(rng, 3) for _ in range(3)]
    moved = act(ks, point)
    assert moved.residual <= 1e-12
    for before, after, k in zip(boundary_moments(point), boundary_moments(moved), ks):
        assert np.allclose(after, k @ before @ k.conj().T, atol=1e-12)

    with pytest.raises(ValueError):
        act(ks[:2], point)


def test_flat_connection_from_matches_holonomy():
    rng = np.random.default_rng(6)
    a = [haar_special_unitary(rng, 2)]
    b = [haar_special_unitary(rng, 2)]
    u = [haar_special_unitary(rng, 2) for _ in range(2)]
    point = flat_connection_from(a, b, u, [haar_special_unitary(rng, 2)])
    assert np.allclose(holonomy(point.a, point.b, point.u, point.v), np.eye(2), atol=1e-12)


def test_sampler_and_equivariance_reports():
    surface = SurfaceData(1, 2)
    sampler = sampler_report(surface, 2, 30, seed=0)
    assert sampler.verdict == "pass"
    assert sampler.identity("sampler").samples == 30

    point = sample_flat_connection(surface, 2, seed=0)
    report = moment_equivariance_check(surface, point, 20, seed=0)
    assert report.verdict == "pass", [(i.name, i.max_residual) for i in report.identities]

    with pytest.raises(ValueError):
        moment_equivariance_check(SurfaceData(0, 3), point, 5, seed=0)


@pytest.mark.parametrize("g,n,size", [(0, 2, 2), (1, 1, 2), (2, 3, 2), (3, 4, 3)])
def test_sampler_thousand_samples(g, n, size):
    report = sampler_report(SurfaceData(g, n), size, 1000, seed=0)
    assert report.verdict == "pass", report.identity("sampler").max_residual
    assert report.identity("sampler").samples == 1000


def test_dimensions_torus_one_hole():
    report = expected_dimensions(SurfaceData(1, 1), build_root_system("A", 1), ["A"])
    assert report.dim_M_Sigma == 6
    assert report.dim_piece == 4
    assert report.dim_reduction_generic == 2
    assert report.consistent
    assert report.generic and report.caveat == GENERIC_CAVEAT


def test_dimensions_pair_of_pants():
    report = expected_dimensions(SurfaceData(0, 3), build_root_system("A", 1), ["A", "A", "A"])
    assert report.dim_M_Sigma == 12
    assert report.dim_piece == 6
    assert report.dim_reduction_generic == 0
    assert report.reduction_cross_check == 0
    assert report.dim_master_open == 12 - 3 * (3 - 1)


def test_dimensions_with_vertex_faces():
    datum = build_root_system("A", 2)
    report = expected_dimensions(SurfaceData(0, 3), datum, ["w1.w2", "01", "A"])
    assert [c.face_id for c in report.contributions] == ["w1.w2", "w2", "A"]
    # (2g−2)·dim K + Σ (dim K − dim K_σ)
    assert report.dim_reduction_generic == -16 + (8 - 8) + (8 - 4) + (8 - 2)
    assert report.consistent


def test_dimensions_length_mismatch():
    with pytest.raises(ValueError):
        expected_dimensions(SurfaceData(0, 3), build_root_system("A", 1), ["A"])


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("C", 2), ("G", 2), ("B", 3)])
def test_dk_cross_validation(key):
    datum = build_root_system(*key)
    report = dk_cross_validation(datum)
    assert report.passed, [row for row in report.rows if not row["ok"]]
    assert len(report.rows) == len(enumerate_faces(datum).faces)


def test_dk_cross_validation_catches_root_count_drift(monkeypatch):
    """A wrong |R_σ| on the moduli side is not mirrored by the Dynkin-type side"""
    real = moduli_module.face_root_data

    def drifted(datum, face):
        data = real(datum, face)
        if face.face_id == "w2.w3":
            return replace(data, dim_commutator=data.dim_commutator + 2)
        return data

    monkeypatch.setattr(moduli_module, "face_root_data", drifted)
    report = dk_cross_validation(build_root_system("C", 2))
    assert not report.passed
    assert [row["face"] for row in report.rows if not row["ok"]] == ["w2.w3"]


def test_disc_piece_is_stratum_dimension():
    datum = build_root_system("C", 2)
    dims = [dk_piece_dimension(datum, face) for face in enumerate_faces(datum).faces]
    assert dims == [0, 4, 0, 8, 8, 8, 12]

    # g = 1, n = 1 의 M(Σ̂) = K^4
    hat = expected_dimensions(SurfaceData(1, 1), datum, ["w2.w3"]).dim_piece_hat
    assert hat == 4 * datum.group_dim - (datum.group_dim - 0 + 6)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
