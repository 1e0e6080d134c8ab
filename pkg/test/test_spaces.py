"""
Quasi-Hamiltonian model tests
모델 생성, 점 검증, 모멘트 등변성, disc 공식의 두 표현, transition map
"""
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from app.engine.lie import Ad, haar_unitary
from app.engine.spaces import (
    MODEL_KINDS,
    Disc,
    Double,
    ExpCotangent,
    FusedSpace,
    ModelPoint,
    ProductSpace,
    Sphere,
    UniversalEmbedding,
    build_model,
    disc_form,
    disc_form_exponentiated,
    glue_map,
    lambda_form,
    omega0,
    random_complex,
    random_disc_point,
)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_build_every_model():
    for kind in MODEL_KINDS:
        model = build_model(kind, 2)
        assert model.kind == kind
        assert model.describe()["n"] == 2

    with pytest.raises(ValueError):
        build_model("torus", 2)
    with pytest.raises(ValueError):
        build_model("disc", 0)


def test_group_counts():
    assert build_model("disc", 3).group_count == 1
    assert build_model("double", 3).group_count == 2
    assert build_model("fused_double", 3).group_count == 1
    assert ProductSpace([Double(2), Disc(2)]).group_count == 3
    with pytest.raises(ValueError):
        ProductSpace([Double(2), Disc(3)])
    with pytest.raises(ValueError):
        FusedSpace(Double(2), 1, 1)


def test_point_validation(rng):
    disc = Disc(2)
    with pytest.raises(ValueError):
        disc.validate_point(ModelPoint((np.array([1.0, 0.0], dtype=complex),)))
    with pytest.raises(ValueError):
        disc.validate_point(ModelPoint((np.zeros(2, dtype=complex), np.zeros(2, dtype=complex))))

    sphere = Sphere(2)
    with pytest.raises(ValueError):
        sphere.validate_point(ModelPoint((np.zeros(2, dtype=complex),), chart=2))

    cotangent = ExpCotangent(2)
    wide = np.diag([0.0, 2j * np.pi * 1.2])
    with pytest.raises(ValueError):
        cotangent.validate_point(ModelPoint((np.eye(2, dtype=complex), wide)))

    for kind in MODEL_KINDS:
        model = build_model(kind, 3)
        model.validate_point(model.sample_point(rng))


def test_disc_form_two_ways(rng):
    """ω = λ + s(ω₀ − λ) against ω₀ + Φ₀*ϖ"""
    for _ in range(10):
        z = random_disc_point(rng, 3)
        X, Y = random_complex(rng, 3), random_complex(rng, 3)
        assert disc_form(z, X, Y) == pytest.approx(disc_form_exponentiated(z, X, Y), abs=1e-10)


def test_disc_form_at_origin(rng):
    z = np.zeros(2, dtype=complex)
    X, Y = random_complex(rng, 2), random_complex(rng, 2)
    assert disc_form(z, X, Y) == omega0(X, Y)
    with pytest.raises(ValueError):
        lambda_form(z, X, Y)


def test_glue_map(rng):
    z = random_disc_point(rng, 3, (0.1, 0.9))
    w = glue_map(z)
    assert np.real(np.vdot(w, w)) == pytest.approx(1 / np.pi - np.real(np.vdot(z, z)), abs=1e-12)
    assert np.allclose(glue_map(w), z, atol=1e-12)

    equator = z / np.linalg.norm(z) * np.sqrt(1 / (2 * np.pi))
    assert np.allclose(glue_map(equator), -equator, atol=1e-12)

    with pytest.raises(ValueError):
        glue_map(np.zeros(3, dtype=complex))


def test_sphere_transition_moment(rng):
    sphere = Sphere(2)
    z = random_disc_point(rng, 2, (0.1, 0.9))
    point = ModelPoint((z,), 0)
    other = sphere.transition(point)
    assert other.chart == 1
    assert np.allclose(sphere.moment(point)[0], sphere.moment(other)[0], atol=1e-10)


@pytest.mark.parametrize("kind", ["disc", "double", "fused_double", "exp_cotangent"])
def test_moment_equivariance(kind, rng):
    """Φ(k·x) = Ad(k)Φ(x) componentwise"""
    model = build_model(kind, 3)
    point = model.sample_point(rng)
    ks = model.random_group_elements(rng)
    moved = model.act(ks, point)
    for before, after, k in zip(model.moment(point), model.moment(moved), ks):
        assert np.allclose(after, Ad(k, before), atol=1e-10)


def test_double_form_invariant(rng):
    double = Double(2)
    point = double.sample_point(rng)
    X, Y = double.random_tangent(rng, point), double.random_tangent(rng, point)
    k = haar_unitary(rng, 2)
    moved = double.act((k, k), point)
    # ω 는 v 에만 의존하고 left-trivialized 접벡터는 Ad(k) 로 옮겨짐
    X_moved = tuple(Ad(k, x) for x in X)
    Y_moved = tuple(Ad(k, y) for y in Y)
    assert double.two_form(moved, X_moved, Y_moved) == pytest.approx(double.two_form(point, X, Y), abs=1e-12)


def test_cotangent_forms_agree(rng):
    """Closed form, pullback of the double and ω₀ + Ψ₀*ϖ agree"""
    model = ExpCotangent(2)
    for _ in range(5):
        point = model.sample_point(rng)
        X, Y = model.random_tangent(rng, point), model.random_tangent(rng, point)
        closed = model.two_form(point, X, Y)
        assert closed == pytest.approx(model.pullback_form(point, X, Y), abs=1e-8)
        assert closed == pytest.approx(model.exponentiated_form(point, X, Y), abs=1e-8)


def test_universal_embedding_shapes(rng):
    embedding = UniversalEmbedding(2)
    m = embedding.source.sample_point(rng)
    point = embedding.point(m)
    embedding.target.validate_point(point)
    assert len(point.components) == 4

    with pytest.raises(ValueError):
        UniversalEmbedding(4)


def test_tangent_basis_size(rng):
    model = build_model("double", 2)
    point = model.sample_point(rng)
    assert len(model.tangent_basis(point)) == model.coordinate_dim == 8


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
