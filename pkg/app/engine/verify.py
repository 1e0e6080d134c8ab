"""
Residual-based verification of quasi-Hamiltonian identities
모델별 axiom 잔차, gluing, cotangent-double, sphere reduction, universal embedding 검증

Every check returns a VerificationReport whose verdict is "pass" iff every identity's
max residual is within its tolerance.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import scipy.linalg as la

from config.settings import numeric_setting, resolve_tolerance
from app.engine.lie import (
    Ad,
    bracket,
    dexp_left,
    exp_anti_hermitian,
    from_coords,
    inner,
    operator_matrix,
    random_diagonal_lie_vector,
    random_lie_vector,
    varpi_eval,
    varpi_root_sum,
)
from app.engine.spaces import (
    Double,
    ExpCotangent,
    ModelPoint,
    QHamSpace,
    Sphere,
    UniversalEmbedding,
    build_model,
    disc_form,
    disc_form_exponentiated,
    disc_moment,
    disc_scale,
    glue_map,
    omega0,
    phi0,
    random_complex,
    random_disc_point,
)
from app.tasks.batches import ResidualAccumulator, run_batches

logger = logging.getLogger(__name__)

# identity name -> tolerance key (identities not listed use their own name)
TOLERANCE_KEYS: Dict[str, str] = {
    "axiom_ii": "degeneracy_floor",
    "moment_unitary": "unitary",
    "varpi_antisymmetry": "antisymmetry",
    "varpi_zero": "antisymmetry",
    "cross_chart_moment": "glue_moment",
    "equator_fixed": "involution",
    "cotangent_moment": "cotangent",
    "cotangent_origin": "cotangent",
    "central_splitting": "sphere_reduction",
    "universal_moment": "universal",
    "relation_invariance": "sampler",
}


class FiniteDifferenceError(RuntimeError):
    """Step-halving estimates disagree beyond the rejection threshold"""


@dataclass
class IdentityResult:
    name: str
    max_residual: float
    tolerance: float
    samples: int
    worst_sample: Optional[int] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass
class VerificationReport:
    """Per-identity max residuals for one model / check run"""

    model: str
    n: int
    seed: int
    samples: int
    identities: List[IdentityResult] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(identity.passed for identity in self.identities)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def identity(self, name: str) -> IdentityResult:
        for identity in self.identities:
            if identity.name == name:
                return identity
        raise KeyError(f"Report for {self.model} has no identity '{name}'")

    def worst_failure(self) -> Optional[IdentityResult]:
        failures = [i for i in self.identities if not i.passed]
        if not failures:
            return None
        return max(failures, key=lambda i: i.max_residual / max(i.tolerance, 1e-300))


def build_report(
    model: str,
    n: int,
    seed: int,
    samples: int,
    acc: ResidualAccumulator,
    tol: Optional[float] = None,
    details: Optional[dict] = None,
) -> VerificationReport:
    identities = []
    for name in sorted(acc.maxima):
        key = TOLERANCE_KEYS.get(name, name)
        identities.append(
            IdentityResult(
                name=name,
                max_residual=acc.maxima[name],
                tolerance=resolve_tolerance(key, tol),
                samples=acc.counts.get(name, 0),
                worst_sample=acc.worst.get(name),
                details=acc.details.get(name, {}),
            )
        )
    report = VerificationReport(model, n, seed, samples, identities, details or {})
    logger.info(f"Verification {model} n={n} seed={seed}: {report.verdict} ({len(identities)} identities)")
    for identity in identities:
        if not identity.passed:
            logger.warning(
                f"  {identity.name}: max residual {identity.max_residual:.3e} > {identity.tolerance:.1e} "
                f"(worst sample {identity.worst_sample})"
            )
    return report


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------

def central_difference(f: Callable[[float], Union[float, np.ndarray]], h: float):
    """4th-order central difference of f at 0"""
    return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h)


def richardson_derivative(f: Callable[[float], Union[float, np.ndarray]], tol: float, h: Optional[float] = None):
    """
    Derivative at 0 with one step halving and Richardson extrapolation

    Raises:
        FiniteDifferenceError: 두 추정치 차이가 reject_factor × tol 을 넘을 때
    """
    h = h or numeric_setting("finite_differences", "base_step")
    reject = numeric_setting("finite_differences", "reject_factor")
    coarse = central_difference(f, h)
    fine = central_difference(f, h / 2)
    error = float(np.max(np.abs(np.asarray(coarse) - np.asarray(fine))))
    if error > reject * tol:
        raise FiniteDifferenceError(f"Finite differences disagree by {error:.3e} (limit {reject * tol:.1e})")
    return (16 * fine - coarse) / 15


def exterior_derivative(model: QHamSpace, point: ModelPoint, p, q, r, tol: float) -> float:
    """dω(P, Q, R) for constant coordinate fields of the chart centred at point"""
    chart = model.chart(point)

    def directional(direction, a, b):
        return float(richardson_derivative(lambda t: chart.form(t * direction, a, b), tol))

    return directional(p, q, r) - directional(q, p, r) + directional(r, p, q)


def chi_trilinear(model: QHamSpace, point: ModelPoint, p, q, r) -> float:
    """Σ_i (θ_L(P), [θ_L(Q), θ_L(R)]) over the moment components (χ without its constant)"""
    chart = model.chart(point)
    origin = np.zeros(model.coordinate_dim)
    lp = model.moment_velocity(point, chart.field(origin, p))
    lq = model.moment_velocity(point, chart.field(origin, q))
    lr = model.moment_velocity(point, chart.field(origin, r))
    return sum(inner(a, bracket(b, c)) for a, b, c in zip(lp, lq, lr))


def _unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _axiom_i_sample(
    model: QHamSpace, point: ModelPoint, rng: np.random.Generator, tol: float, acc: Optional[ResidualAccumulator] = None
):
    """(dω(P,Q,R), trilinear term) with resampling on finite-difference rejection"""
    max_resamples = int(numeric_setting("finite_differences", "max_resamples"))
    for attempt in range(max_resamples + 1):
        p, q, r = (_unit(rng, model.coordinate_dim) for _ in range(3))
        try:
            d_omega = exterior_derivative(model, point, p, q, r, tol)
            return d_omega, chi_trilinear(model, point, p, q, r)
        except FiniteDifferenceError as e:
            logger.debug(f"{model.kind}: finite-difference sample rejected ({e}); attempt {attempt + 1}")
            if acc is not None:
                acc.add("fd_rejections", 1)
            point = model.sample_point(rng)
    raise RuntimeError(f"{model.kind}: finite differences did not converge after {max_resamples} resamples")


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

def ad_plus_one_gap(phi: np.ndarray) -> float:
    """Smallest singular value of Ad(Φ) + 1 on u(n)"""
    n = phi.shape[0]
    return float(la.svdvals(operator_matrix(lambda x: Ad(phi, x) + x, n)).min())


def form_gram(model: QHamSpace, point: ModelPoint) -> np.ndarray:
    basis = model.tangent_basis(point)
    return np.array([[model.two_form(point, a, b) for b in basis] for a in basis])


def equator_kernel_check(model: QHamSpace, rng: np.random.Generator) -> dict:
    """
    Minimal degeneracy at the equator 2π²‖z‖² = π

    ker ω 의 차원과 {ξ_M : ξ ∈ ker(Ad Φ + 1)} 의 차원을 비교합니다.
    """
    n = model.n
    threshold = numeric_setting("numerics", "rank_threshold")
    direction = random_complex(rng, n)
    z = direction / np.linalg.norm(direction) * np.sqrt(1.0 / (2 * np.pi))
    point = ModelPoint((z,), 0)
    basis = model.tangent_basis(point)
    gram = form_gram(model, point)
    form_kernel_dim = la.null_space(gram, rcond=threshold).shape[1]

    phi = model.moment(point)[0]
    kernel = la.null_space(operator_matrix(lambda x: Ad(phi, x) + x, n), rcond=threshold)
    generators = [model.generator(point, (from_coords(col, n),)) for col in kernel.T]
    if generators:
        vectors = np.array([model.tangent_to_vector(g) for g in generators])
        sv = la.svdvals(vectors)
        generator_dim = int(np.sum(sv > threshold * sv.max()))
        leak = max(abs(model.two_form(point, g, b)) for g in generators for b in basis)
    else:
        generator_dim, leak = 0, 0.0
    return {
        "form_kernel_dim": int(form_kernel_dim),
        "generator_kernel_dim": generator_dim,
        "residual": abs(form_kernel_dim - generator_dim) + leak,
    }


def _axiom_task(model: QHamSpace):
    n = model.n
    ad_floor = numeric_setting("numerics", "ad_invertible_floor")
    nondegeneracy_floor = numeric_setting("numerics", "nondegeneracy_floor")
    axiom_i_samples = int(numeric_setting("numerics", "axiom_i_samples"))
    axiom_ii_samples = int(numeric_setting("numerics", "axiom_ii_samples"))
    axiom_i_tol = resolve_tolerance("axiom_i")
    chi_constant = numeric_setting("numerics", "chi_normalization")
    disc_like = model.kind in ("disc", "sphere")

    def task(rng: np.random.Generator, start: int, count: int) -> ResidualAccumulator:
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            point = model.sample_point(rng)
            X, Y, Y2 = (model.random_tangent(rng, point) for _ in range(3))
            alpha, beta = rng.standard_normal(2)

            w_xy = model.two_form(point, X, Y)
            w_yx = model.two_form(point, Y, X)
            combo = tuple(alpha * a + beta * b for a, b in zip(Y, Y2))
            bilinear = model.two_form(point, X, combo) - alpha * w_xy - beta * model.two_form(point, X, Y2)
            acc.record("antisymmetry", max(abs(w_xy + w_yx), abs(bilinear)), index)

            phis = model.moment(point)
            acc.record("moment_unitary", max(np.linalg.norm(p.conj().T @ p - np.eye(n)) for p in phis), index)

            ks = model.random_group_elements(rng)
            moved = model.moment(model.act(ks, point))
            acc.record(
                "equivariance",
                max(np.linalg.norm(m - Ad(k, p)) for m, k, p in zip(moved, ks, phis)),
                index,
            )

            # ι(ξ_M)ω = ½Φ*(θ_L + θ_R, ξ)
            zetas = model.random_zetas(rng)
            lhs = model.two_form(point, model.generator(point, zetas), Y)
            lv = model.moment_velocity(point, Y)
            rhs = 0.5 * sum(inner(l + Ad(p, l), z) for l, p, z in zip(lv, phis, zetas))
            acc.record("axiom_iii", abs(lhs - rhs), index)

            if index < axiom_ii_samples:
                gap = min(ad_plus_one_gap(p) for p in phis)
                if gap >= ad_floor:
                    smallest = float(la.svdvals(form_gram(model, point)).min())
                    acc.record("axiom_ii", max(0.0, nondegeneracy_floor - smallest), index)
                else:
                    acc.add("axiom_ii_skipped", 1)

            if index < axiom_i_samples:
                d_omega, trilinear = _axiom_i_sample(model, point, rng, axiom_i_tol, acc)
                acc.record("axiom_i", abs(d_omega + chi_constant * trilinear), index)
                acc.add("chi_dt", d_omega * trilinear)
                acc.add("chi_tt", trilinear * trilinear)

            if disc_like:
                z = point.components[0]
                acc.record(
                    "disc_exponentiation",
                    abs(disc_form(z, X[0], Y[0]) - disc_form_exponentiated(z, X[0], Y[0])),
                    index,
                )
                sv = la.svdvals(operator_matrix(lambda x: dexp_left(phi0(z), x), n))
                acc.record("disc_regularity", max(0.0, nondegeneracy_floor - float(sv.min())), index)
        return acc

    return task


def axiom_residuals(
    model: Union[str, QHamSpace],
    samples: int,
    seed: int,
    n: int = 2,
    tol: Optional[float] = None,
) -> VerificationReport:
    """
    Definition-level residuals for one model

    - (iii) ι(ξ_M)ω = ½Φ*(θ_L + θ_R, ξ), exact evaluation per sample
    - (i) dω = −Φ*χ with χ(ξ, η, ζ) = c(ξ, [η, ζ]), 4th-order finite differences
    - (ii) full rank of ω where Ad Φ + 1 is invertible; kernel count at the equator (disc, sphere)

    Args:
        model: 모델 이름 또는 QHamSpace 인스턴스
        samples: 샘플 수
        seed: 난수 시드
        n: 행렬 크기 (model 이 이름일 때)
        tol: 모든 identity 허용 오차 override

    Returns:
        VerificationReport
    """
    space = build_model(model, n) if isinstance(model, str) else model
    acc = run_batches(_axiom_task(space), samples, seed)
    details: dict = {"model": space.describe()}

    extra_rng = np.random.default_rng([seed, 1])
    chi_constant = numeric_setting("numerics", "chi_normalization")
    if space.kind == "disc" and space.n >= 2 and acc.sums.get("chi_tt", 0.0) > 0.0:
        estimate = -acc.sums["chi_dt"] / acc.sums["chi_tt"]
        acc.record("chi_calibration", abs(estimate - chi_constant), None)
        acc.note("chi_calibration", "estimate", estimate)
        acc.note("chi_calibration", "frozen", chi_constant)
    details["chi_constant"] = chi_constant

    if space.kind in ("disc", "sphere"):
        origin = ModelPoint((np.zeros(space.n, dtype=complex),), 0)
        X, Y = space.random_tangent(extra_rng, origin), space.random_tangent(extra_rng, origin)
        acc.record("disc_origin", abs(space.two_form(origin, X, Y) - omega0(X[0], Y[0])), None)
        details["origin_sigma_min"] = float(la.svdvals(form_gram(space, origin)).min())

        equator = equator_kernel_check(space, extra_rng)
        acc.record("equator", equator["residual"], None)
        acc.note("equator", "form_kernel_dim", equator["form_kernel_dim"])
        acc.note("equator", "generator_kernel_dim", equator["generator_kernel_dim"])

    details["fd_rejections"] = int(acc.sums.get("fd_rejections", 0))
    if "axiom_ii_skipped" in acc.sums:
        details["axiom_ii_skipped"] = int(acc.sums["axiom_ii_skipped"])
    return build_report(space.kind, space.n, seed, samples, acc, tol, details)


def varpi_dual_check(n: int, samples: int, seed: int, tol: Optional[float] = None) -> VerificationReport:
    """Closed-form ϖ against the root-space sum for diagonal λ, plus antisymmetry"""
    if n < 1:
        raise ValueError(f"Matrix size must be positive, got n={n}")

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            lam = random_diagonal_lie_vector(rng, n, scale=2.0)
            xi1, xi2 = random_lie_vector(rng, n), random_lie_vector(rng, n)
            value = varpi_eval(lam, xi1, xi2)
            acc.record("varpi_dual", abs(value - varpi_root_sum(lam, xi1, xi2)), index)
            acc.record(
                "varpi_antisymmetry",
                max(abs(value + varpi_eval(lam, xi2, xi1)), abs(varpi_eval(lam, xi1, xi1))),
                index,
            )
            acc.record("varpi_zero", abs(varpi_eval(np.zeros((n, n), dtype=complex), xi1, xi2)), index)
        return acc

    return build_report("varpi", n, seed, samples, run_batches(task, samples, seed), tol)


# ---------------------------------------------------------------------------
# Gluing and the spinning sphere
# ---------------------------------------------------------------------------

def _glue_form_residual(
    rng: np.random.Generator, n: int, z: np.ndarray, band, tol: float, acc: ResidualAccumulator
) -> float:
    """|φ*ω + ω| at z, redrawing the sample when the difference quotients are rejected"""
    max_resamples = int(numeric_setting("finite_differences", "max_resamples"))
    for attempt in range(max_resamples + 1):
        X, Y = random_complex(rng, n), random_complex(rng, n)
        try:
            dx = richardson_derivative(lambda t: glue_map(z + t * X), tol)
            dy = richardson_derivative(lambda t: glue_map(z + t * Y), tol)
        except FiniteDifferenceError as e:
            logger.debug(f"glue: finite-difference sample rejected ({e}); attempt {attempt + 1}")
            acc.add("fd_rejections", 1)
            z = random_disc_point(rng, n, band)
            continue
        return abs(disc_form(glue_map(z), dx, dy) + disc_form(z, X, Y))
    raise RuntimeError(f"glue: finite differences did not converge after {max_resamples} resamples")


def gluing_verify(n: int, samples: int, seed: int, tol: Optional[float] = None) -> VerificationReport:
    """
    Identities of the transition φ(z) = −s(z)z between the two sphere charts

    φ*Φ = Φ⁻¹, φ*ω = −ω, φ∘φ = id, and φ(z) = −z on ‖z‖² = 1/(2π).
    """
    if n < 2:
        raise ValueError(f"Gluing checks need n ≥ 2, got n={n}")
    low, high = numeric_setting("numerics", "glue_band")
    sphere = Sphere(n)
    form_tol = resolve_tolerance("glue_form", tol)

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            z = random_disc_point(rng, n, (low, high))
            w = glue_map(z)
            acc.record("glue_moment", np.linalg.norm(disc_moment(w) @ disc_moment(z) - np.eye(n)), index)
            acc.record(
                "cross_chart_moment",
                np.linalg.norm(sphere.moment(ModelPoint((w,), 1))[0] - sphere.moment(ModelPoint((z,), 0))[0]),
                index,
            )
            acc.record("involution", np.linalg.norm(glue_map(w) - z), index)
            z_eq = z / np.linalg.norm(z) * np.sqrt(1.0 / (2 * np.pi))
            acc.record("equator_fixed", np.linalg.norm(glue_map(z_eq) + z_eq), index)

            acc.record("glue_form", _glue_form_residual(rng, n, z, (low, high), form_tol, acc), index)
        return acc

    acc = run_batches(task, samples, seed)
    details = {"fd_rejections": int(acc.sums.get("fd_rejections", 0))}
    return build_report("glue", n, seed, samples, acc, tol, details=details)


def induced_form(z: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """
    ω(X, Y) for vectors tangent to the sphere ‖z‖² = a and orthogonal to iz

    Raises:
        ValueError: 접벡터가 horizontal 이 아닐 때
    """
    for tangent in (X, Y):
        if abs(np.vdot(z, tangent)) > 1e-10 * np.linalg.norm(z) * max(np.linalg.norm(tangent), 1.0):
            raise ValueError("Non-horizontal tangent vector: z*X must vanish on the reduced level set")
    return disc_form(z, X, Y)


def horizontal_projection(z: np.ndarray, X: np.ndarray) -> np.ndarray:
    return X - z * np.vdot(z, X) / np.real(np.vdot(z, z))


DEFAULT_LEVELS = tuple(f / np.pi for f in (0.05, 0.25, 0.5, 0.75, 0.95))


def sphere_reduction_check(
    n: int,
    a_values: Sequence[float] = DEFAULT_LEVELS,
    samples: int = 20,
    seed: int = 0,
    tol: Optional[float] = None,
) -> VerificationReport:
    """
    Induced form on the level set ‖z‖² = a equals sin(2π²a)/(2π²a)·ω₀ on horizontal tangent vectors

    central circle splitting Φ = Φ₁Φ₂ (Φ₁ ∈ SU(n), Φ₂ = e^{−2π²i a/n}·I) 도 함께 확인합니다.
    """
    levels = [float(a) for a in a_values]
    for a in levels:
        if not 0.0 < a < 1.0 / np.pi:
            raise ValueError(f"Level a must lie in (0, 1/π), got {a}")
    if n < 1:
        raise ValueError(f"Matrix size must be positive, got n={n}")

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            a = levels[index // samples]
            direction = random_complex(rng, n)
            z = direction / np.linalg.norm(direction) * np.sqrt(a)
            X = horizontal_projection(z, random_complex(rng, n))
            Y = horizontal_projection(z, random_complex(rng, n))
            expected = disc_scale(a) * omega0(X, Y)
            acc.record("sphere_reduction", abs(induced_form(z, X, Y) - expected), index)

            phi = disc_moment(z)
            phi1 = exp_anti_hermitian(2j * np.pi ** 2 * (a / n * np.eye(n) - np.outer(z, z.conj())))
            phi2 = np.exp(-2j * np.pi ** 2 * a / n) * np.eye(n)
            acc.record(
                "central_splitting",
                max(np.linalg.norm(phi1 @ phi2 - phi), abs(np.linalg.det(phi1) - 1.0)),
                index,
            )
        return acc

    acc = run_batches(task, samples * len(levels), seed)
    details = {"levels": [{"a": a, "scale": disc_scale(a)} for a in levels]}
    return build_report("sphere_reduction", n, seed, samples * len(levels), acc, tol, details)


# ---------------------------------------------------------------------------
# Cotangent double and the universal embedding
# ---------------------------------------------------------------------------

def cotangent_double_verify(n: int, samples: int, seed: int, tol: Optional[float] = None) -> VerificationReport:
    """
    Three evaluations of the exponentiated cotangent form must agree

    (a) closed form, (b) double 의 form 을 H(g, λ) = (g, exp λ) 로 pullback, (c) ω₀ + Ψ₀*ϖ′.
    """
    model = ExpCotangent(n)
    double = Double(n)

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            point = model.sample_point(rng)
            X, Y = model.random_tangent(rng, point), model.random_tangent(rng, point)
            closed = model.two_form(point, X, Y)
            pulled = model.pullback_form(point, X, Y)
            exponentiated = model.exponentiated_form(point, X, Y)
            acc.record(
                "cotangent",
                max(abs(closed - pulled), abs(closed - exponentiated), abs(pulled - exponentiated)),
                index,
            )

            g, lam = point.components
            psi = double.moment(ModelPoint((g, exp_anti_hermitian(lam))))
            exp_psi0 = tuple(exp_anti_hermitian(m) for m in model.hamiltonian_moment(point))
            acc.record("cotangent_moment", max(np.linalg.norm(a - b) for a, b in zip(psi, exp_psi0)), index)

            zetas = model.random_zetas(rng)
            lhs = model.two_form(point, model.generator(point, zetas), Y)
            phis = model.moment(point)
            lv = model.moment_velocity(point, Y)
            rhs = 0.5 * sum(inner(l + Ad(p, l), zeta) for l, p, zeta in zip(lv, phis, zetas))
            acc.record("axiom_iii", abs(lhs - rhs), index)
        return acc

    acc = run_batches(task, samples, seed)

    rng = np.random.default_rng([seed, 1])
    origin = ModelPoint((model.sample_point(rng).components[0], np.zeros((n, n), dtype=complex)))
    X, Y = model.random_tangent(rng, origin), model.random_tangent(rng, origin)
    flat = inner(Y[0], X[1]) - inner(X[0], Y[1])
    evaluations = (
        model.two_form(origin, X, Y),
        model.pullback_form(origin, X, Y),
        model.exponentiated_form(origin, X, Y),
    )
    acc.record("cotangent_origin", max(abs(value - flat) for value in evaluations), None)
    return build_report("exp_cotangent", n, seed, samples, acc, tol)


def universal_embedding_verify(n: int, samples: int, seed: int, tol: Optional[float] = None) -> VerificationReport:
    """
    j(m) = (m, 1, Φ(m)) pulls the fused form on M ⊛ D(U(n)) back to ω_M (M = double)
    """
    embedding = UniversalEmbedding(n)
    source, target = embedding.source, embedding.target

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            m = source.sample_point(rng)
            X, Y = source.random_tangent(rng, m), source.random_tangent(rng, m)
            jm = embedding.point(m)
            pulled = target.two_form(jm, embedding.tangent(m, X), embedding.tangent(m, Y))
            acc.record("universal", abs(pulled - source.two_form(m, X, Y)), index)
            acc.record("universal_moment", np.linalg.norm(target.moment(jm)[0] - np.eye(n)), index)

            zetas = target.random_zetas(rng)
            Z = target.random_tangent(rng, jm)
            lhs = target.two_form(jm, target.generator(jm, zetas), Z)
            phis = target.moment(jm)
            lv = target.moment_velocity(jm, Z)
            rhs = 0.5 * sum(inner(l + Ad(p, l), zeta) for l, p, zeta in zip(lv, phis, zetas))
            acc.record("axiom_iii", abs(lhs - rhs), index)
        return acc

    details = {"target": target.describe()}
    return build_report("universal", n, seed, samples, run_batches(task, samples, seed), tol, details)

