"""
Quasi-Hamiltonian model spaces for U(n)
disc, spinning sphere, double, fusion, exponentiated cotangent 모델의 ω, Φ, ξ_M 평가기

Conventions:
- Tangents to group factors are left-trivialized: (ξ_u, ξ_v) means (uξ_u, vξ_v).
- Generating vector fields are ξ_M(x) = d/dt exp(tξ)·x at t = 0.
- Pairings of k-valued 1-forms: (α, β)(X, Y) = (α(X), β(Y)) − (α(Y), β(X)).
"""
import abc
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import numeric_setting
from app.engine.lie import (
    Ad,
    ad_analytic,
    bracket,
    dexp_left,
    eigenvalue_spread,
    exp_anti_hermitian,
    from_coords,
    haar_unitary,
    inner,
    inv,
    random_lie_vector,
    random_regular_lambda,
    to_coords,
    varpi_eval,
)

logger = logging.getLogger(__name__)

COMPLEX = "complex"
GROUP = "group"
ALGEBRA = "algebra"

Tangent = Tuple[np.ndarray, ...]

MODEL_KINDS = ("disc", "sphere", "double", "fused_double", "exp_cotangent")


@dataclass(frozen=True)
class ModelPoint:
    """Point of a model: one array per coordinate factor, plus the chart index (sphere)"""

    components: Tuple[np.ndarray, ...]
    chart: int = 0


# ---------------------------------------------------------------------------
# Disc formulas
# ---------------------------------------------------------------------------

def omega0(X: np.ndarray, Y: np.ndarray) -> float:
    """Standard symplectic form on C^n: Im⟨X, Y⟩"""
    return float(np.imag(np.vdot(X, Y)))


def phi0(z: np.ndarray) -> np.ndarray:
    """Hamiltonian moment map Φ₀(z) = −2π²i zz*"""
    return -2j * np.pi ** 2 * np.outer(z, z.conj())


def dphi0(z: np.ndarray, X: np.ndarray) -> np.ndarray:
    return -2j * np.pi ** 2 * (np.outer(X, z.conj()) + np.outer(z, X.conj()))


def check_disc_point(z: np.ndarray) -> None:
    if np.pi * np.real(np.vdot(z, z)) >= 1.0:
        raise ValueError(f"Disc point outside π‖z‖² < 1 (π‖z‖² = {np.pi * np.real(np.vdot(z, z)):.6f})")


def lambda_form(z: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """
    U(n)-invariant two-form λ(X, Y) = Im(conj(z*X) z*Y)/‖z‖²

    sphere 접벡터(Re z*X = 0)에서 0 이 됩니다.

    Raises:
        ValueError: z = 0 (λ 가 정의되지 않음)
    """
    t = float(np.real(np.vdot(z, z)))
    if t == 0.0:
        raise ValueError("λ-form is undefined at z = 0")
    return float(np.imag(np.conj(np.vdot(z, X)) * np.vdot(z, Y)) / t)


def disc_scale(t: float) -> float:
    """sin(2π²t)/(2π²t) for t = ‖z‖²"""
    return float(np.sinc(2.0 * np.pi * t))


def disc_form(z: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """ω = λ + s(ω₀ − λ) with s = sin(2π²‖z‖²)/(2π²‖z‖²); ω₀ at the origin"""
    check_disc_point(z)
    t = float(np.real(np.vdot(z, z)))
    if t == 0.0:
        return omega0(X, Y)
    s = disc_scale(t)
    return s * omega0(X, Y) + (1.0 - s) * lambda_form(z, X, Y)


def disc_form_exponentiated(z: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """Same form computed as ω₀ + Φ₀*ϖ"""
    lam = phi0(z)
    return omega0(X, Y) + varpi_eval(lam, dphi0(z, X), dphi0(z, Y))


def disc_moment(z: np.ndarray) -> np.ndarray:
    return exp_anti_hermitian(phi0(z))


def glue_map(z: np.ndarray) -> np.ndarray:
    """
    Transition φ(z) = −s(z)z with ‖φ(z)‖² = π⁻¹ − ‖z‖²

    Raises:
        ValueError: z 가 0 (pole) 또는 disc 경계에 있을 때
    """
    t = float(np.real(np.vdot(z, z)))
    if t <= 0.0 or t >= 1.0 / np.pi:
        raise ValueError(f"Transition map needs 0 < ‖z‖² < 1/π, got {t:.6g} (sample too close to the pole)")
    s = np.sqrt((1.0 / np.pi - t) / t)
    return -s * z


def random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)


def random_disc_point(rng: np.random.Generator, n: int, t_range: Tuple[float, float] = None) -> np.ndarray:
    """z with ‖z‖² uniform in t_range·π⁻¹ (default: [0, disc_radius_fraction]·π⁻¹)"""
    if t_range is None:
        t_range = (0.0, numeric_setting("numerics", "disc_radius_fraction"))
    direction = random_complex(rng, n)
    direction = direction / np.linalg.norm(direction)
    t = rng.uniform(*t_range) / np.pi
    return np.sqrt(t) * direction


# ---------------------------------------------------------------------------
# Double formulas
# ---------------------------------------------------------------------------

def double_form(v: np.ndarray, X: Tangent, Y: Tangent) -> float:
    """ω = −½(Ad(v)u*θ_L, u*θ_L) − ½(u*θ_L, v*(θ_L + θ_R)); depends on v only"""
    a1, b1 = X
    a2, b2 = Y
    term1 = -0.5 * (inner(Ad(v, a1), a2) - inner(Ad(v, a2), a1))
    term2 = -0.5 * (inner(a1, b2 + Ad(v, b2)) - inner(a2, b1 + Ad(v, b1)))
    return term1 + term2


def double_velocity(u: np.ndarray, v: np.ndarray, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Left-trivialized derivatives of Ψ1 = Ad(u)v⁻¹ and Ψ2 = v"""
    return Ad(u, Ad(v, a - b) - a), b


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

class QHamSpace(abc.ABC):
    """
    Quasi-Hamiltonian U(n)^m-space evaluated in coordinates

    Subclasses describe their coordinate factors (complex vectors, group elements or
    Lie algebra elements) and give ω, the moment components and the action.
    """

    kind: str = "abstract"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Matrix size must be positive, got n={n}")
        self.n = n

    @property
    @abc.abstractmethod
    def factors(self) -> Tuple[str, ...]:
        """Coordinate factor kinds, one per point component"""

    @property
    @abc.abstractmethod
    def group_count(self) -> int:
        """Number of U(n) factors acting (= number of moment components)"""

    @abc.abstractmethod
    def sample_point(self, rng: np.random.Generator) -> ModelPoint:
        pass

    @abc.abstractmethod
    def two_form(self, point: ModelPoint, X: Tangent, Y: Tangent) -> float:
        pass

    @abc.abstractmethod
    def moment(self, point: ModelPoint) -> Tuple[np.ndarray, ...]:
        pass

    @abc.abstractmethod
    def moment_velocity(self, point: ModelPoint, X: Tangent) -> Tuple[np.ndarray, ...]:
        """Φ_i*θ_L(X) for every moment component"""

    @abc.abstractmethod
    def generator(self, point: ModelPoint, zetas: Sequence[np.ndarray]) -> Tangent:
        """ξ_M at the point for ξ = (ζ_1, …, ζ_m)"""

    @abc.abstractmethod
    def act(self, ks: Sequence[np.ndarray], point: ModelPoint) -> ModelPoint:
        pass

    def validate_point(self, point: ModelPoint) -> None:
        if len(point.components) != len(self.factors):
            raise ValueError(
                f"{self.kind} point needs {len(self.factors)} components, got {len(point.components)}"
            )

    # -- coordinates -------------------------------------------------------

    def factor_dim(self, kind: str) -> int:
        return 2 * self.n if kind == COMPLEX else self.n ** 2

    @property
    def coordinate_dim(self) -> int:
        return sum(self.factor_dim(kind) for kind in self.factors)

    def coordinate_slices(self) -> List[slice]:
        slices, start = [], 0
        for kind in self.factors:
            size = self.factor_dim(kind)
            slices.append(slice(start, start + size))
            start += size
        return slices

    def chart(self, point: ModelPoint) -> "Chart":
        return Chart(self, point)

    def tangent_basis(self, point: ModelPoint) -> List[Tangent]:
        chart = self.chart(point)
        origin = np.zeros(self.coordinate_dim)
        return [chart.field(origin, e) for e in np.eye(self.coordinate_dim)]

    def tangent_to_vector(self, X: Tangent) -> np.ndarray:
        parts = []
        for kind, x in zip(self.factors, X):
            parts.append(np.concatenate([x.real, x.imag]) if kind == COMPLEX else to_coords(x))
        return np.concatenate(parts)

    def random_tangent(self, rng: np.random.Generator, point: ModelPoint) -> Tangent:
        tangent = []
        for kind in self.factors:
            if kind == COMPLEX:
                tangent.append(random_complex(rng, self.n))
            else:
                tangent.append(random_lie_vector(rng, self.n))
        return tuple(tangent)

    def random_zetas(self, rng: np.random.Generator) -> Tuple[np.ndarray, ...]:
        return tuple(random_lie_vector(rng, self.n) for _ in range(self.group_count))

    def random_group_elements(self, rng: np.random.Generator) -> Tuple[np.ndarray, ...]:
        return tuple(haar_unitary(rng, self.n) for _ in range(self.group_count))

    def moment_right(self, point: ModelPoint, X: Tangent) -> Tuple[np.ndarray, ...]:
        """Φ_i*θ_R(X) = Ad(Φ_i) Φ_i*θ_L(X)"""
        return tuple(Ad(phi, lv) for phi, lv in zip(self.moment(point), self.moment_velocity(point, X)))

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.n, "factors": list(self.factors), "group_count": self.group_count}


class Chart:
    """
    Coordinates y ↦ point(y) centred at a base point

    complex 성분은 z0 + y, group 성분은 u0·exp(S(y)), algebra 성분은 λ0 + S(y) 입니다.
    """

    def __init__(self, space: QHamSpace, base: ModelPoint):
        self.space = space
        self.base = base
        self.slices = space.coordinate_slices()

    def point(self, y: np.ndarray) -> ModelPoint:
        n = self.space.n
        comps = []
        for kind, comp, sl in zip(self.space.factors, self.base.components, self.slices):
            yk = y[sl]
            if kind == COMPLEX:
                comps.append(comp + yk[:n] + 1j * yk[n:])
            elif kind == GROUP:
                comps.append(comp @ exp_anti_hermitian(from_coords(yk, n)))
            else:
                comps.append(comp + from_coords(yk, n))
        return ModelPoint(tuple(comps), self.base.chart)

    def field(self, y: np.ndarray, p: np.ndarray) -> Tangent:
        """Constant coordinate field p evaluated at point(y)"""
        n = self.space.n
        tangent = []
        for kind, sl in zip(self.space.factors, self.slices):
            yk, pk = y[sl], p[sl]
            if kind == COMPLEX:
                tangent.append(pk[:n] + 1j * pk[n:])
            elif kind == GROUP:
                tangent.append(dexp_left(from_coords(yk, n), from_coords(pk, n)))
            else:
                tangent.append(from_coords(pk, n))
        return tuple(tangent)

    def form(self, y: np.ndarray, p: np.ndarray, q: np.ndarray) -> float:
        return self.space.two_form(self.point(y), self.field(y, p), self.field(y, q))


class Disc(QHamSpace):
    """Exponentiated disc (D, ω, exp∘Φ₀) with π‖z‖² < 1"""

    kind = "disc"

    @property
    def factors(self):
        return (COMPLEX,)

    @property
    def group_count(self):
        return 1

    def validate_point(self, point):
        super().validate_point(point)
        check_disc_point(point.components[0])

    def sample_point(self, rng):
        return ModelPoint((random_disc_point(rng, self.n),))

    def two_form(self, point, X, Y):
        return disc_form(point.components[0], X[0], Y[0])

    def moment(self, point):
        return (disc_moment(point.components[0]),)

    def moment_velocity(self, point, X):
        z = point.components[0]
        return (dexp_left(phi0(z), dphi0(z, X[0])),)

    def generator(self, point, zetas):
        return (zetas[0] @ point.components[0],)

    def act(self, ks, point):
        return ModelPoint((ks[0] @ point.components[0],), point.chart)


class Sphere(Disc):
    """
    Spinning 2n-sphere: chart 0 is (D, ω, Φ), chart 1 is the opposite (D, −ω, Φ⁻¹)

    두 chart 는 φ(z) = −s(z)z 로 붙습니다.
    """

    kind = "sphere"

    def sample_point(self, rng):
        chart = int(rng.integers(2))
        return ModelPoint((random_disc_point(rng, self.n),), chart)

    def validate_point(self, point):
        super().validate_point(point)
        if point.chart not in (0, 1):
            raise ValueError(f"Sphere chart index must be 0 or 1, got {point.chart}")

    def _sign(self, point) -> float:
        return 1.0 if point.chart == 0 else -1.0

    def two_form(self, point, X, Y):
        return self._sign(point) * disc_form(point.components[0], X[0], Y[0])

    def moment(self, point):
        phi = disc_moment(point.components[0])
        return (phi,) if point.chart == 0 else (inv(phi),)

    def moment_velocity(self, point, X):
        (lv,) = super().moment_velocity(point, X)
        if point.chart == 0:
            return (lv,)
        return (-Ad(disc_moment(point.components[0]), lv),)

    def transition(self, point: ModelPoint) -> ModelPoint:
        """The same sphere point expressed in the other chart"""
        return ModelPoint((glue_map(point.components[0]),), 1 - point.chart)


class Double(QHamSpace):
    """Internally fused double D(U(n)) = U(n)×U(n) with moment (Ad(u)v⁻¹, v)"""

    kind = "double"

    @property
    def factors(self):
        return (GROUP, GROUP)

    @property
    def group_count(self):
        return 2

    def sample_point(self, rng):
        return ModelPoint((haar_unitary(rng, self.n), haar_unitary(rng, self.n)))

    def two_form(self, point, X, Y):
        return double_form(point.components[1], X, Y)

    def moment(self, point):
        u, v = point.components
        return (Ad(u, inv(v)), v)

    def moment_velocity(self, point, X):
        u, v = point.components
        return double_velocity(u, v, X[0], X[1])

    def generator(self, point, zetas):
        u, v = point.components
        z1, z2 = zetas
        return (Ad(inv(u), z1) - z2, Ad(inv(v), z2) - z2)

    def act(self, ks, point):
        u, v = point.components
        k1, k2 = ks
        return ModelPoint((k1 @ u @ inv(k2), Ad(k2, v)), point.chart)


class ExpCotangent(QHamSpace):
    """
    Exponentiated cotangent bundle T*U(n) ≅ U(n) × u(n), points (g, λ)

    λ 는 chart 영역 O (고유값 폭 < 1) 안에 있어야 합니다.
    """

    kind = "exp_cotangent"

    @property
    def factors(self):
        return (GROUP, ALGEBRA)

    @property
    def group_count(self):
        return 2

    def validate_point(self, point):
        super().validate_point(point)
        spread = eigenvalue_spread(point.components[1])
        if spread >= 1.0:
            raise ValueError(f"λ outside the regular region: eigenvalue spread {spread:.6f} ≥ 1")

    def sample_point(self, rng):
        margin = numeric_setting("numerics", "region_margin")
        return ModelPoint((haar_unitary(rng, self.n), random_regular_lambda(rng, self.n, margin)))

    def two_form(self, point, X, Y):
        """−(sinh(ad λ)ξ1, ξ2) − (ξ1, sinhc(ad λ)η2) + (ξ2, sinhc(ad λ)η1)"""
        lam = point.components[1]
        xi1, eta1 = X
        xi2, eta2 = Y
        return (
            -inner(ad_analytic("sinh", lam, xi1), xi2)
            - inner(xi1, ad_analytic("sinhc", lam, eta2))
            + inner(xi2, ad_analytic("sinhc", lam, eta1))
        )

    def pullback_form(self, point: ModelPoint, X: Tangent, Y: Tangent) -> float:
        """Double's form pulled back through H(g, λ) = (g, exp λ)"""
        lam = point.components[1]
        v = exp_anti_hermitian(lam)
        return double_form(v, (X[0], dexp_left(lam, X[1])), (Y[0], dexp_left(lam, Y[1])))

    def canonical_form(self, point: ModelPoint, X: Tangent, Y: Tangent) -> float:
        """Canonical form of T*U(n) in left trivialization: (ξ2, η1) − (ξ1, η2) − (λ, [ξ1, ξ2])"""
        lam = point.components[1]
        xi1, eta1 = X
        xi2, eta2 = Y
        return inner(xi2, eta1) - inner(xi1, eta2) - inner(lam, bracket(xi1, xi2))

    def exponentiated_form(self, point: ModelPoint, X: Tangent, Y: Tangent) -> float:
        """ω₀ + Ψ₀*(π₁*ϖ + π₂*ϖ) with Ψ₀(g, λ) = (−Ad(g)λ, λ)"""
        g, lam = point.components
        mu = -Ad(g, lam)
        dmu1 = -Ad(g, bracket(X[0], lam) + X[1])
        dmu2 = -Ad(g, bracket(Y[0], lam) + Y[1])
        return self.canonical_form(point, X, Y) + varpi_eval(mu, dmu1, dmu2) + varpi_eval(lam, X[1], Y[1])

    def hamiltonian_moment(self, point: ModelPoint) -> Tuple[np.ndarray, np.ndarray]:
        g, lam = point.components
        return -Ad(g, lam), lam

    def moment(self, point):
        g, lam = point.components
        return (Ad(g, exp_anti_hermitian(-lam)), exp_anti_hermitian(lam))

    def moment_velocity(self, point, X):
        g, lam = point.components
        return double_velocity(g, exp_anti_hermitian(lam), X[0], dexp_left(lam, X[1]))

    def generator(self, point, zetas):
        g, lam = point.components
        z1, z2 = zetas
        return (Ad(inv(g), z1) - z2, bracket(z2, lam))

    def act(self, ks, point):
        g, lam = point.components
        k1, k2 = ks
        return ModelPoint((k1 @ g @ inv(k2), Ad(k2, lam)), point.chart)


class ProductSpace(QHamSpace):
    """Direct product of models with the same matrix size"""

    kind = "product"

    def __init__(self, spaces: Sequence[QHamSpace]):
        if not spaces:
            raise ValueError("ProductSpace needs at least one factor")
        sizes = {space.n for space in spaces}
        if len(sizes) != 1:
            raise ValueError(f"ProductSpace factors must share n, got {sorted(sizes)}")
        super().__init__(spaces[0].n)
        self.spaces = tuple(spaces)

    @property
    def factors(self):
        return tuple(kind for space in self.spaces for kind in space.factors)

    @property
    def group_count(self):
        return sum(space.group_count for space in self.spaces)

    def _split(self, items: Sequence, sizes: Sequence[int]) -> List[tuple]:
        out, start = [], 0
        for size in sizes:
            out.append(tuple(items[start:start + size]))
            start += size
        return out

    def _points(self, point: ModelPoint) -> List[ModelPoint]:
        parts = self._split(point.components, [len(s.factors) for s in self.spaces])
        return [ModelPoint(part) for part in parts]

    def _tangents(self, X: Tangent) -> List[Tangent]:
        return self._split(X, [len(s.factors) for s in self.spaces])

    def _groups(self, items: Sequence) -> List[tuple]:
        return self._split(items, [s.group_count for s in self.spaces])

    def validate_point(self, point):
        super().validate_point(point)
        for space, part in zip(self.spaces, self._points(point)):
            space.validate_point(part)

    def sample_point(self, rng):
        comps = []
        for space in self.spaces:
            comps.extend(space.sample_point(rng).components)
        return ModelPoint(tuple(comps))

    def two_form(self, point, X, Y):
        return sum(
            space.two_form(p, x, y)
            for space, p, x, y in zip(self.spaces, self._points(point), self._tangents(X), self._tangents(Y))
        )

    def moment(self, point):
        return tuple(phi for space, p in zip(self.spaces, self._points(point)) for phi in space.moment(p))

    def moment_velocity(self, point, X):
        return tuple(
            lv
            for space, p, x in zip(self.spaces, self._points(point), self._tangents(X))
            for lv in space.moment_velocity(p, x)
        )

    def generator(self, point, zetas):
        return tuple(
            t
            for space, p, z in zip(self.spaces, self._points(point), self._groups(zetas))
            for t in space.generator(p, z)
        )

    def act(self, ks, point):
        comps = []
        for space, p, k in zip(self.spaces, self._points(point), self._groups(ks)):
            comps.extend(space.act(k, p).components)
        return ModelPoint(tuple(comps))

    def describe(self):
        info = super().describe()
        info["spaces"] = [space.describe() for space in self.spaces]
        return info


class FusedSpace(QHamSpace):
    """
    Fusion of the U(n)-factors i and j of a base model

    ω_fus = ω + ½(Φ_i*θ_L, Φ_j*θ_R), moment Φ_iΦ_j, diagonal action on the two factors.
    The fused component sits at the position of factor i; factor j is removed.
    """

    kind = "fused"

    def __init__(self, base: QHamSpace, i: int, j: int):
        m = base.group_count
        if i == j or not (0 <= i < m and 0 <= j < m):
            raise ValueError(f"Fusion needs two distinct factor indices in 0..{m - 1}, got ({i}, {j})")
        super().__init__(base.n)
        self.base = base
        self.i, self.j = i, j
        self.kept = [k for k in range(m) if k != j]

    @property
    def factors(self):
        return self.base.factors

    @property
    def group_count(self):
        return self.base.group_count - 1

    def _expand(self, items: Sequence) -> List:
        full: List[Optional[np.ndarray]] = [None] * self.base.group_count
        for pos, k in enumerate(self.kept):
            full[k] = items[pos]
        full[self.j] = full[self.i]
        return full

    def validate_point(self, point):
        self.base.validate_point(point)

    def sample_point(self, rng):
        return self.base.sample_point(rng)

    def two_form(self, point, X, Y):
        phis = self.base.moment(point)
        lx = self.base.moment_velocity(point, X)
        ly = self.base.moment_velocity(point, Y)
        rjx = Ad(phis[self.j], lx[self.j])
        rjy = Ad(phis[self.j], ly[self.j])
        extra = 0.5 * (inner(lx[self.i], rjy) - inner(ly[self.i], rjx))
        return self.base.two_form(point, X, Y) + extra

    def moment(self, point):
        phis = self.base.moment(point)
        return tuple(phis[k] @ phis[self.j] if k == self.i else phis[k] for k in self.kept)

    def moment_velocity(self, point, X):
        phis = self.base.moment(point)
        lv = self.base.moment_velocity(point, X)
        fused = Ad(inv(phis[self.j]), lv[self.i]) + lv[self.j]
        return tuple(fused if k == self.i else lv[k] for k in self.kept)

    def generator(self, point, zetas):
        return self.base.generator(point, self._expand(zetas))

    def act(self, ks, point):
        return self.base.act(self._expand(ks), point)

    def describe(self):
        info = super().describe()
        info.update({"base": self.base.describe(), "fused": [self.i, self.j]})
        return info


class FusedDouble(FusedSpace):
    """D(U(n)) with its two factors fused: moment Ad(u)v⁻¹·v"""

    kind = "fused_double"

    def __init__(self, n: int):
        super().__init__(Double(n), 0, 1)


class UniversalEmbedding:
    """
    j(m) = (m, 1, Φ(m)) from M into M ⊛ D(U(n))

    M 은 double 이고, M 의 첫 번째 moment 성분을 D(U(n)) 의 첫 번째 성분과 fusion 합니다.
    """

    def __init__(self, n: int):
        if not 1 <= n <= 3:
            raise ValueError(f"Universal embedding check supports 1 ≤ n ≤ 3, got n={n}")
        self.n = n
        self.source = Double(n)
        self.target = FusedSpace(ProductSpace([Double(n), Double(n)]), 0, 2)

    def point(self, m: ModelPoint) -> ModelPoint:
        phi = self.source.moment(m)[0]
        return ModelPoint(m.components + (np.eye(self.n, dtype=complex), phi))

    def tangent(self, m: ModelPoint, X: Tangent) -> Tangent:
        lv = self.source.moment_velocity(m, X)[0]
        return tuple(X) + (np.zeros((self.n, self.n), dtype=complex), lv)


_MODEL_FACTORIES: dict = {
    "disc": Disc,
    "sphere": Sphere,
    "double": Double,
    "fused_double": FusedDouble,
    "exp_cotangent": ExpCotangent,
}


def build_model(kind: str, n: int) -> QHamSpace:
    """
    Build a model by name

    Raises:
        ValueError: 알 수 없는 kind 또는 잘못된 n
    """
    factory: Optional[Callable[[int], QHamSpace]] = _MODEL_FACTORIES.get(kind)
    if factory is None:
        raise ValueError(f"Unknown model '{kind}'. Known: {', '.join(MODEL_KINDS)}")
    model = factory(n)
    logger.debug(f"Built model {kind} n={n}: {model.describe()}")
    return model
