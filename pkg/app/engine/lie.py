"""
Matrix Lie group numerics for U(n) / SU(n)
u(n) 내적, Ad, 해석 함수 f(ad λ), exp/log, Haar 샘플링, ϖ 형식 평가

Inner product on u(n): (ξ, η) = −(4π²)⁻¹ Re tr(ξη).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Tuple, Union

import numpy as np
import scipy.linalg as la

from config.settings import numeric_setting

logger = logging.getLogger(__name__)

FOUR_PI_SQ = 4.0 * np.pi ** 2

ArrayLike = Union[np.ndarray, "LieVector", "GroupPoint"]


@dataclass(frozen=True)
class GroupPoint:
    """Unitary n×n matrix, checked at construction"""

    entries: np.ndarray

    def __post_init__(self):
        check_unitary(self.entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class LieVector:
    """Anti-Hermitian n×n matrix, checked at construction"""

    entries: np.ndarray

    def __post_init__(self):
        check_anti_hermitian(self.entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def as_matrix(x: ArrayLike) -> np.ndarray:
    if isinstance(x, (GroupPoint, LieVector)):
        return x.entries
    return np.asarray(x, dtype=complex)


def check_unitary(u: np.ndarray, tol: float = None) -> None:
    """
    Raises:
        ValueError: ‖U*U − I‖_F 가 허용 오차를 넘을 때
    """
    u = np.asarray(u)
    tol = numeric_setting("tolerances", "unitary") if tol is None else tol
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {u.shape}")
    defect = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if defect > tol:
        raise ValueError(f"Matrix is not unitary: ‖U*U − I‖ = {defect:.3e} > {tol:.1e}")


def check_anti_hermitian(x: np.ndarray, tol: float = None) -> None:
    x = np.asarray(x)
    tol = numeric_setting("tolerances", "anti_hermitian") if tol is None else tol
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {x.shape}")
    defect = np.linalg.norm(x + x.conj().T)
    if defect > tol:
        raise ValueError(f"Matrix is not anti-Hermitian: ‖ξ + ξ*‖ = {defect:.3e} > {tol:.1e}")


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------

def inner(xi: ArrayLike, eta: ArrayLike) -> float:
    """(ξ, η) = −(4π²)⁻¹ Re tr(ξη)"""
    return float(-np.real(np.trace(as_matrix(xi) @ as_matrix(eta))) / FOUR_PI_SQ)


def bracket(xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
    return xi @ eta - eta @ xi


def Ad(g: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Ad(g)ξ = gξg⁻¹ for unitary g"""
    return g @ xi @ g.conj().T


def inv(g: np.ndarray) -> np.ndarray:
    return g.conj().T


@lru_cache(maxsize=None)
def u_basis(n: int) -> Tuple[np.ndarray, ...]:
    """Real basis of u(n): i E_aa, E_ab − E_ba, i(E_ab + E_ba)"""
    basis = []
    for a in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[a, a] = 1j
        basis.append(e)
    for a in range(n):
        for b in range(a + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b], e[b, a] = 1.0, -1.0
            basis.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[a, b], e[b, a] = 1j, 1j
            basis.append(e)
    return tuple(basis)


def from_coords(coords: np.ndarray, n: int) -> np.ndarray:
    """Anti-Hermitian matrix with the given coordinates in u_basis(n)"""
    out = np.zeros((n, n), dtype=complex)
    for c, e in zip(coords, u_basis(n)):
        out = out + c * e
    return out


def to_coords(x: np.ndarray) -> np.ndarray:
    """Coordinates of an anti-Hermitian matrix in u_basis(n) (the basis is Frobenius-orthogonal)"""
    x = np.asarray(x)
    coords = []
    for e in u_basis(x.shape[0]):
        coords.append(np.real(np.vdot(e, x)) / np.real(np.vdot(e, e)))
    return np.array(coords)


def operator_matrix(op: Callable[[np.ndarray], np.ndarray], n: int) -> np.ndarray:
    """Real n²×n² matrix of a real-linear map u(n) → u(n) in u_basis(n)"""
    return np.column_stack([to_coords(op(e)) for e in u_basis(n)])


def realify(x: np.ndarray) -> np.ndarray:
    """Complex array flattened to a real vector (Re, Im)"""
    flat = np.asarray(x).ravel()
    return np.concatenate([flat.real, flat.imag])


# ---------------------------------------------------------------------------
# Analytic functions of ad λ
# ---------------------------------------------------------------------------

def _series(coeffs):
    def evaluate(x):
        total = np.zeros_like(x)
        for k, c in enumerate(coeffs):
            total = total + c * x ** k
        return total

    return evaluate


# f_id -> (closed form on x != 0, power series near 0)
_ANALYTIC: Dict[str, tuple] = {
    "dexp_left": (lambda x: (1 - np.exp(-x)) / x, _series([1, -1 / 2, 1 / 6, -1 / 24, 1 / 120, -1 / 720])),
    "dexp_right": (lambda x: (np.exp(x) - 1) / x, _series([1, 1 / 2, 1 / 6, 1 / 24, 1 / 120, 1 / 720])),
    "varpi_kernel": (lambda x: (x - np.sinh(x)) / x ** 2, _series([0, -1 / 6, 0, -1 / 120, 0, -1 / 5040])),
    "sinh": (np.sinh, np.sinh),
    "sinhc": (lambda x: np.sinh(x) / x, _series([1, 0, 1 / 6, 0, 1 / 120, 0, 1 / 5040])),
}

F_IDS = tuple(_ANALYTIC)


def scalar_function(f_id: str) -> Callable[[np.ndarray], np.ndarray]:
    """Scalar f with the removable singularity at 0 filled in by its series"""
    if f_id not in _ANALYTIC:
        raise ValueError(f"Unknown function '{f_id}'. Known: {', '.join(F_IDS)}")
    closed, series = _ANALYTIC[f_id]
    cutoff = numeric_setting("numerics", "series_cutoff")

    def f(x):
        x = np.asarray(x, dtype=complex)
        small = np.abs(x) < cutoff
        safe = np.where(small, 1.0, x)
        return np.where(small, series(x), closed(safe))

    return f


def ad_analytic(f_id: str, lam: ArrayLike, xi: ArrayLike) -> np.ndarray:
    """
    f(ad λ)ξ via the eigendecomposition of the anti-Hermitian λ

    λ = V diag(iμ) V* 이면 고유기저에서 (ad λ ξ)_jk = i(μ_j − μ_k) ξ_jk 입니다.

    Raises:
        ValueError: λ 가 anti-Hermitian 이 아닐 때
    """
    lam, xi = as_matrix(lam), as_matrix(xi)
    check_anti_hermitian(lam)
    mu, v = la.eigh(-1j * lam)
    diffs = 1j * (mu[:, None] - mu[None, :])
    weights = scalar_function(f_id)(diffs)
    xi_eig = v.conj().T @ xi @ v
    return v @ (weights * xi_eig) @ v.conj().T


def exp_anti_hermitian(lam: ArrayLike) -> np.ndarray:
    lam = as_matrix(lam)
    mu, v = la.eigh(-1j * lam)
    return (v * np.exp(1j * mu)) @ v.conj().T


def log_unitary(u: ArrayLike, guard: float = 1e-6) -> np.ndarray:
    """
    Principal logarithm of a unitary matrix

    Raises:
        ValueError: 고유값이 branch cut (−1) 에 guard 이내로 가까울 때
    """
    u = as_matrix(u)
    t, z = la.schur(u, output="complex")
    angles = np.angle(np.diag(t))
    if np.any(np.abs(angles) > np.pi - guard):
        raise ValueError("Unitary matrix has an eigenvalue too close to −1 for the principal logarithm")
    return (z * (1j * angles)) @ z.conj().T


def dexp_left(lam: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """exp(λ)⁻¹ d/dt exp(λ + tη) at t = 0"""
    return ad_analytic("dexp_left", lam, eta)


# ---------------------------------------------------------------------------
# ϖ
# ---------------------------------------------------------------------------

def varpi_eval(lam: ArrayLike, xi1: ArrayLike, xi2: ArrayLike) -> float:
    """ϖ_λ(ξ1, ξ2) = (((ad λ − sinh ad λ)/(ad λ)²) ξ1, ξ2)"""
    return inner(ad_analytic("varpi_kernel", lam, xi1), xi2)


def varpi_root_sum(lam: ArrayLike, xi1: ArrayLike, xi2: ArrayLike) -> float:
    """
    Root-space form of ϖ for diagonal λ

    −(4π²)⁻¹ Σ_{r<s} f(λ_rr − λ_ss)(ξ1_rs ξ2_sr − ξ1_sr ξ2_rs), f(x) = (x − sinh x)/x²
    """
    lam, xi1, xi2 = as_matrix(lam), as_matrix(xi1), as_matrix(xi2)
    if np.linalg.norm(lam - np.diag(np.diag(lam))) > 0:
        raise ValueError("varpi_root_sum needs a diagonal λ")
    f = scalar_function("varpi_kernel")
    d = np.diag(lam)
    total = 0.0 + 0.0j
    n = lam.shape[0]
    for r in range(n):
        for s in range(r + 1, n):
            total += f(d[r] - d[s]) * (xi1[r, s] * xi2[s, r] - xi1[s, r] * xi2[r, s])
    return float(-np.real(total) / FOUR_PI_SQ)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-random U(n) via QR of a complex Gaussian matrix with phase correction"""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = la.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def haar_special_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-random SU(n): divide by an nth root of the determinant"""
    u = haar_unitary(rng, n)
    det = np.linalg.det(u)
    return u / det ** (1.0 / n)


def random_lie_vector(rng: np.random.Generator, n: int, scale: float = 1.0, traceless: bool = False) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    xi = scale * (a - a.conj().T) / 2
    if traceless:
        xi = xi - np.trace(xi) / n * np.eye(n)
    return xi


def random_diagonal_lie_vector(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return np.diag(1j * scale * rng.standard_normal(n))


def random_regular_lambda(rng: np.random.Generator, n: int, margin: float) -> np.ndarray:
    """
    λ with eigenvalues 2πi t_k, max t − min t < 1 − margin (the chart region)
    """
    spread = (1.0 - margin) * rng.uniform(0.0, 1.0)
    t = rng.uniform(0.0, 1.0, size=n)
    t = spread * (t - t.min()) / max(t.max() - t.min(), 1e-12) - spread / 2
    v = haar_unitary(rng, n)
    return v @ np.diag(2j * np.pi * t) @ v.conj().T


def eigenvalue_spread(lam: np.ndarray) -> float:
    """max − min of the eigenvalues of λ/(2πi)"""
    mu = la.eigvalsh(-1j * lam) / (2 * np.pi)
    return float(mu.max() - mu.min())
