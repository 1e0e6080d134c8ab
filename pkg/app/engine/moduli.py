"""
Moduli of flat connections on a bordered surface
홀로노미 관계 샘플링, moment 등변성 검사, master moduli space 차원 계산

Coordinates (a, b, u, v) ∈ K^g × K^g × K^n × K^n with boundary moments Φ_m = v_m and
Φ_{n+1} = ∏[a_h, b_h] · ∏ Ad(u_m)v_m⁻¹.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from app.engine.alcove import AlcoveFace, enumerate_faces, face_root_data
from app.engine.implosion import CheckReport
from app.engine.lie import Ad, haar_special_unitary, inv
from app.engine.rootsys import RootDatum, build_root_system
from app.engine.verify import VerificationReport, build_report
from app.tasks.batches import ResidualAccumulator, run_batches

logger = logging.getLogger(__name__)

GENERIC_CAVEAT = (
    "expected dimensions assume generic (transversal) points; "
    "they are not asserted at singular points"
)


@dataclass(frozen=True)
class SurfaceData:
    """Genus g surface with n boundary circles"""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError(f"Genus must be non-negative, got {self.genus}")
        if self.punctures < 1:
            raise ValueError(f"Need at least one boundary component, got {self.punctures}")
        if 2 * (self.genus + self.punctures - 1) < 1:
            raise ValueError(
                f"2(g+n−1) must be at least 1 so that M(Σ) = K^(2(g+n−1)) is non-trivial, "
                f"got g={self.genus}, n={self.punctures}"
            )

    @property
    def group_factors(self) -> int:
        """M(Σ) = K^(2(g+n−1))"""
        return 2 * (self.genus + self.punctures - 1)


@dataclass(frozen=True)
class FlatConnectionPoint:
    a: Tuple[np.ndarray, ...]
    b: Tuple[np.ndarray, ...]
    u: Tuple[np.ndarray, ...]
    v: Tuple[np.ndarray, ...]
    residual: float

    @property
    def size(self) -> int:
        return self.v[0].shape[0]


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b @ inv(a) @ inv(b)


def _product(matrices: Sequence[np.ndarray], size: int) -> np.ndarray:
    return reduce(lambda x, y: x @ y, matrices, np.eye(size, dtype=complex))


def holonomy(a, b, u, v) -> np.ndarray:
    """Φ_{n+1}(a, b, u, v) = ∏[a_h, b_h] · ∏ Ad(u_m)v_m⁻¹"""
    size = v[0].shape[0]
    commutators = [commutator(ah, bh) for ah, bh in zip(a, b)]
    boundary = [Ad(um, inv(vm)) for um, vm in zip(u, v)]
    return _product(commutators + boundary, size)


def boundary_moments(point: FlatConnectionPoint) -> Tuple[np.ndarray, ...]:
    """(Φ_1, …, Φ_n, Φ_{n+1})"""
    return tuple(point.v) + (holonomy(point.a, point.b, point.u, point.v),)


def solve_last_boundary(a, b, u, v_head) -> np.ndarray:
    """
    v_n with Φ_{n+1} = I given the other coordinates

    v_n = Ad(u_n⁻¹)(∏[a_h, b_h] · ∏_{m<n} Ad(u_m)v_m⁻¹)
    """
    if len(u) != len(v_head) + 1:
        raise ValueError(f"Need one more u than given v's, got {len(u)} and {len(v_head)}")
    size = u[0].shape[0]
    partial = _product(
        [commutator(ah, bh) for ah, bh in zip(a, b)] + [Ad(um, inv(vm)) for um, vm in zip(u, v_head)],
        size,
    )
    return Ad(inv(u[-1]), partial)


def flat_connection_from(a, b, u, v_head) -> FlatConnectionPoint:
    v = tuple(v_head) + (solve_last_boundary(a, b, u, v_head),)
    size = u[0].shape[0]
    residual = float(np.linalg.norm(holonomy(a, b, u, v) - np.eye(size)))
    return FlatConnectionPoint(tuple(a), tuple(b), tuple(u), v, residual)


def _sample(surface: SurfaceData, size: int, rng: np.random.Generator, trivial_u: bool = False) -> FlatConnectionPoint:
    g, n = surface.genus, surface.punctures
    a = [haar_special_unitary(rng, size) for _ in range(g)]
    b = [haar_special_unitary(rng, size) for _ in range(g)]
    if trivial_u:
        u = [np.eye(size, dtype=complex) for _ in range(n)]
    else:
        u = [haar_special_unitary(rng, size) for _ in range(n)]
    v_head = [haar_special_unitary(rng, size) for _ in range(n - 1)]
    return flat_connection_from(a, b, u, v_head)


def _check_size(size: int) -> None:
    if size < 2:
        raise ValueError(f"Sampler works with SU(n), n ≥ 2; got n={size}")


def sample_flat_connection(surface: SurfaceData, size: int, seed: int) -> FlatConnectionPoint:
    """
    Random point of the relation Φ_{n+1} = I

    a, b, u, v_1..v_{n−1} 은 Haar SU(size), v_n 은 닫힌 형태로 풉니다.
    """
    _check_size(size)
    return _sample(surface, size, np.random.default_rng(seed))


def representation_space_point(surface: SurfaceData, size: int, seed: int) -> FlatConnectionPoint:
    """The u = 1 slice: a point of Hom(π₁(Σ), K) with boundary holonomies v"""
    _check_size(size)
    return _sample(surface, size, np.random.default_rng(seed), trivial_u=True)


def act(ks: Sequence[np.ndarray], point: FlatConnectionPoint) -> FlatConnectionPoint:
    """
    (k_1, …, k_{n+1})·(a, b, u, v)

    a_h ↦ k_{n+1}a_hk_{n+1}⁻¹, b_h 도 같음, u_m ↦ k_{n+1}u_mk_m⁻¹, v_m ↦ k_mv_mk_m⁻¹
    """
    n = len(point.u)
    if len(ks) != n + 1:
        raise ValueError(f"Need {n + 1} group elements, got {len(ks)}")
    outer = ks[-1]
    a = tuple(Ad(outer, ah) for ah in point.a)
    b = tuple(Ad(outer, bh) for bh in point.b)
    u = tuple(outer @ um @ inv(km) for um, km in zip(point.u, ks))
    v = tuple(Ad(km, vm) for vm, km in zip(point.v, ks))
    residual = float(np.linalg.norm(holonomy(a, b, u, v) - np.eye(point.size)))
    return FlatConnectionPoint(a, b, u, v, residual)


def moment_equivariance_check(
    surface: SurfaceData,
    point: FlatConnectionPoint,
    samples: int,
    seed: int,
    tol: Optional[float] = None,
) -> VerificationReport:
    """Φ_i(k·x) = k_iΦ_i(x)k_i⁻¹ for i ≤ n+1, and the relation residual is action-invariant"""
    if len(point.u) != surface.punctures or len(point.a) != surface.genus:
        raise ValueError("Point does not match the surface's genus and boundary count")
    size = point.size
    moments = boundary_moments(point)

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            ks = [haar_special_unitary(rng, size) for _ in range(surface.punctures + 1)]
            moved = act(ks, point)
            acc.record(
                "equivariance",
                max(np.linalg.norm(m - Ad(k, p)) for m, k, p in zip(boundary_moments(moved), ks, moments)),
                index,
            )
            acc.record("relation_invariance", abs(moved.residual - point.residual), index)
        return acc

    acc = run_batches(task, samples, seed)
    return build_report("moduli_equivariance", size, seed, samples, acc, tol, {"g": surface.genus, "n": surface.punctures})


def sampler_report(surface: SurfaceData, size: int, samples: int, seed: int, tol: Optional[float] = None) -> VerificationReport:
    """Relation residual ‖Φ_{n+1} − I‖ over many sampled points"""
    _check_size(size)

    def task(rng, start, count):
        acc = ResidualAccumulator()
        for index in range(start, start + count):
            acc.record("sampler", _sample(surface, size, rng).residual, index)
        return acc

    acc = run_batches(task, samples, seed)
    return build_report("moduli_sampler", size, seed, samples, acc, tol, {"g": surface.genus, "n": surface.punctures})


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceContribution:
    face_id: str
    face_dim: int
    dim_k_sigma: int
    dim_commutator: int
    codim: int


@dataclass
class DimensionReport:
    genus: int
    punctures: int
    group: str
    faces: List[str]
    dim_M_Sigma: int
    dim_master_open: int
    dim_piece: int
    dim_piece_hat: int
    dim_reduction_generic: int
    reduction_cross_check: int
    generic: bool = True
    caveat: str = GENERIC_CAVEAT
    contributions: List[FaceContribution] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.dim_reduction_generic == self.reduction_cross_check


def _resolve_faces(datum: RootDatum, faces: Sequence[Union[str, AlcoveFace]]) -> List[AlcoveFace]:
    poset = enumerate_faces(datum)
    return [f if isinstance(f, AlcoveFace) else poset.by_id(f) for f in faces]


def _contribution(datum: RootDatum, face: AlcoveFace) -> FaceContribution:
    data = face_root_data(datum, face)
    return FaceContribution(
        face_id=face.face_id,
        face_dim=face.dim,
        dim_k_sigma=data.dim_k_sigma,
        dim_commutator=data.dim_commutator,
        codim=datum.group_dim - face.dim + data.dim_commutator,
    )


def expected_dimensions(
    surface: SurfaceData,
    datum: RootDatum,
    face_tuple: Sequence[Union[str, AlcoveFace]],
) -> DimensionReport:
    """
    Dimension bookkeeping for the piece of M(Σ)_impl labelled by a face tuple

    - dim M(Σ) = 2(g+n−1)·dim K
    - dim_piece = dim M(Σ) − Σ_i (dim K − dim σ_i + dim[K_σi, K_σi])
    - dim_piece_hat: 같은 식을 M(Σ̂) = K^(2(g+n)) 에 적용 (g, n) = (0, 1) 이면 DK_impl 층 차원
    - dim_reduction_generic = dim_piece − 2·Σ_i dim σ_i, checked against
      (2g−2)·dim K + Σ_i (dim K − dim K_σi)

    Raises:
        ValueError: face_tuple 길이가 boundary 개수와 다를 때
    """
    if len(face_tuple) != surface.punctures:
        raise ValueError(
            f"Face tuple has {len(face_tuple)} entries but the surface has {surface.punctures} boundary components"
        )
    faces = _resolve_faces(datum, face_tuple)
    contributions = [_contribution(datum, face) for face in faces]
    dim_k = datum.group_dim
    g, n = surface.genus, surface.punctures

    dim_m = surface.group_factors * dim_k
    total_codim = sum(c.codim for c in contributions)
    dim_piece = dim_m - total_codim
    report = DimensionReport(
        genus=g,
        punctures=n,
        group=datum.name,
        faces=[face.face_id for face in faces],
        dim_M_Sigma=dim_m,
        dim_master_open=dim_m - n * (dim_k - datum.rank),
        dim_piece=dim_piece,
        dim_piece_hat=2 * (g + n) * dim_k - total_codim,
        dim_reduction_generic=dim_piece - 2 * sum(c.face_dim for c in contributions),
        reduction_cross_check=(2 * g - 2) * dim_k + sum(dim_k - c.dim_k_sigma for c in contributions),
        contributions=contributions,
    )
    if not report.consistent:
        raise RuntimeError(
            f"{datum.name}: reduction dimension {report.dim_reduction_generic} disagrees with "
            f"the conjugacy-class count {report.reduction_cross_check}"
        )
    return report


def dk_piece_dimension(datum: RootDatum, face: AlcoveFace) -> int:
    """dim_piece_hat for (g, n) = (0, 1): 2·dim K − (dim K − dim σ + dim[K_σ, K_σ])"""
    return 2 * datum.group_dim - _contribution(datum, face).codim


def _commutator_dim_from_types(component_types: Sequence[str]) -> int:
    """dim[K_σ, K_σ] as the sum of dim K over its simple factors, each built from its own Cartan type"""
    return sum(build_root_system(t[0], int(t[1:])).group_dim for t in component_types)


def dk_cross_validation(datum: RootDatum) -> CheckReport:
    """
    Moduli bookkeeping on the disc with one boundary reproduces every DK_impl stratum dimension

    moduli 쪽은 |R_σ| 로 센 dim[K_σ,K_σ] 를, strata 쪽은 B_σ 의 Dynkin 분류로 만든
    단순 인자들의 차원 합을 씁니다.
    """
    report = CheckReport(name="dk-cross-validation", group=datum.name, passed=True, notes=[GENERIC_CAVEAT])
    for face in enumerate_faces(datum).faces:
        via_moduli = dk_piece_dimension(datum, face)
        types = face_root_data(datum, face).component_types
        via_strata = datum.group_dim - _commutator_dim_from_types(types) + face.dim
        ok = via_moduli == via_strata
        report.passed &= ok
        report.rows.append({"face": face.face_id, "moduli": via_moduli, "strata": via_strata, "ok": ok})
    logger.debug(f"{datum.name}: DK cross-validation {'passed' if report.passed else 'failed'}")
    return report
