"""
Alcove faces
기본 alcove 의 면(face), 면별 centralizer 루트 데이터, affine Weyl 환원, toric cut 데이터

Walls 1..rank are the hyperplanes α_i = 0; wall rank+1 is θ = 1 for the highest root θ.
A face is the set of walls containing it. Vertex j (1..rank) lies opposite wall j and
vertex 0, the origin, lies opposite wall rank+1.
"""
import logging
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.engine.rootsys import (
    RootDatum,
    coroot,
    dynkin_components,
    extended_marks,
    in_coroot_lattice,
    reflect,
    word_of_matrix,
)
from app.utils.rational import (
    Vector,
    add,
    coefficients,
    denominator_lcm,
    dot,
    frac_part,
    gram,
    identity,
    inverse,
    is_integral,
    is_integral_vector,
    mat_mul,
    mat_vec,
    neg,
    scale,
    sub,
    torsion_order,
    transpose,
    zero,
)

logger = logging.getLogger(__name__)

MAX_REDUCTION_STEPS = 100_000


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlcoveFace:
    """Relatively open face of the fundamental alcove"""

    wall_set: Tuple[int, ...]
    dim: int
    vertex_ids: Tuple[int, ...]
    interior_point: Vector

    @property
    def face_id(self) -> str:
        """"w1.w3" 형식, 열린 alcove 는 "A" """
        if not self.wall_set:
            return "A"
        return ".".join(f"w{w}" for w in self.wall_set)

    @property
    def label(self) -> str:
        """Vertex label such as "01" (σ_01); "A" for the open face"""
        if not self.wall_set:
            return "A"
        return "".join(str(v) for v in self.vertex_ids)

    def is_vertex(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True)
class FacePoset:
    """All faces with the inclusion order σ ≤ τ ⇔ walls(σ) ⊇ walls(τ)"""

    rank: int
    faces: Tuple[AlcoveFace, ...]

    def leq(self, sigma: AlcoveFace, tau: AlcoveFace) -> bool:
        return set(sigma.wall_set) >= set(tau.wall_set)

    def by_id(self, face_id: str) -> AlcoveFace:
        for face in self.faces:
            if face.face_id == face_id or face.label == face_id:
                return face
        raise ValueError(f"Unknown face '{face_id}'")

    def by_walls(self, walls) -> AlcoveFace:
        key = tuple(sorted(walls))
        for face in self.faces:
            if face.wall_set == key:
                return face
        raise ValueError(f"No face with walls {key}")

    def vertices(self) -> List[AlcoveFace]:
        return [f for f in self.faces if f.dim == 0]

    def open_face(self) -> AlcoveFace:
        return self.by_walls(())

    def star(self, sigma: AlcoveFace) -> List[AlcoveFace]:
        return [tau for tau in self.faces if self.leq(sigma, tau)]

    def proper_subfaces(self, tau: AlcoveFace) -> List[AlcoveFace]:
        return [s for s in self.faces if s != tau and self.leq(s, tau)]

    def dimension_census(self) -> Dict[int, int]:
        census: Dict[int, int] = {}
        for face in self.faces:
            census[face.dim] = census.get(face.dim, 0) + 1
        return census


@dataclass(frozen=True)
class FaceRootData:
    face_id: str
    r_sigma: Tuple[Vector, ...]
    r_sigma_positive: Tuple[Vector, ...]
    alpha_sigma_values: Tuple[int, ...]
    b_sigma: Tuple[Vector, ...]
    component_types: Tuple[str, ...]
    dim_k_sigma: int
    dim_commutator: int
    central_torus_dim: int
    gamma_order: Optional[int] = None
    g_sigma_trivial: Optional[bool] = None


@dataclass(frozen=True)
class GammaShift:
    gamma_order: int
    g_sigma_trivial: bool


@dataclass(frozen=True)
class AlcoveReduction:
    """reduced = w(ξ + γ) with w given by linear_word and γ ∈ Q(R∨)"""

    xi_reduced: Vector
    linear_word: Tuple[int, ...]
    linear_matrix: Tuple[Vector, ...]
    translation: Vector
    steps: int


@dataclass(frozen=True)
class VertexInfo:
    vertex_id: int
    coordinates: Vector
    is_central: bool


@dataclass(frozen=True)
class ToricData:
    weights_m: Tuple[int, ...]
    labels: Tuple[int, ...]
    lcm_m: int
    l_coefficients: Tuple[int, ...]
    is_standard_projective: bool


@dataclass(frozen=True)
class EdgeWeight:
    i: int
    j: int
    weight: Vector
    pairings: Tuple[Fraction, ...]
    ok: bool


# ---------------------------------------------------------------------------
# Walls and vertices
# ---------------------------------------------------------------------------

def wall_root(datum: RootDatum, wall: int) -> Vector:
    """α_i for walls 1..rank, the minimal root −θ for wall rank+1"""
    if 1 <= wall <= datum.rank:
        return datum.simple_roots[wall - 1]
    if wall == datum.rank + 1:
        return datum.minimal_root
    raise ValueError(f"Wall {wall} out of range 1..{datum.rank + 1}")


def wall_value(datum: RootDatum, wall: int, x: Vector) -> Fraction:
    """Signed distance-like value, zero on the wall and positive inside the alcove"""
    if wall == datum.rank + 1:
        return 1 - dot(datum.highest_root, x)
    return dot(wall_root(datum, wall), x)


def vertex_coordinates(datum: RootDatum) -> Dict[int, Vector]:
    """
    Vertex j = ω_j∨ / a_j where a_j is the coefficient of α_j in the highest root

    a_j 로 나누면 θ(vertex) = 1 이 되어 j 번째 벽 이외의 모든 벽 위에 놓입니다.
    """
    coords = {0: zero(datum.ambient_dim)}
    for j in range(1, datum.rank + 1):
        a_j = datum.highest_root_coefficients[j - 1]
        coords[j] = scale(Fraction(1, a_j), datum.fundamental_coweights[j - 1])
    return coords


def _vertex_of_wall(datum: RootDatum, wall: int) -> int:
    return 0 if wall == datum.rank + 1 else wall


def barycenter(datum: RootDatum) -> Vector:
    total = zero(datum.ambient_dim)
    coords = vertex_coordinates(datum)
    for v in coords.values():
        total = add(total, v)
    return scale(Fraction(1, len(coords)), total)


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_faces(datum: RootDatum) -> FacePoset:
    """
    All 2^(rank+1) − 1 faces of the alcove simplex

    Returns:
        FacePoset: dim 오름차순, 같은 dim 에서는 vertex id 순
    """
    walls = list(range(1, datum.rank + 2))
    coords = vertex_coordinates(datum)
    faces: List[AlcoveFace] = []
    for size in range(len(walls)):
        for wall_set in combinations(walls, size):
            vertex_ids = tuple(sorted(_vertex_of_wall(datum, w) for w in walls if w not in wall_set))
            total = zero(datum.ambient_dim)
            for v in vertex_ids:
                total = add(total, coords[v])
            faces.append(
                AlcoveFace(
                    wall_set=tuple(wall_set),
                    dim=datum.rank - len(wall_set),
                    vertex_ids=vertex_ids,
                    interior_point=scale(Fraction(1, len(vertex_ids)), total),
                )
            )
    faces.sort(key=lambda f: (f.dim, f.vertex_ids))
    poset = FacePoset(rank=datum.rank, faces=tuple(faces))
    logger.debug(f"{datum.name}: {len(faces)} alcove faces")
    return poset


def chamber_face_count(datum: RootDatum) -> int:
    """Relatively open faces of the Weyl chamber (a simplicial cone)"""
    return 2 ** datum.rank


def face_of_point(datum: RootDatum, x: Vector) -> AlcoveFace:
    """
    Face of the closed alcove containing x

    Raises:
        ValueError: x 가 닫힌 alcove 밖에 있을 때
    """
    walls = []
    for wall in range(1, datum.rank + 2):
        value = wall_value(datum, wall, x)
        if value < 0:
            raise ValueError(f"Point {x} lies outside the closed alcove (wall {wall})")
        if value == 0:
            walls.append(wall)
    return enumerate_faces(datum).by_walls(walls)


@lru_cache(maxsize=None)
def face_root_data(datum: RootDatum, face: AlcoveFace) -> FaceRootData:
    """
    Centralizer root data R_σ, B_σ and the Dynkin type of [K_σ, K_σ]

    B_σ 는 face 를 포함하는 벽들의 벽 루트(단순근, affine 벽이면 −θ)입니다.
    결과는 (datum, face) 별로 캐시됩니다.

    Raises:
        RuntimeError: B_σ 가 R_σ 의 base 가 아닐 때 (내부 일관성 실패)
    """
    p = face.interior_point
    pairings = [(a, dot(a, p)) for a in datum.positive_roots]
    positive = tuple(a for a, v in pairings if is_integral(v))
    # datum.roots 와 같은 순서: 양의 근, 그 다음 음의 근
    r_sigma = positive + tuple(neg(a) for a in positive)
    values = tuple(int(v) for _, v in pairings if is_integral(v))
    if any(v not in (0, 1) for v in values):
        raise RuntimeError(f"{datum.name}: root values {values} on face {face.face_id} outside {{0, 1}}")

    b_sigma = tuple(wall_root(datum, w) for w in face.wall_set)
    _check_base(datum, face, r_sigma, b_sigma)

    return FaceRootData(
        face_id=face.face_id,
        r_sigma=r_sigma,
        r_sigma_positive=positive,
        alpha_sigma_values=values,
        b_sigma=b_sigma,
        component_types=dynkin_components(b_sigma),
        dim_k_sigma=datum.rank + len(r_sigma),
        dim_commutator=len(b_sigma) + len(r_sigma),
        central_torus_dim=face.dim,
    )


def _check_base(datum: RootDatum, face: AlcoveFace, r_sigma, b_sigma) -> None:
    if len(b_sigma) + face.dim != datum.rank:
        raise RuntimeError(f"{datum.name}: |B_σ| + dim σ != rank on {face.face_id}")
    if not b_sigma:
        if r_sigma:
            raise RuntimeError(f"{datum.name}: open face has integral roots")
        return
    g_inv = inverse(gram(b_sigma))
    for alpha in r_sigma:
        coeffs = coefficients(b_sigma, alpha, g_inv)
        recombined = zero(datum.ambient_dim)
        for c, b in zip(coeffs, b_sigma):
            recombined = add(recombined, scale(c, b))
        if recombined != alpha or not is_integral_vector(coeffs):
            raise RuntimeError(f"{datum.name}: root {alpha} is not an integral combination of B_σ on {face.face_id}")
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            raise RuntimeError(f"{datum.name}: B_σ is not a base of R_σ on {face.face_id}")


def all_face_root_data(datum: RootDatum) -> Dict[str, FaceRootData]:
    return {f.face_id: face_root_data(datum, f) for f in enumerate_faces(datum).faces}


# ---------------------------------------------------------------------------
# Γ_σ and the shift g_σ
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def gamma_and_shift(datum: RootDatum, face: AlcoveFace, data: Optional[FaceRootData] = None) -> GammaShift:
    """
    Order of Γ_σ = [K_σ,K_σ] ∩ Z(K_σ)^0 and whether g_σ may be taken to be 1

    span(B_σ∨) 를 s 라 할 때 좌표는 B_σ∨ 기저 계수입니다.
    L = proj_s(Q(R∨)), M = s ∩ Q(R∨) 이면 |Γ_σ| = [L : Z^k] / [M : Z^k].
    g_σ = 1 은 interior point 의 s 사영이 L 에 속할 때입니다.
    """
    data = data or face_root_data(datum, face)
    k = len(data.b_sigma)
    if k == 0:
        return GammaShift(gamma_order=1, g_sigma_trivial=True)

    b_vee = [coroot(b) for b in data.b_sigma]
    g_inv = inverse(gram(b_vee))
    gens = [coefficients(b_vee, c, g_inv) for c in datum.simple_coroots]

    # [L : Z^k] = D^k / [Z^k : D·L]
    d = denominator_lcm(c for g in gens for c in g)
    n_rows = []
    for row in range(k):
        entries = [int(d * g[row]) for g in gens]
        entries += [d if col == row else 0 for col in range(k)]
        n_rows.append(entries)
    sub_index = torsion_order(n_rows)
    if d ** k % sub_index:
        raise RuntimeError(f"{datum.name}: non-integral lattice index on {face.face_id}")
    l_index = d ** k // sub_index

    # B_σ∨ 를 단순 coroot 좌표로 (r × k 정수 행렬)
    simple_vee_gram_inv = inverse(gram(datum.simple_coroots))
    b_coords = [coefficients(datum.simple_coroots, b, simple_vee_gram_inv) for b in b_vee]
    if not all(is_integral_vector(c) for c in b_coords):
        raise RuntimeError(f"{datum.name}: B_σ coroots are not in Q(R∨)")
    b_matrix = [[int(b_coords[col][row]) for col in range(k)] for row in range(datum.rank)]
    m_index = torsion_order(b_matrix)
    if l_index % m_index:
        raise RuntimeError(f"{datum.name}: [M : Z^k] = {m_index} does not divide [L : Z^k] = {l_index}")

    group = _finite_quotient(gens)
    if len(group) != l_index:
        raise RuntimeError(f"{datum.name}: L/Z^k has {len(group)} elements, expected {l_index}")
    xi = frac_part(coefficients(b_vee, face.interior_point, g_inv))
    return GammaShift(gamma_order=l_index // m_index, g_sigma_trivial=xi in group)


def _finite_quotient(gens: Sequence[Vector]) -> set:
    """Subgroup of (Q/Z)^k generated by the fractional parts of gens"""
    steps = [frac_part(g) for g in gens]
    start = frac_part(tuple(Fraction(0) for _ in steps[0]))
    group = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for s in steps:
            y = frac_part(add(x, s))
            if y not in group:
                group.add(y)
                queue.append(y)
    return group


# ---------------------------------------------------------------------------
# Affine Weyl reduction
# ---------------------------------------------------------------------------

def separating_hyperplanes(datum: RootDatum, x: Vector, reference: Vector) -> int:
    """
    Number of affine root hyperplanes α = n strictly separating x from reference

    reduce_to_alcove 의 감소 포텐셜 (reference = barycenter).
    """
    count = 0
    for alpha in datum.positive_roots:
        a, b = dot(alpha, x), dot(alpha, reference)
        lo, hi = min(a, b), max(a, b)
        # lo < n < hi 인 정수 n 의 개수
        first = lo.numerator // lo.denominator + 1
        last = -((-hi.numerator) // hi.denominator) - 1
        count += max(0, last - first + 1)
    return count


def _as_point(datum: RootDatum, xi: Sequence) -> Vector:
    point = tuple(Fraction(c) for c in xi)
    if len(point) != datum.ambient_dim:
        raise ValueError(f"Point has dimension {len(point)}, expected {datum.ambient_dim}")
    return point


def _reflection_walk(datum: RootDatum, start: Vector) -> Iterator[Tuple[int, Vector]]:
    """Yields (wall, point after reflecting) across the most violated wall until none is violated"""
    current = start
    for _ in range(MAX_REDUCTION_STEPS + 1):
        worst_wall, worst = None, Fraction(0)
        for wall in range(1, datum.rank + 2):
            violation = -wall_value(datum, wall, current)
            if violation > worst:
                worst_wall, worst = wall, violation
        if worst_wall is None:
            return
        current = reflect(wall_root(datum, worst_wall), current)
        if worst_wall == datum.rank + 1:
            current = add(current, coroot(datum.highest_root))
        yield worst_wall, current
    raise RuntimeError(f"{datum.name}: alcove reduction did not terminate")


def reduce_to_alcove(datum: RootDatum, xi: Sequence) -> AlcoveReduction:
    """
    Move xi into the closed alcove by affine reflections

    Repeatedly reflects across the most violated wall. Each reflection strictly
    decreases the number of affine root hyperplanes separating the point from the
    barycenter, so the loop terminates.

    Returns:
        AlcoveReduction: xi_reduced = w(xi + γ)
    """
    original = current = _as_point(datum, xi)
    dim = datum.ambient_dim
    matrix = identity(dim)
    translation = zero(dim)
    steps = 0

    for wall, current in _reflection_walk(datum, original):
        steps += 1
        reflection = _reflection_matrix(wall_root(datum, wall), dim)
        matrix = mat_mul(reflection, matrix)
        translation = mat_vec(reflection, translation)
        if wall == datum.rank + 1:
            translation = add(translation, coroot(datum.highest_root))

    gamma = mat_vec(transpose(matrix), translation)
    if mat_vec(matrix, add(original, gamma)) != current:
        raise RuntimeError(f"{datum.name}: affine word does not reproduce the reduced point")
    if not in_coroot_lattice(datum, gamma):
        raise RuntimeError(f"{datum.name}: translation {gamma} is not in the coroot lattice")
    word = word_of_matrix(datum, matrix)
    if steps:
        logger.debug(f"{datum.name}: reduced in {steps} reflections, word length {len(word)}")
    return AlcoveReduction(
        xi_reduced=current,
        linear_word=tuple(word),
        linear_matrix=matrix,
        translation=gamma,
        steps=steps,
    )


def reduce_point(datum: RootDatum, xi: Sequence) -> Vector:
    """The point of reduce_to_alcove, without recovering the affine word"""
    current = _as_point(datum, xi)
    for _, current in _reflection_walk(datum, current):
        pass
    return current


def _reflection_matrix(alpha: Vector, dim: int) -> Tuple[Vector, ...]:
    columns = [reflect(alpha, tuple(Fraction(int(i == k)) for i in range(dim))) for k in range(dim)]
    return transpose(columns)


# ---------------------------------------------------------------------------
# Vertices, toric cut
# ---------------------------------------------------------------------------

def is_central_point(datum: RootDatum, x: Vector) -> bool:
    """exp x is central iff every root takes an integer value at x"""
    return all(is_integral(dot(a, x)) for a in datum.positive_roots)


def vertices_and_centrality(datum: RootDatum) -> List[VertexInfo]:
    return [
        VertexInfo(vertex_id=j, coordinates=x, is_central=is_central_point(datum, x))
        for j, x in sorted(vertex_coordinates(datum).items())
    ]


def toric_cut_data(datum: RootDatum) -> ToricData:
    """Weights, labels and l-coefficients of the toric cut"""
    marks = extended_marks(datum)
    m = lcm(*marks)
    return ToricData(
        weights_m=marks,
        labels=tuple(1 for _ in marks),
        lcm_m=m,
        l_coefficients=tuple(m // mi for mi in marks),
        is_standard_projective=all(mi == 1 for mi in marks),
    )


def edge_weight_check(datum: RootDatum) -> List[EdgeWeight]:
    """
    Sign pattern of the edge weights μ_ij = l_j ϖ_j − l_i ϖ_i

    ϖ_{rank+1} = 0 이고 확장 coroot α_{rank+1}∨ = −θ∨ 입니다.
    μ_ij 는 α_j∨ 와 양수, α_i∨ 와 음수, 나머지 확장 coroot 와 0 으로 짝지어져야 합니다.
    """
    toric = toric_cut_data(datum)
    r = datum.rank
    weights = list(datum.fundamental_weights) + [zero(datum.ambient_dim)]
    coroots = list(datum.simple_coroots) + [neg(coroot(datum.highest_root))]
    l = toric.l_coefficients
    out = []
    for i in range(r + 1):
        for j in range(r + 1):
            if i == j:
                continue
            mu = sub(scale(l[j], weights[j]), scale(l[i], weights[i]))
            pairings = tuple(dot(mu, c) for c in coroots)
            ok = all(
                (p > 0) if k == j else (p < 0) if k == i else (p == 0)
                for k, p in enumerate(pairings)
            )
            out.append(EdgeWeight(i=i + 1, j=j + 1, weight=mu, pairings=pairings, ok=ok))
    return out


def with_gamma(datum: RootDatum, face: AlcoveFace) -> FaceRootData:
    """face_root_data with gamma_order and g_sigma_trivial filled in"""
    data = face_root_data(datum, face)
    shift = gamma_and_shift(datum, face, data)
    return replace(data, gamma_order=shift.gamma_order, g_sigma_trivial=shift.g_sigma_trivial)
