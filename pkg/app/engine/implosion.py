"""
Universal implosion strata
DK_impl 의 층(stratum) 분해, 특이점 제거 가능성, 중심/쌍대 대칭, centralizer 교집합 및 정수성 검사
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Tuple

from app.engine.alcove import (
    AlcoveFace,
    FaceRootData,
    all_face_root_data,
    barycenter,
    enumerate_faces,
    face_root_data,
    is_central_point,
    reduce_point,
    reduce_to_alcove,
    vertex_coordinates,
)
from app.engine.rootsys import (
    RootDatum,
    apply_weyl_word,
    build_root_system,
    center_structure,
    extended_marks,
    format_type,
)
from app.utils.rational import Vector, add, mat_mul, neg

logger = logging.getLogger(__name__)

Permutation = Dict[str, str]


@dataclass(frozen=True)
class StratumRecord:
    face_id: str
    label: str
    stratum_dim: int
    commutator_type: Tuple[str, ...]
    is_point: bool
    is_removable: bool
    orbit_under_center: Tuple[str, ...]
    dual_face_id: str


@dataclass(frozen=True)
class SmoothnessVerdict:
    face_id: str
    removable: bool
    all_components_a1: bool
    central_vertices: Tuple[int, ...]
    reasons: Tuple[str, ...]


@dataclass(frozen=True)
class ZetaReport:
    """ζ: Z(K) → W, center element ↦ linear part of the affine map fixing the alcove"""

    generator_words: Dict[int, Tuple[int, ...]]
    element_words: Tuple[Tuple[int, ...], ...]
    is_homomorphism: bool
    is_injective: bool


@dataclass(frozen=True)
class AlcoveSymmetries:
    center_face_permutations: Dict[int, Permutation]
    duality_face_permutation: Permutation
    checks: Dict[str, bool]


@dataclass
class CheckReport:
    name: str
    group: Optional[str]
    passed: bool
    rows: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Strata
# ---------------------------------------------------------------------------

def stratum_dimension(datum: RootDatum, face: AlcoveFace, data: FaceRootData) -> int:
    """dim K − dim[K_σ,K_σ] + dim σ"""
    return datum.group_dim - data.dim_commutator + face.dim


def strata_table(datum: RootDatum) -> List[StratumRecord]:
    """
    One record per alcove face: K/[K_σ,K_σ] × exp σ

    Raises:
        RuntimeError: 점 층(point stratum)과 중심 꼭짓점의 대응이 깨질 때
    """
    poset = enumerate_faces(datum)
    data = all_face_root_data(datum)
    symmetries = alcove_symmetries(datum, data)
    orbits = _orbits(poset, symmetries.center_face_permutations)

    records = []
    for face in poset.faces:
        fd = data[face.face_id]
        dim = stratum_dimension(datum, face, fd)
        is_point = dim == 0
        if is_point != (face.is_vertex() and is_central_point(datum, face.interior_point)):
            raise RuntimeError(f"{datum.name}: point stratum mismatch on face {face.face_id}")
        records.append(
            StratumRecord(
                face_id=face.face_id,
                label=face.label,
                stratum_dim=dim,
                commutator_type=fd.component_types,
                is_point=is_point,
                is_removable=smoothness_check(datum, face, fd).removable,
                orbit_under_center=orbits[face.face_id],
                dual_face_id=symmetries.duality_face_permutation[face.face_id],
            )
        )

    top = [r for r in records if r.stratum_dim == datum.group_dim + datum.rank]
    if len(top) != 1:
        raise RuntimeError(f"{datum.name}: expected one open stratum, found {len(top)}")
    points = sum(1 for r in records if r.is_point)
    order = center_structure(datum).order
    if points != order:
        raise RuntimeError(f"{datum.name}: {points} one-point strata but center order {order}")
    logger.info(f"{datum.name}: {len(records)} strata, {points} one-point strata")
    return records


def _orbits(poset, perms: Dict[int, Permutation]) -> Dict[str, Tuple[str, ...]]:
    order = {f.face_id: i for i, f in enumerate(poset.faces)}
    orbits = {}
    for face in poset.faces:
        seen = {face.face_id}
        queue = deque([face.face_id])
        while queue:
            x = queue.popleft()
            for p in perms.values():
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        orbits[face.face_id] = tuple(sorted(seen, key=order.__getitem__))
    return orbits


def smoothness_check(datum: RootDatum, face: AlcoveFace, data: Optional[FaceRootData] = None) -> SmoothnessVerdict:
    """
    Removability: every component of B_σ is A1 and some closure vertex is central
    """
    data = data or face_root_data(datum, face)
    coords = vertex_coordinates(datum)
    central = tuple(v for v in face.vertex_ids if is_central_point(datum, coords[v]))
    non_a1 = [t for t in data.component_types if t != "A1"]
    reasons = []
    if non_a1:
        reasons.append(f"[K_σ,K_σ] has components {format_type(non_a1)} not of type A1")
    if not central:
        reasons.append("no vertex in the closure of the face is central")
    return SmoothnessVerdict(
        face_id=face.face_id,
        removable=not reasons,
        all_components_a1=not non_a1,
        central_vertices=central,
        reasons=tuple(reasons),
    )


def centralizer_table(datum: RootDatum) -> List[dict]:
    """
    Rows (face, K_σ, [K_σ,K_σ]) in the layout of the Sp(2) worked example

    K_σ 는 "T^k × type", 교환자군은 type 또는 "1" 로 표시합니다.
    """
    rows = []
    for face in enumerate_faces(datum).faces:
        fd = face_root_data(datum, face)
        commutator = format_type(fd.component_types)
        if face.dim and fd.component_types:
            k_sigma = f"T^{face.dim} × {commutator}"
        elif face.dim:
            k_sigma = f"T^{face.dim}"
        else:
            k_sigma = commutator
        rows.append({"face": face.face_id, "label": face.label, "k_sigma": k_sigma, "commutator": commutator})
    return rows


# ---------------------------------------------------------------------------
# Center action and duality
# ---------------------------------------------------------------------------

def _vertex_lookup(datum: RootDatum) -> Dict[Vector, int]:
    return {x: j for j, x in vertex_coordinates(datum).items()}


def _face_perm_from_vertices(datum: RootDatum, vertex_map: Dict[int, int]) -> Permutation:
    poset = enumerate_faces(datum)
    by_vertices = {frozenset(f.vertex_ids): f.face_id for f in poset.faces}
    return {
        f.face_id: by_vertices[frozenset(vertex_map[v] for v in f.vertex_ids)] for f in poset.faces
    }


def center_vertex_permutation(datum: RootDatum, c: Vector) -> Dict[int, int]:
    """Vertex permutation induced by x ↦ reduce(x + c) for a coweight c"""
    lookup = _vertex_lookup(datum)
    out = {}
    for j, x in vertex_coordinates(datum).items():
        image = reduce_point(datum, add(x, c))
        if image not in lookup:
            raise RuntimeError(f"{datum.name}: center element does not map vertex {j} to a vertex")
        out[j] = lookup[image]
    return out


def duality_vertex_permutation(datum: RootDatum) -> Dict[int, int]:
    """Vertex permutation induced by ξ ↦ −w0 ξ"""
    lookup = _vertex_lookup(datum)
    w0 = center_structure(datum).w0_word
    out = {}
    for j, x in vertex_coordinates(datum).items():
        image = neg(apply_weyl_word(datum, w0, x))
        if image not in lookup:
            raise RuntimeError(f"{datum.name}: −w0 does not map vertex {j} to a vertex")
        out[j] = lookup[image]
    return out


def compose(first: Permutation, second: Permutation) -> Permutation:
    """x ↦ second[first[x]]"""
    return {x: second[y] for x, y in first.items()}


def invert(p: Permutation) -> Permutation:
    return {y: x for x, y in p.items()}


def alcove_symmetries(datum: RootDatum, data: Optional[Dict[str, FaceRootData]] = None) -> AlcoveSymmetries:
    """
    Face permutations of the center generators and of the duality −w0

    Returns:
        AlcoveSymmetries: 생성원 node → face 치환, 쌍대 치환, 검사 결과
    """
    poset = enumerate_faces(datum)
    center = center_structure(datum)
    center_perms = {
        node: _face_perm_from_vertices(datum, center_vertex_permutation(datum, c))
        for node, c in zip(center.generator_nodes, center.generators)
    }
    dual = _face_perm_from_vertices(datum, duality_vertex_permutation(datum))
    identity = {f.face_id: f.face_id for f in poset.faces}

    by_id = {f.face_id: f for f in poset.faces}

    def automorphism(p: Permutation) -> bool:
        # 면 순서의 자기동형 = 꼭짓점 치환이 유도하는 면 치환
        if sorted(p.values()) != sorted(p):
            return False
        on_vertices = {}
        for v in poset.vertices():
            image = by_id[p[v.face_id]]
            if not image.is_vertex():
                return False
            on_vertices[v.vertex_ids[0]] = image.vertex_ids[0]
        return all(
            set(by_id[p[f.face_id]].vertex_ids) == {on_vertices[v] for v in f.vertex_ids}
            for f in poset.faces
        )

    group = {tuple(sorted(identity.items()))}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for p in center_perms.values():
            h = compose(g, p)
            key = tuple(sorted(h.items()))
            if key not in group:
                group.add(key)
                queue.append(h)

    data = data or all_face_root_data(datum)
    dims = {f.face_id: stratum_dimension(datum, f, data[f.face_id]) for f in poset.faces}
    origin = poset.by_walls(range(1, datum.rank + 1)).face_id
    central_ids = {
        f.face_id for f in poset.vertices() if is_central_point(datum, f.interior_point)
    }
    origin_orbit = {dict(key)[origin] for key in group}

    checks = {
        "center_automorphisms": all(automorphism(p) for p in center_perms.values()),
        "center_group_order": len(group) == center.order,
        "center_transitive_on_points": origin_orbit == central_ids,
        "duality_automorphism": automorphism(dual),
        "duality_involution": compose(dual, dual) == identity,
        "duality_inverts_center": all(
            compose(compose(dual, p), dual) == invert(p) for p in center_perms.values()
        ),
        "strata_dims_invariant": all(
            dims[p[fid]] == dims[fid] for p in center_perms.values() for fid in dims
        )
        and all(dims[dual[fid]] == dims[fid] for fid in dims),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.warning(f"{datum.name}: symmetry checks failed: {failed}")
    return AlcoveSymmetries(center_face_permutations=center_perms, duality_face_permutation=dual, checks=checks)


def zeta_homomorphism(datum: RootDatum) -> ZetaReport:
    """
    ζ(c) = linear part of the reduction of c + barycenter

    Raises:
        RuntimeError: 환원 결과가 barycenter 가 아닐 때
    """
    center = center_structure(datum)
    b = barycenter(datum)

    def linear_part(c: Vector):
        reduction = reduce_to_alcove(datum, add(c, b))
        if reduction.xi_reduced != b:
            raise RuntimeError(f"{datum.name}: center element {c} does not fix the barycenter's orbit")
        return reduction

    reductions = [linear_part(c) for c in center.elements]
    matrices = [r.linear_matrix for r in reductions]

    is_hom = True
    for ci, mi in zip(center.elements, matrices):
        for cj, mj in zip(center.elements, matrices):
            product = linear_part(add(ci, cj)).linear_matrix
            if mat_mul(mi, mj) != product:
                is_hom = False
    is_injective = len(set(matrices)) == len(matrices)

    generator_words = {}
    for node, c in zip(center.generator_nodes, center.generators):
        generator_words[node] = reductions[center.elements.index(c)].linear_word
    logger.info(f"{datum.name}: zeta on {len(center.elements)} center elements, hom={is_hom}, injective={is_injective}")
    return ZetaReport(
        generator_words=generator_words,
        element_words=tuple(r.linear_word for r in reductions),
        is_homomorphism=is_hom,
        is_injective=is_injective,
    )


# ---------------------------------------------------------------------------
# Appendix-style checks
# ---------------------------------------------------------------------------

def centralizer_intersection_check(datum: RootDatum) -> CheckReport:
    """
    R_τ = ∩_{σ<τ} R_σ for every face τ of dimension at least two

    Raises:
        ValueError: rank < 2
    """
    if datum.rank < 2:
        raise ValueError(f"Centralizer intersection check needs rank >= 2, got {datum.name}")
    poset = enumerate_faces(datum)
    data = all_face_root_data(datum)
    roots = {fid: frozenset(fd.r_sigma) for fid, fd in data.items()}
    report = CheckReport(name="check-centralizer", group=datum.name, passed=True)
    for tau in poset.faces:
        if tau.dim < 2:
            continue
        subfaces = poset.proper_subfaces(tau)
        inter = frozenset(datum.roots)
        for sigma in subfaces:
            inter &= roots[sigma.face_id]
        ok = inter == roots[tau.face_id]
        report.passed &= ok
        report.rows.append(
            {"face": tau.face_id, "dim": tau.dim, "subfaces": len(subfaces), "r_tau": len(roots[tau.face_id]),
             "intersection": len(inter), "ok": ok}
        )
    return report


def _ratio_group_order(a: int, b: int) -> int:
    """Order of (Z + Z·a/b) mod Z, the denominator of a/b in lowest terms"""
    return Fraction(a, b).denominator


def integrality_triple_check(datum: RootDatum) -> CheckReport:
    """
    For each triple of extended nodes at least one group G is trivial

    G_a = (Z + Z·m_a/m_b) ∩ (Z + Z·m_a/m_c) mod Z, cyclic of order
    gcd(den(m_a/m_b), den(m_a/m_c)).
    """
    marks = extended_marks(datum)
    report = CheckReport(
        name="check-integrality",
        group=datum.name,
        passed=True,
        notes=["Z(x, y) is read as the additive group Zx + Zy"],
    )
    for triple in combinations(range(len(marks)), 3):
        orders = []
        for pos, a in enumerate(triple):
            b, c = [t for t in triple if t != a]
            orders.append(
                gcd(_ratio_group_order(marks[a], marks[b]), _ratio_group_order(marks[a], marks[c]))
            )
        ok = min(orders) == 1
        report.passed &= ok
        report.rows.append(
            {"nodes": [t + 1 for t in triple], "marks": [marks[t] for t in triple], "orders": orders, "ok": ok}
        )
    return report


def _expected_su_types(n: int, support: Tuple[int, ...]) -> Tuple[str, ...]:
    blocks = [n + support[0] - support[-1]] + [b - a for a, b in zip(support, support[1:])]
    types = [f"A{b - 1}" for b in blocks if b > 1]
    return tuple(sorted(types, key=lambda s: (s[0], int(s[1:]))))


def su_stabilizer_pattern_check(n: int) -> CheckReport:
    """
    Stabilizer blocks of the explicit SU(n) embedding against alcove face types

    support {i_1<…<i_s} ⊆ {1..n} ↔ face with walls {1..n} \\ support.
    """
    if not isinstance(n, int) or n < 2 or n > 8:
        raise ValueError(f"SU-embedding check needs 2 <= n <= 8, got {n}")
    datum = build_root_system("A", n - 1)
    poset = enumerate_faces(datum)
    report = CheckReport(name="su-embedding-check", group=f"SU({n})", passed=True)
    for size in range(1, n + 1):
        for support in combinations(range(1, n + 1), size):
            walls = [w for w in range(1, n + 1) if w not in support]
            face = poset.by_walls(walls)
            expected = _expected_su_types(n, support)
            actual = face_root_data(datum, face).component_types
            ok = expected == actual
            report.passed &= ok
            report.rows.append(
                {"support": list(support), "face": face.face_id, "expected": format_type(expected),
                 "actual": format_type(actual), "ok": ok}
            )
    return report
