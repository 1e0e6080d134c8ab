"""
Root systems
단순 리 군의 루트계(Bourbaki 실현), 바일 군 반사 단어, coroot marks, 중심(center) 구조를 정확한 유리수 연산으로 계산합니다.

Roots are stored with the 2πi factor stripped: a root is the rational functional
whose integrality on a point replaces the condition α(ξ) ∈ 2πiZ.
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from app.utils.rational import (
    Vector,
    add,
    coefficients,
    dot,
    gram,
    integer_determinant,
    inverse,
    is_integral,
    is_integral_vector,
    mat_vec,
    neg,
    scale,
    sub,
    torsion_order,
    transpose,
    vec,
    zero,
)

logger = logging.getLogger(__name__)

# type -> (최소 rank, 최대 rank)
RANK_BOUNDS: Dict[str, Tuple[int, Optional[int]]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RootDatum:
    """Exact root-system data for one simple type"""

    type_label: str
    rank: int
    ambient_dim: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    positive_root_coefficients: Tuple[Tuple[int, ...], ...]
    highest_root: Vector
    highest_root_coefficients: Tuple[int, ...]
    minimal_root: Vector
    simple_coroots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    fundamental_coweights: Tuple[Vector, ...]
    fundamental_weights: Tuple[Vector, ...]

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def roots(self) -> Tuple[Vector, ...]:
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @property
    def coroot_lattice_basis(self) -> Tuple[Vector, ...]:
        return self.simple_coroots

    @property
    def coweight_lattice_basis(self) -> Tuple[Vector, ...]:
        return self.fundamental_coweights

    @property
    def group_dim(self) -> int:
        """dim K = rank + |R|"""
        return self.rank + 2 * len(self.positive_roots)

    @property
    def rho_coweight(self) -> Vector:
        total = zero(self.ambient_dim)
        for w in self.fundamental_coweights:
            total = add(total, w)
        return total


def coroot(alpha: Vector) -> Vector:
    """α∨ = 2α/(α,α)"""
    return scale(Fraction(2) / dot(alpha, alpha), alpha)


def reflect(alpha: Vector, v: Vector) -> Vector:
    """s_α(v) = v − (α, v) α∨"""
    return sub(v, scale(dot(alpha, v), coroot(alpha)))


# ---------------------------------------------------------------------------
# Bourbaki realizations
# ---------------------------------------------------------------------------

def _unit(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))


def _e_diff(dim: int, i: int, j: int) -> Vector:
    return sub(_unit(dim, i), _unit(dim, j))


def _simple_roots(type_label: str, rank: int) -> Tuple[int, List[Vector]]:
    if type_label == "A":
        dim = rank + 1
        return dim, [_e_diff(dim, i, i + 1) for i in range(rank)]
    if type_label == "B":
        dim = rank
        return dim, [_e_diff(dim, i, i + 1) for i in range(rank - 1)] + [_unit(dim, rank - 1)]
    if type_label == "C":
        dim = rank
        return dim, [_e_diff(dim, i, i + 1) for i in range(rank - 1)] + [scale(2, _unit(dim, rank - 1))]
    if type_label == "D":
        dim = rank
        last = add(_unit(dim, rank - 2), _unit(dim, rank - 1))
        return dim, [_e_diff(dim, i, i + 1) for i in range(rank - 1)] + [last]
    if type_label == "E":
        # E6, E7 은 E8 의 처음 6, 7 개 단순근으로 R^8 안에서 실현
        dim = 8
        e8 = [
            vec([_HALF, -_HALF, -_HALF, -_HALF, -_HALF, -_HALF, -_HALF, _HALF]),
            add(_unit(dim, 0), _unit(dim, 1)),
        ] + [_e_diff(dim, i + 1, i) for i in range(6)]
        return dim, e8[:rank]
    if type_label == "F":
        dim = 4
        return dim, [
            _e_diff(dim, 1, 2),
            _e_diff(dim, 2, 3),
            _unit(dim, 3),
            vec([_HALF, -_HALF, -_HALF, -_HALF]),
        ]
    if type_label == "G":
        dim = 3
        return dim, [_e_diff(dim, 0, 1), vec([-2, 1, 1])]
    raise ValueError(f"Unknown type '{type_label}'")


def validate_type(type_label: str, rank: int) -> None:
    """
    Check that (type_label, rank) names a simple type

    Raises:
        ValueError: unknown letter or rank outside the allowed range
    """
    if type_label not in RANK_BOUNDS:
        raise ValueError(f"Unknown type '{type_label}': expected one of {', '.join(RANK_BOUNDS)}")
    low, high = RANK_BOUNDS[type_label]
    if not isinstance(rank, int) or rank < low or (high is not None and rank > high):
        bound = f"rank >= {low}" if high is None else (f"rank = {low}" if low == high else f"{low} <= rank <= {high}")
        raise ValueError(f"Invalid rank {rank} for type {type_label}: {type_label} requires {bound}")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _reflection_closure(simple: Sequence[Vector]) -> List[Vector]:
    seen = set(simple)
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for alpha in simple:
            image = reflect(alpha, root)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return list(seen)


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootDatum:
    """
    Construct the root datum of a simple type

    Args:
        type_label: 'A' ~ 'G'
        rank: 루트계의 rank

    Returns:
        RootDatum: 모든 불변식이 검증된 루트 데이터

    Raises:
        ValueError: (type, rank) 조합이 단순형이 아닐 때
    """
    type_label = str(type_label).upper()
    validate_type(type_label, rank)

    ambient_dim, simple = _simple_roots(type_label, rank)
    simple = tuple(simple)
    simple_gram_inv = inverse(gram(simple))

    positive: List[Tuple[Tuple[int, ...], Vector]] = []
    for root in _reflection_closure(simple):
        coeffs = coefficients(simple, root, simple_gram_inv)
        if not is_integral_vector(coeffs):
            raise RuntimeError(f"Root {root} is not an integral combination of simple roots")
        ints = tuple(int(c) for c in coeffs)
        if all(c >= 0 for c in ints):
            positive.append((ints, root))
    # height 오름차순, 같은 height 안에서는 계수 사전순
    positive.sort(key=lambda item: (sum(item[0]), item[0]))

    highest_coeffs, highest = positive[-1]
    simple_coroots = tuple(coroot(a) for a in simple)
    cartan = tuple(
        tuple(int(dot(simple[j], simple_coroots[i])) for j in range(rank)) for i in range(rank)
    )
    cartan_fractions = tuple(tuple(Fraction(c) for c in row) for row in cartan)
    c_inv = inverse(cartan_fractions)
    ct_inv = inverse(transpose(cartan_fractions))

    def _combine(rows, basis):
        out = []
        for row in rows:
            total = zero(ambient_dim)
            for coeff, b in zip(row, basis):
                total = add(total, scale(coeff, b))
            out.append(total)
        return tuple(out)

    datum = RootDatum(
        type_label=type_label,
        rank=rank,
        ambient_dim=ambient_dim,
        simple_roots=simple,
        positive_roots=tuple(root for _, root in positive),
        positive_root_coefficients=tuple(coeffs for coeffs, _ in positive),
        highest_root=highest,
        highest_root_coefficients=highest_coeffs,
        minimal_root=neg(highest),
        simple_coroots=simple_coroots,
        coroots=tuple(coroot(root) for _, root in positive),
        cartan_matrix=cartan,
        fundamental_coweights=_combine(c_inv, simple_coroots),
        fundamental_weights=_combine(ct_inv, simple),
    )
    _validate(datum)
    logger.info(f"Root system {datum.name} built: {len(datum.positive_roots)} positive roots, dim K = {datum.group_dim}")
    return datum


def _validate(datum: RootDatum) -> None:
    """Internal-consistency checks; a failure means the construction is wrong"""
    for i, row in enumerate(datum.cartan_matrix):
        if row[i] != 2:
            raise RuntimeError(f"{datum.name}: Cartan diagonal entry {i + 1} is {row[i]}")
        for j, entry in enumerate(row):
            if i != j and entry not in (0, -1, -2, -3):
                raise RuntimeError(f"{datum.name}: Cartan entry ({i + 1},{j + 1}) = {entry}")

    positive = set(datum.positive_roots)
    for alpha in datum.simple_roots:
        rest = positive - {alpha}
        if {reflect(alpha, beta) for beta in rest} != rest:
            raise RuntimeError(f"{datum.name}: simple reflection does not permute R+ minus its root")

    simple_gram_inv = inverse(gram(datum.simple_roots))
    for beta in datum.roots:
        diff = coefficients(datum.simple_roots, sub(datum.highest_root, beta), simple_gram_inv)
        if any(c < 0 for c in diff):
            raise RuntimeError(f"{datum.name}: highest root minus {beta} is not a nonnegative combination")

    order = torsion_order(datum.cartan_matrix)
    det = abs(integer_determinant(datum.cartan_matrix))
    if order != det:
        raise RuntimeError(f"{datum.name}: Smith normal form order {order} differs from |det C| = {det}")


# ---------------------------------------------------------------------------
# Weyl group as reflection words
# ---------------------------------------------------------------------------

def _check_index(datum: RootDatum, index: int) -> None:
    if not isinstance(index, int) or index < 1 or index > datum.rank:
        raise ValueError(f"Reflection index {index} out of range 1..{datum.rank} for {datum.name}")


def simple_reflection(datum: RootDatum, index: int, v: Vector) -> Vector:
    _check_index(datum, index)
    return reflect(datum.simple_roots[index - 1], v)


def apply_weyl_word(datum: RootDatum, word: Sequence[int], v: Sequence) -> Vector:
    """
    Apply simple reflections successively, word[0] first

    Raises:
        ValueError: 인덱스가 1..rank 범위를 벗어날 때
    """
    for index in word:
        _check_index(datum, index)
    result = vec(v)
    if len(result) != datum.ambient_dim:
        raise ValueError(f"Vector has dimension {len(result)}, expected {datum.ambient_dim}")
    for index in word:
        result = reflect(datum.simple_roots[index - 1], result)
    return result


def descend_to_dominant(datum: RootDatum, v: Vector) -> Tuple[Vector, List[int]]:
    """
    Reflect v into the closed dominant chamber

    Returns:
        (dominant vector, reflections in the order applied)
    """
    record: List[int] = []
    current = v
    while True:
        for i, alpha in enumerate(datum.simple_roots):
            if dot(alpha, current) < 0:
                current = reflect(alpha, current)
                record.append(i + 1)
                break
        else:
            return current, record


def weyl_matrix(datum: RootDatum, word: Sequence[int]) -> Tuple[Vector, ...]:
    """Ambient matrix (rows) of the Weyl element given by word"""
    dim = datum.ambient_dim
    columns = [apply_weyl_word(datum, word, _unit(dim, k)) for k in range(dim)]
    return transpose(columns)


def word_of_matrix(datum: RootDatum, matrix: Sequence[Vector]) -> List[int]:
    """
    Recover a reflection word for a Weyl element given as an ambient matrix

    w(ρ∨) 를 dominant 로 내리는 반사 기록의 역순이 w 의 단어입니다.
    """
    image = mat_vec(matrix, datum.rho_coweight)
    _, record = descend_to_dominant(datum, image)
    word = list(reversed(record))
    if weyl_matrix(datum, word) != tuple(tuple(row) for row in matrix):
        raise RuntimeError(f"{datum.name}: matrix is not a Weyl group element")
    return word


def longest_word(datum: RootDatum) -> List[int]:
    """Reduced word of w0, found by descent from −ρ∨"""
    _, record = descend_to_dominant(datum, neg(datum.rho_coweight))
    return record


def enumerate_weyl_group(datum: RootDatum) -> List[List[int]]:
    """
    All Weyl group elements as reflection words (rank ≤ 3 only)

    테스트 오라클 전용 brute-force 열거입니다.
    """
    if datum.rank > 3:
        raise ValueError(f"Weyl group enumeration is limited to rank <= 3, got {datum.name}")
    rho = datum.rho_coweight
    words: Dict[Vector, List[int]] = {rho: []}
    queue = deque([rho])
    while queue:
        image = queue.popleft()
        for i, alpha in enumerate(datum.simple_roots):
            nxt = reflect(alpha, image)
            if nxt not in words:
                words[nxt] = words[image] + [i + 1]
                queue.append(nxt)
    return sorted(words.values(), key=lambda w: (len(w), w))


# ---------------------------------------------------------------------------
# Marks and center
# ---------------------------------------------------------------------------

def extended_marks(datum: RootDatum) -> Tuple[int, ...]:
    """
    Coefficients of the highest root's coroot in the simple coroots, with 1 appended

    Raises:
        RuntimeError: 해가 정수가 아니거나 양수가 아닐 때 (내부 일관성 실패)
    """
    theta_vee = coroot(datum.highest_root)
    marks = coefficients(datum.simple_coroots, theta_vee)
    if not is_integral_vector(marks) or any(m <= 0 for m in marks):
        raise RuntimeError(f"{datum.name}: coroot marks {marks} are not positive integers")
    ints = tuple(int(m) for m in marks)
    check = zero(datum.ambient_dim)
    for m, c in zip(ints, datum.simple_coroots):
        check = add(check, scale(m, c))
    if check != theta_vee:
        raise RuntimeError(f"{datum.name}: marks do not reproduce the highest coroot")
    g = 0
    for m in ints:
        g = gcd(g, m)
    if g != 1:
        raise RuntimeError(f"{datum.name}: marks {ints} have gcd {g}")
    return ints + (1,)


def in_coroot_lattice(datum: RootDatum, x: Vector) -> bool:
    """x ∈ Q(R∨) iff every fundamental weight pairs integrally with x"""
    return all(is_integral(dot(w, x)) for w in datum.fundamental_weights)


def in_coweight_lattice(datum: RootDatum, x: Vector) -> bool:
    return all(is_integral(dot(a, x)) for a in datum.simple_roots)


@dataclass(frozen=True)
class CenterStructure:
    order: int
    generator_nodes: Tuple[int, ...]
    generators: Tuple[Vector, ...]
    elements: Tuple[Vector, ...]
    w0_word: Tuple[int, ...]

    def coset_index(self, datum: RootDatum, x: Vector) -> int:
        """Index into elements of the coset x + Q(R∨)"""
        if not in_coweight_lattice(datum, x):
            raise ValueError(f"{x} is not in the coweight lattice")
        for i, rep in enumerate(self.elements):
            if in_coroot_lattice(datum, sub(x, rep)):
                return i
        raise RuntimeError(f"{datum.name}: no coset representative for {x}")


def _closure(datum: RootDatum, elements: Sequence[Vector], gens: Sequence[Vector]) -> set:
    def index(x):
        for i, rep in enumerate(elements):
            if in_coroot_lattice(datum, sub(x, rep)):
                return i
        raise RuntimeError(f"{datum.name}: coweight {x} has no minuscule representative")

    reached = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in gens:
            j = index(add(elements[i], g))
            if j not in reached:
                reached.add(j)
                queue.append(j)
    return reached


@lru_cache(maxsize=None)
def center_structure(datum: RootDatum) -> CenterStructure:
    """
    P(R∨)/Q(R∨) via Smith normal form, minuscule generators and the longest word

    Returns:
        CenterStructure: order, 생성원, 모든 coset 대표원, w0 단어
    """
    order = torsion_order(datum.cartan_matrix)
    minuscule = [j + 1 for j, a in enumerate(datum.highest_root_coefficients) if a == 1]
    elements = [zero(datum.ambient_dim)] + [datum.fundamental_coweights[j - 1] for j in minuscule]

    nodes: List[int] = []
    for j, rep in zip(minuscule, elements[1:]):
        reached = _closure(datum, elements, [datum.fundamental_coweights[n - 1] for n in nodes])
        index = next(i for i, e in enumerate(elements) if e == rep)
        if index not in reached:
            nodes.append(j)
    gens = [datum.fundamental_coweights[n - 1] for n in nodes]
    reached = _closure(datum, elements, gens)
    if len(reached) != order or len(elements) != order:
        raise RuntimeError(
            f"{datum.name}: center closure has {len(reached)} elements "
            f"({len(elements)} minuscule cosets) but Smith normal form order is {order}"
        )
    return CenterStructure(
        order=order,
        generator_nodes=tuple(nodes),
        generators=tuple(gens),
        elements=tuple(elements),
        w0_word=tuple(longest_word(datum)),
    )


# ---------------------------------------------------------------------------
# Dynkin classification
# ---------------------------------------------------------------------------

def _components(n: int, adjacent) -> List[List[int]]:
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in range(n):
                if j not in seen and adjacent(i, j):
                    seen.add(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _classify(base: Sequence[Vector]) -> str:
    n = len(base)
    if n == 1:
        return "A1"
    lengths = [dot(b, b) for b in base]
    bond = {}
    for i in range(n):
        for j in range(i + 1, n):
            ij = dot(base[j], coroot(base[i]))
            ji = dot(base[i], coroot(base[j]))
            if ij != 0:
                bond[(i, j)] = int(ij * ji)
    degree = [sum(1 for (a, b) in bond if i in (a, b)) for i in range(n)]

    if any(m == 3 for m in bond.values()):
        return "G2"
    doubles = [edge for edge, m in bond.items() if m == 2]
    if doubles:
        if n == 2:
            return "C2"
        i, j = doubles[0]
        if degree[i] > 1 and degree[j] > 1:
            return f"F{n}"
        end, inner = (i, j) if degree[i] == 1 else (j, i)
        return f"B{n}" if lengths[end] < lengths[inner] else f"C{n}"

    branches = [i for i in range(n) if degree[i] == 3]
    if not branches:
        return f"A{n}"
    center = branches[0]
    arms = []
    for start in (b if a == center else a for (a, b) in bond if center in (a, b)):
        length, prev, cur = 1, center, start
        while True:
            nxt = [b if a == cur else a for (a, b) in bond if cur in (a, b) and prev not in (a, b)]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    return f"E{n}"


def dynkin_components(base: Sequence[Vector]) -> Tuple[str, ...]:
    """
    Dynkin types of the connected components of a base

    Returns:
        type 문자열 튜플 (예: ("A1", "A1")), (문자, rank) 순으로 정렬
    """
    base = list(base)
    comps = _components(len(base), lambda i, j: i != j and dot(base[i], base[j]) != 0)
    labels = [_classify([base[i] for i in comp]) for comp in comps]
    return tuple(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def format_type(types: Sequence[str]) -> str:
    """("A1", "A1") -> "A1×A1", () -> "1" """
    return "×".join(types) if types else "1"
