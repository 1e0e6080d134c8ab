"""
Exact rational helpers
Fraction 벡터 연산, sympy 기반 정수 격자(Smith normal form) 계산, "p/q" 직렬화
"""
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple

from sympy import Matrix, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.matrices.normalforms import invariant_factors

Vector = Tuple[Fraction, ...]
RationalMatrix = Tuple[Vector, ...]


def vec(values: Iterable) -> Vector:
    """Build an exact vector from ints, Fractions or "p/q" strings"""
    return tuple(Fraction(v) for v in values)


def zero(dim: int) -> Vector:
    return tuple(Fraction(0) for _ in range(dim))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


def is_integral_vector(x: Sequence[Fraction]) -> bool:
    return all(is_integral(a) for a in x)


def frac_part(x: Sequence[Fraction]) -> Vector:
    """Coordinatewise fractional part in [0, 1)"""
    return tuple(a - (a.numerator // a.denominator) for a in x)


def denominator_lcm(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def fmt_rational(value) -> str:
    """Render a rational as "p/q" (integers as "p")"""
    return str(Fraction(value))


def fmt_vector(x: Sequence[Fraction]) -> List[str]:
    return [fmt_rational(a) for a in x]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{text}' is not a rational number (expected 'p' or 'p/q')") from e


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------

def to_domain(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    """Rational matrix as a sympy DomainMatrix over QQ"""
    entries = [[QQ(Fraction(a).numerator, Fraction(a).denominator) for a in row] for row in rows]
    return DomainMatrix(entries, (len(entries), len(entries[0]) if entries else 0), QQ)


def from_sympy(m: Matrix) -> RationalMatrix:
    return tuple(
        tuple(Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(m.cols))
        for i in range(m.rows)
    )


def inverse(rows: Sequence[Sequence[Fraction]]) -> RationalMatrix:
    """Exact inverse of a square rational matrix"""
    m = to_domain(rows)
    if m.det() == 0:
        raise ValueError("Matrix is singular")
    return from_sympy(m.inv().to_Matrix())


def mat_vec(rows: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, x) for row in rows)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> RationalMatrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(rows: Sequence[Sequence[Fraction]]) -> RationalMatrix:
    return tuple(tuple(col) for col in zip(*rows))


def identity(dim: int) -> RationalMatrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim)) for i in range(dim)
    )


def gram(vectors: Sequence[Vector]) -> RationalMatrix:
    return tuple(tuple(dot(u, v) for v in vectors) for u in vectors)


def coefficients(basis: Sequence[Vector], x: Vector, gram_inverse: RationalMatrix = None) -> Vector:
    """
    Coefficients of the orthogonal projection of x onto span(basis)

    x 가 span 안에 있으면 정확한 전개 계수와 같습니다.
    """
    if not basis:
        return ()
    g_inv = gram_inverse if gram_inverse is not None else inverse(gram(basis))
    return mat_vec(g_inv, tuple(dot(b, x) for b in basis))


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------

def integer_invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors (Smith normal form diagonal) of an integer matrix"""
    if not rows or not rows[0]:
        return []
    return list(_invariant_factors(tuple(tuple(int(a) for a in row) for row in rows)))


@lru_cache(maxsize=4096)
def _invariant_factors(rows: Tuple[Tuple[int, ...], ...]) -> Tuple[int, ...]:
    return tuple(abs(int(f)) for f in invariant_factors(Matrix([list(row) for row in rows]), domain=ZZ))


def torsion_order(rows: Sequence[Sequence[int]]) -> int:
    """
    Product of the nonzero invariant factors

    열(column) 벡터들이 생성하는 격자 L 에 대해 (span(L) ∩ Z^m) / L 의 위수입니다.
    """
    factors = [f for f in integer_invariant_factors(rows) if f != 0]
    return reduce(lambda a, b: a * b, factors, 1)


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    return int(Matrix([[int(a) for a in row] for row in rows]).det())


def vector_gcd(values: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(v)) for v in values), 0)
