"""Exact integer matrix arithmetic and spectral analysis.

All decisions here are exact. Characteristic polynomials come from the
division-free Berkowitz recursion, determinants from fraction-free Bareiss
elimination, inverses from the adjugate (legitimate because callers only
invert matrices of determinant +-1), and spectral radii from Sturm isolation
on the characteristic polynomial of the Kronecker square, whose real roots
include every squared eigenvalue modulus.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .errors import NotInvertibleOverIntegers, NotUnipotent
from .intpoly import (
    IntPolynomial,
    RationalInterval,
    largest_real_root_interval,
    sqrt_enclosure,
)


@dataclass(frozen=True)
class IntegerMatrix:
    """Square matrix of arbitrary-precision integers, immutable."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            for c in row:
                if not isinstance(c, int):
                    raise TypeError(f"integer entry expected, got {type(c).__name__}")
        rows = tuple(tuple(int(c) for c in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for row in self.rows for c in row)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_size(other)
        return IntegerMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_size(other)
        return IntegerMatrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(tuple(-a for a in row) for row in self.rows))

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_size(other)
        n = self.size
        cols = tuple(zip(*other.rows))
        return IntegerMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def _check_size(self, other: "IntegerMatrix") -> None:
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def column_action(self, coords: Sequence) -> tuple:
        """Matrix times column vector; accepts int or Fraction entries."""
        if len(coords) != self.size:
            raise ValueError(f"vector length {len(coords)} does not match size {self.size}")
        return tuple(sum(a * c for a, c in zip(row, coords)) for row in self.rows)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.rows)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination; all intermediates are integers."""
        n = self.size
        m = [list(row) for row in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def minor(self, i: int, j: int) -> int:
        n = self.size
        if n == 1:
            return 1
        sub = tuple(
            tuple(self.rows[r][c] for c in range(n) if c != j) for r in range(n) if r != i
        )
        return IntegerMatrix(sub).determinant()

    def adjugate(self) -> "IntegerMatrix":
        n = self.size
        return IntegerMatrix(
            tuple(
                tuple((-1) ** (i + j) * self.minor(j, i) for j in range(n))
                for i in range(n)
            )
        )

    def inverse_unimodular(self) -> "IntegerMatrix":
        """Exact integer inverse; requires determinant +-1."""
        d = self.determinant()
        if d not in (1, -1):
            raise NotInvertibleOverIntegers(f"determinant is {d}, not +-1")
        adj = self.adjugate()
        return adj if d == 1 else -adj


def mat_pow(matrix: IntegerMatrix, exponent: int) -> IntegerMatrix:
    """Exact matrix power by repeated squaring; negative powers via adjugate."""
    if exponent < 0:
        base = matrix.inverse_unimodular()
        exponent = -exponent
    else:
        base = matrix
    result = IntegerMatrix.identity(matrix.size)
    while exponent:
        if exponent & 1:
            result = result * base
        base_needed = exponent > 1
        if base_needed:
            base = base * base
        exponent >>= 1
    return result


def kronecker(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    na, nb = a.size, b.size
    rows = []
    for i in range(na):
        for p in range(nb):
            rows.append(
                tuple(a.rows[i][j] * b.rows[p][q] for j in range(na) for q in range(nb))
            )
    return IntegerMatrix(tuple(rows))


def char_poly(matrix: IntegerMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - M) by the Berkowitz recursion.

    Division-free: every intermediate value is an integer.
    """
    n = matrix.size
    a = matrix.rows
    # coefficients of det(xI - leading principal submatrix), highest first
    coeffs = [1]
    for t in range(n):
        row = a[t][:t]
        col = [a[i][t] for i in range(t)]
        diag = a[t][t]
        # first column of the Toeplitz transform:
        # 1, -a_tt, -(R S), -(R A S), ..., -(R A^(t-1) S)
        q = [1, -diag]
        vec = col
        for _ in range(t):
            q.append(-sum(r * v for r, v in zip(row, vec)))
            vec = [sum(a[i][j] * vec[j] for j in range(t)) for i in range(t)]
        new = [0] * (t + 2)
        for i in range(t + 2):
            acc = 0
            for j in range(max(0, i - len(q) + 1), min(i, t) + 1):
                acc += q[i - j] * coeffs[j]
            new[i] = acc
        coeffs = new
    return IntPolynomial(tuple(reversed(coeffs)))


def _totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _root_of_unity_order_lcm(rank: int) -> int:
    """lcm of all orders m with totient(m) <= rank.

    Any eigenvalue of an integer rank x rank matrix that is a root of unity
    has order in that set, since its cyclotomic minimal polynomial divides
    the characteristic polynomial. totient(m) >= sqrt(m/2) bounds the scan.
    """
    bound = 2 * rank * rank + 1
    orders = [m for m in range(1, bound + 1) if _totient(m) <= rank]
    return lcm(*orders)


def _divisors(n: int) -> list[int]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return divs


def _is_unipotent(matrix: IntegerMatrix) -> bool:
    n = matrix.size
    return mat_pow(matrix - IntegerMatrix.identity(n), n).is_zero


@lru_cache(maxsize=4096)
def quasi_unipotence(matrix: IntegerMatrix) -> int | None:
    """Minimal q >= 1 with matrix^q unipotent, or None when no power is.

    Exact test: with L the lcm of all root-of-unity orders available at this
    rank, the matrix is quasi-unipotent iff matrix^L is unipotent, and the
    minimal q is then the smallest divisor d of L with matrix^d unipotent.
    Requires determinant +-1.
    """
    d = matrix.determinant()
    if d not in (1, -1):
        raise NotInvertibleOverIntegers(f"determinant is {d}, not +-1")
    order_lcm = _root_of_unity_order_lcm(matrix.size)
    if not _is_unipotent(mat_pow(matrix, order_lcm)):
        return None
    for q in _divisors(order_lcm):
        if _is_unipotent(mat_pow(matrix, q)):
            return q
    raise AssertionError("unreachable: the full power is unipotent")


def nilpotency_index(matrix: IntegerMatrix) -> int:
    """Least k >= 0 with (M - I)^(k+1) = 0; M must be unipotent."""
    n = matrix.size
    nil = matrix - IntegerMatrix.identity(n)
    power = IntegerMatrix.identity(n)
    for k in range(n):
        power = power * nil
        if power.is_zero:
            return k
    raise NotUnipotent("matrix is not unipotent")


def spectral_radius(matrix: IntegerMatrix, eps: Fraction) -> RationalInterval:
    """Exact rational interval of width <= eps containing the spectral radius.

    The characteristic polynomial of the Kronecker square M (x) M has the
    pairwise eigenvalue products as roots, so its largest real root is the
    squared spectral radius; Sturm isolation plus an integer-square-root
    enclosure then brackets the radius itself.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    squared = char_poly(kronecker(matrix, matrix))
    width = eps * eps / 4 if eps < 1 else Fraction(1, 4)
    slack = max(8, int(8 / eps) + 1)
    while True:
        iv = largest_real_root_interval(squared, width)
        clipped = RationalInterval(max(iv.lo, Fraction(0)), max(iv.hi, Fraction(0)))
        enclosure = sqrt_enclosure(clipped, slack)
        if enclosure.width <= eps:
            return enclosure
        width /= 16
        slack *= 4
