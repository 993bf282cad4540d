"""Numerical polynomials: rational-coefficient polynomials in one variable m
that take integer values at integers.

The internal representation is the monomial basis with exact ``Fraction``
coefficients; the binomial basis C(m, i) is available as a constructor and a
converter, since polynomials built from lattice data are naturally integer
combinations of binomials. Sign analysis over the positive integers is exact:
beyond the Cauchy root bound the sign of a polynomial equals the sign of its
leading coefficient, so scans terminate with certainty.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, lcm
from typing import Iterable, Sequence


@dataclass(frozen=True)
class NumericalPolynomial:
    """Polynomial in m, monomial coefficients lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for c in self.coeffs:
            if isinstance(c, float):
                raise TypeError("exact coefficients required, not float")
        cs = [c if type(c) is Fraction else Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs) -> "NumericalPolynomial":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, value) -> "NumericalPolynomial":
        return cls((Fraction(value),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (minus infinity)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def evaluate(self, m) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    def __add__(self, other: "NumericalPolynomial") -> "NumericalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return NumericalPolynomial(tuple(out))

    def __neg__(self) -> "NumericalPolynomial":
        return NumericalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "NumericalPolynomial") -> "NumericalPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NumericalPolynomial):
            if self.is_zero or other.is_zero:
                return NumericalPolynomial(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return NumericalPolynomial(tuple(out))
        if isinstance(other, float):
            raise TypeError("exact scalar required, not float")
        return NumericalPolynomial(tuple(Fraction(other) * c for c in self.coeffs))

    __rmul__ = __mul__


ZERO = NumericalPolynomial(())
ONE = NumericalPolynomial.of(1)


@lru_cache(maxsize=None)
def binomial_basis(i: int) -> NumericalPolynomial:
    """The polynomial m -> C(m, i) = m(m-1)...(m-i+1) / i!."""
    if i < 0:
        raise ValueError("binomial index must be nonnegative")
    poly = ONE
    for j in range(i):
        poly = poly * NumericalPolynomial.of(Fraction(-j, j + 1), Fraction(1, j + 1))
    return poly


def degree_leading(p: NumericalPolynomial):
    """(degree, leading coefficient); (None, None) for the zero polynomial."""
    if p.is_zero:
        return None, None
    return p.degree, p.leading


def binomial_coefficients(p: NumericalPolynomial) -> tuple[Fraction, ...]:
    """Coefficients b_i with p = sum b_i C(m, i), via finite differences at 0."""
    out = []
    current = p
    for i in range(len(p.coeffs)):
        out.append(current.evaluate(0))
        # forward difference: q(m) = current(m + 1) - current(m)
        shifted = _shift_by_one(current)
        current = shifted - current
    return tuple(out)


def _shift_by_one(p: NumericalPolynomial) -> NumericalPolynomial:
    out = ZERO
    basis = ONE
    factor = NumericalPolynomial.of(1, 1)
    for c in p.coeffs:
        out = out + c * basis
        basis = basis * factor
    return out


def from_binomial_coefficients(bs: Iterable) -> NumericalPolynomial:
    out = ZERO
    for i, b in enumerate(bs):
        out = out + Fraction(b) * binomial_basis(i)
    return out


def is_integer_valued(p: NumericalPolynomial) -> bool:
    """True iff p maps every integer to an integer.

    Equivalent to all binomial-basis coefficients being integers, which is the
    integrality of the finite-difference table at 0.
    """
    return all(b.denominator == 1 for b in binomial_coefficients(p))


def cauchy_bound(p: NumericalPolynomial) -> int:
    """Integer B >= 1 such that every real root of p is at most B."""
    if p.is_zero or p.degree == 0:
        return 1
    lead = abs(p.leading)
    top = max(abs(c) for c in p.coeffs[:-1])
    return max(1, ceil(1 + top / lead))

def _int_scaled(p: NumericalPolynomial) -> list[int]:
    """Integer coefficient list with the same signs as p at every point."""
    if p.is_zero:
        return []
    scale = lcm(*(c.denominator for c in p.coeffs))
    return [int(c * scale) for c in p.coeffs]


def _eval_int(cs: Sequence[int], m: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * m + c
    return acc


def positivity_threshold(p: NumericalPolynomial) -> int | None:
    """Least m0 >= 1 with p(m) > 0 for all m >= m0, or None if there is none.

    A threshold exists exactly when the leading coefficient is positive.
    """
    if p.is_zero or p.leading <= 0:
        return None
    bound = cauchy_bound(p)
    scaled = _int_scaled(p)
    threshold = 1
    for m in range(1, bound + 1):
        if _eval_int(scaled, m) <= 0:
            threshold = m + 1
    return threshold


def exists_common_positive(ps: Sequence[NumericalPolynomial]) -> int | None:
    """Minimal m >= 1 with p(m) > 0 for every p, or None if no m works.

    Exact: scan up to the largest Cauchy bound, beyond which each polynomial
    keeps the sign of its leading coefficient.
    """
    if not ps:
        raise ValueError("need at least one polynomial")
    bound = max(cauchy_bound(p) for p in ps)
    scaled = [_int_scaled(p) for p in ps]
    for m in range(1, bound + 1):
        if all(cs and _eval_int(cs, m) > 0 for cs in scaled):
            return m
    if all(p.leading > 0 for p in ps):
        witness = bound + 1
        assert all(_eval_int(cs, witness) > 0 for cs in scaled)
        return witness
    return None
