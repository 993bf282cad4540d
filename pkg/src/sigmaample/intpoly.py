"""Exact univariate polynomials over the integers, with real-root isolation.

Coefficient lists are dense and stored lowest degree first. Everything in
here is exact: integer polynomials carry plain ``int`` coefficients, and the
Sturm-chain machinery works on ``Fraction`` lists so no floating point enters
any decision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; trailing zero coefficients are stripped."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = list(self.coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {type(c).__name__}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def format(self, var: str = "x") -> str:
        """Canonical text like ``x^2-14x+1`` (descending powers, no spaces)."""
        if self.is_zero:
            return "0"
        parts = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            a = abs(c)
            if power == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + var + ("" if power == 1 else f"^{power}")
            parts.append(sign + body)
        return "".join(parts)


# ---------------------------------------------------------------------------
# Fraction-list helpers for Sturm chains.  Lists are lowest degree first and
# kept stripped of trailing zeros.


def _strip(cs: list[Fraction]) -> list[Fraction]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _derivative(cs: Sequence[Fraction]) -> list[Fraction]:
    return [Fraction(i) * cs[i] for i in range(1, len(cs))]


def _eval(cs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    """Quotient and remainder over the rationals; den must be nonzero."""
    num = list(num)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        factor = num[shift + len(den) - 1] / lead
        if factor:
            q[shift] = factor
            for i, d in enumerate(den):
                num[shift + i] -= factor * d
    return _strip(q), _strip(num[: len(den) - 1])


def _monic(cs: Sequence[Fraction]) -> list[Fraction]:
    lead = cs[-1]
    return [c / lead for c in cs]


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a) if a else a


def square_free_part(p: IntPolynomial) -> IntPolynomial:
    """p divided by gcd(p, p'), returned with integer primitive coefficients."""
    if p.is_zero:
        raise ValueError("zero polynomial has no square-free part")
    cs = [Fraction(c) for c in p.coeffs]
    g = _gcd(cs, _derivative(cs))
    q, r = _divmod(cs, g)
    assert not r
    denom = lcm(*(c.denominator for c in q)) if q else 1
    ints = [int(c * denom) for c in q]
    content = 0
    for c in ints:
        content = gcd(content, c)
    if content > 1:
        ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(tuple(ints))


def cauchy_root_bound(coeffs: Sequence) -> Fraction:
    """1 + max|a_i| / |a_lead|; every root modulus is at most this."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has unbounded roots")
    if len(cs) == 1:
        return Fraction(0)
    lead = abs(cs[-1])
    return 1 + max(abs(c) for c in cs[:-1]) / lead


def sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    """Sturm chain of the square-free part of p."""
    sqf = square_free_part(p)
    chain = [[Fraction(c) for c in sqf.coeffs]]
    d = _derivative(chain[0])
    if d:
        chain.append(d)
        while True:
            _, r = _divmod(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
    return chain


def sign_variations(chain: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = []
    for cs in chain:
        v = _eval(cs, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(chain, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def largest_real_root_interval(p: IntPolynomial, width: Fraction) -> RationalInterval:
    """Interval of width <= ``width`` around the largest real root of p.

    Raises ValueError if p has no real root.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    chain = sturm_chain(p)
    bound = cauchy_root_bound(p.coeffs)
    lo, hi = -bound - 1, bound + 1
    if count_real_roots(chain, lo, hi) == 0:
        raise ValueError("polynomial has no real roots")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if count_real_roots(chain, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


def sqrt_enclosure(interval: RationalInterval, slack_denom: int) -> RationalInterval:
    """Rational enclosure of the square roots of a nonnegative interval.

    Endpoint error beyond the exact square roots is at most 2/slack_denom.
    """
    if interval.lo < 0:
        raise ValueError("interval must be nonnegative")
    m = slack_denom
    a, b = interval.lo, interval.hi
    lo = Fraction(isqrt((a.numerator * m * m) // a.denominator), m)
    hi_scaled = b.numerator * m * m
    hi_int = -(-hi_scaled // b.denominator)  # ceil
    hi = Fraction(isqrt(hi_int) + 1, m)
    return RationalInterval(lo, hi)
