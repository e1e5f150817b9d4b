"""Exact scalars, affine functionals and the two infinite wall sentinels.

Rationals are :class:`fractions.Fraction`. Affine functionals are immutable
``λ·x + a`` forms with rational coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DimensionError, InputError

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise InputError(f"rationals are encoded as strings, got {text!r}")
    return rat(text)


class Infinity:
    """One of the two constant walls ``-inf`` / ``+inf``.

    Only the two module-level instances exist. They compare by sign against
    each other and against every finite wall, never by evaluation.
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "+inf" if self.sign > 0 else "-inf"

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign):
    return POS_INF if sign > 0 else NEG_INF


NEG_INF = Infinity(-1)
POS_INF = Infinity(1)


def is_inf(x) -> bool:
    return isinstance(x, Infinity)


def ext_lt(a, b) -> bool:
    """``a < b`` for extended rationals (Fraction or Infinity)."""
    if isinstance(a, Infinity):
        if isinstance(b, Infinity):
            return a.sign < b.sign
        return a.sign < 0
    if isinstance(b, Infinity):
        return b.sign > 0
    return a < b


@dataclass(frozen=True)
class AffineFunc:
    """``coefs · x + const`` on Q^arity."""

    coefs: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coefs", tuple(rat(c) for c in self.coefs))
        object.__setattr__(self, "const", rat(self.const))

    @property
    def arity(self) -> int:
        return len(self.coefs)

    @classmethod
    def constant(cls, arity: int, value=0) -> "AffineFunc":
        return cls((Fraction(0),) * arity, value)

    @classmethod
    def coordinate(cls, arity: int, index: int) -> "AffineFunc":
        coefs = [Fraction(0)] * arity
        coefs[index] = Fraction(1)
        return cls(tuple(coefs), 0)

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return evaluate(self, point)

    def is_constant(self) -> bool:
        return not any(self.coefs)

    @cached_property
    def _scaled(self):
        m = lcm(*(c.denominator for c in self.coefs), self.const.denominator)
        return ([int(c * m) for c in self.coefs], int(self.const * m), m)

    def at_scaled(self, nums, den: int) -> Fraction:
        """Value at the point ``nums / den`` given by integers, ``den > 0``."""
        coefs, const, m = self._scaled
        total = const * den
        for c, x in zip(coefs, nums):
            if c:
                total += c * x
        return Fraction(total, m * den)

    def __add__(self, other: "AffineFunc") -> "AffineFunc":
        _same_arity(self, other)
        return AffineFunc(tuple(a + b for a, b in zip(self.coefs, other.coefs)),
                          self.const + other.const)

    def __sub__(self, other: "AffineFunc") -> "AffineFunc":
        _same_arity(self, other)
        return AffineFunc(tuple(a - b for a, b in zip(self.coefs, other.coefs)),
                          self.const - other.const)

    def __neg__(self) -> "AffineFunc":
        return AffineFunc(tuple(-a for a in self.coefs), -self.const)

    def scale(self, factor) -> "AffineFunc":
        factor = rat(factor)
        return AffineFunc(tuple(a * factor for a in self.coefs), self.const * factor)

    def extend(self, arity: int) -> "AffineFunc":
        """The same functional read on Q^arity, ignoring the extra coordinates."""
        if arity < self.arity:
            raise DimensionError(f"cannot extend arity {self.arity} to {arity}")
        return AffineFunc(self.coefs + (Fraction(0),) * (arity - self.arity), self.const)

    def integer_row(self) -> tuple:
        """Positive rescaling to coprime integers: ``(coefs..., const)``."""
        return integer_row(self.coefs, self.const)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefs):
            if c:
                terms.append(f"{format_rational(c)}*x{i + 1}")
        if self.const or not terms:
            terms.append(format_rational(self.const))
        return " + ".join(terms)


ExtAffine = Union[AffineFunc, Infinity]


def _same_arity(f: AffineFunc, g: AffineFunc):
    if f.arity != g.arity:
        raise DimensionError(f"arity mismatch: {f.arity} vs {g.arity}")


def evaluate(f: AffineFunc, point: Sequence[Fraction]) -> Fraction:
    if len(point) != f.arity:
        raise DimensionError(f"point of length {len(point)} for arity {f.arity}")
    total = f.const
    for c, x in zip(f.coefs, point):
        if c:
            total += c * x
    return total


def eval_ext(f: ExtAffine, point: Sequence[Fraction]):
    if isinstance(f, Infinity):
        return f
    return evaluate(f, point)


def integer_row(coefs: Iterable[Fraction], const: Fraction) -> tuple:
    """Scale ``(coefs, const)`` by a positive rational to coprime integers."""
    values = [rat(c) for c in coefs] + [rat(const)]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def midpoint_rule(lo, hi) -> Fraction:
    """Pick a rational strictly inside ``(lo, hi)``; endpoints may be infinite."""
    lo_inf = isinstance(lo, Infinity)
    hi_inf = isinstance(hi, Infinity)
    if lo_inf and hi_inf:
        return Fraction(0)
    if lo_inf:
        return hi - 1
    if hi_inf:
        return lo + 1
    return (lo + hi) / 2
