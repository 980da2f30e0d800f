"""Exact angles stored as rational multiples of pi."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational


@total_ordering
class AnglePi:
    """The angle ``(numerator / denominator) * pi``, kept in lowest terms.

    Arithmetic (addition, subtraction, negation, integer/rational scaling)
    and comparison are exact. :meth:`radians` is the only lossy operation.
    """

    __slots__ = ("_q",)

    def __init__(self, numerator: int | Fraction | str = 0, denominator: int = 1):
        q = Fraction(numerator) / Fraction(denominator)
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):
        raise AttributeError("AnglePi is immutable")

    @classmethod
    def of(cls, value: AnglePi | Fraction | int | str) -> AnglePi:
        if isinstance(value, AnglePi):
            return value
        return cls(value)

    @property
    def numerator(self) -> int:
        return self._q.numerator

    @property
    def denominator(self) -> int:
        return self._q.denominator

    @property
    def multiple_of_pi(self) -> Fraction:
        return self._q

    @property
    def turns(self) -> Fraction:
        """The angle divided by 2*pi."""
        return self._q / 2

    def radians(self) -> float:
        return float(self._q) * math.pi

    def mod_2pi(self) -> AnglePi:
        """Representative in [0, 2*pi)."""
        q = self._q % 2
        return AnglePi(q)

    def is_multiple_of_2pi(self) -> bool:
        return (self._q / 2).denominator == 1

    def is_odd_multiple_of_2pi(self) -> bool:
        t = self._q / 2
        return t.denominator == 1 and t.numerator % 2 == 1

    def exp_i(self) -> complex:
        """exp(i * angle), with exact values at multiples of pi/2."""
        r = self._q % 2
        exact = {Fraction(0): 1 + 0j, Fraction(1, 2): 1j, Fraction(1): -1 + 0j, Fraction(3, 2): -1j}
        if r in exact:
            return exact[r]
        return complex(math.cos(float(r) * math.pi), math.sin(float(r) * math.pi))

    def __add__(self, other):
        if isinstance(other, AnglePi):
            return AnglePi(self._q + other._q)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, AnglePi):
            return AnglePi(self._q - other._q)
        return NotImplemented

    def __neg__(self):
        return AnglePi(-self._q)

    def __mul__(self, k):
        if isinstance(k, (int, Rational)):
            return AnglePi(self._q * Fraction(k))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (int, Rational)):
            return AnglePi(self._q / Fraction(k))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, AnglePi):
            return self._q == other._q
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, AnglePi):
            return self._q < other._q
        return NotImplemented

    def __hash__(self):
        return hash(("AnglePi", self._q))

    def __repr__(self):
        return f"AnglePi({self._q.numerator}, {self._q.denominator})"

    def __str__(self):
        if self._q.denominator == 1:
            return f"{self._q.numerator}pi"
        return f"{self._q.numerator}pi/{self._q.denominator}"


ZERO = AnglePi(0)
PI = AnglePi(1)
TWO_PI = AnglePi(2)
