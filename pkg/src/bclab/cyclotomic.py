"""Exact arithmetic with roots of unity.

A root of unity is carried as its rational angle q in [0, 1), meaning the
value exp(2*pi*i*q).  Integer combinations of roots of unity are compared
exactly by reducing them in Z[x]/Phi_N(x), which is isomorphic to Z[zeta_N];
two combinations are equal as complex numbers iff their reduced coefficient
vectors agree.  No floats enter until a caller explicitly asks for one.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable


def normalize_angle(q: Fraction) -> Fraction:
    """Canonical representative of q mod 1, in [0, 1)."""
    return q % 1


def angle_to_complex(q: Fraction) -> complex:
    return cmath.exp(2j * cmath.pi * (q.numerator / q.denominator))


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors of nonpositive integer {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, lowest degree first.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coeff, rem = divmod(num[shift + len(den) - 1], den[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[shift] = coeff
        for i, c in enumerate(den):
            num[shift + i] -= coeff * c
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class RootContext:
    """Reduction tables for sums of N-th roots of unity.

    vector() maps a multiset {(angle, multiplicity)} to the coefficient tuple
    of its image in Z[x]/Phi_N(x).  Vectors from the same context compare
    exactly; contexts at different levels embed via a common multiple of N.
    """

    def __init__(self, level: int):
        if level < 1:
            raise ValueError(f"context level must be positive, got {level}")
        self.level = level
        phi_n = cyclotomic_polynomial(level)
        self.degree = len(phi_n) - 1
        # x^a mod Phi_N for a = 0..N-1, built by repeated multiplication by x.
        table: list[tuple[int, ...]] = []
        cur = [0] * self.degree
        if self.degree > 0:
            cur[0] = 1
        table.append(tuple(cur))
        for _ in range(1, level):
            nxt = [0] + cur[:-1] if self.degree > 0 else []
            if self.degree > 0 and cur[-1]:
                top = cur[-1]
                for i in range(self.degree):
                    nxt[i] -= top * phi_n[i]
            cur = nxt
            table.append(tuple(cur))
        self._powers = table

    def exponent_of(self, angle: Fraction) -> int:
        angle = normalize_angle(angle)
        if self.level % angle.denominator != 0:
            raise ValueError(
                f"angle {angle} does not live at cyclotomic level {self.level}"
            )
        return angle.numerator * (self.level // angle.denominator)

    def vector(self, terms: Iterable[tuple[Fraction, int]]) -> tuple[int, ...]:
        acc = [0] * self.degree
        for angle, mult in terms:
            if mult == 0:
                continue
            row = self._powers[self.exponent_of(angle)]
            for i, c in enumerate(row):
                acc[i] += mult * c
        return tuple(acc)

    def zero(self) -> tuple[int, ...]:
        return tuple([0] * self.degree)


def common_context(angles: Iterable[Fraction]) -> RootContext:
    level = 1
    for q in angles:
        level = level * q.denominator // gcd(level, q.denominator)
    return RootContext(level)


def sums_equal(left: Iterable[tuple[Fraction, int]],
               right: Iterable[tuple[Fraction, int]]) -> bool:
    """Exact equality of two integer combinations of roots of unity."""
    left = list(left)
    right = list(right)
    ctx = common_context([a for a, _ in left] + [a for a, _ in right])
    return ctx.vector(left) == ctx.vector(right)
