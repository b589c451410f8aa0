"""Exact elements of Z[w], w = exp(2 pi i / p).

A CycInt stores p - 1 integer coordinates z_0..z_{p-2} for
sum z_j w^j.  The coordinate of w^(p-1) is always folded away with
1 + w + ... + w^(p-1) = 0, so two values are equal iff their tuples are.
Python ints do not overflow, so character sums of any size stay exact.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np


class MixedCyclotomicOrder(ValueError):
    pass


class NotRational(ValueError):
    pass


def _reduce(p: int, full) -> tuple[int, ...]:
    """Fold a length-p vector (coefficients of w^0..w^(p-1)) into canonical form."""
    top = int(full[p - 1]) if len(full) >= p else 0
    return tuple(int(full[j]) - top for j in range(p - 1))


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def integer(cls, p: int, k: int) -> CycInt:
        return cls(p, (k,) + (0,) * (p - 2))

    @classmethod
    def root(cls, p: int, j: int) -> CycInt:
        """w^j"""
        full = [0] * p
        full[j % p] = 1
        return cls(p, _reduce(p, full))

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> CycInt:
        """sum_j counts[j] * w^j, for an exponent histogram of length p."""
        full = [0] * p
        for j, c in enumerate(counts):
            full[j % p] += int(c)
        return cls(p, _reduce(p, full))

    @classmethod
    def from_exponents(cls, p: int, exponents) -> CycInt:
        """sum over the given exponents of w^e."""
        e = np.asarray(exponents, dtype=np.int64) % p
        return cls.from_exponent_counts(p, np.bincount(e.ravel(), minlength=p))

    def _check(self, other: CycInt) -> None:
        if self.p != other.p:
            raise MixedCyclotomicOrder(f"Z[w_{self.p}] vs Z[w_{other.p}]")

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        self._check(other)
        return other

    def __add__(self, other) -> CycInt:
        other = self._coerce(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CycInt:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> CycInt:
        other = self._coerce(other)
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    full[(i + j) % p] += a * b
        return CycInt(p, _reduce(p, full))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise ValueError("negative powers are not in Z[w]")
        r = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def conjugate(self) -> CycInt:
        """Apply w -> w^(p-1)."""
        p = self.p
        full = [0] * p
        for j, a in enumerate(self.coeffs):
            full[(-j) % p] += a
        return CycInt(p, _reduce(p, full))

    def norm_squared(self) -> CycInt:
        return self * self.conjugate()

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational_integer():
            raise NotRational(str(self))
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def exact_div(self, k: int) -> CycInt | None:
        """self / k when every coordinate is divisible by k, else None."""
        if any(c % k for c in self.coeffs):
            return None
        return CycInt(self.p, tuple(c // k for c in self.coeffs))

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * w**j for j, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}·w")
            else:
                terms.append(f"{c}·w^{j}")
        return " + ".join(terms) if terms else "0"


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_neg(a: CycInt) -> CycInt:
    return -a


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def conjugate(a: CycInt) -> CycInt:
    return a.conjugate()


def norm_squared(a: CycInt) -> CycInt:
    return a.norm_squared()


def char_sum(ctx, u: int) -> CycInt:
    """sum over x in F_q of w^Tr(u x)."""
    e = ctx.elements()
    return CycInt.from_exponents(ctx.p, ctx.vtrace(ctx.vmul(u, e)))
