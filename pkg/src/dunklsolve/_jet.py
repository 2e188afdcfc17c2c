"""Second-order forward-mode differentiation.

A :class:`Jet` carries (f, f', f'') with respect to one variable.  It is only
as clever as the analytic solutions need: products, powers and composition
with a scalar function whose own derivatives are known.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Jet:
    v: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    @classmethod
    def variable(cls, x):
        x = np.asarray(x, dtype=float)
        return cls(x, np.ones_like(x), np.zeros_like(x))

    @classmethod
    def const(cls, c, like):
        z = np.zeros_like(np.asarray(like, dtype=float))
        return cls(z + c, z, z)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.v * other.v,
                self.d1 * other.v + self.v * other.d1,
                self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
            )
        return Jet(self.v * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)
        return Jet(self.v + other, self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.d1, -self.d2)

    def compose(self, f, f1, f2):
        """Chain rule for g(self) given g, g', g'' evaluated at self.v."""
        return Jet(f, f1 * self.d1, f2 * self.d1**2 + f1 * self.d2)

    def power(self, p: float):
        """self**p for real p; only valid where self.v > 0 unless p is a non-negative integer."""
        if p == 0:
            return Jet.const(1.0, self.v)
        v = self.v
        if float(p).is_integer() and p > 0:
            k = int(p)
            f = v**k
            f1 = k * v ** (k - 1)
            f2 = k * (k - 1) * v ** (k - 2) if k >= 2 else np.zeros_like(v)
        else:
            f = v**p
            f1 = p * v ** (p - 1)
            f2 = p * (p - 1) * v ** (p - 2)
        return self.compose(f, f1, f2)

    def exp(self):
        e = np.exp(self.v)
        return self.compose(e, e, e)

    def as_tuple(self):
        return self.v, self.d1, self.d2
