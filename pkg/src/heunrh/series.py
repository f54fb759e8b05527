"""Truncated Laurent series in one variable with complex coefficients.

A series is a window of coefficients [lead, cut): sum_k c[k-lead] * t**k.
All binary operations track the tightest truncation order that remains exact,
so downstream code can ask for a coefficient and get an error instead of a
silently wrong zero.
"""

from __future__ import annotations

import numpy as np


class Series:
    __slots__ = ("lead", "c", "cut")

    def __init__(self, lead: int, coeffs, cut: int):
        c = np.asarray(coeffs, dtype=complex)
        i = 0
        while i < c.size and c[i] == 0:
            i += 1
        if i == c.size:
            self.lead, self.c, self.cut = cut, np.zeros(0, dtype=complex), cut
        else:
            lead += i
            c = c[i:]
            n = max(0, cut - lead)
            self.lead, self.c, self.cut = lead, c[:n].copy(), cut

    @staticmethod
    def const(value, cut: int) -> "Series":
        return Series(0, [complex(value)], cut)

    @staticmethod
    def shifted_var(offset, cut: int) -> "Series":
        """offset + t"""
        return Series(0, [complex(offset), 1.0], cut)

    def _as_series(self, other, cut: int) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.const(other, cut)

    def __add__(self, other):
        other = self._as_series(other, self.cut)
        cut = min(self.cut, other.cut)
        lead = min(self.lead, other.lead, cut)
        n = cut - lead
        c = np.zeros(n, dtype=complex)
        for s in (self, other):
            j0 = s.lead - lead
            m = min(s.c.size, n - j0)
            if m > 0:
                c[j0:j0 + m] += s.c[:m]
        return Series(lead, c, cut)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.lead, -self.c, self.cut)

    def __sub__(self, other):
        return self + (-self._as_series(other, self.cut))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.lead, self.c * complex(other), self.cut)
        if self.c.size == 0 or other.c.size == 0:
            cut = min(self.cut + other.lead, other.cut + self.lead)
            return Series(cut, [], cut)
        lead = self.lead + other.lead
        cut = min(self.cut + other.lead, other.cut + self.lead)
        n = max(0, cut - lead)
        c = np.convolve(self.c, other.c)[:n]
        return Series(lead, c, cut)

    __rmul__ = __mul__

    def inv(self) -> "Series":
        if self.c.size == 0:
            raise ZeroDivisionError("inverse of zero series")
        n = self.cut - self.lead
        a = np.zeros(n, dtype=complex)
        a[:self.c.size] = self.c
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0 / a[0]
        for k in range(1, n):
            out[k] = -np.dot(a[1:k + 1][::-1], out[:k]) / a[0]
        return Series(-self.lead, out, -self.lead + n)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return Series(self.lead, self.c / complex(other), self.cut)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def diff(self) -> "Series":
        k = self.lead + np.arange(self.c.size)
        return Series(self.lead - 1, k * self.c, self.cut - 1)

    def integrate(self) -> "Series":
        """Antiderivative with zero constant; requires no t**-1 term."""
        k = self.lead + np.arange(self.c.size)
        if np.any((k == -1) & (self.c != 0)):
            raise ValueError("cannot integrate a series with a t**-1 term")
        denom = np.where(k == -1, 1.0, k + 1.0)
        return Series(self.lead + 1, self.c / denom, self.cut + 1)

    def exp(self) -> "Series":
        """exp of a series with positive leading order."""
        if self.c.size and self.lead <= 0:
            raise ValueError("exp requires positive leading order")
        out = Series.const(1.0, self.cut)
        term = Series.const(1.0, self.cut)
        n = 1
        while True:
            term = term * self * (1.0 / n)
            if term.c.size == 0 or term.lead >= term.cut:
                break
            out = out + term
            n += 1
        return out

    def coeff(self, k: int) -> complex:
        if k >= self.cut:
            raise ValueError(f"coefficient t**{k} is beyond truncation order {self.cut}")
        i = k - self.lead
        if 0 <= i < self.c.size:
            return complex(self.c[i])
        return 0.0

    def eval(self, t: complex) -> complex:
        """Value of the truncated series at t."""
        t = complex(t)
        acc = 0.0 + 0.0j
        for i in range(self.c.size - 1, -1, -1):
            acc = acc * t + self.c[i]
        return acc * t ** self.lead

    def __repr__(self):
        terms = {self.lead + i: v for i, v in enumerate(self.c) if v != 0}
        return f"Series(cut={self.cut}, {terms})"
