"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class TruncationError(ValueError):
    pass


class PowerSeries:
    """``c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))``.

    Binary operations truncate to the smaller of the two orders, so a result
    never claims more precision than its inputs carry.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], order: int):
        if order < 0:
            raise TruncationError("order must be non-negative")
        c = [Fraction(x) for x in coeffs][: order + 1]
        c.extend([Fraction(0)] * (order + 1 - len(c)))
        self.order = order
        self.coeffs = tuple(c)

    @classmethod
    def polynomial(cls, coeffs: Sequence[Scalar], order: int) -> PowerSeries:
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int) -> PowerSeries:
        return cls([1], order)

    @classmethod
    def z(cls, order: int, power: int = 1) -> PowerSeries:
        return cls([0] * power + [1], order)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise TruncationError(f"coefficient {k} is beyond the truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def __len__(self):
        return self.order + 1

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([a * other for a in self.coeffs], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return PowerSeries([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)], n)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        a = self.coeffs
        out = [Fraction(1) / c0]
        for k in range(1, self.order + 1):
            out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / c0)
        return PowerSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def power(self, alpha: Scalar) -> PowerSeries:
        """``self ** alpha`` for rational ``alpha``; requires constant term 1.

        Uses the recurrence k g_k = sum_{i=1..k} ((alpha + 1) i - k) f_i g_{k-i}.
        """
        if self.coeffs[0] != 1:
            raise ValueError("rational powers need constant term 1")
        alpha = Fraction(alpha)
        f = self.coeffs
        g = [Fraction(1)]
        for k in range(1, self.order + 1):
            s = sum(((alpha + 1) * i - k) * f[i] * g[k - i] for i in range(1, k + 1))
            g.append(s / k)
        return PowerSeries(g, self.order)

    def invsqrt(self) -> PowerSeries:
        return self.power(Fraction(-1, 2))

    def sqrt(self) -> PowerSeries:
        return self.power(Fraction(1, 2))

    def shift(self, k: int) -> PowerSeries:
        """Multiply by z^k (k >= 0); the order grows by k."""
        return PowerSeries([0] * k + list(self.coeffs), self.order + k)

    def integer_coeffs(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(c.numerator)
        return out
