"""Truncated univariate power series and second-order jets in (u - 1).

Two coefficient backends share one interface:

* ``TruncatedSeries`` keeps exact ``Fraction`` coefficients and is the
  reference for every equality test.
* ``FloatSeries`` keeps a float64 numpy array.  It is only used for large
  orders (thousands of terms), where rational bit growth is prohibitive.

A series of order ``N`` stores ``c_0 .. c_N``.  Binary operations truncate
to the smaller of the two orders and never silently extend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TruncatedSeries",
    "FloatSeries",
    "UJet",
    "series_add",
    "series_mul",
    "series_div",
    "series_sqrt",
    "series_derivative",
    "ujet_mul",
    "ujet_reciprocal",
]


class _Series:
    """Operations common to both coefficient backends."""

    __slots__ = ("_c",)

    # -- backend hooks -------------------------------------------------
    @classmethod
    def _wrap(cls, coeffs):
        raise NotImplementedError

    @classmethod
    def _zeros(cls, order):
        raise NotImplementedError

    @classmethod
    def _coerce_scalar(cls, x):
        raise NotImplementedError

    def _mul_same(self, other, order):
        raise NotImplementedError

    def _div_same(self, other, order):
        raise NotImplementedError

    # -- construction --------------------------------------------------
    @classmethod
    def constant(cls, value, order: int):
        c = cls._zeros(order)
        c[0] = cls._coerce_scalar(value)
        return cls._wrap(c)

    @classmethod
    def one(cls, order: int):
        return cls.constant(1, order)

    @classmethod
    def zero(cls, order: int):
        return cls._wrap(cls._zeros(order))

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int):
        """Series of a polynomial given low-to-high, truncated/padded to ``order``."""
        c = cls._zeros(order)
        for i, a in enumerate(coeffs[: order + 1]):
            c[i] = cls._coerce_scalar(a)
        return cls._wrap(c)

    @classmethod
    def geometric(cls, ratio, order: int):
        """``1 / (1 - ratio z)``."""
        r = cls._coerce_scalar(ratio)
        c = cls._zeros(order)
        acc = cls._coerce_scalar(1)
        for i in range(order + 1):
            c[i] = acc
            acc = acc * r
        return cls._wrap(c)

    # -- basic protocol ------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self):
        return self._c

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._c[n]
        if n < 0:
            raise IndexError("negative coefficient index")
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self._c[n]

    def coeff(self, n: int):
        return self[n]

    def truncate(self, order: int):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return self._wrap(self._c[: order + 1].copy() if isinstance(self._c, np.ndarray)
                          else list(self._c[: order + 1]))

    def _pair(self, other):
        if isinstance(other, _Series):
            if type(other) is not type(self):
                raise TypeError("cannot mix exact and float series")
            n = min(self.order, other.order)
            return self.truncate(n), other.truncate(n), n
        return None

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return self._wrap([-a for a in self._c] if isinstance(self._c, list) else -self._c)

    def __add__(self, other):
        if isinstance(other, UJet):
            return NotImplemented
        p = self._pair(other)
        if p is None:
            c = self._copy()
            c[0] = c[0] + self._coerce_scalar(other)
            return self._wrap(c)
        a, b, _ = p
        if isinstance(a._c, list):
            return self._wrap([x + y for x, y in zip(a._c, b._c)])
        return self._wrap(a._c + b._c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, UJet):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UJet):
            return NotImplemented
        p = self._pair(other)
        if p is None:
            s = self._coerce_scalar(other)
            if isinstance(self._c, list):
                return self._wrap([a * s for a in self._c])
            return self._wrap(self._c * s)
        a, b, n = p
        return a._mul_same(b, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UJet):
            return NotImplemented
        p = self._pair(other)
        if p is None:
            s = self._coerce_scalar(other)
            if s == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self * (self._coerce_scalar(1) / s)
        a, b, n = p
        if b._c[0] == 0:
            raise ZeroDivisionError("divisor series has zero constant term")
        return a._div_same(b, n)

    def __rtruediv__(self, other):
        return self.constant(other, self.order) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = self.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def reciprocal(self):
        return self.one(self.order) / self

    def sqrt(self):
        """Square root of a series with constant term 1 (quadratic Newton iteration)."""
        if self._c[0] != 1:
            raise ValueError("series_sqrt requires constant term 1")
        target = self.order
        s = self.one(0)
        prec = 1  # s is correct modulo z**prec
        while prec <= target:
            prec = min(2 * prec, target + 1)
            m = prec - 1
            s_m = s.padded(m)
            s = (s_m + self.truncate(m) / s_m) * self._coerce_scalar(Fraction(1, 2))
        return s

    def padded(self, order: int):
        """Same coefficients, zero-padded (or truncated) to ``order``."""
        if order <= self.order:
            return self.truncate(order)
        c = self._zeros(order)
        c[: len(self._c)] = self._c
        return self._wrap(c)

    def derivative(self):
        """Formal derivative; the order drops by one (order 0 gives order 0 zero)."""
        if self.order == 0:
            return self.zero(0)
        return self._wrap([self._c[i] * i for i in range(1, len(self._c))]
                          if isinstance(self._c, list)
                          else self._c[1:] * np.arange(1, len(self._c)))

    def divide_by_z(self):
        """``f(z) / z`` for a series with zero constant term; order drops by one."""
        if self._c[0] != 0:
            raise ValueError("constant term must vanish to divide by z")
        if self.order == 0:
            raise ValueError("order-0 series cannot be divided by z")
        return self._wrap(self._c[1:] if isinstance(self._c, list) else self._c[1:].copy())

    def times_z(self, k: int = 1):
        """``z**k * f(z)`` truncated to the same order."""
        c = self._zeros(self.order)
        if k <= self.order:
            c[k:] = self._c[: self.order + 1 - k]
        return self._wrap(c)

    def evaluate(self, x):
        """Horner evaluation of the truncated polynomial at ``x``."""
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def dot_reversed(self, other, n: int):
        """``[z^n] (self * other)`` without forming the product."""
        if n > self.order or n > other.order:
            raise IndexError("coefficient beyond truncation order")
        a = self._c[: n + 1]
        b = other._c[: n + 1]
        if isinstance(a, list):
            return sum(a[i] * b[n - i] for i in range(n + 1))
        return float(np.dot(a, b[::-1]))

    def _copy(self):
        return list(self._c) if isinstance(self._c, list) else self._c.copy()


class TruncatedSeries(_Series):
    """Power series with exact rational coefficients truncated at order ``N``."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Fraction(a) for a in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            c = (c + [Fraction(0)] * (order + 1 - len(c)))[: order + 1]
        if not c:
            raise ValueError("a series needs at least one coefficient")
        self._c = c

    @classmethod
    def _wrap(cls, coeffs):
        obj = cls.__new__(cls)
        obj._c = list(coeffs)
        return obj

    @classmethod
    def _zeros(cls, order):
        return [Fraction(0)] * (order + 1)

    @classmethod
    def _coerce_scalar(cls, x):
        if isinstance(x, (Rational, str)):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        raise TypeError(f"exact series need rational scalars, got {type(x).__name__}")

    def _mul_same(self, other, order):
        a, b = self._c, other._c
        # skip zero coefficients; the kernel-method series are often sparse at the start
        nz_a = [(i, x) for i, x in enumerate(a) if x]
        out = [Fraction(0)] * (order + 1)
        for j, y in enumerate(b):
            if not y:
                continue
            for i, x in nz_a:
                if i + j > order:
                    break
                out[i + j] += x * y
        return self._wrap(out)

    def _div_same(self, other, order):
        a, d = self._c, other._c
        inv0 = 1 / d[0]
        q = [Fraction(0)] * (order + 1)
        nz_d = [(k, x) for k, x in enumerate(d) if x and k]
        for n in range(order + 1):
            acc = a[n]
            for k, x in nz_d:
                if k > n:
                    break
                acc -= x * q[n - k]
            q[n] = acc * inv0
        return self._wrap(q)

    def to_float(self) -> "FloatSeries":
        return FloatSeries(np.array([float(a) for a in self._c]))

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c))

    def __repr__(self):
        shown = ", ".join(str(a) for a in self._c[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order})"


class FloatSeries(_Series):
    """Float64 mirror of :class:`TruncatedSeries` for large truncation orders."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=float)
        if order is not None:
            c = np.concatenate([c, np.zeros(max(0, order + 1 - len(c)))])[: order + 1]
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        self._c = c

    @classmethod
    def _wrap(cls, coeffs):
        obj = cls.__new__(cls)
        obj._c = np.asarray(coeffs, dtype=float)
        return obj

    @classmethod
    def _zeros(cls, order):
        return np.zeros(order + 1)

    @classmethod
    def _coerce_scalar(cls, x):
        return float(x)

    def _mul_same(self, other, order):
        # np.convolve is the direct O(N^2) sum, no FFT
        return self._wrap(np.convolve(self._c, other._c)[: order + 1])

    def _div_same(self, other, order):
        a, d = self._c, other._c
        q = np.zeros(order + 1)
        inv0 = 1.0 / d[0]
        rd = d[1:][::-1]  # reversed tail for the running dot product
        for n in range(order + 1):
            if n:
                q[n] = (a[n] - np.dot(rd[len(rd) - n:], q[:n])) * inv0
            else:
                q[0] = a[0] * inv0
        return self._wrap(q)

    def __repr__(self):
        shown = ", ".join(f"{a:.6g}" for a in self._c[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"FloatSeries([{shown}{more}], order={self.order})"


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_div(a, b):
    return a / b


def series_sqrt(a):
    return a.sqrt()


def series_derivative(a):
    return a.derivative()


@dataclass(frozen=True)
class UJet:
    """A bivariate generating function ``c(z, u)`` modulo ``(u - 1)**3``.

    ``c(z, u) = j0(z) + j1(z) (u-1) + j2(z) (u-1)**2 + O((u-1)**3)``, so
    ``j1 = d/du c`` and ``j2 = (1/2) d^2/du^2 c`` at ``u = 1``.
    """

    j0: _Series
    j1: _Series
    j2: _Series

    def __post_init__(self):
        if not (self.j0.order == self.j1.order == self.j2.order):
            raise ValueError("jet components must share one truncation order")

    @property
    def order(self) -> int:
        return self.j0.order

    @classmethod
    def constant(cls, s: _Series) -> "UJet":
        """Jet of a function that does not depend on ``u``."""
        z = s.zero(s.order)
        return cls(s, z, z)

    @classmethod
    def u(cls, like: _Series) -> "UJet":
        """The jet of ``u`` itself, i.e. ``1 + (u-1)``."""
        one = like.one(like.order)
        return cls(one, one, like.zero(like.order))

    @classmethod
    def u_minus_one(cls, like: _Series) -> "UJet":
        one = like.one(like.order)
        zero = like.zero(like.order)
        return cls(zero, one, zero)

    def _lift(self, other) -> "UJet":
        if isinstance(other, UJet):
            return other
        if isinstance(other, _Series):
            return UJet.constant(other)
        return UJet.constant(self.j0.constant(other, self.order))

    def __add__(self, other):
        o = self._lift(other)
        return UJet(self.j0 + o.j0, self.j1 + o.j1, self.j2 + o.j2)

    __radd__ = __add__

    def __neg__(self):
        return UJet(-self.j0, -self.j1, -self.j2)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (UJet, _Series)):
            return UJet(self.j0 * other, self.j1 * other, self.j2 * other)
        return ujet_mul(self, self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (UJet, _Series)):
            return self * (Fraction(1) / Fraction(other) if isinstance(other, Rational)
                           else 1.0 / other)
        return ujet_mul(self, ujet_reciprocal(self._lift(other)))

    def __rtruediv__(self, other):
        return ujet_mul(self._lift(other), ujet_reciprocal(self))

    def at_one(self) -> _Series:
        """Specialisation ``u = 1``."""
        return self.j0

    def mean(self, n: int):
        """``E[X_n]`` of the marked parameter among objects of size ``n``."""
        return self.j1[n] / self.j0[n]

    def variance(self, n: int):
        t = self.j0[n]
        m = self.j1[n] / t
        return 2 * self.j2[n] / t + m - m * m


def ujet_mul(a: UJet, b: UJet) -> UJet:
    return UJet(
        a.j0 * b.j0,
        a.j0 * b.j1 + a.j1 * b.j0,
        a.j0 * b.j2 + a.j1 * b.j1 + a.j2 * b.j0,
    )


def ujet_reciprocal(a: UJet) -> UJet:
    if a.j0[0] == 0:
        raise ZeroDivisionError("jet reciprocal needs a non-zero constant term in j0")
    r0 = a.j0.reciprocal()
    r1 = -(a.j1 * r0 * r0)
    r2 = -((a.j1 * r1 + a.j2 * r0) * r0)
    return UJet(r0, r1, r2)
