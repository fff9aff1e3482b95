"""Weighted Motzkin step model: jump polynomial, structural constants, kernel roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .series import FloatSeries, TruncatedSeries

__all__ = [
    "StepWeights",
    "StructuralConstants",
    "Surd",
    "new_step_weights",
    "structural_constants",
    "kernel_roots",
    "u1_series",
]

# working precision for the "high precision" float views of irrational constants
MP_DPS = 50


def _as_rational(value, name: str) -> Fraction:
    if isinstance(value, bool):
        raise TypeError(f"{name} must be rational, got bool")
    if isinstance(value, float):
        raise TypeError(f"{name} must be an exact rational (int, Fraction or 'a/b'), got float")
    if isinstance(value, (Rational, str)):
        try:
            return Fraction(value)
        except ValueError:
            raise ValueError(f"{name} is not a rational number: {value!r}") from None
    raise TypeError(f"{name} must be rational, got {type(value).__name__}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


@dataclass(frozen=True)
class Surd:
    """The real number ``a + b*sqrt(r)`` with rational ``a, b`` and ``r >= 0``.

    Normalised so that ``r`` is never a perfect square unless ``b == 0``.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("radicand must be non-negative")
        root = _rational_sqrt(self.r)
        if root is not None:
            object.__setattr__(self, "a", Fraction(self.a) + Fraction(self.b) * root)
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "r", Fraction(0))
        elif self.b == 0:
            object.__setattr__(self, "r", Fraction(0))

    @classmethod
    def sqrt(cls, q) -> "Surd":
        return cls(Fraction(0), Fraction(1), Fraction(q))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def reciprocal(self) -> "Surd":
        if self.is_rational:
            return Surd(1 / self.a)
        # r is not a perfect square, so a^2 != b^2 r
        den = self.a * self.a - self.b * self.b * self.r
        return Surd(self.a / den, -self.b / den, self.r)

    def to_mpf(self, dps: int = MP_DPS):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * mpmath.sqrt(mpmath.mpf(self.r.numerator) / self.r.denominator)

    def __float__(self):
        return float(self.to_mpf())

    def __str__(self):
        if self.is_rational:
            return str(self.a)
        head = f"{self.a} + " if self.a else ""
        coef = "" if self.b == 1 else f"{self.b}*"
        return f"{head}{coef}sqrt({self.r})"


@dataclass(frozen=True)
class StepWeights:
    """Positive rational weights of the steps -1, 0, +1."""

    p_minus: Fraction
    p_zero: Fraction
    p_plus: Fraction

    def __post_init__(self):
        for name in ("p_minus", "p_zero", "p_plus"):
            v = _as_rational(getattr(self, name), name)
            if v <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.p_minus, self.p_zero, self.p_plus)

    def weight(self, step: int) -> Fraction:
        if step not in (-1, 0, 1):
            raise ValueError(f"steps are -1, 0 or +1, got {step!r}")
        return (self.p_minus, self.p_zero, self.p_plus)[step + 1]

    @property
    def p_one(self) -> Fraction:
        """``P(1)``, the total weight of one step."""
        return self.p_minus + self.p_zero + self.p_plus

    @property
    def drift(self) -> Fraction:
        """``P'(1) = p_plus - p_minus``."""
        return self.p_plus - self.p_minus

    def jump(self, u):
        """The jump polynomial ``P(u) = p_minus/u + p_zero + p_plus*u``."""
        return self.p_minus / u + self.p_zero + self.p_plus * u

    def jump_dd(self, u):
        """``P''(u) = 2 p_minus / u**3``."""
        return 2 * self.p_minus / u ** 3

    def normalized(self) -> "StepWeights":
        """Step probabilities ``p_s / P(1)``; they sum to exactly 1."""
        t = self.p_one
        return StepWeights(self.p_minus / t, self.p_zero / t, self.p_plus / t)

    def mirrored(self) -> "StepWeights":
        """Weights of the reflected model (steps -1 and +1 swapped)."""
        return StepWeights(self.p_plus, self.p_zero, self.p_minus)

    def label(self) -> str:
        return ",".join(str(p) for p in self.as_tuple())


def new_step_weights(p_minus, p_zero, p_plus) -> StepWeights:
    """Validated :class:`StepWeights`; raises ``ValueError`` naming a non-positive weight."""
    return StepWeights(p_minus, p_zero, p_plus)


@dataclass(frozen=True)
class StructuralConstants:
    tau: float
    rho: float
    rho_one: Fraction
    drift: Fraction
    big_c: float
    p_one: Fraction
    p_dd_one: Fraction
    p_tau: float
    p_dd_tau: float
    # exact forms of the irrational constants
    tau_exact: Surd
    rho_exact: Surd
    p_tau_exact: Surd
    p_dd_tau_exact: Surd
    big_c_mp: mpmath.mpf

    @property
    def zero_drift(self) -> bool:
        return self.drift == 0


def structural_constants(w: StepWeights) -> StructuralConstants:
    """Structural constant ``tau``, radius ``rho`` and the derived constants of ``w``."""
    pm, p0, pp = w.as_tuple()
    tau = Surd.sqrt(pm / pp)
    p_tau = Surd(p0, Fraction(2), pm * pp)
    rho = p_tau.reciprocal()
    # P''(tau) = 2 p_minus / tau^3 = 2 p_plus sqrt(p_plus / p_minus)
    p_dd_tau = Surd(Fraction(0), 2 * pp, pp / pm)
    with mpmath.workdps(MP_DPS):
        big_c = mpmath.sqrt(2 * p_tau.to_mpf() / p_dd_tau.to_mpf())
    return StructuralConstants(
        tau=float(tau),
        rho=float(rho),
        rho_one=1 / w.p_one,
        drift=w.drift,
        big_c=float(big_c),
        p_one=w.p_one,
        p_dd_one=2 * pm,
        p_tau=float(p_tau),
        p_dd_tau=float(p_dd_tau),
        tau_exact=tau,
        rho_exact=rho,
        p_tau_exact=p_tau,
        p_dd_tau_exact=p_dd_tau,
        big_c_mp=big_c,
    )


def kernel_roots(w: StepWeights, z) -> tuple[float, float]:
    """Small and large root in ``u`` of ``1 - z P(u) = 0`` for real ``0 < z < rho``."""
    rho = structural_constants(w).rho
    zf = float(z)
    if not 0 < zf < rho:
        raise ValueError(f"z must lie in (0, rho) = (0, {rho!r}), got {z!r}")
    pm, p0, pp = (float(p) for p in w.as_tuple())
    b = 1 - p0 * zf
    disc = b * b - 4 * pm * pp * zf * zf
    root = math.sqrt(max(disc, 0.0))
    u2 = (b + root) / (2 * pp * zf)
    # cancellation-free form of (b - root) / (2 pp z)
    u1 = 2 * pm * zf / (b + root)
    return u1, u2


def u1_series(w: StepWeights, order: int, numeric: bool = False):
    """Series of the small kernel root ``u1(z)`` through ``z**order``.

    Uses ``u1 = (1 - p0 z - sqrt((1 - p0 z)**2 - 4 p_minus p_plus z**2)) / (2 p_plus z)``.
    With ``numeric=True`` the coefficients are float64 (same weights, no rescaling).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    pm, p0, pp = w.as_tuple()
    cls = FloatSeries if numeric else TruncatedSeries
    n1 = order + 1
    disc = cls.polynomial([1, -2 * p0, p0 * p0 - 4 * pm * pp], n1)
    num = cls.polynomial([1, -p0], n1) - disc.sqrt()
    return num.divide_by_z() / (2 * pp)
