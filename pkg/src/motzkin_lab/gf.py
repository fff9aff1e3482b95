"""Closed-form generating functions and coefficient extraction.

All univariate series are derived from the small kernel root ``u1``:

=====  ============================  ======================================
name   series                        counts
=====  ============================  ======================================
W      1 / (1 - z P(1))              walks
B      z u1'(z) / u1(z)              bridges
E      u1(z) / (p_minus z)           excursions
M      (1 - u1(z)) / (1 - z P(1))    meanders
A      1 - 1/B                       arches (bridges touching 0 only at ends)
C      1 / (1 - p_zero z)            chains (flat steps only)
E1     E/C - 1                       excursions starting with a +1 step
T      W / B                         tails (walks never returning to 0)
=====  ============================  ======================================

``numeric=True`` builds float64 series from the normalised step
probabilities, so ``[z^n]`` of a float series is a probability (weighted
count divided by ``P(1)**n``) and stays representable for large ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .paths import PathFamily, Statistic, StatisticPMF
from .series import FloatSeries, TruncatedSeries, UJet
from .steps import StepWeights, u1_series

__all__ = [
    "Model",
    "BaseSeries",
    "ModelGF",
    "model_for",
    "base_series",
    "returns_pmf_series",
    "signs_bridge_pmf_series",
    "signs_walk_pmf_series",
    "height_pmf_series",
    "iter_pmf_series",
    "model_gf",
    "model_jet",
    "gf_pmf",
]


class Model(str, Enum):
    RETURNS_WALK = "returns_walk"
    SIGNS_BRIDGE = "signs_bridge"
    SIGNS_WALK = "signs_walk"
    HEIGHT_WALK = "height_walk"

    @property
    def stat(self) -> Statistic:
        return _PAIRS[self][0]

    @property
    def family(self) -> PathFamily:
        return _PAIRS[self][1]


_PAIRS = {
    Model.RETURNS_WALK: (Statistic.RETURNS, PathFamily.WALK),
    Model.SIGNS_BRIDGE: (Statistic.SIGNS, PathFamily.BRIDGE),
    Model.SIGNS_WALK: (Statistic.SIGNS, PathFamily.WALK),
    Model.HEIGHT_WALK: (Statistic.HEIGHT, PathFamily.WALK),
}
_MODEL_OF = {v: k for k, v in _PAIRS.items()}


def model_for(stat, family=PathFamily.WALK) -> Model:
    key = (Statistic(stat), PathFamily(family))
    try:
        return _MODEL_OF[key]
    except KeyError:
        raise ValueError(
            f"no generating-function model for {key[0].value}/{key[1].value}"
        ) from None


@dataclass(frozen=True)
class BaseSeries:
    weights: StepWeights  # the weights the series were built from (normalised if numeric)
    numeric: bool
    u1: object
    W: object
    B: object
    E: object
    M: object
    A: object
    C: object
    E1: object
    T: object

    @property
    def order(self) -> int:
        return self.W.order

    @property
    def v(self):
        """``(p_plus / p_minus) u1 = 1 / u2``, the height ratio series."""
        w = self.weights
        ratio = w.p_plus / w.p_minus
        return self.u1 * (float(ratio) if self.numeric else ratio)

    def family_total(self, family):
        family = PathFamily(family)
        return {
            PathFamily.WALK: self.W,
            PathFamily.BRIDGE: self.B,
            PathFamily.MEANDER: self.M,
            PathFamily.EXCURSION: self.E,
        }[family]

    def truncate(self, order: int) -> "BaseSeries":
        kw = {k: getattr(self, k).truncate(order)
              for k in ("u1", "W", "B", "E", "M", "A", "C", "E1", "T")}
        return BaseSeries(weights=self.weights, numeric=self.numeric, **kw)


def base_series(w: StepWeights, order: int, numeric: bool = False) -> BaseSeries:
    """All eight univariate series through ``z**order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    ww = w.normalized() if numeric else w
    cls = FloatSeries if numeric else TruncatedSeries
    pm, p0, _ = ww.as_tuple()
    u1 = u1_series(ww, order + 1, numeric=numeric)
    u1_over_z = u1.divide_by_z()  # order N
    B = u1.derivative() / u1_over_z
    E = u1_over_z / (float(pm) if numeric else pm)
    u1 = u1.truncate(order)
    W = cls.geometric(ww.p_one, order)
    C = cls.geometric(p0, order)
    M = (1 - u1) * W
    A = 1 - B.reciprocal()
    E1 = E / C - 1
    T = W / B
    return BaseSeries(weights=ww, numeric=numeric, u1=u1, W=W, B=B, E=E, M=M,
                      A=A, C=C, E1=E1, T=T)


def returns_pmf_series(base: BaseSeries, k: int):
    """Walks with exactly ``k`` returns to zero: ``T A**k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return base.T * base.A ** k


def signs_bridge_pmf_series(base: BaseSeries, k: int):
    """Bridges with exactly ``k`` sign changes: ``2 C E1**(k+1)`` plus chains at ``k = 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    s = 2 * (base.C * base.E1 ** (k + 1))
    return s + base.C if k == 0 else s


def _positive_bridge_coeff(base: BaseSeries, k: int):
    """``[u^k] B_+(z, u) = (E - C) E1**k`` (bridges whose last non-zero node is positive)."""
    if k < 0:
        return base.W.zero(base.order)
    return (base.E - base.C) * base.E1 ** k


def signs_walk_pmf_series(base: BaseSeries, k: int):
    """Walks with exactly ``k`` sign changes.

    A walk is a bridge followed by a tail; a non-empty tail adds one sign
    change exactly when its sign differs from the bridge's last sign.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    tail = base.T
    bridge_part = signs_bridge_pmf_series(base, k) * tail
    shift = _positive_bridge_coeff(base, k - 1) - _positive_bridge_coeff(base, k)
    return bridge_part + (tail - 1) * shift


def height_pmf_series(base: BaseSeries, w: StepWeights | None, h: int):
    """Walks of height exactly ``h``: ``W (1 - v) v**h`` with ``v = (p_plus/p_minus) u1``.

    ``w`` is accepted for interface symmetry; the ratio only depends on the
    weights the base was built from.
    """
    if h < 0:
        raise ValueError("h must be non-negative")
    if w is not None and Fraction(w.p_plus / w.p_minus) != base.weights.p_plus / base.weights.p_minus:
        raise ValueError("weights do not match the base series")
    v = base.v
    return base.W * (1 - v) * v ** h


def iter_pmf_series(model, base: BaseSeries) -> Iterator:
    """Yield the per-``k`` series for ``k = 0, 1, 2, ...`` by incremental multiplication."""
    model = Model(model)
    if model is Model.RETURNS_WALK:
        q = base.T
        while True:
            yield q
            q = q * base.A
    elif model is Model.SIGNS_BRIDGE:
        g = base.C * base.E1
        yield 2 * g + base.C
        while True:
            g = g * base.E1
            yield 2 * g
    elif model is Model.SIGNS_WALK:
        tail = base.T
        tm1 = tail - 1
        g = base.C  # C E1**k
        k = 0
        while True:
            g_next = g * base.E1
            s = 2 * g_next * tail - g_next * tm1
            if k == 0:
                s = s + g * tail
            else:
                s = s + g * tm1
            yield s
            g = g_next
            k += 1
    else:
        v = base.v
        q = base.W * (1 - v)
        while True:
            yield q
            q = q * v


def gf_pmf(model, base: BaseSeries, n: int, tail_tol: float = 1e-13) -> StatisticPMF:
    """Distribution at a single length ``n`` read off the per-``k`` closed forms.

    Exact bases produce every ``k <= n``.  Float bases stop once the
    unassigned mass falls below ``tail_tol`` times the family total.
    """
    model = Model(model)
    if n > base.order:
        raise ValueError(f"n = {n} exceeds the base series order {base.order}")
    b = base.truncate(max(n, 1))
    total = b.family_total(model.family)[n]
    weights = {}
    remaining = total
    it = _coefficients_at(model, b, n)
    for k in range(n + 1):
        c = next(it)
        if c:
            weights[k] = c
        remaining = remaining - c
        if base.numeric and abs(remaining) <= tail_tol * abs(total):
            break
    return StatisticPMF(n=n, stat=model.stat, family=model.family, weights=weights,
                        total=total)


def _coefficients_at(model: Model, b: BaseSeries, n: int) -> Iterator:
    """``[z^n]`` of the per-``k`` series, one product per ``k`` with dot products."""
    if model is Model.SIGNS_WALK:
        tail = b.T
        tm1 = tail - 1
        g = b.C
        r_g = g.dot_reversed(tail, n)
        k = 0
        while True:
            g_next = g * b.E1
            r_next = g_next.dot_reversed(tail, n)
            s_next = g_next.dot_reversed(tm1, n)
            if k == 0:
                yield 2 * r_next + r_g - s_next
            else:
                yield 2 * r_next + g.dot_reversed(tm1, n) - s_next
            g, r_g = g_next, r_next
            k += 1
    else:
        for s in iter_pmf_series(model, b):
            yield s[n]


@dataclass(frozen=True)
class ModelGF:
    model: Model
    base: BaseSeries
    jet: UJet

    def pmf_series(self, k: int):
        return _PMF_SERIES[self.model](self.base, k)

    def pmf(self, n: int) -> StatisticPMF:
        return gf_pmf(self.model, self.base, n)


_PMF_SERIES = {
    Model.RETURNS_WALK: returns_pmf_series,
    Model.SIGNS_BRIDGE: signs_bridge_pmf_series,
    Model.SIGNS_WALK: signs_walk_pmf_series,
    Model.HEIGHT_WALK: lambda base, h: height_pmf_series(base, None, h),
}


def model_gf(model, base: BaseSeries) -> ModelGF:
    model = Model(model)
    return ModelGF(model=model, base=base, jet=model_jet(model, base))


def model_jet(model, base: BaseSeries, order: int | None = None) -> UJet:
    """Jet about ``u = 1`` of the model's bivariate generating function.

    Computed by exact jet arithmetic on the closed form (no finite
    differences): ``j1[n] / total[n]`` is the mean of the statistic and
    ``2 j2[n] / total[n]`` its second factorial moment.
    """
    model = Model(model)
    b = base if order is None else base.truncate(order)
    u = UJet.u(b.W)
    if model is Model.RETURNS_WALK:
        return b.T / (1 - u * b.A)
    if model is Model.HEIGHT_WALK:
        v = b.v
        return (b.W * (1 - v)) / (1 - u * v)
    bridges = b.C * (1 + 2 * b.E1 / (1 - u * b.E1))
    if model is Model.SIGNS_BRIDGE:
        return bridges
    positive = (bridges - b.C) * Fraction(1, 2)
    tail = b.T
    return bridges * tail + positive * (tail - 1) * UJet.u_minus_one(b.W)
