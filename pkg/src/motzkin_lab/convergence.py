"""Distances between exact finite-``n`` distributions and their predicted limit laws."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .gf import Model, base_series, gf_pmf, model_for, model_jet
from .laws import Geometric, HalfNormal, LimitLaw, local_law_density, predict_law
from .parallel import pmap
from .paths import PathFamily, StatisticPMF
from .steps import StepWeights

__all__ = [
    "kolmogorov_distance",
    "tv_distance_geometric",
    "MomentRow",
    "moment_fit",
    "local_law_residual",
    "rate_estimate",
    "ConvergenceRow",
    "ConvergenceReport",
    "convergence_report",
    "CSV_VERSION_LINE",
    "CSV_COLUMNS",
]

CSV_VERSION_LINE = "# motzkin-lab v1"
CSV_COLUMNS = ["model", "weights", "n", "K", "TV", "mean_ratio", "var_ratio", "local_residual"]


def _probs(pmf) -> np.ndarray:
    if isinstance(pmf, StatisticPMF):
        if not pmf.weights:
            raise ValueError("empty distribution")
        return pmf.as_array()
    p = np.asarray(pmf, dtype=float)
    if p.size == 0:
        raise ValueError("empty distribution")
    return p / p.sum()


def kolmogorov_distance(pmf, law: LimitLaw, n: int | None = None,
                        convention: str = "mid") -> float:
    """Sup distance between the CDF of the scaled statistic and the law's CDF.

    For continuous laws the comparison point of atom ``k`` is the scaled
    mid-atom ``k + 1/2`` (``convention="mid"``) or ``k`` itself with both
    one-sided limits (``convention="raw"``).  Discrete laws are compared on
    the integers.
    """
    probs = _probs(pmf)
    if n is None:
        if not isinstance(pmf, StatisticPMF):
            raise ValueError("n is required for a bare probability vector")
        n = pmf.n
    F = np.minimum(np.cumsum(probs), 1.0)
    ks = np.arange(len(probs))
    if law.discrete:
        G = np.array([law.cdf(k) for k in ks])
        return float(np.clip(np.max(np.abs(F - G)), 0.0, 1.0))
    sc = law.scaling
    if convention == "mid":
        x = sc.transform(ks + 0.5, max(n, 1))
        G = np.array([law.cdf(t) for t in x])
        d = np.max(np.abs(F - G))
    elif convention == "raw":
        x = sc.transform(ks.astype(float), max(n, 1))
        G = np.array([law.cdf(t) for t in x])
        F_left = np.concatenate([[0.0], F[:-1]])
        d = max(np.max(np.abs(F - G)), np.max(np.abs(F_left - G)))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return float(np.clip(d, 0.0, 1.0))


def tv_distance_geometric(pmf, p) -> float:
    """Total variation distance to ``Geom(p)`` (support from 0), tail included."""
    probs = _probs(pmf)
    p = float(p)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    ks = np.arange(len(probs))
    geo = (1 - p) ** ks * p
    tail = (1 - p) ** len(probs)  # geometric mass beyond the support
    return float(0.5 * (np.sum(np.abs(probs - geo)) + tail))


@dataclass(frozen=True)
class MomentRow:
    n: int
    mean: float
    variance: float
    mean_pred: float
    var_pred: float

    @property
    def mean_ratio(self) -> float:
        return self.mean / self.mean_pred

    @property
    def var_ratio(self) -> float:
        return self.variance / self.var_pred


def _law_moments(law: LimitLaw, n: int) -> tuple[float, float]:
    return law.scaling.raw_mean(law, n), law.scaling.raw_variance(law, n)


def moment_fit(model, w: StepWeights, n_list, law: LimitLaw | None = None,
               exact: bool = False) -> list:
    """Exact-GF mean and variance at each ``n`` against the limit law's leading terms.

    Float series are used unless ``exact=True`` (feasible only for small ``n``).
    """
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must not be empty")
    model = Model(model)
    law = law or predict_law(w, model.stat, model.family)
    base = base_series(w, max(max(n_list), 1), numeric=not exact)
    jet = model_jet(model, base)
    rows = []
    for n in n_list:
        mp, vp = _law_moments(law, n)
        rows.append(MomentRow(n=n, mean=float(jet.mean(n)), variance=float(jet.variance(n)),
                              mean_pred=mp, var_pred=vp))
    return rows


def local_law_residual(pmf, sigma: float, n: int | None = None) -> float:
    """``max_k |P[X_n = k] - local_law_density(sigma, n, k)|`` over ``0 <= k <= n``."""
    probs = _probs(pmf)
    if n is None:
        n = pmf.n
    ks = np.arange(n + 1)
    p = np.zeros(n + 1)
    m = min(len(probs), n + 1)
    p[:m] = probs[:m]
    dens = np.array([local_law_density(sigma, n, k) for k in ks])
    return float(np.max(np.abs(p - dens)))


def rate_estimate(distances) -> float:
    """Least-squares slope of ``log d`` against ``log n``."""
    pts = [(float(n), float(d)) for n, d in distances]
    if len(pts) < 3:
        raise ValueError("need at least three (n, d) points")
    ns = np.array([p[0] for p in pts])
    ds = np.array([p[1] for p in pts])
    if np.any(ns <= 0) or np.any(ds <= 0):
        raise ValueError("n and d must be positive")
    if np.ptp(ns) == 0:
        raise ValueError("degenerate input: all n are equal")
    slope, _ = np.polyfit(np.log(ns), np.log(ds), 1)
    return float(slope)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    K: float
    TV: float | None
    mean_ratio: float
    var_ratio: float
    local_residual: float | None


@dataclass
class ConvergenceReport:
    model: str
    weights: str
    law: dict
    rows: list = field(default_factory=list)

    def records(self) -> list:
        return [{"model": self.model, "weights": self.weights, **asdict(r)} for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(CSV_VERSION_LINE + "\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(CSV_COLUMNS)
        for rec in self.records():
            wr.writerow(["" if rec[c] is None else rec[c] for c in CSV_COLUMNS])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.records(), indent=2)


def convergence_report(w: StepWeights, stat, family=PathFamily.WALK, n_list=(400, 1600),
                       convention: str = "mid", workers: int | None = None) -> ConvergenceReport:
    """Distances and moment ratios of the exact distribution at each ``n``."""
    model = model_for(stat, family)
    law = predict_law(w, model.stat, model.family)
    n_list = sorted(set(int(n) for n in n_list))
    if not n_list or n_list[0] < 1:
        raise ValueError("n_list must hold positive lengths")
    base = base_series(w, n_list[-1], numeric=True)
    jet = model_jet(model, base)

    def one(n):
        pmf = gf_pmf(model, base, n)
        mp, vp = _law_moments(law, n)
        tv = tv_distance_geometric(pmf, law.p) if isinstance(law, Geometric) else None
        loc = local_law_residual(pmf, law.sigma, n) if isinstance(law, HalfNormal) else None
        return ConvergenceRow(
            n=n,
            K=kolmogorov_distance(pmf, law, n, convention),
            TV=tv,
            mean_ratio=float(jet.mean(n)) / mp if mp else math.nan,
            var_ratio=float(jet.variance(n)) / vp if vp else math.nan,
            local_residual=loc,
        )

    rows = pmap(one, n_list, workers)
    return ConvergenceReport(model=model.value, weights=w.label(), law=law.describe(), rows=rows)
