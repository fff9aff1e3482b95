"""Seeded Monte Carlo sampling of weighted Motzkin walks.

Random numbers come from numpy's Philox bit generator (Philox4x64-10, a
counter-based generator with documented, platform-independent output).
Sample ``i`` of a run always uses block ``i // BLOCK``, whose stream is
keyed by ``SeedSequence(seed, spawn_key=(block,))``, so histograms do not
depend on the number of worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import stats as sps

from .parallel import pmap
from .paths import PathFamily, Statistic, StatisticPMF, batch_statistics, path_statistics
from .steps import StepWeights

__all__ = [
    "SampleConfig",
    "sample_walk",
    "empirical_pmf",
    "empirical_pmfs",
    "GoodnessOfFit",
    "goodness_of_fit",
    "BLOCK",
]

BLOCK = 50_000
_STEPS = np.array([-1, 0, 1], dtype=np.int8)


@dataclass(frozen=True)
class SampleConfig:
    weights: StepWeights
    n: int
    reps: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def probabilities(self) -> tuple[Fraction, Fraction, Fraction]:
        """Exact step probabilities of -1, 0, +1 (sum to 1)."""
        probs = self.weights.normalized().as_tuple()
        if sum(probs) != 1:
            raise ArithmeticError("step probabilities do not sum to 1")
        return probs

    def thresholds(self) -> np.ndarray:
        """Float cut points of the inverse-CDF step draw."""
        qm, q0, _ = self.probabilities
        return np.array([float(qm), float(qm + q0)])


def _generator(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def _draw_steps(rng: np.random.Generator, cuts: np.ndarray, size) -> np.ndarray:
    u = rng.random(size)
    return _STEPS[np.searchsorted(cuts, u, side="right")]


def sample_walk(cfg: SampleConfig, index: int = 0) -> tuple[tuple, dict]:
    """Path number ``index`` of the run described by ``cfg`` and its statistics."""
    if not 0 <= index < cfg.reps:
        raise IndexError("sample index outside the configured repetitions")
    block, offset = divmod(index, BLOCK)
    steps = _block_steps(cfg, block)[offset]
    path = tuple(int(s) for s in steps)
    return path, path_statistics(path)


def _block_steps(cfg: SampleConfig, block: int) -> np.ndarray:
    size = min(BLOCK, cfg.reps - block * BLOCK)
    return _draw_steps(_generator(cfg.seed, block), cfg.thresholds(), (size, cfg.n))


def empirical_pmfs(cfg: SampleConfig, stats, family=PathFamily.WALK,
                   workers: int | None = None) -> dict:
    """Histograms of several statistics over the same ``cfg.reps`` samples.

    ``family=bridge`` keeps only samples ending at 0 (rejection); the
    acceptance rate is then ``pmf.total / cfg.reps``.
    """
    stats = [Statistic(s) for s in stats]
    family = PathFamily(family)
    if family not in (PathFamily.WALK, PathFamily.BRIDGE):
        raise ValueError("sampling supports walks and (by rejection) bridges only")
    nblocks = -(-cfg.reps // BLOCK)

    def run(block):
        vals = batch_statistics(_block_steps(cfg, block))
        keep = vals[Statistic.FINAL_ALTITUDE] == 0 if family is PathFamily.BRIDGE else None
        out = {}
        for s in stats:
            v = vals[s] if keep is None else vals[s][keep]
            # offset by n so that negative final altitudes fit
            out[s] = np.bincount(v + cfg.n, minlength=2 * cfg.n + 1)
        return out

    parts = pmap(run, range(nblocks), workers)
    result = {}
    for s in stats:
        counts = np.sum([p[s] for p in parts], axis=0)
        weights = {int(k) - cfg.n: float(c) for k, c in enumerate(counts) if c}
        result[s] = StatisticPMF(n=cfg.n, stat=s, family=family, weights=weights,
                                 total=float(counts.sum()))
    return result


def empirical_pmf(cfg: SampleConfig, stat, family=PathFamily.WALK,
                  workers: int | None = None) -> StatisticPMF:
    """Histogram of ``stat`` over ``cfg.reps`` sampled paths (weights are counts)."""
    return empirical_pmfs(cfg, [stat], family, workers)[Statistic(stat)]


@dataclass(frozen=True)
class GoodnessOfFit:
    tv: float
    pvalue: float | None  # None when fewer than two pooled bins remain
    bins: int


def goodness_of_fit(empirical: StatisticPMF, exact: StatisticPMF,
                    min_expected: float = 5.0) -> GoodnessOfFit:
    """TV distance and chi-square p-value of a histogram against an exact pmf.

    Adjacent bins are pooled left to right until each expects at least
    ``min_expected`` samples; a short remainder joins the last bin.
    """
    ex = {k: float(v / exact.total) for k, v in exact.weights.items()}
    m = float(empirical.total)
    em = {k: c / m for k, c in empirical.weights.items()} if m else {}
    keys = sorted(set(ex) | set(em))
    tv = 0.5 * sum(abs(ex.get(k, 0.0) - em.get(k, 0.0)) for k in keys)
    obs, exp = [], []
    o_acc = e_acc = 0.0
    for k in keys:
        o_acc += empirical.weights.get(k, 0.0)
        e_acc += ex.get(k, 0.0) * m
        if e_acc >= min_expected:
            obs.append(o_acc)
            exp.append(e_acc)
            o_acc = e_acc = 0.0
    if exp:
        obs[-1] += o_acc
        exp[-1] += e_acc
    if len(exp) < 2:
        return GoodnessOfFit(tv=tv, pvalue=None, bins=len(exp))
    scale = sum(obs) / sum(exp)  # absorbs float rounding in the exact masses
    p = sps.chisquare(obs, [e * scale for e in exp]).pvalue
    return GoodnessOfFit(tv=tv, pvalue=float(p), bins=len(exp))
