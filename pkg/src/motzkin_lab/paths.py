"""Brute-force ground truth: weighted path counts and exact statistic distributions.

Everything here is computed by dynamic programming over explicit states (or by
listing all ``3**n`` paths), never from generating functions, so it can serve
as the oracle for the closed forms in :mod:`motzkin_lab.gf`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

import numpy as np

from .steps import StepWeights

__all__ = [
    "PathFamily",
    "Statistic",
    "StatisticPMF",
    "PathRecord",
    "SUPPORTED_PAIRS",
    "path_statistics",
    "batch_statistics",
    "count_family",
    "count_table",
    "pmf_exact",
    "pmf_table",
    "exhaustive_listing",
    "MAX_LISTING_LENGTH",
]

MAX_LISTING_LENGTH = 12
STEPS = (-1, 0, 1)


class PathFamily(str, Enum):
    WALK = "walk"
    BRIDGE = "bridge"
    MEANDER = "meander"
    EXCURSION = "excursion"


class Statistic(str, Enum):
    RETURNS = "returns_to_zero"
    SIGNS = "sign_changes"
    HEIGHT = "height"
    FINAL_ALTITUDE = "final_altitude"


SUPPORTED_PAIRS = frozenset(
    [
        (Statistic.RETURNS, PathFamily.WALK),
        (Statistic.SIGNS, PathFamily.WALK),
        (Statistic.SIGNS, PathFamily.BRIDGE),
        (Statistic.HEIGHT, PathFamily.WALK),
    ]
    + [(Statistic.FINAL_ALTITUDE, f) for f in PathFamily]
)


@dataclass
class StatisticPMF:
    """Distribution of a statistic over paths of length ``n`` in a family.

    ``weights[k]`` is the total weight of paths with statistic value ``k``
    (exact rationals from the enumerator, floats from float series or
    sampling).  ``total`` is the total weight of the family at length ``n``.
    """

    n: int
    stat: Statistic
    family: PathFamily
    weights: dict = field(default_factory=dict)
    total: object = 0

    def probabilities(self) -> dict:
        return {k: v / self.total for k, v in sorted(self.weights.items())}

    def as_array(self, size: int | None = None) -> np.ndarray:
        """Probabilities as a dense float array indexed by ``k`` (support must be >= 0)."""
        if not self.weights:
            return np.zeros(size or 0)
        kmax = max(self.weights)
        if min(self.weights) < 0:
            raise ValueError("dense view needs a non-negative support")
        out = np.zeros(size if size is not None else kmax + 1)
        tot = float(self.total)
        for k, v in self.weights.items():
            if k < len(out):
                out[k] = float(v) / tot
        return out

    def mean(self):
        return sum(k * v for k, v in self.weights.items()) / self.total

    def variance(self):
        m = self.mean()
        return sum(k * k * v for k, v in self.weights.items()) / self.total - m * m


@dataclass(frozen=True)
class PathRecord:
    steps: tuple
    weight: Fraction
    stats: dict


def _sign(a: int) -> int:
    return (a > 0) - (a < 0)


def path_statistics(steps) -> dict:
    """All four statistics of a single path, in one pass.

    * returns: nodes at altitude 0 other than the start;
    * sign changes: flips of the last non-zero node sign (``+(0)-`` / ``-(0)+``);
    * height: maximum altitude over all nodes, start included;
    * final altitude.
    """
    alt = 0
    returns = 0
    changes = 0
    last = 0
    top = 0
    for s in steps:
        if s not in STEPS:
            raise ValueError(f"steps are -1, 0 or +1, got {s!r}")
        alt += s
        if alt == 0:
            returns += 1
        else:
            sg = 1 if alt > 0 else -1
            if last and sg != last:
                changes += 1
            last = sg
        if alt > top:
            top = alt
    return {
        Statistic.RETURNS: returns,
        Statistic.SIGNS: changes,
        Statistic.HEIGHT: top,
        Statistic.FINAL_ALTITUDE: alt,
    }


def batch_statistics(steps: np.ndarray) -> dict:
    """Vectorised :func:`path_statistics` for a ``(reps, n)`` array of steps.

    Returns a dict of integer arrays of length ``reps``.
    """
    steps = np.asarray(steps)
    reps, n = steps.shape
    if n == 0:
        z = np.zeros(reps, dtype=np.int64)
        return {s: z.copy() for s in Statistic}
    alt = np.cumsum(steps, axis=1, dtype=np.int32)
    returns = np.count_nonzero(alt == 0, axis=1)
    height = np.maximum(alt.max(axis=1), 0)
    sg = np.sign(alt).astype(np.int8)
    # index of the last non-zero node at or before each position (-1 if none)
    idx = np.where(sg != 0, np.arange(n, dtype=np.int32)[None, :], -1)
    np.maximum.accumulate(idx, axis=1, out=idx)
    padded = np.concatenate([np.zeros((reps, 1), dtype=np.int8), sg], axis=1)
    last = np.take_along_axis(padded, idx + 1, axis=1)
    prev_last = np.concatenate([np.zeros((reps, 1), dtype=np.int8), last[:, :-1]], axis=1)
    flips = (sg != 0) & (prev_last != 0) & (sg != prev_last)
    return {
        Statistic.RETURNS: returns.astype(np.int64),
        Statistic.SIGNS: np.count_nonzero(flips, axis=1).astype(np.int64),
        Statistic.HEIGHT: height.astype(np.int64),
        Statistic.FINAL_ALTITUDE: alt[:, -1].astype(np.int64),
    }


def _allowed(family: PathFamily, alt: int) -> bool:
    if family in (PathFamily.MEANDER, PathFamily.EXCURSION):
        return alt >= 0
    return True


def _ends_ok(family: PathFamily, alt: int) -> bool:
    if family in (PathFamily.BRIDGE, PathFamily.EXCURSION):
        return alt == 0
    return True


def count_table(w: StepWeights, n_max: int, family: PathFamily | str) -> list:
    """Weighted counts of the family for every length ``0..n_max``."""
    family = PathFamily(family)
    if n_max < 0:
        raise ValueError("n must be non-negative")
    out = [Fraction(1)]
    states = {0: Fraction(1)}
    for _ in range(n_max):
        nxt = defaultdict(Fraction)
        for a, c in states.items():
            for s in STEPS:
                b = a + s
                if _allowed(family, b):
                    nxt[b] += c * w.weight(s)
        states = dict(nxt)
        out.append(sum((c for a, c in states.items() if _ends_ok(family, a)), Fraction(0)))
    return out


def count_family(w: StepWeights, n: int, family: PathFamily | str) -> Fraction:
    """Exact total weight of length-``n`` paths in ``family``."""
    return count_table(w, n, family)[n]


def _check_pair(stat, family):
    stat, family = Statistic(stat), PathFamily(family)
    if (stat, family) not in SUPPORTED_PAIRS:
        raise ValueError(f"unsupported statistic/family pair: {stat.value}/{family.value}")
    return stat, family


def pmf_table(w: StepWeights, n_max: int, stat, family) -> list:
    """Exact :class:`StatisticPMF` for every length ``0..n_max`` from one DP sweep."""
    stat, family = _check_pair(stat, family)
    if n_max < 0:
        raise ValueError("n must be non-negative")
    # state key: (altitude, extra); value k of the statistic is read off per state
    if stat is Statistic.RETURNS:
        init = {(0, 0): Fraction(1)}

        def step(key, s):
            a, k = key
            b = a + s
            return (b, k + (b == 0))

        def value(key):
            return key[1]

    elif stat is Statistic.SIGNS:
        init = {(0, 0, 0): Fraction(1)}

        def step(key, s):
            a, last, k = key
            b = a + s
            if b == 0:
                return (b, last, k)
            sg = 1 if b > 0 else -1
            return (b, sg, k + (last != 0 and sg != last))

        def value(key):
            return key[2]

    elif stat is Statistic.HEIGHT:
        init = {(0, 0): Fraction(1)}

        def step(key, s):
            a, top = key
            b = a + s
            return (b, max(top, b))

        def value(key):
            return key[1]

    else:
        init = {(0,): Fraction(1)}

        def step(key, s):
            return (key[0] + s,)

        def value(key):
            return key[0]

    def collect(n, states):
        pmf = StatisticPMF(n=n, stat=stat, family=family)
        acc = defaultdict(Fraction)
        for key, c in states.items():
            if _ends_ok(family, key[0]):
                acc[value(key)] += c
        pmf.weights = dict(sorted(acc.items()))
        pmf.total = sum(pmf.weights.values(), Fraction(0))
        return pmf

    states = dict(init)
    out = [collect(0, states)]
    wt = {s: w.weight(s) for s in STEPS}
    for n in range(1, n_max + 1):
        nxt = defaultdict(Fraction)
        for key, c in states.items():
            for s in STEPS:
                new = step(key, s)
                if _allowed(family, new[0]):
                    nxt[new] += c * wt[s]
        states = dict(nxt)
        out.append(collect(n, states))
    return out


def pmf_exact(w: StepWeights, n: int, stat, family) -> StatisticPMF:
    """Exact distribution of ``stat`` over length-``n`` paths of ``family``."""
    return pmf_table(w, n, stat, family)[n]


def exhaustive_listing(w: StepWeights, n: int) -> Iterator[PathRecord]:
    """Every one of the ``3**n`` paths with its weight and statistics."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_LISTING_LENGTH:
        raise ValueError(f"exhaustive listing is limited to n <= {MAX_LISTING_LENGTH}")
    for steps in itertools.product(STEPS, repeat=n):
        weight = Fraction(1)
        for s in steps:
            weight *= w.weight(s)
        yield PathRecord(steps=steps, weight=weight, stats=path_statistics(steps))


def listing_family(steps) -> set:
    """Families a path belongs to (walk is always included)."""
    alts = list(itertools.accumulate(steps, initial=0))
    fams = {PathFamily.WALK}
    nonneg = min(alts) >= 0
    if alts[-1] == 0:
        fams.add(PathFamily.BRIDGE)
    if nonneg:
        fams.add(PathFamily.MEANDER)
    if nonneg and alts[-1] == 0:
        fams.add(PathFamily.EXCURSION)
    return fams
