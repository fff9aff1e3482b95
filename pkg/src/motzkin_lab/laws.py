"""Limiting distributions, the drift-driven law predictor and the half-normal scheme check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .paths import PathFamily, Statistic
from .steps import StepWeights, structural_constants

__all__ = [
    "Scaling",
    "LimitLaw",
    "Geometric",
    "HalfNormal",
    "Rayleigh",
    "Normal",
    "law_eval",
    "predict_law",
    "SchemeInstance",
    "SchemeReport",
    "check_scheme",
    "builtin_scheme",
    "half_normal_moments",
    "local_law_density",
    "ZERO_TOL",
]

ZERO_TOL = 1e-9


@dataclass(frozen=True)
class Scaling:
    """How the raw statistic ``X_n`` is mapped onto the law's variable.

    ``none``: ``x = X_n``; ``divide_by_sqrt_n``: ``x = X_n / sqrt(n)``;
    ``standardize``: ``x = (X_n - mu n) / (sigma sqrt(n))``.
    """

    kind: str = "none"
    mu: float = 0.0
    sigma: float = 1.0
    # exact per-step parameters when rational (standardize only)
    mu_exact: Fraction | None = None
    sigma_sq_exact: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("none", "divide_by_sqrt_n", "standardize"):
            raise ValueError(f"unknown scaling {self.kind!r}")

    def transform(self, k, n: int):
        if self.kind == "none":
            return k
        if self.kind == "divide_by_sqrt_n":
            return k / math.sqrt(n)
        return (k - self.mu * n) / (self.sigma * math.sqrt(n))

    def raw_mean(self, law: "LimitLaw", n: int) -> float:
        """Leading-order prediction of ``E[X_n]``."""
        if self.kind == "none":
            return law.mean
        if self.kind == "divide_by_sqrt_n":
            return law.mean * math.sqrt(n)
        return self.mu * n + self.sigma * math.sqrt(n) * law.mean

    def raw_variance(self, law: "LimitLaw", n: int) -> float:
        if self.kind == "none":
            return law.variance
        if self.kind == "divide_by_sqrt_n":
            return law.variance * n
        return self.sigma ** 2 * n * law.variance


NO_SCALING = Scaling()
SQRT_N = Scaling("divide_by_sqrt_n")


class LimitLaw:
    """Common interface of the four limit laws."""

    name: str
    discrete = False
    scaling: Scaling

    def pdf(self, x) -> float:
        raise NotImplementedError

    def cdf(self, x) -> float:
        raise NotImplementedError

    @property
    def mean(self) -> float:
        raise NotImplementedError

    @property
    def variance(self) -> float:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Geometric(LimitLaw):
    """``P[X = k] = (1-p)**k p`` on ``k = 0, 1, ...``."""

    p: object
    scaling: Scaling = NO_SCALING
    name = "geometric"
    discrete = True

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError("geometric parameter must lie in (0, 1)")

    def pmf(self, k) -> float:
        if k < 0 or k != int(k):
            return 0.0
        p = float(self.p)
        return (1 - p) ** int(k) * p

    pdf = pmf

    def cdf(self, x) -> float:
        if x < 0:
            return 0.0
        return 1 - (1 - float(self.p)) ** (math.floor(x) + 1)

    @property
    def mean(self):
        p = float(self.p)
        return (1 - p) / p

    @property
    def variance(self):
        p = float(self.p)
        return (1 - p) / p ** 2

    def describe(self):
        d = {"law": self.name, "p": float(self.p), "scaling": self.scaling.kind}
        if isinstance(self.p, Rational):
            d["p_exact"] = str(Fraction(self.p))
        return d


@dataclass(frozen=True)
class HalfNormal(LimitLaw):
    """Law of ``|X|`` for ``X ~ N(0, sigma**2)``."""

    sigma: float
    scaling: Scaling = SQRT_N
    name = "half_normal"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def pdf(self, x):
        if x < 0:
            return 0.0
        s = self.sigma
        return math.sqrt(2 / (math.pi * s * s)) * math.exp(-x * x / (2 * s * s))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return math.erf(x / (self.sigma * math.sqrt(2)))

    @property
    def mean(self):
        return self.sigma * math.sqrt(2 / math.pi)

    @property
    def variance(self):
        return self.sigma ** 2 * (1 - 2 / math.pi)

    def describe(self):
        return {"law": self.name, "sigma": self.sigma, "scaling": self.scaling.kind}


@dataclass(frozen=True)
class Rayleigh(LimitLaw):
    """Density ``x / sigma**2 exp(-x**2 / (2 sigma**2))`` on ``x >= 0``."""

    sigma: float
    scaling: Scaling = SQRT_N
    name = "rayleigh"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def pdf(self, x):
        if x < 0:
            return 0.0
        s2 = self.sigma ** 2
        return x / s2 * math.exp(-x * x / (2 * s2))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return -math.expm1(-x * x / (2 * self.sigma ** 2))

    @property
    def mean(self):
        return self.sigma * math.sqrt(math.pi / 2)

    @property
    def variance(self):
        return self.sigma ** 2 * (2 - math.pi / 2)

    def describe(self):
        return {"law": self.name, "sigma": self.sigma, "scaling": self.scaling.kind}


@dataclass(frozen=True)
class Normal(LimitLaw):
    mu: float = 0.0
    sigma: float = 1.0
    scaling: Scaling = NO_SCALING
    name = "normal"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def pdf(self, x):
        s = self.sigma
        return math.exp(-((x - self.mu) ** 2) / (2 * s * s)) / math.sqrt(2 * math.pi * s * s)

    def cdf(self, x):
        return 0.5 * math.erfc(-(x - self.mu) / (self.sigma * math.sqrt(2)))

    @property
    def mean(self):
        return self.mu

    @property
    def variance(self):
        return self.sigma ** 2

    def describe(self):
        d = {"law": self.name, "mu": self.mu, "sigma": self.sigma,
             "scaling": self.scaling.kind}
        if self.scaling.kind == "standardize":
            d["step_mu"] = self.scaling.mu
            d["step_sigma"] = self.scaling.sigma
            if self.scaling.mu_exact is not None:
                d["step_mu_exact"] = str(self.scaling.mu_exact)
                d["step_sigma_sq_exact"] = str(self.scaling.sigma_sq_exact)
        return d


def law_eval(law: LimitLaw, x) -> tuple[float, float]:
    """``(density or pmf, cdf)`` of ``law`` at ``x``; zero density off the support."""
    return law.pdf(x), law.cdf(x)


def predict_law(w: StepWeights, stat, family=PathFamily.WALK) -> LimitLaw:
    """Limit law of the statistic for long paths, selected by the sign of the drift."""
    stat, family = Statistic(stat), PathFamily(family)
    pm, p0, pp = w.as_tuple()
    p1 = w.p_one
    pdd1 = 2 * pm
    drift = w.drift
    if (stat, family) == (Statistic.RETURNS, PathFamily.WALK):
        if drift != 0:
            return Geometric(abs(pp - pm) / p1)
        return HalfNormal(math.sqrt(p1 / pdd1))
    if (stat, family) == (Statistic.SIGNS, PathFamily.WALK):
        if drift < 0:
            return Geometric(pp / pm)
        if drift > 0:
            return Geometric(pm / pp)
        return HalfNormal(0.5 * math.sqrt(pdd1 / p1))
    if (stat, family) == (Statistic.SIGNS, PathFamily.BRIDGE):
        sc = structural_constants(w)
        return Rayleigh(sc.tau / 2 * math.sqrt(sc.p_dd_tau / sc.p_tau))
    if (stat, family) == (Statistic.HEIGHT, PathFamily.WALK):
        if drift < 0:
            return Geometric(pp / pm)
        if drift == 0:
            return HalfNormal(math.sqrt(pdd1 / p1))
        mu = drift / p1
        var = 1 - p0 / p1 - mu * mu
        return Normal(0.0, 1.0, Scaling("standardize", float(mu), math.sqrt(var), mu, var))
    raise ValueError(f"no limit law for {stat.value}/{family.value}")


@dataclass(frozen=True)
class SchemeInstance:
    """Values at ``(rho, 1)`` of the local form ``1/c(z,u) = g(z,u) + h(z,u) sqrt(1 - z/rho)``."""

    rho: object
    g: object
    g_z: object
    g_u: object
    g_uu: object
    h: object
    h_u: object

    @classmethod
    def from_mapping(cls, data: dict) -> "SchemeInstance":
        missing = [k for k in ("rho", "g", "g_z", "g_u", "g_uu", "h", "h_u") if k not in data]
        if missing:
            raise ValueError(f"scheme instance is missing fields: {', '.join(missing)}")
        vals = {}
        for k in ("rho", "g", "g_z", "g_u", "g_uu", "h", "h_u"):
            v = data[k]
            if isinstance(v, str):
                v = Fraction(v)
            elif isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
                raise ValueError(f"field {k} must be a number or an 'a/b' string")
            vals[k] = v
        return cls(**vals)


@dataclass
class SchemeReport:
    passed: bool
    sigma: float | None
    conditions: list = field(default_factory=list)  # (label, value, ok)
    violations: list = field(default_factory=list)
    limitations: str = (
        "only the algebraic conditions at (rho, 1) are checked; analyticity of g and h, "
        "the local representation itself, uniqueness of the dominant singularity and "
        "analytic continuation are assumed, not verified"
    )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "sigma": self.sigma,
            "conditions": [
                {"condition": c, "value": float(v), "ok": ok} for c, v, ok in self.conditions
            ],
            "violations": list(self.violations),
            "limitations": self.limitations,
        }


def _is_zero(x, tol: float) -> bool:
    if isinstance(x, Rational):
        return x == 0
    return abs(x) <= tol


def check_scheme(s: SchemeInstance, tol: float = ZERO_TOL) -> SchemeReport:
    """Check the half-normal scheme conditions and return ``sigma`` when they hold.

    Rational inputs are tested for zero exactly, floats against ``tol``.
    """
    if not s.rho > 0:
        raise ValueError("rho must be positive")
    must_vanish = [("g(rho,1)", s.g), ("h(rho,1)", s.h), ("g_u(rho,1)", s.g_u),
                   ("g_uu(rho,1)", s.g_uu)]
    must_not_vanish = [("g_z(rho,1)", s.g_z), ("h_u(rho,1)", s.h_u)]
    report = SchemeReport(passed=True, sigma=None)
    for name, v in must_vanish:
        ok = _is_zero(v, tol)
        report.conditions.append((f"{name} = 0", v, ok))
        if not ok:
            report.violations.append(f"{name} != 0")
    for name, v in must_not_vanish:
        ok = not _is_zero(v, tol)
        report.conditions.append((f"{name} != 0", v, ok))
        if not ok:
            report.violations.append(f"{name} = 0")
    report.passed = not report.violations
    if report.passed:
        report.sigma = math.sqrt(2) * float(s.h_u) / (float(s.rho) * float(s.g_z))
        if not report.sigma > 0:
            report.passed = False
            report.violations.append("sigma = sqrt(2) h_u / (rho g_z) is not positive")
            report.sigma = None
    return report


def builtin_scheme(name: str, w: StepWeights) -> SchemeInstance:
    """Scheme data of a known bivariate generating function.

    ``returns``: returns to zero of zero-drift walks.  There
    ``1/W(z,u) = (1 - z P(1)) (u + (1-u) B(z))`` and the bridge series is
    ``B(z) = ((1 - z/rho)(1 - q z))**(-1/2)`` with ``q = p0 - 2 p``, which
    splits exactly into ``g = u (1 - z/rho)`` and ``h = (1-u) / sqrt(1 - q z)``.
    """
    if name != "returns":
        raise ValueError(f"unknown built-in scheme {name!r} (available: returns)")
    if w.drift != 0:
        raise ValueError("the returns-to-zero scheme applies to zero-drift weights only")
    p0, p = w.p_zero, w.p_plus
    rho = 1 / w.p_one
    q = p0 - 2 * p
    return SchemeInstance(
        rho=rho,
        g=Fraction(0),
        g_z=-1 / rho,
        g_u=Fraction(0),
        g_uu=Fraction(0),
        h=Fraction(0),
        h_u=-1 / math.sqrt(1 - rho * q),
    )


def half_normal_moments(sigma: float, n: int) -> tuple[float, float]:
    """Leading terms ``sigma sqrt(2/pi) sqrt(n)`` and ``sigma**2 (1 - 2/pi) n``."""
    if not sigma > 0 or n < 1:
        raise ValueError("need sigma > 0 and n >= 1")
    return sigma * math.sqrt(2 / math.pi) * math.sqrt(n), sigma ** 2 * (1 - 2 / math.pi) * n


def local_law_density(sigma: float, n: int, k) -> float:
    """Half-normal local approximation of ``P[X_n = k]``."""
    return math.sqrt(2 / (math.pi * n)) / sigma * math.exp(-(k * k / n) / (2 * sigma * sigma))
