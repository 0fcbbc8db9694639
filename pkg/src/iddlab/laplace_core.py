"""Laplace transforms of positive infinitely divisible laws.

Transforms here are completely monotone with L(0+) = 1, written through
their exponent log L(s).  The rescaling ladder mirrors the symmetric
case without the square roots:

    root_rescale_L(L, m)(s) = L(m s)^(1/m)

converges pointwise to exp(-sigma s), where sigma >= 0 is the drift
(the linear part of the exponent at large s).  The law has support
reaching down to zero exactly when sigma = 0, so drift estimation
answers the support question:

    sigma_hat = -log L(s) / s   at the largest point of a schedule,

with the gap to the previous point as the error bound, and support is
declared to touch zero when sigma_hat <= tol + error_bound.

The canonical exponent is

    log L(s) = -sigma s - int (1 - e^(-a s)) / (1 - e^(-a)) dmu(a)

with mu a finite measure on (0, inf) held as a DiscretizedMeasure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .measures import DiscretizedMeasure

__all__ = [
    "LaplaceTransform",
    "GammaSubordinator",
    "PoissonSubordinator",
    "StableSubordinator",
    "DriftTransform",
    "CanonicalLaplace",
    "ProductLaplace",
    "RootRescaledLaplace",
    "DriftEstimate",
    "SupportDecision",
    "evaluate_L",
    "root_rescale_L",
    "convolve_L",
    "estimate_drift",
    "support_touches_zero",
    "limit_deviation_L",
    "default_s_grid",
    "DEFAULT_S_SCHEDULE",
    "DEFAULT_SUPPORT_TOL",
]

DEFAULT_S_SCHEDULE = (10.0, 31.6, 100.0, 316.0, 1000.0, 3162.0, 10000.0)
DEFAULT_SUPPORT_TOL = 1e-4
DEFAULT_S_MIN = 1e-3
DEFAULT_S_MAX = 1e3
DEFAULT_S_GRID_SIZE = 1024


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InputError(f"{name} must be finite and strictly positive, got {value!r}")
    return value


def _prepare_s(s):
    arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InputError("s must be finite")
    if np.any(arr <= 0.0):
        raise InputError("s must be strictly positive")
    return arr, arr.ndim == 0


class LaplaceTransform:
    """Base class; kinds implement _log_values on positive float arrays."""

    def _log_values(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, s):
        arr, scalar = _prepare_s(s)
        out = np.exp(self._log_values(arr))
        return float(out) if scalar else out

    def log_evaluate(self, s):
        arr, scalar = _prepare_s(s)
        out = self._log_values(arr)
        return float(out) if scalar else out

    @property
    def drift(self) -> float:
        """The structurally known drift coefficient sigma."""
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class GammaSubordinator(LaplaceTransform):
    """L(s) = (1 + s)^(-shape), the gamma subordinator marginal."""

    shape: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _check_positive("shape", self.shape))

    def _log_values(self, s):
        return -self.shape * np.log1p(s)

    @property
    def drift(self):
        return 0.0

    def describe(self):
        return {"kind": "gammasub", "shape": self.shape}


@dataclass(frozen=True)
class PoissonSubordinator(LaplaceTransform):
    """L(s) = exp(rate * (e^(-s) - 1)), the Poisson law on the integers."""

    rate: float

    def __post_init__(self):
        object.__setattr__(self, "rate", _check_positive("rate", self.rate))

    def _log_values(self, s):
        return self.rate * np.expm1(-s)

    @property
    def drift(self):
        return 0.0

    def describe(self):
        return {"kind": "poissonsub", "rate": self.rate}


@dataclass(frozen=True)
class StableSubordinator(LaplaceTransform):
    """L(s) = exp(-(scale * s)^alpha) with 0 < alpha < 1."""

    alpha: float
    scale: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or not 0.0 < a < 1.0:
            raise InputError(f"alpha must lie in (0, 1), got {a!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "scale", _check_positive("scale", self.scale))

    def _log_values(self, s):
        return -((self.scale * s) ** self.alpha)

    @property
    def drift(self):
        return 0.0

    def describe(self):
        return {"kind": "stablesub", "alpha": self.alpha, "scale": self.scale}


@dataclass(frozen=True)
class DriftTransform(LaplaceTransform):
    """L(s) = exp(-sigma s): the law degenerate at sigma >= 0."""

    sigma: float

    def __post_init__(self):
        v = float(self.sigma)
        if not math.isfinite(v) or v < 0.0:
            raise InputError(f"sigma must be finite and nonnegative, got {v!r}")
        object.__setattr__(self, "sigma", v)

    def _log_values(self, s):
        return -self.sigma * s

    @property
    def drift(self):
        return self.sigma

    def describe(self):
        return {"kind": "drift", "sigma": self.sigma}


@dataclass(frozen=True)
class CanonicalLaplace(LaplaceTransform):
    """Exponent -sigma s - int (1 - e^(-a s)) / (1 - e^(-a)) dmu(a)."""

    sigma: float
    measure: DiscretizedMeasure

    def __post_init__(self):
        v = float(self.sigma)
        if not math.isfinite(v) or v < 0.0:
            raise InputError(f"sigma must be finite and nonnegative, got {v!r}")
        object.__setattr__(self, "sigma", v)
        if not isinstance(self.measure, DiscretizedMeasure):
            raise InputError("measure must be a DiscretizedMeasure")

    def _log_values(self, s):
        def kernel(ss, a):
            return np.expm1(-a * ss) / np.expm1(-a)

        jump_part = self.measure.integrate_outer(kernel, s)
        return -self.sigma * s - jump_part

    @property
    def drift(self):
        return self.sigma

    def describe(self):
        return {
            "kind": "canonical",
            "sigma": self.sigma,
            "atoms": [
                [float(p), float(m)]
                for p, m in zip(self.measure.atom_positions, self.measure.atom_masses)
            ],
            "density_points": int(self.measure.density_grid.size),
        }


@dataclass(frozen=True)
class ProductLaplace(LaplaceTransform):
    """Pointwise product: the transform of the independent sum."""

    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            if not isinstance(f, LaplaceTransform):
                raise InputError("convolve_L expects LaplaceTransform instances")
            if isinstance(f, ProductLaplace):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise InputError("product of zero factors")
        object.__setattr__(self, "factors", tuple(flat))

    def _log_values(self, s):
        out = np.zeros(s.shape)
        for f in self.factors:
            out = out + f._log_values(s)
        return out

    @property
    def drift(self):
        return sum(f.drift for f in self.factors)

    def describe(self):
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}


@dataclass(frozen=True)
class RootRescaledLaplace(LaplaceTransform):
    """L_m(s) = L(m s)^(1/m); drift is invariant under this map."""

    base: LaplaceTransform
    m: int

    def __post_init__(self):
        m = self.m
        if isinstance(m, bool) or int(m) != m or int(m) < 1:
            raise InputError(f"m must be a positive integer, got {m!r}")
        object.__setattr__(self, "m", int(m))

    def _log_values(self, s):
        return self.base._log_values(self.m * s) / self.m

    @property
    def drift(self):
        return self.base.drift

    def describe(self):
        return {"kind": "root_rescale", "m": self.m, "base": self.base.describe()}


def evaluate_L(lt: LaplaceTransform, s):
    """Evaluate a Laplace transform at s > 0 (scalar or array)."""
    return lt.evaluate(s)


def root_rescale_L(lt: LaplaceTransform, m) -> LaplaceTransform:
    """L(m s)^(1/m).  Pure drifts are fixed points; nested rescales collapse."""
    if isinstance(m, bool) or int(m) != m or int(m) < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    if m == 1 or isinstance(lt, DriftTransform):
        return lt
    if isinstance(lt, RootRescaledLaplace):
        return RootRescaledLaplace(lt.base, lt.m * m)
    return RootRescaledLaplace(lt, m)


def convolve_L(*lts: LaplaceTransform) -> LaplaceTransform:
    """Transform of the sum of independent positive variables."""
    if len(lts) == 1 and isinstance(lts[0], LaplaceTransform):
        return lts[0]
    return ProductLaplace(tuple(lts))


@dataclass(frozen=True)
class DriftEstimate:
    sigma_hat: float
    error_bound: float
    s_used: float
    schedule: tuple
    values: tuple


@dataclass(frozen=True)
class SupportDecision:
    touches_zero: bool
    sigma_hat: float
    estimate: DriftEstimate


def _check_schedule(s_schedule) -> np.ndarray:
    sched = np.asarray(tuple(s_schedule), dtype=float)
    if sched.size < 3:
        raise InputError("s_schedule needs at least 3 points")
    if not np.all(np.isfinite(sched)) or np.min(sched) <= 0.0:
        raise InputError("s_schedule points must be finite and positive")
    if np.min(np.diff(sched)) <= 0.0:
        raise InputError("s_schedule must be strictly increasing")
    if sched[-1] / sched[0] < 100.0:
        raise InputError("s_schedule must span at least two decades")
    return sched


def estimate_drift(lt: LaplaceTransform, s_schedule=DEFAULT_S_SCHEDULE) -> DriftEstimate:
    """sigma_hat = -log L(s) / s at the largest schedule point.

    The error bound is the gap to the second largest point, mirroring
    the gaussian-coefficient estimator on the symmetric side.
    """
    sched = _check_schedule(s_schedule)
    vals = -lt.log_evaluate(sched) / sched
    return DriftEstimate(
        sigma_hat=float(vals[-1]),
        error_bound=abs(float(vals[-1]) - float(vals[-2])),
        s_used=float(sched[-1]),
        schedule=tuple(float(s) for s in sched),
        values=tuple(float(v) for v in vals),
    )


def support_touches_zero(
    lt: LaplaceTransform,
    tol: float = DEFAULT_SUPPORT_TOL,
    s_schedule=DEFAULT_S_SCHEDULE,
) -> SupportDecision:
    """Decide whether the law puts mass arbitrarily close to zero.

    That holds exactly when the drift vanishes; the decision is yes iff
    sigma_hat <= tol + error_bound, so uncertain estimates err on the
    side of "touches zero".
    """
    tol = float(tol)
    if not math.isfinite(tol) or tol < 0.0:
        raise InputError(f"tol must be finite and nonnegative, got {tol!r}")
    est = estimate_drift(lt, s_schedule)
    return SupportDecision(
        touches_zero=est.sigma_hat <= tol + est.error_bound,
        sigma_hat=est.sigma_hat,
        estimate=est,
    )


def default_s_grid(
    s_max: float = DEFAULT_S_MAX, n: int = DEFAULT_S_GRID_SIZE
) -> np.ndarray:
    """Log-spaced evaluation grid on [1e-3, s_max]."""
    s_max = float(s_max)
    if not math.isfinite(s_max) or s_max <= DEFAULT_S_MIN:
        raise InputError("s_max must exceed the smallest grid point 1e-3")
    if int(n) < 2:
        raise InputError("grid needs at least 2 points")
    return np.geomspace(DEFAULT_S_MIN, s_max, int(n))


def limit_deviation_L(
    lt: LaplaceTransform,
    m: int,
    S: float,
    grid_size: int = DEFAULT_S_GRID_SIZE,
    sigma: float | None = None,
    tol: float = DEFAULT_SUPPORT_TOL,
    s_schedule=DEFAULT_S_SCHEDULE,
) -> float:
    """sup over s in (0, S] of |root_rescale_L(lt, m)(s) - exp(-sigma s)|.

    With sigma unspecified it is estimated from the schedule, the
    support rule applied first: a law whose support touches zero has
    the constant-one limit (sigma = 0).  Callers who know the drift
    exactly pass it to compare against the true limit.
    """
    S = float(S)
    if not math.isfinite(S) or S <= 0.0:
        raise InputError(f"S must be finite and positive, got {S!r}")
    if int(grid_size) < 2:
        raise InputError("grid_size must be at least 2")
    if sigma is None:
        decision = support_touches_zero(lt, tol, s_schedule)
        sigma = 0.0 if decision.touches_zero else decision.sigma_hat
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma < 0.0:
        raise InputError(f"sigma must be finite and nonnegative, got {sigma!r}")
    rescaled = root_rescale_L(lt, m)
    grid = np.geomspace(min(DEFAULT_S_MIN, S / 2.0), S, int(grid_size))
    return float(np.max(np.abs(rescaled.evaluate(grid) - np.exp(-sigma * grid))))
