"""Symmetric characteristic functions and their rescaling transforms.

Characteristic functions (CFs) here are real and even: f(0) = 1 and
f(-t) = f(t).  Closed-form families, canonical exponents and lazy
transform wrappers all expose two entry points:

  evaluate(t)      the CF value, scalar in, scalar out (arrays pass
                   through elementwise)
  log_evaluate(t)  log f(t), computed directly from the exponent for
                   every kind except empirical CFs

The log path matters: detection routines probe t up to 1e4, where f
itself underflows to zero long before the exponent loses precision.
Empirical CFs have no exponent, can touch zero or go negative, and
raise PositivityError from the log path at the offending t.

The two transforms of interest are

  root_rescale(f, m)(t) = f(sqrt(m) t)^(1/m)
  sum_rescale(f, m)(t)  = f(t / sqrt(m))^m

which are mutual inverses.  sum_rescale(f, m) is the CF of the
normalized m-fold sum S_m = (X_1 + ... + X_m) / sqrt(m); for infinitely
divisible laws root_rescale walks the same ladder in the opposite
direction and converges pointwise to a gaussian factor exp(-a t^2) as
m grows.  Both wrappers are lazy and preserve the exponent algebra
exactly; gaussian CFs, the fixed points of both maps, are returned
unchanged.

All objects are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, MomentError, PositivityError
from .measures import DiscretizedMeasure

__all__ = [
    "SymmetricCF",
    "GaussianCF",
    "StableCF",
    "SymmetrizedGammaCF",
    "CompoundPoissonCF",
    "CanonicalCF",
    "EmpiricalCF",
    "ProductCF",
    "RootRescaledCF",
    "SumRescaledCF",
    "ScaledCF",
    "evaluate",
    "root_rescale",
    "sum_rescale",
    "limit_gaussian",
    "convolve",
    "from_samples",
    "scale_argument",
    "compound_poisson_canonical",
    "default_grid",
    "DEFAULT_T_MAX",
    "DEFAULT_GRID_SIZE",
]

DEFAULT_T_MAX = 50.0
DEFAULT_GRID_SIZE = 2048


def _check_finite_t(t: np.ndarray) -> None:
    if not np.all(np.isfinite(t)):
        raise InputError("t must be finite")


def _prepare(t):
    """Normalize scalar-or-array input; returns (array, was_scalar)."""
    arr = np.asarray(t, dtype=float)
    _check_finite_t(arr)
    return arr, arr.ndim == 0


def _finish(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def _check_positive_param(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InputError(f"{name} must be finite and strictly positive, got {value!r}")
    return value


class SymmetricCF:
    """Base class; concrete kinds implement _log_values on float arrays."""

    def _log_values(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _values(self, t: np.ndarray) -> np.ndarray:
        return np.exp(self._log_values(t))

    def evaluate(self, t):
        """CF value at t; t must be finite."""
        arr, scalar = _prepare(t)
        return _finish(self._values(arr), scalar)

    def log_evaluate(self, t):
        """log f(t), exact for every kind carrying an exponent."""
        arr, scalar = _prepare(t)
        return _finish(self._log_values(arr), scalar)

    def cumulants(self) -> tuple[float, float]:
        """Second and fourth cumulant (kappa2, kappa4) when both are finite.

        Raises MomentError for heavy-tailed kinds.
        """
        raise NotImplementedError

    def has_finite_fourth_moment(self) -> bool:
        try:
            self.cumulants()
        except MomentError:
            return False
        return True

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class GaussianCF(SymmetricCF):
    """f(t) = exp(-v t^2 / 2) for a centered gaussian with variance v >= 0."""

    variance: float

    def __post_init__(self):
        v = float(self.variance)
        if not math.isfinite(v) or v < 0.0:
            raise InputError(f"variance must be finite and nonnegative, got {v!r}")
        object.__setattr__(self, "variance", v)

    def _log_values(self, t):
        return -0.5 * self.variance * t * t

    def cumulants(self):
        return self.variance, 0.0

    def describe(self):
        return {"kind": "gaussian", "variance": self.variance}


@dataclass(frozen=True)
class StableCF(SymmetricCF):
    """f(t) = exp(-|c t|^alpha), symmetric stable with 0 < alpha <= 2."""

    alpha: float
    scale: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or not 0.0 < a <= 2.0:
            raise InputError(f"alpha must lie in (0, 2], got {a!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "scale", _check_positive_param("scale", self.scale))

    def _log_values(self, t):
        return -np.abs(self.scale * t) ** self.alpha

    def cumulants(self):
        if self.alpha < 2.0:
            raise MomentError(
                f"symmetric stable law with alpha = {self.alpha} < 2 has no finite variance"
            )
        # alpha = 2 is the gaussian with variance 2 c^2
        return 2.0 * self.scale * self.scale, 0.0

    def describe(self):
        return {"kind": "stable", "alpha": self.alpha, "scale": self.scale}


@dataclass(frozen=True)
class SymmetrizedGammaCF(SymmetricCF):
    """f(t) = (1 + t^2)^(-g): difference of two independent gamma(g) variables.

    Shape 1 is the standard Laplace law.
    """

    shape: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _check_positive_param("shape", self.shape))

    def _log_values(self, t):
        return -self.shape * np.log1p(t * t)

    def cumulants(self):
        return 2.0 * self.shape, 12.0 * self.shape

    def describe(self):
        return {"kind": "symgamma", "shape": self.shape}


@dataclass(frozen=True)
class CompoundPoissonCF(SymmetricCF):
    """f(t) = exp(rate * (cos(jump * t) - 1)).

    Compound Poisson with intensity ``rate`` and jumps of size ``jump``,
    each sign chosen with probability 1/2.
    """

    rate: float
    jump: float

    def __post_init__(self):
        object.__setattr__(self, "rate", _check_positive_param("rate", self.rate))
        object.__setattr__(self, "jump", _check_positive_param("jump", self.jump))

    def _log_values(self, t):
        return self.rate * (np.cos(self.jump * t) - 1.0)

    def cumulants(self):
        h2 = self.jump * self.jump
        return self.rate * h2, self.rate * h2 * h2

    def describe(self):
        return {"kind": "cpoisson", "rate": self.rate, "jump": self.jump}


@dataclass(frozen=True)
class CanonicalCF(SymmetricCF):
    """CF given by a canonical exponent

        log f(t) = -a t^2 - 4 * int_(0,inf) sin(t x / 2)^2 (1 + x^2) / x^2 dtheta(x)

    with gaussian coefficient a >= 0 and spectral measure theta carried
    as a DiscretizedMeasure (exact sums over atoms, trapezoid rule over
    the density table).  Every symmetric infinitely divisible CF has
    this shape; conversely any (a, theta) here produces a valid CF.
    """

    gaussian_coefficient: float
    measure: DiscretizedMeasure

    def __post_init__(self):
        a = float(self.gaussian_coefficient)
        if not math.isfinite(a) or a < 0.0:
            raise InputError(f"gaussian coefficient must be >= 0, got {a!r}")
        object.__setattr__(self, "gaussian_coefficient", a)
        if not isinstance(self.measure, DiscretizedMeasure):
            raise InputError("measure must be a DiscretizedMeasure")

    def _log_values(self, t):
        def kernel(tt, x):
            s = np.sin(0.5 * tt * x)
            return s * s * (1.0 + x * x) / (x * x)

        spectral = self.measure.integrate_outer(kernel, t)
        return -self.gaussian_coefficient * t * t - 4.0 * spectral

    def cumulants(self):
        # expand sin^2(tx/2) = (tx/2)^2 - (tx/2)^4 / 3 + ... inside the
        # exponent: each unit of mass at x contributes 2 (1 + x^2) to
        # kappa2 and 2 x^2 (1 + x^2) to kappa4.
        k2 = 2.0 * self.gaussian_coefficient
        k2 += self.measure.integrate(lambda x: 2.0 * (1.0 + x * x))
        k4 = self.measure.integrate(lambda x: 2.0 * x * x * (1.0 + x * x))
        return k2, k4

    def describe(self):
        return {
            "kind": "canonical",
            "gaussian_coefficient": self.gaussian_coefficient,
            "atoms": [
                [float(p), float(m)]
                for p, m in zip(self.measure.atom_positions, self.measure.atom_masses)
            ],
            "density_points": int(self.measure.density_grid.size),
        }


_EMPIRICAL_CHUNK = 4096


class EmpiricalCF(SymmetricCF):
    """Symmetrized empirical CF of a sample: f(t) = mean(cos(t x_j)).

    This is the CF of the empirical distribution folded to be symmetric,
    so it is real and even but not necessarily positive.
    """

    __slots__ = ("samples",)

    def __init__(self, samples):
        arr = np.asarray(samples, dtype=float).reshape(-1).copy()
        if arr.size == 0:
            raise InputError("sample set is empty")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise InputError(f"non-finite sample at index {int(bad[0])}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __setattr__(self, name, value):
        raise AttributeError("EmpiricalCF is immutable")

    def _values(self, t):
        total = np.zeros(t.shape)
        flat = t.reshape(-1)
        out = np.zeros(flat.shape)
        for start in range(0, self.samples.size, _EMPIRICAL_CHUNK):
            block = self.samples[start : start + _EMPIRICAL_CHUNK]
            out += np.sum(np.cos(np.outer(flat, block)), axis=1)
        total = out.reshape(t.shape) / self.samples.size
        return total

    def _log_values(self, t):
        vals = self._values(t)
        flat_vals = np.atleast_1d(vals)
        flat_t = np.atleast_1d(t)
        bad = np.flatnonzero(flat_vals <= 0.0)
        if bad.size:
            i = int(bad[0])
            raise PositivityError(float(flat_t[i]), float(flat_vals[i]))
        return np.log(vals)

    def cumulants(self):
        x2 = float(np.mean(self.samples**2))
        x4 = float(np.mean(self.samples**4))
        return x2, x4 - 3.0 * x2 * x2

    def describe(self):
        return {"kind": "empirical", "n": int(self.samples.size)}


@dataclass(frozen=True)
class ProductCF(SymmetricCF):
    """Pointwise product of CFs: the CF of the independent sum."""

    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            if not isinstance(f, SymmetricCF):
                raise InputError("convolve expects SymmetricCF instances")
            if isinstance(f, ProductCF):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise InputError("product of zero factors")
        object.__setattr__(self, "factors", tuple(flat))

    def _values(self, t):
        # plain product stays valid even when a factor dips negative
        out = np.ones(t.shape)
        for f in self.factors:
            out = out * f._values(t)
        return out

    def _log_values(self, t):
        out = np.zeros(t.shape)
        for f in self.factors:
            out = out + f._log_values(t)
        return out

    def cumulants(self):
        k2 = 0.0
        k4 = 0.0
        for f in self.factors:
            a, b = f.cumulants()
            k2 += a
            k4 += b
        return k2, k4

    def describe(self):
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}


def _check_m(m) -> int:
    if isinstance(m, bool) or int(m) != m or int(m) < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class RootRescaledCF(SymmetricCF):
    """f_m(t) = f(sqrt(m) t)^(1/m), evaluated through the exponent."""

    base: SymmetricCF
    m: int

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m))

    def _log_values(self, t):
        return self.base._log_values(math.sqrt(self.m) * t) / self.m

    def cumulants(self):
        k2, k4 = self.base.cumulants()
        return k2, self.m * k4

    def describe(self):
        return {"kind": "root_rescale", "m": self.m, "base": self.base.describe()}


@dataclass(frozen=True)
class SumRescaledCF(SymmetricCF):
    """f(t / sqrt(m))^m, the CF of the normalized m-fold sum."""

    base: SymmetricCF
    m: int

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m))

    def _values(self, t):
        # integer power, well defined even for negative empirical values
        return self.base._values(t / math.sqrt(self.m)) ** self.m

    def _log_values(self, t):
        return self.m * self.base._log_values(t / math.sqrt(self.m))

    def cumulants(self):
        k2, k4 = self.base.cumulants()
        return k2, k4 / self.m

    def describe(self):
        return {"kind": "sum_rescale", "m": self.m, "base": self.base.describe()}


@dataclass(frozen=True)
class ScaledCF(SymmetricCF):
    """f(c t): the CF of c times the underlying variable."""

    base: SymmetricCF
    factor: float

    def __post_init__(self):
        object.__setattr__(self, "factor", _check_positive_param("factor", self.factor))

    def _values(self, t):
        return self.base._values(self.factor * t)

    def _log_values(self, t):
        return self.base._log_values(self.factor * t)

    def cumulants(self):
        k2, k4 = self.base.cumulants()
        c2 = self.factor * self.factor
        return c2 * k2, c2 * c2 * k4

    def describe(self):
        return {"kind": "scaled", "factor": self.factor, "base": self.base.describe()}


def evaluate(cf: SymmetricCF, t):
    """Evaluate a CF at t (scalar or array)."""
    return cf.evaluate(t)


def root_rescale(cf: SymmetricCF, m) -> SymmetricCF:
    """The m-th root rescale f(sqrt(m) t)^(1/m).

    Gaussian CFs are exact fixed points and come back unchanged; nested
    rescales collapse so the semigroup law holds exactly.
    """
    m = _check_m(m)
    if m == 1 or isinstance(cf, GaussianCF):
        return cf
    if isinstance(cf, RootRescaledCF):
        return RootRescaledCF(cf.base, cf.m * m)
    if isinstance(cf, SumRescaledCF) and cf.m == m:
        return cf.base
    return RootRescaledCF(cf, m)


def sum_rescale(cf: SymmetricCF, m) -> SymmetricCF:
    """The normalized m-fold sum CF f(t / sqrt(m))^m, inverse of root_rescale."""
    m = _check_m(m)
    if m == 1 or isinstance(cf, GaussianCF):
        return cf
    if isinstance(cf, SumRescaledCF):
        return SumRescaledCF(cf.base, cf.m * m)
    if isinstance(cf, RootRescaledCF) and cf.m == m:
        return cf.base
    return SumRescaledCF(cf, m)


def limit_gaussian(a: float) -> GaussianCF:
    """g(t) = exp(-a t^2), the degenerate-or-gaussian limit with coefficient a.

    The corresponding variance is 2 a; a = 0 gives the unit constant.
    """
    a = float(a)
    if not math.isfinite(a) or a < 0.0:
        raise InputError(f"gaussian coefficient must be >= 0, got {a!r}")
    return GaussianCF(2.0 * a)


def convolve(*cfs: SymmetricCF) -> SymmetricCF:
    """CF of the sum of independent variables: the pointwise product."""
    if len(cfs) == 1 and isinstance(cfs[0], SymmetricCF):
        return cfs[0]
    return ProductCF(tuple(cfs))


def from_samples(samples) -> EmpiricalCF:
    """Symmetrized empirical CF of a finite sample."""
    return EmpiricalCF(samples)


def scale_argument(cf: SymmetricCF, factor: float) -> SymmetricCF:
    """CF of factor * X, i.e. t -> f(factor * t)."""
    return ScaledCF(cf, factor)


def compound_poisson_canonical(rate: float, jump: float) -> CanonicalCF:
    """Canonical-exponent encoding of CompoundPoissonCF(rate, jump).

    The spectral measure carries a single atom at x = jump with mass
    rate * jump^2 / (2 (1 + jump^2)), which turns the canonical kernel
    into exactly rate * (cos(jump t) - 1).
    """
    rate = _check_positive_param("rate", rate)
    jump = _check_positive_param("jump", jump)
    mass = rate * jump * jump / (2.0 * (1.0 + jump * jump))
    return CanonicalCF(0.0, DiscretizedMeasure.from_atoms([(jump, mass)]))


def default_grid(t_max: float = DEFAULT_T_MAX, n: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    """Log-spaced evaluation grid on [1e-3, t_max], mirrored to negative t."""
    t_max = float(t_max)
    if not math.isfinite(t_max) or t_max <= 1e-3:
        raise InputError("t_max must exceed the smallest grid point 1e-3")
    n = int(n)
    if n < 2:
        raise InputError("grid needs at least 2 points")
    pos = np.geomspace(1e-3, t_max, n)
    return np.concatenate([-pos[::-1], pos])
