#!/usr/bin/env python3
"""Regenerate the frozen oracle constants used by the test suite.

Every value printed here is computed from hand-derived closed forms on
dense grids, with no import of the iddlab package.  Test modules copy
these numbers as literals; rerun this script if a constant ever needs
to be re-derived.

Closed forms used below:

  symmetrized gamma, shape g:   f(t) = (1 + t^2)^(-g)
  gaussian, variance v:         f(t) = exp(-v t^2 / 2)
  normalized m-fold sum:        f(t/sqrt(m))^m
  m-th root rescale:            f(sqrt(m) t)^(1/m)
  lambda_r distance:            sup_t |f_U(t) - f_V(t)| / |t|^r
  standard Laplace (b=1) CDF:   1 - exp(-x)/2 for x >= 0, variance 2
  normal CDF:                   Phi(x / sigma)
"""

import math

import numpy as np


def phi(x: np.ndarray, variance: float) -> np.ndarray:
    """Normal CDF with mean zero and the given variance, via erf."""
    v = np.vectorize(math.erf)
    return 0.5 * (1.0 + v(x / math.sqrt(2.0 * variance)))


def dense_sup(fn, lo, hi, n):
    t = np.linspace(lo, hi, n)
    vals = fn(t)
    i = int(np.argmax(vals))
    return float(vals[i]), float(t[i])


def main() -> None:
    # lambda_3 between the shape-1 symmetrized gamma CF and the matched
    # (variance 2) gaussian CF, dense linear grid of 1e6 points on (0, 20].
    def ratio_xi(t, r=3.0):
        return np.abs(1.0 / (1.0 + t * t) - np.exp(-t * t)) / t**r

    val, arg = dense_sup(lambda t: ratio_xi(t), 2e-5, 20.0, 10**6)
    print(f"L3_SYMGAMMA1_VS_GAUSS2 = {val:.17g}   # argmax t = {arg:.6g}")

    # same pair at r = 2.5 (needed only for inequality sanity, not pinned)
    val, arg = dense_sup(lambda t: ratio_xi(t, 2.5), 2e-5, 20.0, 10**6)
    print(f"L25_SYMGAMMA1_VS_GAUSS2 = {val:.17g}  # argmax t = {arg:.6g}")

    # lambda_3 between the normalized m-fold sum of shape-1 symmetrized
    # gamma variables, (1 + t^2/m)^(-m), and the variance-2 gaussian.
    for m in (2, 4, 8, 16):
        def ratio_sum(t, m=m):
            return np.abs((1.0 + t * t / m) ** (-m) - np.exp(-t * t)) / t**3

        val, arg = dense_sup(ratio_sum, 2e-5, 20.0, 10**6)
        print(f"L3_SUM_M{m} = {val:.17g}   # argmax t = {arg:.6g}")

    # lambda_3 between the m-th root rescale (1 + m t^2)^(-1/m) and the
    # variance-2 gaussian (the divergent direction of the rescaling).
    for m in (4, 16):
        def ratio_root(t, m=m):
            return np.abs((1.0 + m * t * t) ** (-1.0 / m) - np.exp(-t * t)) / t**3

        val, arg = dense_sup(ratio_root, 2e-5, 20.0, 10**6)
        print(f"L3_ROOT_M{m} = {val:.17g}   # argmax t = {arg:.6g}")

    # Kolmogorov distance between the standard Laplace law (variance 2)
    # and the variance-2 normal, closed-form CDFs on a 1e5-point grid.
    x = np.linspace(-12.0, 12.0, 100001)
    lap = np.where(x >= 0.0, 1.0 - 0.5 * np.exp(-np.abs(x)), 0.5 * np.exp(-np.abs(x)))
    diff = np.abs(phi(x, 2.0) - lap)
    i = int(np.argmax(diff))
    print(f"KS_LAPLACE_VS_GAUSS2 = {diff[i]:.17g}   # argmax x = {x[i]:.6g}")

    # Kolmogorov distance between normals with variances 1 and 1.21.
    diff = np.abs(phi(x, 1.0) - phi(x, 1.21))
    i = int(np.argmax(diff))
    print(f"KS_GAUSS1_VS_GAUSS121 = {diff[i]:.17g}   # argmax x = {x[i]:.6g}")


if __name__ == "__main__":
    main()
