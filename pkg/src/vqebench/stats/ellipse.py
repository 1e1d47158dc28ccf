"""Bootstrap-calibrated 95% prediction ellipses."""
from __future__ import annotations

import numpy as np

from ..errors import DegenerateSampleError
from .types import Ellipse, Sample2D

_MAX_REDRAW_FACTOR = 10
_COND_LIMIT = 1e12


def bootstrap_ellipse(sample: Sample2D, n_boot: int = 2000, rng=None) -> Ellipse:
    """Mean, covariance, and a bootstrap cutoff for the squared Mahalanobis
    distance: the median over resamples of the within-resample 95th
    percentile.  Singular resamples are redrawn (bounded retries)."""
    if rng is None:
        rng = np.random.default_rng(0)
    points = sample.points
    n = sample.n
    if n < 3:
        raise DegenerateSampleError("need at least 3 points for an ellipse")
    mu = points.mean(axis=0)
    sigma = np.cov(points, rowvar=False, ddof=1)
    if np.linalg.cond(sigma) > _COND_LIMIT:
        raise DegenerateSampleError("sample covariance is singular (collinear points)")
    percentiles = np.empty(n_boot)
    attempts_left = _MAX_REDRAW_FACTOR * n_boot
    filled = 0
    while filled < n_boot:
        if attempts_left <= 0:
            raise DegenerateSampleError("too many singular bootstrap resamples")
        attempts_left -= 1
        idx = rng.integers(0, n, size=n)
        resample = points[idx]
        mean_b = resample.mean(axis=0)
        cov_b = np.cov(resample, rowvar=False, ddof=1)
        if np.linalg.cond(cov_b) > _COND_LIMIT:
            continue
        diff = resample - mean_b
        d_sq = np.einsum("ij,ji->i", diff, np.linalg.solve(cov_b, diff.T))
        percentiles[filled] = np.percentile(d_sq, 95.0)
        filled += 1
    return Ellipse(mu=mu, sigma=sigma, d95_sq=float(np.median(percentiles)))
