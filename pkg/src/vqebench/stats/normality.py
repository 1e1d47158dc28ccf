"""Multivariate normality and variance-homogeneity checks."""
from __future__ import annotations

import numpy as np
from scipy import stats as sps

from ..errors import DegenerateSampleError, ParameterDomainError
from .types import Sample2D, TestResult

_COND_LIMIT = 1e12


def _sample_cov(points: np.ndarray) -> np.ndarray:
    cov = np.cov(points, rowvar=False, ddof=1)
    if np.linalg.cond(cov) > _COND_LIMIT:
        raise DegenerateSampleError("sample covariance is singular")
    return cov


def mardia_test(sample: Sample2D) -> tuple[TestResult, TestResult]:
    """Multivariate skewness and kurtosis tests.

    Skewness: n*b1p ~ chi2 with p(p+1)(p+2)/6 degrees of freedom.
    Kurtosis: z = (b2p - p(p+2)) / sqrt(8p(p+2)/n), two-sided normal.
    """
    points = sample.points
    n, p = points.shape
    if n < p + 2:
        raise DegenerateSampleError(f"need at least {p + 2} points, got {n}")
    cov = _sample_cov(points)
    centered = points - points.mean(axis=0)
    inner = centered @ np.linalg.solve(cov, centered.T)
    b1 = float(np.sum(inner**3)) / n**2
    b2 = float(np.sum(np.diag(inner) ** 2)) / n

    df_skew = p * (p + 1) * (p + 2) // 6
    chi2 = n * b1
    p_skew = float(sps.chi2.sf(chi2, df_skew))
    skew = TestResult(statistic=chi2, df=df_skew, p=p_skew, extras={"b1p": b1})

    z = (b2 - p * (p + 2)) / np.sqrt(8.0 * p * (p + 2) / n)
    p_kurt = float(2.0 * sps.norm.sf(abs(z)))
    kurt = TestResult(statistic=float(z), df=None, p=p_kurt, extras={"b2p": b2})
    return skew, kurt


def box_m_test(groups: list[Sample2D]) -> TestResult:
    """Equality of group covariance matrices via log-determinants.

    M = (N-g) ln|S_p| - sum (n_i-1) ln|S_i|; chi-square approximation with
    df = (g-1) p (p+1) / 2 and the standard Box scale correction.
    """
    if len(groups) < 2:
        raise ParameterDomainError("Box's M needs at least two groups")
    p = 2
    sizes = []
    covs = []
    for g in groups:
        if g.n < p + 1:
            raise DegenerateSampleError(f"group {g.family!r} has too few points ({g.n})")
        sizes.append(g.n)
        covs.append(_sample_cov(g.points))
    n_groups = len(groups)
    total = sum(sizes)
    pooled = sum((n_i - 1) * cov for n_i, cov in zip(sizes, covs)) / (total - n_groups)
    sign, logdet_pooled = np.linalg.slogdet(pooled)
    if sign <= 0:
        raise DegenerateSampleError("pooled covariance is not positive definite")
    m_stat = (total - n_groups) * logdet_pooled
    for n_i, cov in zip(sizes, covs):
        sign, logdet = np.linalg.slogdet(cov)
        if sign <= 0:
            raise DegenerateSampleError("a group covariance is not positive definite")
        m_stat -= (n_i - 1) * logdet

    df = (n_groups - 1) * p * (p + 1) // 2
    c1 = (
        (2 * p**2 + 3 * p - 1)
        / (6.0 * (p + 1) * (n_groups - 1))
        * (sum(1.0 / (n_i - 1) for n_i in sizes) - 1.0 / (total - n_groups))
    )
    chi2 = m_stat * (1.0 - c1)
    chi2 = max(chi2, 0.0)
    p_value = float(sps.chi2.sf(chi2, df))
    return TestResult(
        statistic=float(m_stat),
        df=df,
        p=p_value,
        extras={"chi2": float(chi2), "scale_correction": float(c1)},
    )


def levene_like_test(groups: list[np.ndarray], center: str = "mean") -> TestResult:
    """One-way ANOVA on absolute deviations from a group center.

    center="mean" is Levene's test; center="median" is Brown-Forsythe.
    """
    if center not in ("mean", "median"):
        raise ParameterDomainError(f"center must be 'mean' or 'median', got {center!r}")
    arrays = [np.asarray(g, dtype=float).ravel() for g in groups]
    if len(arrays) < 2 or any(a.size < 2 for a in arrays):
        raise DegenerateSampleError("need >= 2 groups with >= 2 observations each")
    center_fn = np.mean if center == "mean" else np.median
    scores = [np.abs(a - center_fn(a)) for a in arrays]
    return anova_oneway(scores)


def anova_oneway(groups: list[np.ndarray]) -> TestResult:
    """Classic one-way ANOVA F test; identical scores give F=0, p=1."""
    k = len(groups)
    sizes = [g.size for g in groups]
    total_n = sum(sizes)
    grand = np.concatenate(groups).mean()
    ss_between = sum(n_i * (g.mean() - grand) ** 2 for n_i, g in zip(sizes, groups))
    ss_within = sum(((g - g.mean()) ** 2).sum() for g in groups)
    df = (k - 1, total_n - k)
    if ss_within <= 0.0:
        if ss_between <= 0.0:
            return TestResult(statistic=0.0, df=df, p=1.0)
        return TestResult(statistic=float("inf"), df=df, p=0.0)
    f_stat = (ss_between / df[0]) / (ss_within / df[1])
    p = float(sps.f.sf(f_stat, *df))
    return TestResult(statistic=float(f_stat), df=df, p=p)
