"""Permutation tests on Euclidean distances: PERMANOVA and PERMDISP.

p-values use the (1 + count) / (1 + n_perm) estimator under random
permutations; when every distinct label assignment can be enumerated within
the permutation budget, the exact exhaustive p-value is reported instead.
"""
from __future__ import annotations

from math import factorial

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from ..errors import ParameterDomainError
from .normality import anova_oneway
from .types import PairwiseMatrix, TestResult

__all__ = ["permanova", "permdisp", "pairwise_posthoc"]


def _encode_labels(labels):
    labels = list(labels)
    uniq = sorted(set(labels), key=labels.index)
    codes = np.array([uniq.index(l) for l in labels])
    return uniq, codes


def _n_assignments(codes: np.ndarray) -> int:
    counts = np.bincount(codes)
    total = factorial(codes.size)
    for c in counts:
        total //= factorial(int(c))
    return total


def _permutation_p(stat_fn, codes, f_obs, n_perm, rng):
    """Exact p over all assignments if enumerable within budget, else MC."""
    if _n_assignments(codes) <= n_perm:
        count = 0
        total = 0
        for perm in multiset_permutations(codes.tolist()):
            total += 1
            if stat_fn(np.array(perm)) >= f_obs - 1e-12:
                count += 1
        return count / total, total, True
    count = 0
    shuffled = codes.copy()
    for _ in range(n_perm):
        rng.shuffle(shuffled)
        if stat_fn(shuffled) >= f_obs - 1e-12:
            count += 1
    return (1 + count) / (1 + n_perm), n_perm, False


def _check_groups(codes):
    counts = np.bincount(codes)
    if counts.size < 2:
        raise ParameterDomainError("need at least two groups")
    if np.any(counts < 2):
        raise ParameterDomainError("every group needs at least two observations")
    return counts


def permanova(points, labels, n_perm: int = 10000, rng=None) -> TestResult:
    """Pseudo-F test of equal group centroids from the Euclidean distance
    matrix (Gower identity), with permutation of group labels."""
    points = np.asarray(points, dtype=float)
    uniq, codes = _encode_labels(labels)
    _check_groups(codes)
    if rng is None:
        rng = np.random.default_rng(0)
    n_obs = points.shape[0]
    k = len(uniq)
    diff = points[:, None, :] - points[None, :, :]
    d_sq = np.einsum("ijk,ijk->ij", diff, diff)
    ss_total = d_sq[np.triu_indices(n_obs, k=1)].sum() / n_obs

    def pseudo_f(perm_codes):
        ss_within = 0.0
        for g in range(k):
            idx = np.flatnonzero(perm_codes == g)
            block = d_sq[np.ix_(idx, idx)]
            ss_within += block.sum() / (2.0 * idx.size)
        ss_between = ss_total - ss_within
        if ss_within <= 0.0:
            return np.inf if ss_between > 1e-12 else 0.0
        return (ss_between / (k - 1)) / (ss_within / (n_obs - k))

    f_obs = pseudo_f(codes)
    ss_within_obs = 0.0
    for g in range(k):
        idx = np.flatnonzero(codes == g)
        ss_within_obs += d_sq[np.ix_(idx, idx)].sum() / (2.0 * idx.size)
    r2 = 0.0 if ss_total <= 0.0 else 1.0 - ss_within_obs / ss_total
    p, n_used, exact = _permutation_p(pseudo_f, codes, f_obs, n_perm, rng)
    return TestResult(
        statistic=float(f_obs),
        df=(k - 1, n_obs - k),
        p=float(p),
        extras={"r2": float(r2), "n_perm": n_used, "exact": exact},
    )


def permdisp(points, labels, n_perm: int = 10000, rng=None) -> TestResult:
    """Homogeneity of multivariate dispersions: ANOVA on distances to group
    centroids, with permutation of the distance labels."""
    points = np.asarray(points, dtype=float)
    uniq, codes = _encode_labels(labels)
    _check_groups(codes)
    if rng is None:
        rng = np.random.default_rng(0)
    k = len(uniq)
    dists = np.empty(points.shape[0])
    for g in range(k):
        idx = np.flatnonzero(codes == g)
        centroid = points[idx].mean(axis=0)
        dists[idx] = np.linalg.norm(points[idx] - centroid, axis=1)

    def f_of(perm_codes):
        groups = [dists[perm_codes == g] for g in range(k)]
        return anova_oneway(groups).statistic

    result_obs = anova_oneway([dists[codes == g] for g in range(k)])
    f_obs = result_obs.statistic
    p, n_used, exact = _permutation_p(f_of, codes, f_obs, n_perm, rng)
    return TestResult(
        statistic=float(f_obs),
        df=result_obs.df,
        p=float(p),
        extras={"n_perm": n_used, "exact": exact},
    )


def pairwise_posthoc(
    points,
    labels,
    test: str = "permanova",
    adjust: str = "bh",
    n_perm: int = 10000,
    rng=None,
) -> PairwiseMatrix:
    """Two-group tests for every unordered pair of labels, with a joint
    multiple-comparison adjustment across all pairs."""
    from .ranks import p_adjust

    if test not in ("permanova", "permdisp"):
        raise ParameterDomainError(f"unknown pairwise test {test!r}")
    if adjust not in ("bh", "holm", "none"):
        raise ParameterDomainError(f"unknown adjustment {adjust!r}")
    points = np.asarray(points, dtype=float)
    uniq, codes = _encode_labels(labels)
    if len(uniq) < 2:
        raise ParameterDomainError("need at least two groups")
    if rng is None:
        rng = np.random.default_rng(0)
    test_fn = permanova if test == "permanova" else permdisp
    k = len(uniq)
    p_raw = np.full((k, k), np.nan)
    pairs = []
    raw_values = []
    for i in range(k):
        for j in range(i + 1, k):
            mask = (codes == i) | (codes == j)
            try:
                res = test_fn(points[mask], codes[mask], n_perm=n_perm, rng=rng)
                value = res.p
            except ParameterDomainError:
                value = np.nan
            pairs.append((i, j))
            raw_values.append(value)
            p_raw[i, j] = p_raw[j, i] = value
    p_adjusted = np.full((k, k), np.nan)
    valid = [v for v in raw_values if np.isfinite(v)]
    if adjust == "none":
        adjusted_valid = valid
    else:
        adjusted_valid = list(p_adjust(np.array(valid), method=adjust))
    it = iter(adjusted_valid)
    for (i, j), raw in zip(pairs, raw_values):
        adj = next(it) if np.isfinite(raw) else np.nan
        p_adjusted[i, j] = p_adjusted[j, i] = adj
    return PairwiseMatrix(
        labels=[str(u) for u in uniq], p_raw=p_raw, p_adjusted=p_adjusted, method=f"{test}+{adjust}"
    )
