"""Evaluation bookkeeping shared by all minimizers."""
from __future__ import annotations

import math

import numpy as np

from ..errors import CostEvaluationError


class BudgetExhausted(Exception):
    """Internal signal: the evaluation cap was hit; return best-so-far."""


class CostSession:
    """Wraps a cost function with counting, tracing, NaN detection and an
    optional hard evaluation cap."""

    def __init__(self, cost, max_evals: int | None = None):
        self._cost = cost
        self.max_evals = max_evals
        self.n_evals = 0
        self.trace: list[tuple[int, float]] = []
        self.best_theta: np.ndarray | None = None
        self.best_f = math.inf

    def __call__(self, theta) -> float:
        if self.max_evals is not None and self.n_evals >= self.max_evals:
            raise BudgetExhausted
        theta = np.asarray(theta, dtype=float)
        value = float(self._cost(theta))
        if math.isnan(value):
            raise CostEvaluationError(theta.copy())
        self.n_evals += 1
        self.trace.append((self.n_evals, value))
        if value < self.best_f:
            self.best_f = value
            self.best_theta = theta.copy()
        return value

    @property
    def exhausted(self) -> bool:
        return self.max_evals is not None and self.n_evals >= self.max_evals
