"""Six seeded, budgeted minimizers behind one dispatch function."""
from __future__ import annotations

import numpy as np

from ..errors import ParameterDomainError
from .direct import cobyla_minimize, nelder_mead_minimize, powell_minimize
from .gradient import bfgs_minimize, eval_budget, finite_difference_gradient, slsqp_minimize
from .result import OPTIMIZER_KINDS, IsomaParams, OptimizerSpec, OptResult
from .soma import isoma_minimize

_DISPATCH = {
    "bfgs": bfgs_minimize,
    "slsqp": slsqp_minimize,
    "nelder_mead": nelder_mead_minimize,
    "powell": powell_minimize,
    "cobyla": cobyla_minimize,
    "isoma": isoma_minimize,
}


def minimize(cost, theta0, spec: OptimizerSpec, rng: np.random.Generator | None = None) -> OptResult:
    """Run the algorithm named by spec.kind.  Deterministic given
    (theta0, spec, rng seed); evaluation counts never exceed eval_budget."""
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.ndim != 1 or theta0.size < 1:
        raise ParameterDomainError("theta0 must be a non-empty 1-D vector")
    if rng is None:
        rng = np.random.default_rng(0)
    return _DISPATCH[spec.kind](cost, theta0, spec, rng)


__all__ = [
    "OPTIMIZER_KINDS",
    "IsomaParams",
    "OptResult",
    "OptimizerSpec",
    "bfgs_minimize",
    "cobyla_minimize",
    "eval_budget",
    "finite_difference_gradient",
    "isoma_minimize",
    "minimize",
    "nelder_mead_minimize",
    "powell_minimize",
    "slsqp_minimize",
]
