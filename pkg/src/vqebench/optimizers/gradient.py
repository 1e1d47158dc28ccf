"""Gradient-based minimizers: BFGS and an unconstrained SQP variant."""
from __future__ import annotations

import numpy as np

from .result import OptResult, OptimizerSpec
from .session import BudgetExhausted, CostSession

MAX_BACKTRACKS = 30
GRAD_NORM_TOL = 1e-8
ARMIJO_C1 = 1e-4
CURVATURE_C2 = 0.9


def finite_difference_gradient(cost, theta, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient; 2*dim cost evaluations."""
    theta = np.asarray(theta, dtype=float)
    grad = np.empty_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = h
        grad[i] = (cost(theta + step) - cost(theta - step)) / (2.0 * h)
    return grad


def eval_budget(kind: str, dim: int, spec: OptimizerSpec) -> int:
    """Documented hard evaluation cap for each algorithm."""
    if kind in ("bfgs", "slsqp"):
        # initial f + grad, then per iteration: backtracks + new gradient
        return 1 + 2 * dim + spec.maxiter * (MAX_BACKTRACKS + 1 + 2 * dim)
    if kind == "nelder_mead":
        return (dim + 1) + spec.maxiter * (dim + 2)
    if kind == "powell":
        # per cycle: dim+1 line minimizations, each capped, plus one probe
        from .direct import LINE_EVAL_CAP

        return 1 + spec.maxiter * ((dim + 1) * LINE_EVAL_CAP + 1)
    if kind == "cobyla":
        from .direct import TR_MAX_RAY

        return (dim + 1) + spec.maxiter * (2 * TR_MAX_RAY + 1)
    if kind == "isoma":
        return spec.isoma.max_fes
    raise ValueError(kind)


def _line_search(session, x, f, g, direction):
    """Backtracking search for the Armijo condition (first Wolfe condition).

    Returns (alpha, x_new, f_new) or None after MAX_BACKTRACKS halvings.
    """
    slope = float(g @ direction)
    alpha = 1.0
    for _ in range(MAX_BACKTRACKS):
        x_new = x + alpha * direction
        f_new = session(x_new)
        if f_new <= f + ARMIJO_C1 * alpha * slope:
            return alpha, x_new, f_new
        alpha *= 0.5
    return None


def _finish(session, converged, extras=None):
    return OptResult(
        theta_best=session.best_theta,
        f_best=session.best_f,
        n_evals=session.n_evals,
        converged=converged,
        trace=session.trace,
        extras=extras or {},
    )


def bfgs_minimize(cost, theta0, spec: OptimizerSpec, rng=None) -> OptResult:
    """Quasi-Newton minimization with inverse-Hessian updates and a
    backtracking Armijo line search; gradients by central differences."""
    theta0 = np.asarray(theta0, dtype=float)
    dim = theta0.size
    session = CostSession(cost, max_evals=eval_budget("bfgs", dim, spec))
    h = spec.gradient_step
    h_inv = np.eye(dim)
    try:
        f = session(theta0)
        g = finite_difference_gradient(session, theta0, h)
        x = theta0.copy()
        if np.linalg.norm(g) < GRAD_NORM_TOL:
            return _finish(session, True, {"h_inv": h_inv})
        for _ in range(spec.maxiter):
            direction = -h_inv @ g
            if float(g @ direction) >= 0.0:
                direction = -g  # reset on loss of descent
            step = _line_search(session, x, f, g, direction)
            if step is None:
                return _finish(session, False, {"h_inv": h_inv})
            _, x_new, f_new = step
            g_new = finite_difference_gradient(session, x_new, h)
            s = x_new - x
            y = g_new - g
            sy = float(s @ y)
            if sy > 1e-12:
                rho = 1.0 / sy
                i_mat = np.eye(dim)
                left = i_mat - rho * np.outer(s, y)
                h_inv = left @ h_inv @ left.T + rho * np.outer(s, s)
            f_change = abs(f_new - f)
            x, f, g = x_new, f_new, g_new
            if f_change <= spec.ftol * max(1.0, abs(f_new)):
                return _finish(session, True, {"h_inv": h_inv})
            if np.linalg.norm(g) < GRAD_NORM_TOL:
                return _finish(session, True, {"h_inv": h_inv})
        return _finish(session, False, {"h_inv": h_inv})
    except BudgetExhausted:
        return _finish(session, False, {"h_inv": h_inv})


def slsqp_minimize(cost, theta0, spec: OptimizerSpec, rng=None) -> OptResult:
    """Unconstrained SQP: a damped quasi-Newton quadratic model solved
    exactly each iteration, with a line search on the objective."""
    theta0 = np.asarray(theta0, dtype=float)
    dim = theta0.size
    session = CostSession(cost, max_evals=eval_budget("slsqp", dim, spec))
    h = spec.gradient_step
    b_mat = np.eye(dim)
    try:
        f = session(theta0)
        g = finite_difference_gradient(session, theta0, h)
        x = theta0.copy()
        if np.linalg.norm(g) < GRAD_NORM_TOL:
            return _finish(session, True)
        for _ in range(spec.maxiter):
            try:
                direction = np.linalg.solve(b_mat, -g)
            except np.linalg.LinAlgError:
                b_mat = np.eye(dim)
                direction = -g
            if float(g @ direction) >= 0.0:
                b_mat = np.eye(dim)
                direction = -g
            step = _line_search(session, x, f, g, direction)
            if step is None:
                return _finish(session, False)
            _, x_new, f_new = step
            g_new = finite_difference_gradient(session, x_new, h)
            s = x_new - x
            y = g_new - g
            bs = b_mat @ s
            sbs = float(s @ bs)
            sy = float(s @ y)
            # Powell damping keeps the quadratic model positive definite
            if sbs > 0 and sy < 0.2 * sbs:
                phi = 0.8 * sbs / (sbs - sy)
                y = phi * y + (1.0 - phi) * bs
                sy = float(s @ y)
            if sbs > 1e-16 and sy > 1e-16:
                b_mat = b_mat - np.outer(bs, bs) / sbs + np.outer(y, y) / sy
            f_change = abs(f_new - f)
            x, f, g = x_new, f_new, g_new
            if f_change <= spec.ftol * max(1.0, abs(f_new)):
                return _finish(session, True)
            if np.linalg.norm(g) < GRAD_NORM_TOL:
                return _finish(session, True)
        return _finish(session, False)
    except BudgetExhausted:
        return _finish(session, False)
