"""
Numerical ‖μ‖² descent on the mass simplex, used as an oracle against
the exact stratification.

    dt_i/ds = -2 t_i (⟨α_i, μ⟩ - ⟨μ, μ⟩),   μ = Σ t_j α_j

The flow keeps the support fixed, so it is integrated in u = log t over
the support (t = softmax(u), du/ds = -2 g). Faces that relax much faster
than the limit is approached make the flow stiff, so the stepper is
scipy's implicit Radau method fed the analytic Jacobian.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import Radau

from app.config import get_settings
from app.models.action import PointSample, WeightSystem
from app.models.errors import RankMismatchError
from app.models.strata import DescentResult

logger = logging.getLogger("descent")

_RTOL = 1e-9
_ATOL = 1e-12
# the flow time is unbounded; the step budget ends the run
_HORIZON = 1e15


class _Flow:
    def __init__(self, weights: np.ndarray, gram: np.ndarray):
        self.weights = weights          # k × r, rows are the support weights
        self.gram = gram
        self.gw = weights @ gram        # rows α_i G

    def masses(self, u: np.ndarray) -> np.ndarray:
        e = np.exp(u - u.max())
        return e / e.sum()

    def state(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        t = self.masses(u)
        mu = t @ self.weights
        g = self.gw @ mu - mu @ self.gram @ mu
        return t, mu, g

    def velocity(self, s: float, u: np.ndarray) -> np.ndarray:
        return -2.0 * self.state(u)[2]

    def jacobian(self, s: float, u: np.ndarray) -> np.ndarray:
        # ∂g_i/∂u_k = (α_i - 2μ)·G·(α_k - μ) t_k
        t, mu, _ = self.state(u)
        left = (self.weights - 2.0 * mu) @ self.gram
        right = (self.weights - mu).T
        return -2.0 * (left @ right) * t[np.newaxis, :]

    def residual(self, u: np.ndarray) -> float:
        t, _, g = self.state(u)
        return float(np.linalg.norm(2.0 * t * g))


def simulate_descent(
    ws: WeightSystem,
    p: PointSample,
    step: Optional[float] = None,
    tol: Optional[float] = None,
    max_steps: Optional[int] = None,
) -> DescentResult:
    """
    Follows the flow from p until the residual ‖dt/ds‖ drops below tol.
    `step` is the solver's first step; `max_steps` bounds accepted steps.
    """
    settings = get_settings()
    step = settings.DESCENT_STEP if step is None else step
    tol = settings.DESCENT_TOL if tol is None else tol
    max_steps = settings.DESCENT_MAX_STEPS if max_steps is None else max_steps
    if step <= 0 or tol <= 0:
        raise ValueError("step and tol must be positive")
    if len(p.masses) != len(ws.weights):
        raise RankMismatchError(f"{len(p.masses)} masses for {len(ws.weights)} weights")

    support = p.support.indices
    weights = np.array([[float(x) for x in ws.weights[i]] for i in support])
    gram = np.array([[float(x) for x in row] for row in ws.ip.gram])
    flow = _Flow(weights, gram)
    u = np.log(np.array([float(p.masses[i]) for i in support]))

    steps = 0
    residual = flow.residual(u)
    if residual >= tol:
        solver = Radau(
            flow.velocity, 0.0, u, _HORIZON,
            first_step=step, rtol=_RTOL, atol=_ATOL, jac=flow.jacobian,
        )
        while residual >= tol and steps < max_steps and solver.status == "running":
            message = solver.step()
            if solver.status == "failed":
                logger.warning(f"[Descent] solver failed at s={solver.t:.3e}: {message}")
                break
            steps += 1
            u = solver.y
            residual = flow.residual(u)

    limit = flow.state(u)[1]
    converged = residual < tol
    if not converged:
        logger.warning(
            f"[Descent] no convergence after {steps} steps: residual {residual:.3e} >= tol {tol:.3e}"
        )
    return DescentResult(
        limit=tuple(float(x) for x in limit),
        steps=steps,
        residual=residual,
        converged=converged,
    )
