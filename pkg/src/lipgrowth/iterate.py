"""Power iteration shared by the strip operators and the quadrature solvers."""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError


def power_iteration(apply_fn, x0: np.ndarray, tol: float = 1e-10,
                    max_iter: int = 10**5):
    """Dominant eigenpair of a nonnegative irreducible operator.

    Returns (eigenvalue, vector, residual, iterations).  The residual is the
    relative change of successive Rayleigh quotients; iteration stops once it
    drops to ``tol``.  The returned vector has unit 2-norm.
    """
    x = np.asarray(x0, dtype=float)
    norm = float(np.sqrt(np.vdot(x, x).real))
    if norm == 0:
        raise ValueError("starting vector must be nonzero")
    x = x / norm
    lam_prev = None
    residual = None
    for it in range(1, max_iter + 1):
        y = apply_fn(x)
        lam = float(np.vdot(x, y).real)
        ynorm = float(np.sqrt(np.vdot(y, y).real))
        if ynorm == 0 or lam <= 0:
            raise ConvergenceError("operator annihilated the iterate",
                                   residual=None, iterations=it)
        x = y / ynorm
        if lam_prev is not None:
            residual = abs(lam - lam_prev) / abs(lam)
            if residual <= tol:
                return lam, x, residual, it
        lam_prev = lam
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (last residual {residual})",
        residual=residual, iterations=max_iter)
