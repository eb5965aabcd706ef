"""
Corrupted compass criterion.

The turquoise graph dominates the one-choice blue graph. It has no infinite
cluster when every eigenvalue of the 3x3 mean matrix M(d, p) lies inside the
unit circle, which gives an upper bound p_1(d) for the one-choice threshold.
"""

import numpy as np
import structlog

from seglat.core.exceptions import EstimationError, ParameterError
from seglat.lattice.sites import check_probability

logger = structlog.get_logger(__name__)

POWER_TOL = 1e-10
POWER_MAX_ITER = 100_000
BISECTION_TOL = 1e-8


def compass_matrix(d: int, p: float) -> np.ndarray:
    """M = (2d-1) [[1-p, 1-p, (1-p)/2d], [1, 1/2d, 0], [0, 1, 1/2d]]."""
    if d < 2:
        raise ParameterError("Compass matrix needs d >= 2", field="d", value=d)
    check_probability(p, "p", allow_zero=True)
    q = 1.0 - float(p)
    a = 1.0 / (2 * d)
    return (2 * d - 1) * np.array(
        [
            [q, q, q * a],
            [1.0, a, 0.0],
            [0.0, 1.0, a],
        ]
    )


def power_iteration(matrix: np.ndarray, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER) -> float:
    """Dominant eigenvalue of a nonnegative matrix, started from the all-ones vector."""
    x = np.ones(matrix.shape[0]) / np.sqrt(matrix.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        y = matrix @ x
        y_norm = float(np.linalg.norm(y))
        if y_norm == 0.0:
            return 0.0
        lam_new = y_norm
        x_new = y / y_norm
        residual = float(np.linalg.norm(matrix @ x_new - lam_new * x_new))
        x, lam = x_new, lam_new
        if residual < tol:
            return lam
    logger.warning("Power iteration hit the iteration cap", max_iter=max_iter, eigenvalue=lam)
    return lam


def compass_spectral_radius(d: int, p: float) -> float:
    """Spectral radius of M(d, p)."""
    matrix = compass_matrix(d, p)
    if np.allclose(np.triu(matrix, 1), 0.0) or np.allclose(np.tril(matrix, -1), 0.0):
        # triangular at p = 1: spectrum is the diagonal
        return float(np.max(np.abs(np.diag(matrix))))
    return power_iteration(matrix)


def compass_spectral_radius_direct(d: int, p: float) -> float:
    """Largest root modulus of the characteristic cubic."""
    roots = np.roots(np.poly(compass_matrix(d, p)))
    return float(np.max(np.abs(roots)))


def compass_threshold(d: int, tol: float = BISECTION_TOL) -> float:
    """Smallest p above which the spectral radius of M(d, p) stays below 1."""
    low, high = 0.0, 1.0
    f_low = compass_spectral_radius(d, low) - 1.0
    f_high = compass_spectral_radius(d, high) - 1.0
    if f_low <= 0.0 or f_high >= 0.0:
        raise EstimationError(
            "Spectral radius does not cross 1 on [0, 1]", parameter="p", bracket=(low, high)
        )
    while high - low > tol:
        mid = 0.5 * (low + high)
        if compass_spectral_radius(d, mid) > 1.0:
            low = mid
        else:
            high = mid
    estimate = 0.5 * (low + high)
    logger.debug("Compass threshold", d=d, p=estimate)
    return estimate
