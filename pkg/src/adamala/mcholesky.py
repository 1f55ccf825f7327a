"""Dense modified Cholesky factorization and triangular-solve primitives.

The factorization takes a symmetric, possibly indefinite matrix ``A`` and
produces a lower-triangular ``L`` with

    L @ L.T == A + diag(shift),   shift >= 0 elementwise,

where the shift is zero whenever ``A`` is sufficiently positive definite.
Pivots are bounded below by ``delta = u * max(nu, xi, 1)`` with ``nu`` the
largest absolute diagonal entry and ``xi`` the largest absolute off-diagonal
entry, so the result is always usable as a covariance/metric factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "FactorizationResult",
    "gmw_factorize",
    "solve_lower",
    "solve_upper_transpose",
]

# Below this dimension hand-rolled substitution beats the LAPACK call overhead.
_SUBSTITUTION_DIM = 32


def _check_symmetric(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    scale = np.max(np.abs(a))
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(scale, 1.0)):
        raise ValueError(f"{name} is not symmetric")
    return a


@dataclass(frozen=True)
class FactorizationResult:
    """Output of :func:`gmw_factorize`.

    Attributes:
        unit_lower: unit lower-triangular factor ``Ltilde``.
        diag: positive pivot vector ``D`` with ``Ltilde @ diag(D) @ Ltilde.T
            == A + diag(shift)``.
        lower: conventional factor ``L = Ltilde * sqrt(D)`` (column scaling).
        shift: non-negative diagonal perturbation added to ``A``.
        logdet: ``sum(log(D))``, the log-determinant of ``L @ L.T``.
    """

    unit_lower: np.ndarray
    diag: np.ndarray
    lower: np.ndarray
    shift: np.ndarray
    logdet: float

    @property
    def dim(self) -> int:
        return self.diag.shape[0]


def gmw_factorize(a: np.ndarray, u: float) -> FactorizationResult:
    """Square-root-free modified Cholesky factorization of a symmetric matrix.

    Left-looking column sweep.  In the j-th column pass the running column
    holds unscaled quantities ``c[i, j] = L[i, j] * D[j]``; the pivot is
    clamped as ``D[j] = max(delta, |c[j, j]|, theta_j**2 / phi2)`` where
    ``theta_j`` is the largest absolute subdiagonal entry of the running
    column and ``phi2 = max(nu, xi / sqrt(d**2 - 1), u)``.  The clamping
    bounds the off-diagonal entries of ``L`` and keeps every pivot at least
    ``delta``, which makes the reconstruction positive definite while the
    worst-case diagonal shift stays small.

    Args:
        a: symmetric matrix with finite entries; only the lower triangle and
            diagonal are read.
        u: positive scale factor below 1; larger values enforce a larger
            pivot floor.

    Returns:
        FactorizationResult with ``lower @ lower.T == a + diag(shift)``.
    """
    a = _check_symmetric(a, "factorization input")
    if not (0.0 < u < 1.0):
        raise ValueError(f"scale factor u must lie in (0, 1), got {u}")
    d = a.shape[0]

    nu = float(np.max(np.abs(np.diag(a))))
    if d > 1:
        xi = float(np.max(np.abs(a[np.tril_indices(d, -1)])))
        phi2 = max(nu, xi / math.sqrt(d * d - 1.0), u)
    else:
        # No off-diagonal support in one dimension.
        xi = 0.0
        phi2 = max(nu, u)
    delta = u * max(nu, xi, 1.0)

    lt = np.eye(d)
    diag = np.array(np.diag(a), dtype=float)
    shift = np.zeros(d)

    for j in range(d):
        if j > 0:
            # Finalize row j: previously stored c values become L entries.
            lt[j, :j] /= diag[:j]
        if j < d - 1:
            col = a[j + 1 :, j].copy()
            if j > 0:
                col -= lt[j + 1 :, :j] @ lt[j, :j]
            lt[j + 1 :, j] = col
            theta2 = float(np.max(np.abs(col))) ** 2
        else:
            theta2 = 0.0
        pivot_raw = diag[j]
        diag[j] = max(delta, abs(pivot_raw), theta2 / phi2)
        shift[j] = diag[j] - pivot_raw
        if j < d - 1:
            diag[j + 1 :] -= lt[j + 1 :, j] ** 2 / diag[j]

    lower = lt * np.sqrt(diag)
    logdet = float(np.sum(np.log(diag)))
    return FactorizationResult(
        unit_lower=lt, diag=diag, lower=lower, shift=shift, logdet=logdet
    )


def _check_solve_args(lower: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lower = np.asarray(lower, dtype=float)
    b = np.asarray(b, dtype=float)
    d = lower.shape[0]
    if lower.ndim != 2 or lower.shape[1] != d:
        raise ValueError(f"factor must be square, got shape {lower.shape}")
    if b.shape != (d,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({d},)")
    if np.any(np.diag(lower) == 0.0):
        raise np.linalg.LinAlgError("triangular factor has a zero diagonal entry")
    return lower, b


def solve_lower(lower: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``lower @ x = b`` by forward substitution."""
    lower, b = _check_solve_args(lower, b)
    d = b.shape[0]
    if d > _SUBSTITUTION_DIM:
        return scipy.linalg.solve_triangular(lower, b, lower=True, check_finite=False)
    x = np.empty(d)
    for i in range(d):
        x[i] = (b[i] - lower[i, :i] @ x[:i]) / lower[i, i]
    return x


def solve_upper_transpose(lower: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``lower.T @ x = b`` by back substitution."""
    lower, b = _check_solve_args(lower, b)
    d = b.shape[0]
    if d > _SUBSTITUTION_DIM:
        return scipy.linalg.solve_triangular(
            lower, b, lower=True, trans="T", check_finite=False
        )
    x = np.empty(d)
    for i in range(d - 1, -1, -1):
        x[i] = (b[i] - lower[i + 1 :, i] @ x[i + 1 :]) / lower[i, i]
    return x
