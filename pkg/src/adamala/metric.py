"""Position-specific SPD metric tensors built from log-target Hessians.

Three construction strategies are provided:

* ``metric_mchol`` — modified Cholesky factorization of the negative Hessian;
  the shift makes indefinite curvature usable.
* ``metric_eig``  — spectral flooring: eigenvalues of the negative Hessian
  are replaced by ``max(|lam|, floor)``.
* ``metric_fixed`` — plain Cholesky of a user-supplied SPD matrix.

Only the lower-triangular factor and the log-determinant are kept; the
sampler consumes the metric exclusively through triangular solves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mcholesky import _check_symmetric, gmw_factorize

__all__ = ["MetricTensor", "metric_mchol", "metric_eig", "metric_fixed"]


@dataclass(frozen=True)
class MetricTensor:
    """Factor of an SPD metric ``G = lower @ lower.T``."""

    lower: np.ndarray
    logdet_g: float
    strategy: str

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def matrix(self) -> np.ndarray:
        """Reconstruct ``G`` (diagnostics only; the sampler never needs it)."""
        return self.lower @ self.lower.T


def metric_mchol(hess: np.ndarray, u: float) -> MetricTensor:
    """Metric from the modified Cholesky factorization of ``-hess``.

    In one dimension this reduces to ``G = max(u, |hess|)`` for ``u <= 1``.
    """
    res = gmw_factorize(-np.asarray(hess, dtype=float), u)
    return MetricTensor(lower=res.lower, logdet_g=res.logdet, strategy="mchol")


def metric_eig(hess: np.ndarray, floor: float) -> MetricTensor:
    """Metric from spectral flooring of ``-hess``.

    Eigenvectors are kept; the i-th eigenvalue becomes ``max(|lam_i|, floor)``.
    The returned factor is the plain Cholesky factor of the reconstruction
    (only the factor enters the proposal, not the eigenbasis).
    """
    a = _check_symmetric(-np.asarray(hess, dtype=float), "metric input")
    if floor <= 0.0:
        raise ValueError(f"eigenvalue floor must be positive, got {floor}")
    lam, q = np.linalg.eigh(a)
    lam = np.maximum(np.abs(lam), floor)
    g = (q * lam) @ q.T
    g = (g + g.T) / 2.0
    lower = np.linalg.cholesky(g)
    return MetricTensor(
        lower=lower, logdet_g=float(np.sum(np.log(lam))), strategy="eig"
    )


def metric_fixed(m: np.ndarray) -> MetricTensor:
    """Metric fixed to a user-supplied SPD matrix (Cholesky factor)."""
    a = _check_symmetric(m, "fixed metric")
    try:
        lower = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise ValueError("fixed metric must be positive definite") from exc
    logdet = 2.0 * float(np.sum(np.log(np.diag(lower))))
    return MetricTensor(lower=lower, logdet_g=logdet, strategy="fixed")
