"""Gaussian and Student-t targets used for calibration and pilot studies."""

from __future__ import annotations

import numpy as np

from .base import TargetEval, TargetModel


class GaussianTarget(TargetModel):
    """Multivariate normal kernel ``-(x - mu)' P (x - mu) / 2``, P = inv(Sigma).

    The normalizing constant is dropped.  The Hessian is the constant
    ``-P``; the Fisher information of the location family is ``P``.
    """

    constant_hessian = True
    constant_fisher = True

    def __init__(self, mu, sigma):
        self.mu = np.atleast_1d(np.asarray(mu, dtype=float))
        sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
        d = self.mu.shape[0]
        if sigma.shape != (d, d):
            raise ValueError(f"covariance shape {sigma.shape} does not match dim {d}")
        try:
            chol = np.linalg.cholesky((sigma + sigma.T) / 2.0)
        except np.linalg.LinAlgError as exc:
            raise ValueError("covariance must be symmetric positive definite") from exc
        inv_chol = np.linalg.inv(chol)
        prec = inv_chol.T @ inv_chol
        self.prec = (prec + prec.T) / 2.0
        self.sigma = sigma
        self._neg_prec = -self.prec

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    def logk_grad(self, x):
        r = np.asarray(x, dtype=float) - self.mu
        pr = self.prec @ r
        return -0.5 * float(r @ pr), -pr

    def eval(self, x):
        logk, grad = self.logk_grad(x)
        return TargetEval(logk=logk, grad=grad, hess=self._neg_prec)

    def fisher_information(self, x):
        return self.prec


class StudentTTarget(TargetModel):
    """One-dimensional Student-t kernel with ``nu`` degrees of freedom.

    ``logk = -((nu + 1)/2) * log(1 + x^2/nu)``.  The log-density has
    inflection points at ``|x| = sqrt(nu)`` where the Hessian vanishes,
    which is what makes this target a stress test for curvature-based
    metrics.
    """

    constant_fisher = True

    def __init__(self, nu: float):
        if nu <= 0:
            raise ValueError(f"degrees of freedom must be positive, got {nu}")
        self.nu = float(nu)

    @property
    def dim(self) -> int:
        return 1

    def logk_grad(self, x):
        xv = float(np.asarray(x).reshape(()))
        nu = self.nu
        logk = -0.5 * (nu + 1.0) * np.log1p(xv * xv / nu)
        grad = -(nu + 1.0) * xv / (nu + xv * xv)
        return float(logk), np.array([grad])

    def eval(self, x):
        xv = float(np.asarray(x).reshape(()))
        nu = self.nu
        logk, grad = self.logk_grad(xv)
        hess = -(nu + 1.0) * (nu - xv * xv) / (nu + xv * xv) ** 2
        return TargetEval(logk=logk, grad=grad, hess=np.array([[hess]]))

    def fisher_information(self, x):
        # Location-family information of the t density: (nu + 1) / (nu + 3).
        return np.array([[(self.nu + 1.0) / (self.nu + 3.0)]])
