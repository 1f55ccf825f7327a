"""Bayesian binary-response regression (logit and probit links).

Observation model ``P(y_i = 1) = rho((X beta)_i)`` with a ``N(0, 100 I)``
prior on the coefficients.  For the logit link the negative Hessian of the
log-kernel coincides with the expected-information metric; for probit the
two differ (the observed curvature depends on ``y``).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import log_ndtr

from .base import TargetEval, TargetModel

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_PRIOR_VAR = 100.0

LINKS = ("logit", "probit")


def simulate_binreg(n_obs: int, dim: int, seed: int, link: str = "logit", coef=None):
    """Synthetic design matrix and binary response, deterministic per seed.

    Returns ``(x_mat, y, coef)`` where ``coef`` is the generating coefficient
    vector (drawn N(0, 1) when not supplied).
    """
    if link not in LINKS:
        raise ValueError(f"unknown link {link!r}")
    rng = np.random.default_rng(seed)
    x_mat = rng.standard_normal((n_obs, dim))
    if coef is None:
        coef = rng.standard_normal(dim)
    coef = np.asarray(coef, dtype=float)
    eta = x_mat @ coef
    if link == "logit":
        prob = 1.0 / (1.0 + np.exp(-eta))
    else:
        prob = np.exp(log_ndtr(eta))
    y = (rng.uniform(size=n_obs) < prob).astype(float)
    return x_mat, y, coef


class BinaryRegressionTarget(TargetModel):
    """Posterior kernel of the binary regression model."""

    def __init__(self, x_mat, y, link: str = "logit"):
        x_mat = np.asarray(x_mat, dtype=float)
        y = np.asarray(y, dtype=float)
        if x_mat.ndim != 2:
            raise ValueError("design matrix must be 2-d")
        if y.shape != (x_mat.shape[0],):
            raise ValueError(
                f"response shape {y.shape} does not match design rows {x_mat.shape[0]}"
            )
        if not np.all(np.isfinite(x_mat)):
            raise ValueError("design matrix contains non-finite values")
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ValueError("responses must be 0/1")
        if link not in LINKS:
            raise ValueError(f"unknown link {link!r}; expected one of {LINKS}")
        self.x_mat = x_mat
        self.y = y
        self.link = link

    @property
    def dim(self) -> int:
        return self.x_mat.shape[1]

    def _check_beta(self, beta) -> np.ndarray:
        beta = np.asarray(beta, dtype=float)
        if beta.shape != (self.dim,):
            raise ValueError(f"coefficient shape {beta.shape}, expected ({self.dim},)")
        return beta

    def logk_grad(self, beta):
        beta = self._check_beta(beta)
        eta = self.x_mat @ beta
        if self.link == "logit":
            loglik = float(self.y @ eta - np.sum(np.logaddexp(0.0, eta)))
            score = self.y - 1.0 / (1.0 + np.exp(-eta))
        else:
            lcdf, lsf = log_ndtr(eta), log_ndtr(-eta)
            loglik = float(self.y @ lcdf + (1.0 - self.y) @ lsf)
            logpdf = -0.5 * eta * eta - _LOG_SQRT_2PI
            lam1 = np.exp(logpdf - lcdf)
            lam0 = np.exp(logpdf - lsf)
            score = self.y * lam1 - (1.0 - self.y) * lam0
        logk = loglik - float(beta @ beta) / (2.0 * _PRIOR_VAR)
        grad = self.x_mat.T @ score - beta / _PRIOR_VAR
        return logk, grad

    def _curvature_weights(self, eta):
        """Observed weights W (with -hess = X'WX + I/100) and expected
        weights Lambda (information)."""
        if self.link == "logit":
            rho = 1.0 / (1.0 + np.exp(-eta))
            lam = rho * (1.0 - rho)
            return lam, lam
        lcdf, lsf = log_ndtr(eta), log_ndtr(-eta)
        logpdf = -0.5 * eta * eta - _LOG_SQRT_2PI
        lam1 = np.exp(logpdf - lcdf)
        lam0 = np.exp(logpdf - lsf)
        w = self.y * lam1 * (eta + lam1) + (1.0 - self.y) * lam0 * (lam0 - eta)
        return w, lam1 * lam0

    def eval(self, beta):
        beta = self._check_beta(beta)
        logk, grad = self.logk_grad(beta)
        w, _ = self._curvature_weights(self.x_mat @ beta)
        neg_hess = self.x_mat.T @ (w[:, None] * self.x_mat)
        neg_hess[np.diag_indices(self.dim)] += 1.0 / _PRIOR_VAR
        return TargetEval(logk=logk, grad=grad, hess=-neg_hess)

    def fisher_information(self, beta):
        """Expected information plus prior curvature, ``X' Lambda X + I/100``.

        For the logit link this equals the negative Hessian entry for entry
        (same intermediate arithmetic); for probit it does not.
        """
        beta = self._check_beta(beta)
        _, lam = self._curvature_weights(self.x_mat @ beta)
        info = self.x_mat.T @ (lam[:, None] * self.x_mat)
        info[np.diag_indices(self.dim)] += 1.0 / _PRIOR_VAR
        return info
