"""GARCH(1,1) posterior with standardized Student-t innovations.

Model for a return series ``y_1..y_T``::

    y_i = sqrt(h_i) * sqrt((nu - 2) / nu) * t_nu,
    h_1 = a0,   h_i = a0 + a1 * y_{i-1}^2 + b * h_{i-1}.

Priors: independent half-normal kernels ``exp(-a^2/2000)`` on ``a0, a1, b``
and a shifted-exponential kernel ``exp(-nu/100)`` on ``nu > 2``.  Sampling
runs in unconstrained coordinates ``(log a0, log a1, log b, log(nu - 2))``;
the log-Jacobian of that reparameterization is added to the kernel so the
chain targets the stated posterior, and the positivity truncations hold by
construction.

Gradients and Hessians are exact: the variance recursion is differentiated
in closed form (the sensitivity sequences satisfy the same linear recursion
``x_i = c_i + b * x_{i-1}`` and are evaluated with ``scipy.signal.lfilter``),
then mapped through the chain rule of the reparameterization.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter
from scipy.special import digamma, gammaln, polygamma

from .base import TargetEval, TargetModel

_LOG_PI = math.log(math.pi)


def simulate_garch(params, n_obs: int, seed: int) -> np.ndarray:
    """Draw a synthetic return series from the model, deterministic per seed.

    ``params`` is ``(a0, a1, b, nu)`` in natural coordinates with ``a0 > 0``,
    ``a1, b >= 0``, ``nu > 2`` and ``a1 + b < 1`` (covariance stationarity).
    """
    a0, a1, b, nu = (float(p) for p in params)
    if not (a0 > 0 and a1 >= 0 and b >= 0 and nu > 2 and a1 + b < 1):
        raise ValueError(f"invalid GARCH parameters {params}")
    if n_obs < 0:
        raise ValueError(f"series length must be non-negative, got {n_obs}")
    rng = np.random.default_rng(seed)
    y = np.empty(n_obs)
    scale = math.sqrt((nu - 2.0) / nu)
    h = a0
    for i in range(n_obs):
        y[i] = math.sqrt(h) * scale * rng.standard_t(nu)
        h = a0 + a1 * y[i] ** 2 + b * h
    return y


def _recurse(c: np.ndarray, b: float) -> np.ndarray:
    """Solve ``x_i = c_i + b * x_{i-1}`` with ``x_{-1} = 0``."""
    return lfilter([1.0], [1.0, -b], c)


def _lag(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    out[0] = 0.0
    out[1:] = x[:-1]
    return out


class GarchTTarget(TargetModel):
    """Posterior kernel of the GARCH(1,1)-t model in log coordinates."""

    def __init__(self, returns):
        y = np.asarray(returns, dtype=float)
        if y.ndim != 1 or y.size < 2:
            raise ValueError("GARCH target needs a 1-d series of length >= 2")
        if not np.all(np.isfinite(y)):
            raise ValueError("return series contains non-finite values")
        self.returns = y
        self._y2 = _lag(y) ** 2  # y_{i-1}^2 with zero at i = 0
        self._ysq = y**2

    @property
    def dim(self) -> int:
        return 4

    def eval(self, x):
        return self._evaluate(x, with_hess=True)

    def logk_grad(self, x):
        e = self._evaluate(x, with_hess=False)
        return e.logk, e.grad

    def _evaluate(self, x, with_hess: bool) -> TargetEval:
        x = np.asarray(x, dtype=float)
        if x.shape != (4,):
            raise ValueError(f"expected 4 transformed parameters, got shape {x.shape}")
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = self._evaluate_raw(x, with_hess)
        return self._bad_eval() if out is None else out

    def _evaluate_raw(self, x, with_hess: bool) -> TargetEval | None:
        a0, a1, b = np.exp(x[0]), np.exp(x[1]), np.exp(x[2])
        nu = 2.0 + np.exp(x[3])
        if not np.all(np.isfinite([a0, a1, b, nu])):
            return None

        y2 = self._y2
        n = y2.size
        c_h = a0 + a1 * y2
        h = _recurse(c_h, b)
        if not np.all(np.isfinite(h)) or np.any(h <= 0.0):
            return None

        # Per-observation pieces as functions of (h_i, nu).
        z = self._ysq / ((nu - 2.0) * h)
        log1pz = np.log1p(z)
        const = (
            gammaln((nu + 1.0) / 2.0)
            - gammaln(nu / 2.0)
            - 0.5 * math.log(nu - 2.0)
            - 0.5 * _LOG_PI
        )
        loglik = n * const - 0.5 * np.sum(np.log(h)) - 0.5 * (nu + 1.0) * np.sum(log1pz)

        # Priors (natural coordinates) and the reparameterization Jacobian.
        logprior = -(a0 * a0 + a1 * a1 + b * b) / 2000.0 - nu / 100.0
        logk = float(loglik + logprior + np.sum(x))
        if not np.isfinite(logk):
            return None

        onez = 1.0 + z
        gh = -0.5 / h + 0.5 * (nu + 1.0) * z / (h * onez)
        dconst = 0.5 * digamma((nu + 1.0) / 2.0) - 0.5 * digamma(nu / 2.0) - 0.5 / (
            nu - 2.0
        )
        gn_sum = (
            n * dconst
            - 0.5 * np.sum(log1pz)
            + 0.5 * (nu + 1.0) / (nu - 2.0) * np.sum(z / onez)
        )

        # Sensitivities of the variance recursion.
        s_a0 = _recurse(np.ones(n), b)
        s_a1 = _recurse(y2, b)
        s_b = _recurse(_lag(h), b)

        d_nat = np.array(
            [
                float(gh @ s_a0) - a0 / 1000.0,
                float(gh @ s_a1) - a1 / 1000.0,
                float(gh @ s_b) - b / 1000.0,
                float(gn_sum) - 0.01,
            ]
        )
        jac = np.array([a0, a1, b, nu - 2.0])
        grad = d_nat * jac + 1.0  # +1: gradient of the log-Jacobian
        if not np.all(np.isfinite(grad)):
            return None
        if not with_hess:
            return TargetEval(logk=logk, grad=grad, hess=np.empty((0, 0)))

        ghh = 0.5 / h**2 - 0.5 * (nu + 1.0) * z * (2.0 + z) / (h * onez) ** 2
        ghn = 0.5 * z / (h * onez) - 0.5 * (nu + 1.0) * z / (
            h * (nu - 2.0) * onez**2
        )
        d2const = (
            0.25 * polygamma(1, (nu + 1.0) / 2.0)
            - 0.25 * polygamma(1, nu / 2.0)
            + 0.5 / (nu - 2.0) ** 2
        )
        gnn_sum = (
            n * d2const
            + np.sum(z / onez) / (nu - 2.0)
            - 0.5 * (nu + 1.0) / (nu - 2.0) ** 2 * np.sum(z * (2.0 + z) / onez**2)
        )

        # Second derivatives of h: only pairs involving b survive.
        p_a0b = _recurse(_lag(s_a0), b)
        p_a1b = _recurse(_lag(s_a1), b)
        p_bb = _recurse(2.0 * _lag(s_b), b)

        sens = (s_a0, s_a1, s_b)
        curv = {(0, 2): p_a0b, (1, 2): p_a1b, (2, 2): p_bb}
        h_nat = np.empty((4, 4))
        for i in range(3):
            for j in range(i, 3):
                val = float(ghh @ (sens[i] * sens[j]))
                key = (min(i, j), max(i, j))
                if key in curv:
                    val += float(gh @ curv[key])
                h_nat[i, j] = h_nat[j, i] = val
        for i in range(3):
            v = float(ghn @ sens[i])
            h_nat[i, 3] = h_nat[3, i] = v
        h_nat[3, 3] = float(gnn_sum)
        for i in range(3):
            h_nat[i, i] -= 1.0 / 1000.0  # half-normal prior curvature

        hess = h_nat * np.outer(jac, jac)
        hess[np.diag_indices(4)] += d_nat * jac  # chain-rule term, exp'' = exp'
        hess = (hess + hess.T) / 2.0
        if not np.all(np.isfinite(hess)):
            return None
        return TargetEval(logk=logk, grad=grad, hess=hess)
