"""Common target-model interface consumed by the sampling kernels."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TargetEval:
    """Log-kernel value, gradient and Hessian at a point.

    ``logk`` is ``-inf`` with NaN derivatives when the evaluation blew up
    (overflowing recursions, out-of-support points); kernels treat such
    points as rejectable.
    """

    logk: float
    grad: np.ndarray
    hess: np.ndarray

    @property
    def is_finite(self) -> bool:
        return np.isfinite(self.logk)


class TargetModel(ABC):
    """A target density kernel exposing value, gradient and Hessian.

    Models are immutable after construction (data is captured at build time)
    and evaluations are pure, so instances can be shared across concurrently
    running chains.
    """

    #: True when the Hessian does not depend on the position (lets samplers
    #: cache the metric factor).
    constant_hessian: bool = False
    #: Same for the Fisher information, where available.
    constant_fisher: bool = False

    @property
    @abstractmethod
    def dim(self) -> int:
        """Dimension of the sampled position vector."""

    @abstractmethod
    def eval(self, x: np.ndarray) -> TargetEval:
        """Full evaluation: log-kernel, gradient and Hessian at ``x``."""

    def logk_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """Log-kernel and gradient only (cheaper when overridden)."""
        e = self.eval(x)
        return e.logk, e.grad

    def fisher_information(self, x: np.ndarray) -> np.ndarray:
        """Expected-information metric at ``x``; optional per model."""
        raise NotImplementedError(
            f"{type(self).__name__} does not define a Fisher information"
        )

    def _bad_eval(self) -> TargetEval:
        d = self.dim
        return TargetEval(
            logk=-np.inf, grad=np.full(d, np.nan), hess=np.full((d, d), np.nan)
        )
