"""Target distribution models: log-kernel, gradient and Hessian evaluation."""

from .base import TargetEval, TargetModel
from .binreg import BinaryRegressionTarget, simulate_binreg
from .data import DataError, load_regression_csv, load_returns_csv
from .garch import GarchTTarget, simulate_garch
from .simple import GaussianTarget, StudentTTarget

__all__ = [
    "TargetEval",
    "TargetModel",
    "GaussianTarget",
    "StudentTTarget",
    "GarchTTarget",
    "BinaryRegressionTarget",
    "simulate_garch",
    "simulate_binreg",
    "DataError",
    "load_returns_csv",
    "load_regression_csv",
]
