"""Target model tests.

The derivative oracle is central finite differencing, kept independent of
the analytic code paths under test: gradients are checked against
differenced log-kernels and Hessians against differenced gradients.
"""

import math

import numpy as np
import pytest
from scipy.special import gammaln
from scipy.stats import norm

from adamala.targets import (
    BinaryRegressionTarget,
    GarchTTarget,
    GaussianTarget,
    StudentTTarget,
    simulate_binreg,
    simulate_garch,
)

GRAD_TOL = 1e-5
HESS_TOL = 1e-4


def fd_gradient(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.empty(x.size)
    for i in range(x.size):
        step = h * max(1.0, abs(x[i]))
        e = np.zeros(x.size)
        e[i] = step
        g[i] = (f(x + e) - f(x - e)) / (2.0 * step)
    return g


def fd_hessian(target, x, h=1e-6):
    cols = [
        fd_gradient(lambda v, i=i: target.eval(v).grad[i], x, h=h)
        for i in range(np.asarray(x).size)
    ]
    return np.column_stack(cols)


def assert_derivatives_match(target, points):
    for x in points:
        e = target.eval(x)
        gfd = fd_gradient(lambda v: target.eval(v).logk, x)
        rel_g = np.linalg.norm(gfd - e.grad) / max(1.0, np.linalg.norm(e.grad))
        assert rel_g <= GRAD_TOL
        np.testing.assert_allclose(e.hess, e.hess.T, atol=1e-12)
        hfd = fd_hessian(target, x)
        rel_h = np.linalg.norm(hfd - e.hess) / max(1.0, np.linalg.norm(e.hess))
        assert rel_h <= HESS_TOL


class TestGaussian:
    def test_standard_normal_mode(self):
        t = GaussianTarget(mu=[0.0], sigma=[[1.0]])
        e = t.eval(np.array([0.0]))
        assert e.logk == 0.0
        np.testing.assert_allclose(e.grad, [0.0])
        np.testing.assert_allclose(e.hess, [[-1.0]])

    def test_standard_normal_unit_point(self):
        e = GaussianTarget([0.0], [[1.0]]).eval(np.array([1.0]))
        assert e.logk == pytest.approx(-0.5)
        np.testing.assert_allclose(e.grad, [-1.0])

    def test_diagonal_gradient(self):
        t = GaussianTarget(mu=[1.0, 2.0], sigma=np.diag([4.0, 9.0]))
        e = t.eval(np.array([3.0, 5.0]))
        np.testing.assert_allclose(e.grad, [-0.5, -1.0 / 3.0], rtol=1e-12)

    def test_rejects_non_spd(self):
        with pytest.raises(ValueError):
            GaussianTarget([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]])

    def test_derivative_oracle(self):
        rng = np.random.default_rng(21)
        a = rng.standard_normal((3, 3))
        sigma = a @ a.T + 0.5 * np.eye(3)
        t = GaussianTarget(mu=rng.standard_normal(3), sigma=sigma)
        assert_derivatives_match(t, rng.standard_normal((20, 3)) * 2.0)

    def test_fisher_is_precision(self):
        t = GaussianTarget([0.0, 0.0], np.diag([4.0, 0.25]))
        np.testing.assert_allclose(
            t.fisher_information(np.zeros(2)), np.diag([0.25, 4.0]), rtol=1e-12
        )


class TestStudentT:
    def test_mode_curvature(self):
        e = StudentTTarget(4.0).eval(np.array([0.0]))
        np.testing.assert_allclose(e.grad, [0.0])
        assert e.hess[0, 0] == pytest.approx(-1.25)

    def test_inflection_points_exact(self):
        t = StudentTTarget(4.0)
        assert t.eval(np.array([2.0])).hess[0, 0] == 0.0
        assert t.eval(np.array([-2.0])).hess[0, 0] == 0.0
        # Curvature changes sign across |x| = 2.
        assert t.eval(np.array([1.99])).hess[0, 0] < 0
        assert t.eval(np.array([2.01])).hess[0, 0] > 0

    def test_gradient_value(self):
        e = StudentTTarget(4.0).eval(np.array([3.0]))
        assert e.grad[0] == pytest.approx(-15.0 / 13.0, rel=1e-14)

    def test_derivative_oracle(self):
        rng = np.random.default_rng(22)
        t = StudentTTarget(4.0)
        assert_derivatives_match(t, rng.uniform(-4, 4, size=(20, 1)))

    def test_rejects_bad_nu(self):
        with pytest.raises(ValueError):
            StudentTTarget(0.0)


@pytest.fixture(scope="module")
def series():
    return simulate_garch((0.05, 0.1, 0.8, 8.0), 300, seed=5)


@pytest.fixture(scope="module")
def data():
    x_mat, y, _ = simulate_binreg(80, 4, seed=31)
    return x_mat, y


class TestGarch:
    INIT = np.array([math.log(0.05), math.log(0.1), math.log(0.8), math.log(6.0)])

    def test_derivative_oracle(self, series):
        rng = np.random.default_rng(23)
        t = GarchTTarget(series)
        points = self.INIT + 0.3 * rng.standard_normal((20, 4))
        assert_derivatives_match(t, points)

    def test_iid_reduction(self, series):
        # With a1, b -> 0 the likelihood collapses to iid scaled-t with
        # variance a0; compare against a directly coded iid log-likelihood.
        y = series[:10]
        t = GarchTTarget(y)
        a0, nu = 0.05, 8.0
        x = np.array([math.log(a0), -40.0, -40.0, math.log(nu - 2.0)])
        const = (
            gammaln((nu + 1) / 2)
            - gammaln(nu / 2)
            - 0.5 * math.log(nu - 2.0)
            - 0.5 * math.log(math.pi)
        )
        loglik = np.sum(
            const - 0.5 * math.log(a0) - 0.5 * (nu + 1) * np.log1p(y**2 / ((nu - 2) * a0))
        )
        logprior = -(a0**2 + 2.0 * math.exp(-40.0) ** 2) / 2000.0 - nu / 100.0
        oracle = loglik + logprior + x.sum()
        assert t.eval(x).logk == pytest.approx(oracle, rel=1e-12)

    def test_blowup_flagged(self, series):
        t = GarchTTarget(series)
        e = t.eval(np.array([0.0, 0.0, 400.0, 0.0]))  # b = e^400 overflows h
        assert e.logk == -math.inf
        assert np.all(np.isnan(e.grad))

    def test_requires_minimum_length(self):
        with pytest.raises(ValueError):
            GarchTTarget(np.array([0.1]))

    def test_simulate_empty(self):
        assert simulate_garch((0.05, 0.1, 0.8, 8.0), 0, seed=1).size == 0

    def test_simulate_deterministic(self):
        a = simulate_garch((0.05, 0.1, 0.8, 8.0), 50, seed=9)
        b = simulate_garch((0.05, 0.1, 0.8, 8.0), 50, seed=9)
        np.testing.assert_array_equal(a, b)

    def test_simulate_rejects_bad_params(self):
        with pytest.raises(ValueError):
            simulate_garch((0.05, 0.5, 0.6, 8.0), 10, seed=1)  # a1 + b >= 1
        with pytest.raises(ValueError):
            simulate_garch((-0.1, 0.1, 0.5, 8.0), 10, seed=1)

    def test_simulate_stationary_variance(self):
        # Unit-variance innovations make Var(y) = a0 / (1 - a1 - b).
        y = simulate_garch((0.05, 0.1, 0.8, 8.0), 100_000, seed=42)
        assert y.var() == pytest.approx(0.5, rel=0.05)


class TestBinaryRegression:
    def test_logit_mode_hessian(self, data):
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link="logit")
        e = t.eval(np.zeros(4))
        expected = -0.25 * x_mat.T @ x_mat - np.eye(4) / 100.0
        np.testing.assert_allclose(e.hess, expected, rtol=1e-12)

    def test_logit_neg_hessian_is_information(self, data):
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link="logit")
        rng = np.random.default_rng(32)
        for _ in range(10):
            beta = rng.standard_normal(4)
            np.testing.assert_array_equal(
                -t.eval(beta).hess, t.fisher_information(beta)
            )

    def test_probit_information_at_origin(self, data):
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link="probit")
        expected = (2.0 / math.pi) * x_mat.T @ x_mat + np.eye(4) / 100.0
        np.testing.assert_allclose(
            t.fisher_information(np.zeros(4)), expected, rtol=1e-12
        )

    def test_probit_information_spd(self, data):
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link="probit")
        rng = np.random.default_rng(33)
        for _ in range(10):
            info = t.fisher_information(rng.standard_normal(4))
            assert np.min(np.linalg.eigvalsh(info)) > 0

    @pytest.mark.parametrize("link", ["logit", "probit"])
    def test_derivative_oracle(self, data, link):
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link=link)
        rng = np.random.default_rng(34)
        assert_derivatives_match(t, 0.7 * rng.standard_normal((20, 4)))

    def test_probit_extreme_linear_predictor_stable(self, data):
        # log- and ratio-computations must survive |eta| far beyond 8.
        x_mat, y = data
        t = BinaryRegressionTarget(x_mat, y, link="probit")
        beta = np.full(4, 12.0)
        e = t.eval(beta)
        assert np.isfinite(e.logk)
        assert np.all(np.isfinite(e.grad))
        assert np.all(np.isfinite(e.hess))

    def test_probit_tail_ratio_against_closed_form(self):
        # phi/Phi at a few moderate points, against scipy's pdf/cdf directly.
        x_mat = np.array([[1.0]])
        t = BinaryRegressionTarget(x_mat, np.array([1.0]), link="probit")
        for b in (-6.0, -2.0, 0.0, 2.0, 6.0):
            _, grad = t.logk_grad(np.array([b]))
            expected = norm.pdf(b) / norm.cdf(b) - b / 100.0
            np.testing.assert_allclose(grad[0], expected, rtol=1e-10)

    def test_shape_validation(self, data):
        x_mat, y = data
        with pytest.raises(ValueError):
            BinaryRegressionTarget(x_mat, y[:-1])
        with pytest.raises(ValueError):
            BinaryRegressionTarget(x_mat, y + 0.5)
        with pytest.raises(ValueError):
            BinaryRegressionTarget(x_mat, y, link="cauchit")
        t = BinaryRegressionTarget(x_mat, y)
        with pytest.raises(ValueError):
            t.eval(np.zeros(5))
