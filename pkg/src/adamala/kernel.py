"""Sampling kernels: metric-preconditioned Langevin proposals with adaptive
step size selection, a fixed-step variant, and an identity-mass HMC baseline.

One update of the adaptive sampler targets the augmented density
``pi(x) * N(w | 0, I)`` with a Metropolis-within-Gibbs sweep:

1. forward step size ``eps_f = eps(x_t, w_t)`` from the backtracking line
   search on the one-step energy error;
2. proposal ``x* ~ N(x_t + eps_f^2/2 G^{-1} g, eps_f^2 G^{-1})`` using a
   fresh standard normal ``z`` (``w_t`` only parameterizes the step size,
   so the kernel stays a valid MH step for each fixed ``w_t``);
3. backward step size ``eps_b = eps(x*, w_t)`` with the *same* ``w_t``,
   which makes steps 1-4 reversible for each ``w``;
4. accept/reject with the exact asymmetric proposal ratio;
5. refresh ``w``.

Per-iteration RNG consumption (fixed order, which makes traces replayable):
adaptive kinds draw ``z`` (d), one acceptance uniform, then the ``w``
refresh (d), plus one initial ``w`` at chain start; fixed-step kinds draw
``z`` and the acceptance uniform; HMC draws the momentum (d), one step-size
jitter uniform and the acceptance uniform.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .mcholesky import gmw_factorize, solve_lower, solve_upper_transpose
from .metric import MetricTensor, metric_eig, metric_mchol
from .targets.base import TargetEval, TargetModel

__all__ = [
    "KERNEL_KINDS",
    "SamplerConfig",
    "ChainState",
    "ProposalRecord",
    "Trace",
    "ChainAbort",
    "smmala_propose",
    "smmala_logq",
    "energy_error",
    "adaptive_step",
    "mwg_step",
    "fixed_step_smmala_step",
    "hmc_step",
    "run_chain",
]

KERNEL_KINDS = (
    "amh_mala",
    "amh_mala_eig",
    "fixed_smmala",
    "adaptive_smmala_fisher",
    "hmc",
)

_LOG_2PI = math.log(2.0 * math.pi)


class ChainAbort(RuntimeError):
    """Evaluation blow-up while running a chain; carries the iteration index."""

    def __init__(self, iteration: int, message: str):
        super().__init__(f"iteration {iteration}: {message}")
        self.iteration = iteration


@dataclass(frozen=True)
class SamplerConfig:
    """Tuning parameters of the adaptive kernels.

    ``gamma`` is the maximum tolerated one-step |energy error|; trial step
    sizes above it are decremented, starting from ``eps_bar``.  ``beta_ls``
    and ``rho_ls`` control the hard-decrement branch of the line search,
    ``u`` scales the pivot floor of the metric factorization, and
    ``max_ls_iters``/``eps_min`` bound the search so the step-size function
    is total (every returned step lies in ``[eps_min, eps_bar]``).
    """

    gamma: float = 1.0
    beta_ls: float = 10.0
    rho_ls: float = 0.5
    eps_bar: float = 1.0
    u: float = 0.001
    max_ls_iters: int = 25
    eps_min: float = 1e-6
    metric: str = "mchol"

    def __post_init__(self):
        if not (0.0 < self.gamma < self.beta_ls):
            raise ValueError(f"need 0 < gamma < beta_ls, got {self.gamma}, {self.beta_ls}")
        if not (0.0 < self.rho_ls < 1.0):
            raise ValueError(f"need rho_ls in (0, 1), got {self.rho_ls}")
        if not (0.0 < self.eps_min < self.eps_bar):
            raise ValueError(f"need 0 < eps_min < eps_bar, got {self.eps_min}, {self.eps_bar}")
        if not (0.0 < self.u < 1.0):
            raise ValueError(f"need u in (0, 1), got {self.u}")
        if self.max_ls_iters < 1:
            raise ValueError("max_ls_iters must be >= 1")
        if self.metric not in ("mchol", "eig"):
            raise ValueError(f"unknown metric strategy {self.metric!r}")


@dataclass
class ChainState:
    """Position with cached evaluation, metric factor and drift solve."""

    x: np.ndarray
    w: np.ndarray
    eval: TargetEval
    metric: MetricTensor
    ginv_g: np.ndarray  # G^{-1} g(x), reused by proposals and densities


@dataclass(frozen=True)
class ProposalRecord:
    """Per-iteration bookkeeping of one MH update."""

    x_star: np.ndarray
    eps_f: float
    eps_b: float
    alpha: float
    accepted: bool
    delta_f: float
    delta_b: float
    ls_iters_f: int
    ls_iters_b: int
    grad_evals: int


@dataclass
class Trace:
    """Column-oriented record of a chain run (post burn-in).

    ``start_x`` is the state the first recorded iteration departed from, so
    ``pre_positions()`` recovers the position at which each forward step
    size was computed.
    """

    kind: str
    seed: int
    config: SamplerConfig
    init: np.ndarray
    n_burn: int
    start_x: np.ndarray
    xs: np.ndarray
    x_star: np.ndarray
    eps_f: np.ndarray
    eps_b: np.ndarray
    alpha: np.ndarray
    delta_f: np.ndarray
    delta_b: np.ndarray
    accepted: np.ndarray
    ls_iters_f: np.ndarray
    ls_iters_b: np.ndarray
    grad_evals: np.ndarray
    elapsed_seconds: float = 0.0
    total_grad_evals: int = 0
    extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.xs.shape[0]

    @property
    def dim(self) -> int:
        return self.xs.shape[1]

    def pre_positions(self) -> np.ndarray:
        """Position each iteration started from (aligns with ``eps_f``)."""
        if len(self) == 0:
            return self.xs.copy()
        return np.vstack([self.start_x[None, :], self.xs[:-1]])


def _drift_solve(metric: MetricTensor, grad: np.ndarray) -> np.ndarray:
    """``G^{-1} grad`` via two triangular solves."""
    return solve_upper_transpose(metric.lower, solve_lower(metric.lower, grad))


def smmala_propose(
    x: np.ndarray,
    w: np.ndarray,
    eps: float,
    eval_x: TargetEval,
    metric_x: MetricTensor,
) -> np.ndarray:
    """Deterministic proposal map ``x + eps^2/2 G^{-1} g + eps L^{-T} w``.

    With ``w ~ N(0, I)`` the result is exactly one draw from the
    preconditioned Langevin proposal ``N(x + eps^2/2 G^{-1} g, eps^2 G^{-1})``
    (equivalently one leapfrog position update with mass matrix ``G``).
    """
    ginv_g = _drift_solve(metric_x, eval_x.grad)
    return x + (0.5 * eps * eps) * ginv_g + eps * solve_upper_transpose(metric_x.lower, w)


def smmala_logq(
    x_to: np.ndarray,
    x_from: np.ndarray,
    eps: float,
    eval_from: TargetEval,
    metric_from: MetricTensor,
    ginv_g: np.ndarray | None = None,
) -> float:
    """Log proposal density ``log N(x_to | x_from + eps^2/2 G^{-1}g, eps^2 G^{-1})``."""
    if ginv_g is None:
        ginv_g = _drift_solve(metric_from, eval_from.grad)
    d = x_to.shape[0]
    mean = x_from + (0.5 * eps * eps) * ginv_g
    v = metric_from.lower.T @ (x_to - mean)
    return (
        -0.5 * d * _LOG_2PI
        - d * math.log(eps)
        + 0.5 * metric_from.logdet_g
        - 0.5 * float(v @ v) / (eps * eps)
    )


def energy_error(
    eps: float,
    x: np.ndarray,
    w: np.ndarray,
    eval_x: TargetEval,
    metric_x: MetricTensor,
    logk_grad,
) -> tuple[float, np.ndarray, tuple[float, np.ndarray]]:
    """Energy error of a single trial leapfrog step of size ``eps``.

    The dummy Hamiltonian is ``-log pi(q) + p' G(x)^{-1} p / 2`` with the
    mass matrix frozen at the starting point; the step starts at
    ``q = x, p = L w``.  Writing ``r = L^{-1}(g(x) + g(x*))``,

        delta = -log pi(x) + log pi(x*) - eps/2 w'r - eps^2/8 r'r.

    Returns ``(delta, x_star, (logk_star, grad_star))`` so callers can reuse
    the trial evaluation.  A non-finite trial log-kernel reports
    ``delta = -inf`` (infinite magnitude for the line search).
    """
    lower = metric_x.lower
    ginv_g = _drift_solve(metric_x, eval_x.grad)
    x_star = x + (0.5 * eps * eps) * ginv_g + eps * solve_upper_transpose(lower, w)
    logk_star, grad_star = logk_grad(x_star)
    delta = _energy_error_at(
        eps, w, eval_x.logk, eval_x.grad, lower, x_star, logk_star, grad_star
    )
    return delta, x_star, (logk_star, grad_star)


def _energy_error_at(eps, w, logk_x, grad_x, lower, x_star, logk_star, grad_star):
    if not math.isfinite(logk_star):
        return -math.inf
    r = solve_lower(lower, grad_x + grad_star)
    delta = (
        -logk_x
        + logk_star
        - 0.5 * eps * float(w @ r)
        - 0.125 * eps * eps * float(r @ r)
    )
    return delta if math.isfinite(delta) else -math.inf


def next_trial_eps(abs_delta: float, eps: float, cfg: SamplerConfig) -> float:
    """One decrement of the backtracking line search.

    Above ``beta_ls`` the step is cut by the factor ``rho_ls``; otherwise the
    next trial is 0.95 times the root of the cubic ``(e/eps)^3 |delta| =
    gamma`` (the energy error vanishes cubically in the step size, so the
    observed value pins a third-order monomial model).
    """
    if abs_delta > cfg.beta_ls:
        return cfg.rho_ls * eps
    return 0.95 * (cfg.gamma / abs_delta) ** (1.0 / 3.0) * eps


def _line_search(logk_grad, x, w, logk_x, grad_x, metric, ginv_g, cfg):
    """Backtracking search for the largest trial step with |delta| < gamma.

    Returns ``(eps, n_trials, last_trial)`` where ``last_trial`` is the
    ``(x_star, logk, grad)`` of the last evaluated trial point.  The search
    is deterministic given ``(x, w)`` and always returns a value in
    ``[eps_min, eps_bar]``, so the step-size function is fixed for the whole
    run and strictly positive.
    """
    lower = metric.lower
    c_noise = solve_upper_transpose(lower, w)
    eps = cfg.eps_bar
    last = None
    for s in range(1, cfg.max_ls_iters + 1):
        x_star = x + (0.5 * eps * eps) * ginv_g + eps * c_noise
        logk_star, grad_star = logk_grad(x_star)
        last = (x_star, logk_star, grad_star)
        delta = _energy_error_at(
            eps, w, logk_x, grad_x, lower, x_star, logk_star, grad_star
        )
        abs_delta = abs(delta)
        if abs_delta > cfg.beta_ls:
            nxt = cfg.rho_ls * eps
        elif abs_delta < cfg.gamma:
            return eps, s, last
        else:
            nxt = 0.95 * (cfg.gamma / abs_delta) ** (1.0 / 3.0) * eps
        if s == cfg.max_ls_iters or nxt < cfg.eps_min:
            return max(nxt, cfg.eps_min), s, last
        eps = nxt
    return eps, cfg.max_ls_iters, last


def adaptive_step(
    target: TargetModel,
    x: np.ndarray,
    w: np.ndarray,
    eval_x: TargetEval,
    metric_x: MetricTensor,
    cfg: SamplerConfig,
) -> tuple[float, np.ndarray, tuple[float, np.ndarray], int]:
    """Adaptive step size at ``(x, w)``.

    Returns ``(eps, x_star, (logk_star, grad_star), ls_iters)`` where the
    trial point belongs to the last evaluated trial (callers that propose
    with fresh noise discard it).
    """
    ginv_g = _drift_solve(metric_x, eval_x.grad)
    eps, iters, last = _line_search(
        target.logk_grad, x, w, eval_x.logk, eval_x.grad, metric_x, ginv_g, cfg
    )
    x_star, logk_star, grad_star = last
    return eps, x_star, (logk_star, grad_star), iters


def _make_state(target, metric_fn, x, w) -> ChainState:
    ev = target.eval(x)
    if not ev.is_finite:
        raise ValueError(f"target evaluation is not finite at {x}")
    metric = metric_fn(ev, x)
    return ChainState(x=x, w=w, eval=ev, metric=metric, ginv_g=_drift_solve(metric, ev.grad))


def mwg_step(
    target: TargetModel,
    state: ChainState,
    cfg: SamplerConfig,
    rng: np.random.Generator,
    metric_fn,
) -> tuple[ChainState, ProposalRecord]:
    """One Metropolis-within-Gibbs sweep of the adaptive sampler."""
    x, w = state.x, state.w
    logk_x, grad_x = state.eval.logk, state.eval.grad
    lower = state.metric.lower

    eps_f, _, _, iters_f = _adaptive_eps(target, state, cfg)

    z = rng.standard_normal(x.shape[0])
    x_star = x + (0.5 * eps_f * eps_f) * state.ginv_g + eps_f * solve_upper_transpose(lower, z)
    eval_star = target.eval(x_star)
    grad_evals = iters_f + 1

    delta_f = _energy_error_at(
        eps_f, z, logk_x, grad_x, lower, x_star, eval_star.logk, eval_star.grad
    )

    if not eval_star.is_finite:
        # Unusable trial point: reject without attempting the reverse metric.
        # The per-iteration draw order (z, acceptance uniform, w refresh)
        # stays fixed so traces remain replayable.
        rng.uniform()
        w_next = rng.standard_normal(x.shape[0])
        rec = ProposalRecord(
            x_star=x_star, eps_f=eps_f, eps_b=cfg.eps_min, alpha=0.0, accepted=False,
            delta_f=delta_f, delta_b=-math.inf, ls_iters_f=iters_f, ls_iters_b=0,
            grad_evals=grad_evals,
        )
        return replace_state_w(state, w_next), rec

    metric_star = metric_fn(eval_star, x_star)
    ginv_g_star = _drift_solve(metric_star, eval_star.grad)
    prop_state = ChainState(
        x=x_star, w=w, eval=eval_star, metric=metric_star, ginv_g=ginv_g_star
    )

    eps_b, _, _, iters_b = _adaptive_eps(target, prop_state, cfg)
    grad_evals += iters_b

    log_alpha = (
        eval_star.logk
        + smmala_logq(x, x_star, eps_b, eval_star, metric_star, ginv_g_star)
        - logk_x
        - smmala_logq(x_star, x, eps_f, state.eval, state.metric, state.ginv_g)
    )
    # Backward diagnostic: reconstruct the standardized reverse noise s.
    r_b = solve_lower(metric_star.lower, grad_x + eval_star.grad)
    s_vec = metric_star.lower.T @ (
        x - x_star - (0.5 * eps_b * eps_b) * ginv_g_star
    ) / eps_b
    delta_b = (
        -eval_star.logk
        + logk_x
        - 0.5 * eps_b * float(s_vec @ r_b)
        - 0.125 * eps_b * eps_b * float(r_b @ r_b)
    )

    alpha = _clamp_alpha(log_alpha)
    # NaN log_alpha compares False, so pathological ratios reject.
    accepted = math.log(rng.uniform()) < log_alpha
    w_next = rng.standard_normal(x.shape[0])

    rec = ProposalRecord(
        x_star=x_star, eps_f=eps_f, eps_b=eps_b, alpha=alpha, accepted=bool(accepted),
        delta_f=delta_f, delta_b=delta_b, ls_iters_f=iters_f, ls_iters_b=iters_b,
        grad_evals=grad_evals,
    )
    if accepted:
        prop_state.w = w_next
        return prop_state, rec
    return replace_state_w(state, w_next), rec


def replace_state_w(state: ChainState, w: np.ndarray) -> ChainState:
    return ChainState(
        x=state.x, w=w, eval=state.eval, metric=state.metric, ginv_g=state.ginv_g
    )


def _adaptive_eps(target, state, cfg):
    return adaptive_step(target, state.x, state.w, state.eval, state.metric, cfg)


def _clamp_alpha(log_alpha: float) -> float:
    if math.isnan(log_alpha):
        return 0.0
    return math.exp(min(log_alpha, 0.0))


def fixed_step_smmala_step(
    target: TargetModel,
    state: ChainState,
    eps: float,
    cfg: SamplerConfig,
    rng: np.random.Generator,
    metric_fn,
) -> tuple[ChainState, ProposalRecord]:
    """Plain reversible MH update with both step sizes fixed to ``eps``."""
    x = state.x
    logk_x, grad_x = state.eval.logk, state.eval.grad
    lower = state.metric.lower

    z = rng.standard_normal(x.shape[0])
    x_star = x + (0.5 * eps * eps) * state.ginv_g + eps * solve_upper_transpose(lower, z)
    eval_star = target.eval(x_star)
    delta_f = _energy_error_at(
        eps, z, logk_x, grad_x, lower, x_star, eval_star.logk, eval_star.grad
    )

    if not eval_star.is_finite:
        rng.uniform()
        rec = ProposalRecord(
            x_star=x_star, eps_f=eps, eps_b=eps, alpha=0.0, accepted=False,
            delta_f=delta_f, delta_b=-math.inf, ls_iters_f=0, ls_iters_b=0, grad_evals=1,
        )
        return state, rec

    metric_star = metric_fn(eval_star, x_star)
    ginv_g_star = _drift_solve(metric_star, eval_star.grad)

    log_alpha = (
        eval_star.logk
        + smmala_logq(x, x_star, eps, eval_star, metric_star, ginv_g_star)
        - logk_x
        - smmala_logq(x_star, x, eps, state.eval, state.metric, state.ginv_g)
    )
    r_b = solve_lower(metric_star.lower, grad_x + eval_star.grad)
    s_vec = metric_star.lower.T @ (x - x_star - (0.5 * eps * eps) * ginv_g_star) / eps
    delta_b = (
        -eval_star.logk
        + logk_x
        - 0.5 * eps * float(s_vec @ r_b)
        - 0.125 * eps * eps * float(r_b @ r_b)
    )

    alpha = _clamp_alpha(log_alpha)
    accepted = math.log(rng.uniform()) < log_alpha
    rec = ProposalRecord(
        x_star=x_star, eps_f=eps, eps_b=eps, alpha=alpha, accepted=bool(accepted),
        delta_f=delta_f, delta_b=delta_b, ls_iters_f=0, ls_iters_b=0, grad_evals=1,
    )
    if accepted:
        return ChainState(
            x=x_star, w=state.w, eval=eval_star, metric=metric_star, ginv_g=ginv_g_star
        ), rec
    return state, rec


def hmc_step(
    target: TargetModel,
    x: np.ndarray,
    logk_x: float,
    grad_x: np.ndarray,
    eps: float,
    n_leapfrog: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float, np.ndarray, bool, float, float]:
    """Identity-mass HMC update with fresh momentum and +-10% step jitter.

    Returns ``(x_next, logk_next, grad_next, accepted, energy_error, eps_used)``.
    """
    if n_leapfrog < 1:
        raise ValueError("need at least one leapfrog step")
    d = x.shape[0]
    p = rng.standard_normal(d)
    eps_used = eps * rng.uniform(0.9, 1.1)
    h0 = -logk_x + 0.5 * float(p @ p)

    q, logk_q, grad_q = x, logk_x, grad_x
    p = p + 0.5 * eps_used * grad_q
    ok = True
    for step in range(n_leapfrog):
        q = q + eps_used * p
        logk_q, grad_q = target.logk_grad(q)
        if not math.isfinite(logk_q):
            ok = False
            break
        p = p + (eps_used if step < n_leapfrog - 1 else 0.5 * eps_used) * grad_q

    if ok:
        h1 = -logk_q + 0.5 * float(p @ p)
        delta = h0 - h1
        accepted = math.log(rng.uniform()) < delta
    else:
        delta = -math.inf
        rng.uniform()
        accepted = False
    if accepted:
        return q, logk_q, grad_q, True, delta, eps_used
    return x, logk_x, grad_x, False, delta, eps_used


def _make_metric_fn(target: TargetModel, kind: str, cfg: SamplerConfig):
    """Metric builder for a kernel kind, caching position-independent cases."""
    if kind == "adaptive_smmala_fisher":
        def build(ev, x):
            info = target.fisher_information(x)
            res = gmw_factorize(info, cfg.u)
            return MetricTensor(lower=res.lower, logdet_g=res.logdet, strategy="fisher")

        cacheable = target.constant_fisher
    else:
        strategy = metric_mchol if cfg.metric == "mchol" else metric_eig

        def build(ev, x):
            return strategy(ev.hess, cfg.u)

        cacheable = target.constant_hessian

    if not cacheable:
        return build

    cache: list[MetricTensor | None] = [None]

    def cached(ev, x):
        if cache[0] is None:
            cache[0] = build(ev, x)
        return cache[0]

    return cached


def run_chain(
    target: TargetModel,
    kind: str,
    n_samples: int,
    n_burn: int,
    seed: int,
    init,
    cfg: SamplerConfig | None = None,
    fixed_eps: float = 1.0,
    hmc_eps: float = 0.1,
    hmc_leapfrog: int = 10,
) -> Trace:
    """Run one chain and return its post-burn-in trace.

    Deterministic per seed: a single PCG64 stream drives every draw in the
    documented per-iteration order.
    """
    if kind not in KERNEL_KINDS:
        raise ValueError(f"unknown kernel kind {kind!r}; expected one of {KERNEL_KINDS}")
    if n_samples < 0 or n_burn < 0:
        raise ValueError("iteration counts must be non-negative")
    cfg = cfg or SamplerConfig()
    init = np.atleast_1d(np.asarray(init, dtype=float))
    if init.shape != (target.dim,):
        raise ValueError(f"init shape {init.shape} does not match target dim {target.dim}")

    rng = np.random.default_rng(seed)
    d = target.dim
    total = n_burn + n_samples

    n = n_samples
    xs = np.empty((n, d))
    x_star = np.empty((n, d))
    eps_f = np.empty(n)
    eps_b = np.empty(n)
    alpha = np.empty(n)
    delta_f = np.empty(n)
    delta_b = np.empty(n)
    accepted = np.empty(n, dtype=bool)
    ls_f = np.zeros(n, dtype=np.int64)
    ls_b = np.zeros(n, dtype=np.int64)
    gevals = np.zeros(n, dtype=np.int64)

    t0 = time.perf_counter()
    total_gevals = 0
    start_x = init.copy()

    if kind == "hmc":
        logk_x, grad_x = target.logk_grad(init)
        if not math.isfinite(logk_x):
            raise ValueError(f"target evaluation is not finite at {init}")
        x = init.copy()
        for i in range(total):
            if i == n_burn:
                start_x = x.copy()
            try:
                x, logk_x, grad_x, acc, delta, eps_used = hmc_step(
                    target, x, logk_x, grad_x, hmc_eps, hmc_leapfrog, rng
                )
            except (ValueError, np.linalg.LinAlgError) as exc:
                raise ChainAbort(i, str(exc)) from exc
            total_gevals += hmc_leapfrog
            if i >= n_burn:
                j = i - n_burn
                xs[j] = x
                x_star[j] = x  # proposal endpoint not retained on rejection
                eps_f[j] = eps_b[j] = eps_used
                alpha[j] = _clamp_alpha(delta)
                delta_f[j] = delta_b[j] = delta
                accepted[j] = acc
                gevals[j] = hmc_leapfrog
    else:
        metric_fn = _make_metric_fn(target, kind, cfg)
        uses_w = kind != "fixed_smmala"
        w0 = rng.standard_normal(d) if uses_w else np.zeros(d)
        try:
            state = _make_state(target, metric_fn, init.copy(), w0)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise ChainAbort(0, str(exc)) from exc
        for i in range(total):
            if i == n_burn:
                start_x = state.x.copy()
            try:
                if kind == "fixed_smmala":
                    state, rec = fixed_step_smmala_step(
                        target, state, fixed_eps, cfg, rng, metric_fn
                    )
                else:
                    state, rec = mwg_step(target, state, cfg, rng, metric_fn)
            except (ValueError, np.linalg.LinAlgError) as exc:
                raise ChainAbort(i, str(exc)) from exc
            total_gevals += rec.grad_evals
            if i >= n_burn:
                j = i - n_burn
                xs[j] = state.x
                x_star[j] = rec.x_star
                eps_f[j] = rec.eps_f
                eps_b[j] = rec.eps_b
                alpha[j] = rec.alpha
                delta_f[j] = rec.delta_f
                delta_b[j] = rec.delta_b
                accepted[j] = rec.accepted
                ls_f[j] = rec.ls_iters_f
                ls_b[j] = rec.ls_iters_b
                gevals[j] = rec.grad_evals

    return Trace(
        kind=kind,
        seed=seed,
        config=cfg,
        init=init,
        n_burn=n_burn,
        start_x=start_x,
        xs=xs,
        x_star=x_star,
        eps_f=eps_f,
        eps_b=eps_b,
        alpha=alpha,
        delta_f=delta_f,
        delta_b=delta_b,
        accepted=accepted,
        ls_iters_f=ls_f,
        ls_iters_b=ls_b,
        grad_evals=gevals,
        elapsed_seconds=time.perf_counter() - t0,
        total_grad_evals=total_gevals,
        extra={"fixed_eps": fixed_eps, "hmc_eps": hmc_eps, "hmc_leapfrog": hmc_leapfrog},
    )
