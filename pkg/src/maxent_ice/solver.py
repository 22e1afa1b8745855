"""Dual solver for maximum-entropy behavior estimation under regret constraints.

Minimizes, over per-modification multiplier pairs (alpha, beta) living on a
scaled simplex of radius C,

    sum_i max_j [ demo_j . (alpha_i - beta_i) ]  +  log Z(alpha, beta),

where demo_j are the demonstrated expected-regret vectors and Z sums
exp(-regret . lambda) over the target game's outcomes.  Exponentiated-gradient
steps keep the iterates feasible; the predictive distribution and a utility
estimate are read off the multipliers afterwards.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp, softmax

from maxent_ice import behavior, games, oracle
from maxent_ice.behavior import BehaviorDistribution
from maxent_ice.games import Game, ModificationSet

log = logging.getLogger("maxent_ice")

__all__ = [
    "SolverParams",
    "DualSolution",
    "FittedModel",
    "dual_objective",
    "dual_gradient",
    "eg_step",
    "default_gamma",
    "iteration_bound",
    "solve",
    "recover_primal",
    "recover_utility",
    "fit",
    "save_model",
    "load_model",
]

_EXP_CLAMP = 50.0


@dataclass
class SolverParams:
    """Knobs for the dual optimizer.

    gap_tol None means fixed-T mode; otherwise the solver stops as soon as the
    measured duality gap at the best iterate drops below it.  delta_cap and
    gamma default to the largest regret entry and sqrt(2 log(|mods|K))/delta.
    """

    C: float
    T: int = 20000
    gamma: float | None = None
    gap_tol: float | None = 1e-4
    delta_cap: float | None = None
    gap_check_every: int = 25
    polish: bool = True
    polish_mu_min: float = 1e-10

    def __post_init__(self):
        if self.C <= 0:
            raise ValueError("C must be > 0")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.gamma is not None and self.gamma <= 0:
            raise ValueError("gamma must be > 0")
        if self.gap_check_every < 1:
            raise ValueError("gap_check_every must be >= 1")


@dataclass
class DualSolution:
    alpha: np.ndarray  # (|mods_target|, K)
    beta: np.ndarray
    xi: float
    C: float
    objective_value: float
    iterations_run: int
    converged: bool
    gap: float
    clamp_events: int = 0


@dataclass
class FittedModel:
    dual: DualSolution
    predicted: BehaviorDistribution
    recovered_w: np.ndarray
    nu_certified: float
    demonstrated_regrets: np.ndarray  # (|mods_obs|, K)


def default_gamma(num_multipliers: int, delta_cap: float) -> float:
    """Base step size sqrt(2 log(|mods|K)) / delta."""
    if delta_cap <= 0:
        return 1.0
    return math.sqrt(2.0 * math.log(max(num_multipliers, 2))) / delta_cap


def iteration_bound(eps: float, num_multipliers: int, delta_cap: float) -> int:
    """Conservative iteration count for an eps-accurate dual solution."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    return max(1, math.ceil(2.0 * delta_cap**2 * math.log(max(num_multipliers, 2)) / eps**2))


def _stack_regrets(game: Game, mods: ModificationSet) -> np.ndarray:
    """Target regret rows as a single (|outcomes|, |mods|*K) matrix."""
    n, k = game.num_outcomes, game.feature_dim
    out = np.empty((n, len(mods) * k))
    for i, f in enumerate(mods):
        out[:, i * k : (i + 1) * k] = games.regret_row_block(game, f)
    return out


def _log_partition(neg_exponents: np.ndarray) -> float:
    m = neg_exponents.max()
    return float(m + np.log(np.exp(neg_exponents - m).sum()))


def _softmax(neg_exponents: np.ndarray) -> np.ndarray:
    z = np.exp(neg_exponents - neg_exponents.max())
    return z / z.sum()


def _objective(lam: np.ndarray, demo: np.ndarray, rmat: np.ndarray) -> float:
    scores = demo @ lam.T  # (J, I)
    return float(scores.max(axis=0).sum()) + _log_partition(-(rmat @ lam.ravel()))


def _gradient(lam: np.ndarray, demo: np.ndarray, rmat: np.ndarray) -> np.ndarray:
    i_count, k = lam.shape
    scores = demo @ lam.T
    j_star = np.argmax(scores, axis=0)  # ties -> lowest index
    p = _softmax(-(rmat @ lam.ravel()))
    model = (p @ rmat).reshape(i_count, k)
    return demo[j_star] - model


def _as_tensor(regret_matrices, k: int) -> np.ndarray:
    """(|mods|, A, K) tensor -> (A, |mods|*K) matrix."""
    t = np.asarray(regret_matrices, dtype=float)
    if t.ndim != 3 or t.shape[2] != k:
        raise ValueError("regret matrices must be a (|mods|, outcomes, K) tensor")
    return t.transpose(1, 0, 2).reshape(t.shape[1], t.shape[0] * k)


def dual_objective(alpha, beta, demo_regrets, regret_matrices_bar) -> float:
    """Dual objective at multipliers (alpha, beta); see module docstring."""
    lam = np.asarray(alpha, dtype=float) - np.asarray(beta, dtype=float)
    demo = np.atleast_2d(np.asarray(demo_regrets, dtype=float))
    return _objective(lam, demo, _as_tensor(regret_matrices_bar, lam.shape[1]))


def dual_gradient(alpha, beta, demo_regrets, regret_matrices_bar) -> np.ndarray:
    """Gradient of the dual objective w.r.t. lambda = alpha - beta.

    The update consumes +g for alpha and -g for beta.  Argmax ties in the
    demonstrated term break toward the lowest modification index.
    """
    lam = np.asarray(alpha, dtype=float) - np.asarray(beta, dtype=float)
    demo = np.atleast_2d(np.asarray(demo_regrets, dtype=float))
    return _gradient(lam, demo, _as_tensor(regret_matrices_bar, lam.shape[1]))


def eg_step(alpha, beta, g, step: float, C: float, xi: float = 1.0):
    """One exponentiated-gradient step projected onto the C-simplex.

    Returns (alpha', beta', xi', clamp_count); xi' is the residual slack mass,
    so xi' + sum(alpha') + sum(beta') == C exactly.

    The slack is carried as a proper multiplicative-weights coordinate with
    zero gradient: rho = xi + sum(alpha e^-x + beta e^x) and xi' = C xi / rho.
    With xi = 1 (the default, and the only feasible slack when alpha and beta
    already exhaust C - 1) this is the textbook rho = 1 + ... update; pinning
    the slack weight at 1 unconditionally would create fixed points away from
    the optimum whenever the budget constraint binds.
    """
    if step <= 0:
        raise ValueError("step must be > 0")
    if xi < 0:
        raise ValueError("xi must be >= 0")
    x = step * np.asarray(g, dtype=float)
    clamps = int(np.count_nonzero(np.abs(x) > _EXP_CLAMP))
    x = np.clip(x, -_EXP_CLAMP, _EXP_CLAMP)
    ea = np.asarray(alpha, dtype=float) * np.exp(-x)
    eb = np.asarray(beta, dtype=float) * np.exp(x)
    rho = xi + ea.sum() + eb.sum()
    return C * ea / rho, C * eb / rho, C * xi / rho, clamps


@dataclass
class _Problem:
    demo: np.ndarray  # (J, K)
    rmat: np.ndarray  # (A, I*K)
    num_mods_target: int
    feature_dim: int
    delta: float


def _prepare(
    game_obs: Game,
    mods_obs: ModificationSet,
    sigma_tilde: BehaviorDistribution,
    game_target: Game,
    mods_target: ModificationSet,
) -> _Problem:
    if game_obs.feature_dim != game_target.feature_dim:
        raise ValueError("observed and target games must share the feature dimension")
    if sigma_tilde.num_outcomes != game_obs.num_outcomes:
        raise ValueError("demonstrated behavior is over the wrong outcome space")
    if len(mods_obs) == 0 or len(mods_target) == 0:
        raise ValueError("modification sets must be nonempty")
    demo = games.demonstrated_regrets(game_obs, mods_obs, sigma_tilde.probs)
    rmat = _stack_regrets(game_target, mods_target)
    delta = max(games.max_regret_entry(game_obs, mods_obs),
                float(np.abs(rmat).max()) if rmat.size else 0.0)
    return _Problem(
        demo=demo,
        rmat=rmat,
        num_mods_target=len(mods_target),
        feature_dim=game_target.feature_dim,
        delta=delta,
    )


def solve(
    game_obs: Game,
    mods_obs: ModificationSet,
    sigma_tilde: BehaviorDistribution,
    game_target: Game | None = None,
    mods_target: ModificationSet | None = None,
    params: SolverParams | None = None,
) -> DualSolution:
    """Run the dual optimizer; prediction mode is game_target = game_obs.

    Iterates with step gamma/sqrt(t), tracks the best-objective iterate, and
    (in gap mode) periodically measures the exact duality gap against the
    recovered distribution, stopping when it reaches the tolerance.  Never
    aborts on non-convergence: the best iterate comes back flagged.
    """
    if game_target is None:
        game_target = game_obs
    if mods_target is None:
        mods_target = mods_obs
    if params is None:
        params = SolverParams(C=10.0 * game_obs.feature_dim)
    prob = _prepare(game_obs, mods_obs, sigma_tilde, game_target, mods_target)
    sol = _solve_prepared(prob, params)
    if params.gap_tol is not None:
        sol.gap = _measure_gap(sol, prob, params.C)
        sol.converged = sol.gap <= params.gap_tol
    return sol


def _measure_gap(sol: DualSolution, prob: _Problem, C: float) -> float:
    lam = sol.alpha - sol.beta
    p = _softmax(-(prob.rmat @ lam.ravel()))
    pts = (p @ prob.rmat).reshape(prob.num_mods_target, prob.feature_dim)
    dists, _ = oracle.slack_against_hull(pts, prob.demo)
    primal = behavior.entropy(BehaviorDistribution(p)) - C * float(dists.max())
    return sol.objective_value - primal


# annealed gradually (factor 10) — large jumps leave the optimizer stranded at
# the previous stage's smoothed optimum
_POLISH_SCHEDULE = tuple(10.0 ** -e for e in range(11))
_POLISH_SCHEDULE_CONSTRAINED = (1e-2, 1e-4, 1e-6, 1e-8, 1e-10)
_POLISH_SCHEDULE_NEWTON = (1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12)
_POLISH_CONSTRAINED_MAX_VARS = 600
_POLISH_NEWTON_MAX_FLOPS = 2e8  # outcomes * (|mods|*K)^2 per Hessian build


def _smoothed_dual(x, demo, rmat, i_count, k, mu, ridge):
    """Dual objective with the demonstrated max replaced by mu*logsumexp(./mu),
    plus a small ridge; returns (value, gradient wrt flattened lambda)."""
    lam = x.reshape(i_count, k)
    scores = demo @ lam.T  # (J, I)
    weights = softmax(scores / mu, axis=0)
    val = mu * logsumexp(scores / mu, axis=0).sum()
    grad_max = np.einsum("ji,jk->ik", weights, demo)
    z = -(rmat @ x)
    val += logsumexp(z) + ridge * (x @ x)
    p = softmax(z)
    grad = (grad_max - (p @ rmat).reshape(i_count, k)).ravel()
    return val, grad + 2.0 * ridge * x


def _smoothed_dual_hess(x, demo, rmat, i_count, k, mu):
    """(value, gradient, Hessian) of the smoothed dual at flattened lambda."""
    nm = i_count * k
    lam = x.reshape(i_count, k)
    scores = demo @ lam.T  # (J, I)
    weights = softmax(scores / mu, axis=0)
    val = mu * logsumexp(scores / mu, axis=0).sum()
    grad_max = np.einsum("ji,jk->ik", weights, demo)
    z = -(rmat @ x)
    val += logsumexp(z)
    p = softmax(z)
    grad = (grad_max - (p @ rmat).reshape(i_count, k)).ravel()
    centered = rmat - (p @ rmat)[None, :]
    hess = (centered * p[:, None]).T @ centered
    for i in range(i_count):
        dw = demo * weights[:, i][:, None]  # (J, K)
        mean = dw.sum(axis=0)
        hess[i * k : (i + 1) * k, i * k : (i + 1) * k] += (
            demo.T @ dw - np.outer(mean, mean)
        ) / mu
    return val, grad, hess


def _newton_refine(x: np.ndarray, demo: np.ndarray, rmat: np.ndarray,
                   i_count: int, k: int, C: float) -> np.ndarray:
    """Damped Newton continuation on the smoothed dual down to mu = 1e-12.

    The recovered primal amplifies dual suboptimality roughly by a square
    root, so a 1e-4 measured gap can demand a 1e-11 dual excess — beyond what
    first-order steps deliver.  Only valid off the budget boundary: steps that
    leave the l1 ball or fail to decrease are rejected.
    """
    nm = i_count * k
    for mu in _POLISH_SCHEDULE_NEWTON:
        f, grad, hess = _smoothed_dual_hess(x, demo, rmat, i_count, k, mu)
        for _ in range(50):
            ridge = 1e-13 * np.trace(hess) / nm
            try:
                step = np.linalg.solve(hess + ridge * np.eye(nm), grad)
            except np.linalg.LinAlgError:
                break
            tau, accepted = 1.0, False
            for _ in range(40):
                x2 = x - tau * step
                if np.abs(x2).sum() <= C:
                    f2, g2, h2 = _smoothed_dual_hess(x2, demo, rmat,
                                                     i_count, k, mu)
                    if f2 < f:
                        x, f, grad, hess = x2, f2, g2, h2
                        accepted = True
                        break
                tau *= 0.5
            if not accepted or np.linalg.norm(grad) < 1e-13:
                break
    return x


def _polish_lambda(lam0: np.ndarray, demo: np.ndarray, rmat: np.ndarray,
                   C: float, mu_min: float = 1e-10) -> np.ndarray:
    """Refine lambda by annealed smoothing of the demonstrated max term.

    Stage one minimizes the smoothed dual unconstrained with L-BFGS; the ridge
    tied to mu keeps the iterate from drifting along the numerically flat
    directions the saturated exponentials leave behind, and vanishes with mu.
    If the result leaves the l1 ball of radius C (the budget binds), stage two
    re-solves with the budget as an explicit constraint via an
    (alpha, beta) >= 0 split and SLSQP, warm-started from the rescaled stage-one
    point.  The caller only accepts the candidate when the true (nonsmooth)
    objective improves, so a poor polish is harmless.
    """
    i_count, k = lam0.shape
    nm = i_count * k

    x = lam0.ravel().copy()
    for mu in _POLISH_SCHEDULE:
        if mu < mu_min:
            break
        res = minimize(_smoothed_dual, x, jac=True, method="L-BFGS-B",
                       args=(demo, rmat, i_count, k, mu, 1e-2 * mu),
                       options={"maxiter": 1000, "ftol": 1e-18, "gtol": 1e-14})
        x = res.x
    l1 = float(np.abs(x).sum())
    if l1 <= C:
        if rmat.shape[0] * nm * nm <= _POLISH_NEWTON_MAX_FLOPS:
            x = _newton_refine(x, demo, rmat, i_count, k, C)
        return x.reshape(i_count, k)
    x = x * (C / l1)
    if 2 * nm > _POLISH_CONSTRAINED_MAX_VARS:
        return _l1_penalty_polish(x, demo, rmat, i_count, k, C,
                                  mu_min).reshape(i_count, k)

    def split_fun(v, mu, ridge):
        val, gx = _smoothed_dual(v[:nm] - v[nm:], demo, rmat, i_count, k,
                                 mu, 0.0)
        return (val + ridge * (v @ v),
                np.concatenate([gx, -gx]) + 2.0 * ridge * v)

    v = np.concatenate([np.maximum(x, 0.0), np.maximum(-x, 0.0)])
    budget = [{"type": "ineq", "fun": lambda v: C - v.sum(),
               "jac": lambda v: -np.ones_like(v)}]
    for mu in _POLISH_SCHEDULE_CONSTRAINED:
        res = minimize(split_fun, v, jac=True, method="SLSQP",
                       args=(mu, 1e-2 * mu),
                       bounds=[(0.0, None)] * (2 * nm), constraints=budget,
                       options={"maxiter": 300, "ftol": 1e-16})
        v = np.maximum(res.x, 0.0)
    x = v[:nm] - v[nm:]
    l1 = float(np.abs(x).sum())
    if l1 > C:
        x = x * (C / l1)
    return x.reshape(i_count, k)


_POLISH_SCHEDULE_PENALTY = (1e-1, 1e-2, 1e-3)


def _l1_penalty_polish(x: np.ndarray, demo: np.ndarray, rmat: np.ndarray,
                       i_count: int, k: int, C: float,
                       mu_min: float) -> np.ndarray:
    """Budget-constrained refinement for problems too large for SLSQP.

    Replaces the hard l1-ball constraint with an exact penalty tau*|lambda|_1
    on the (alpha, beta) >= 0 split, which L-BFGS-B handles natively via
    bounds, and bisects tau until the solution norm straddles the budget C.
    The returned point is always feasible (rescaled if the final norm
    overshoots), so a loose bisection only costs solution quality, never
    validity.
    """
    nm = i_count * k

    def penalized(v, tau, mu):
        val, gx = _smoothed_dual(v[:nm] - v[nm:], demo, rmat, i_count, k,
                                 mu, 0.0)
        ridge = 1e-2 * mu
        return (val + tau * v.sum() + ridge * (v @ v),
                np.concatenate([gx, -gx]) + tau + 2.0 * ridge * v)

    bounds = [(0.0, None)] * (2 * nm)
    v = np.concatenate([np.maximum(x, 0.0), np.maximum(-x, 0.0)])
    for mu in _POLISH_SCHEDULE_PENALTY:
        if mu < mu_min:
            break
        _, g0 = _smoothed_dual(np.zeros(nm), demo, rmat, i_count, k, mu, 0.0)
        tau_hi = float(np.abs(g0).max())  # at this tau, lambda = 0 is optimal
        tau_lo = 0.0  # unconstrained norm exceeds C (checked by the caller)
        best = v
        for _ in range(7):
            tau = 0.5 * (tau_lo + tau_hi)
            res = minimize(penalized, v, jac=True, method="L-BFGS-B",
                           args=(tau, mu),
                           bounds=bounds,
                           options={"maxiter": 200, "ftol": 1e-15,
                                    "gtol": 1e-12})
            v = np.maximum(res.x, 0.0)
            norm = v.sum()
            if norm > C:
                tau_lo = tau
            else:
                tau_hi = tau
                best = v
            if abs(norm - C) <= 5e-2 * C:
                best = v
                break
        v = best
    x = v[:nm] - v[nm:]
    l1 = float(np.abs(x).sum())
    if l1 > C:
        x = x * (C / l1)
    return x


def _solve_prepared(prob: _Problem, params: SolverParams) -> DualSolution:
    i_count, k = prob.num_mods_target, prob.feature_dim
    nm = i_count * k
    delta = params.delta_cap if params.delta_cap is not None else prob.delta
    gamma = params.gamma if params.gamma is not None else default_gamma(nm, delta)

    alpha = np.full((i_count, k), 1.0 / (nm + 1))
    beta = np.full((i_count, k), 1.0 / (nm + 1))
    xi = 1.0 / (nm + 1)  # first projection establishes the C budget
    clamps = 0

    best_obj = math.inf
    best = (alpha.copy(), beta.copy(), xi)
    gap = math.inf
    converged = False
    t_run = 0
    next_gap_check = params.gap_check_every
    polish_sol = None  # (objective, alpha, beta, xi, gap), computed once

    for t in range(1, params.T + 1):
        t_run = t
        lam = alpha - beta
        obj = _objective(lam, prob.demo, prob.rmat)
        if obj < best_obj:
            best_obj = obj
            best = (alpha.copy(), beta.copy(), xi)
        g = _gradient(lam, prob.demo, prob.rmat)
        alpha, beta, xi, c = eg_step(alpha, beta, g, gamma / math.sqrt(t), params.C, xi)
        clamps += c
        if params.gap_tol is not None and t % params.gap_check_every == 0 \
                and t >= next_gap_check:
            if params.polish and polish_sol is None:
                cand = _polish_lambda(np.zeros((i_count, k)), prob.demo,
                                      prob.rmat, params.C,
                                      mu_min=params.polish_mu_min)
                a_pol = np.maximum(cand, 0.0)
                b_pol = np.maximum(-cand, 0.0)
                xi_pol = params.C - a_pol.sum() - b_pol.sum()
                probe = DualSolution(
                    alpha=a_pol, beta=b_pol, xi=xi_pol, C=params.C,
                    objective_value=_objective(cand, prob.demo, prob.rmat),
                    iterations_run=t, converged=False, gap=math.inf,
                )
                polish_sol = (probe.objective_value, a_pol, b_pol, xi_pol,
                              _measure_gap(probe, prob, params.C))
            probe = DualSolution(
                alpha=best[0], beta=best[1], xi=best[2], C=params.C,
                objective_value=best_obj, iterations_run=t, converged=False, gap=gap,
            )
            gap = _measure_gap(probe, prob, params.C)
            if polish_sol is not None and polish_sol[4] < gap:
                best_obj = polish_sol[0]
                best = (polish_sol[1], polish_sol[2], polish_sol[3])
                gap = polish_sol[4]
            if gap <= params.gap_tol:
                converged = True
                break
            # exact LPs make each check expensive; space them out geometrically
            next_gap_check = max(next_gap_check + params.gap_check_every,
                                 int(1.3 * t))

    # final objective of the last iterate may still improve on the best
    obj = _objective(alpha - beta, prob.demo, prob.rmat)
    if obj < best_obj:
        best_obj = obj
        best = (alpha.copy(), beta.copy(), xi)
    if not converged and params.gap_tol is not None:
        log.debug("solver exhausted T=%d without reaching gap tolerance", params.T)
    return DualSolution(
        alpha=best[0],
        beta=best[1],
        xi=best[2],
        C=params.C,
        objective_value=best_obj,
        iterations_run=t_run,
        converged=converged,
        gap=gap,
        clamp_events=clamps,
    )


def recover_primal(
    dual: DualSolution, game_target: Game, mods_target: ModificationSet
) -> BehaviorDistribution:
    """Predictive distribution sigma_a = exp(-regret_a . lambda) / Z."""
    rmat = _stack_regrets(game_target, mods_target)
    lam = dual.alpha - dual.beta
    if lam.size != rmat.shape[1]:
        raise ValueError("dual solution does not match the target game")
    return BehaviorDistribution(_softmax(-(rmat @ lam.ravel())))


def recover_utility(dual: DualSolution):
    """Per-modification probabilities and utility vectors, and their mean.

    Returns (pi, lambda, w_hat) with w_hat = sum_i pi_i * lambda_i; the slack
    mass xi/C sits on the zero utility vector, so ||w_hat||_1 <= C.
    """
    if dual.C <= 0:
        raise ValueError("C must be > 0")
    lam = dual.alpha - dual.beta
    pi = (dual.alpha + dual.beta).sum(axis=1) / dual.C
    w_hat = pi @ lam
    return pi, lam, w_hat


def fit(
    game_obs: Game,
    mods_obs: ModificationSet,
    sigma_tilde: BehaviorDistribution,
    game_target: Game | None = None,
    mods_target: ModificationSet | None = None,
    params: SolverParams | None = None,
) -> FittedModel:
    """Solve, recover the prediction and utility estimate, and certify the slack."""
    if game_target is None:
        game_target = game_obs
    if mods_target is None:
        mods_target = mods_obs
    if params is None:
        params = SolverParams(C=10.0 * game_obs.feature_dim)
        log.warning("no slack budget given; defaulting to C = 10*K = %g", params.C)
    prob = _prepare(game_obs, mods_obs, sigma_tilde, game_target, mods_target)
    sol = _solve_prepared(prob, params)
    lam = sol.alpha - sol.beta
    p = _softmax(-(prob.rmat @ lam.ravel()))
    pts = (p @ prob.rmat).reshape(prob.num_mods_target, prob.feature_dim)
    dists, _ = oracle.slack_against_hull(pts, prob.demo)
    nu = float(dists.max())
    predicted = BehaviorDistribution(p)
    sol.gap = sol.objective_value - (behavior.entropy(predicted) - params.C * nu)
    if params.gap_tol is not None:
        sol.converged = sol.gap <= params.gap_tol
    _, _, w_hat = recover_utility(sol)
    return FittedModel(
        dual=sol,
        predicted=predicted,
        recovered_w=w_hat,
        nu_certified=nu,
        demonstrated_regrets=prob.demo,
    )


def save_model(model: FittedModel, path, target_game_ref: str = "") -> None:
    doc = {
        "C": model.dual.C,
        "T_run": model.dual.iterations_run,
        "converged": model.dual.converged,
        "alpha": model.dual.alpha.tolist(),
        "beta": model.dual.beta.tolist(),
        "xi": model.dual.xi,
        "w_hat": model.recovered_w.tolist(),
        "objective": model.dual.objective_value,
        "gap": model.dual.gap,
        "nu": model.nu_certified,
        "target_game": target_game_ref,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_model(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
