"""Command-line front door: game generation, sampling, fitting, evaluation,
sample-complexity bounds, and the prediction/transfer experiment runners.

All tabular output is RFC-4180 CSV with the fixed header
``experiment,method,M,seed,metric,value,wall_time_ms``.  Every command is
deterministic given --seed; the wall_time_ms column is always 0 so reruns
are byte-identical (timing is inherently nondeterministic).

Exit codes: 0 ok, 2 usage/config error, 3 incompatible inputs,
4 numerical failure (artifacts are still written).
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from maxent_ice import baselines, behavior, equilibria, games, routing, solver

log = logging.getLogger("maxent_ice")

CSV_HEADER = ("experiment", "method", "M", "seed", "metric", "value",
              "wall_time_ms")

# Experiment-grade solver settings, selected on the desk game (see README):
# the slack budget is a coarse grid choice, flat across observation counts.
FIG2_C = 1024.0
FIG2_T = 20000
TABLE1_C = 1024.0
TABLE1_M = 16
# Transfer enforcement is backed off when the fitted model certifies that the
# observed regret constraints cannot be met in the target game (nu stays
# large no matter how hard the solver pushes).  Hard enforcement of
# unsatisfiable constraints trades all prediction entropy for nothing.
TABLE1_NU_TOL = 0.05
TABLE1_C_SOFT = 4.0
EQ_SEEDS = 32
EQ_ITERS = 20000


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_rows(out, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")


def _load_game_or_config(path):
    """Returns (game, w_star_or_None). Accepts a routing config or game doc."""
    doc = _load_json(path)
    if "drivers" in doc:
        cfg = routing.RoutingConfig.from_dict(doc)
        game, w_star = routing.build(cfg)
        return game, w_star
    try:
        return games.game_from_dict(doc), None
    except (KeyError, ValueError) as exc:
        raise click.ClickException(f"{path} is neither a routing config nor "
                                   f"a game file: {exc}")


def _mods_for(game, kind: str):
    if kind == "swap":
        return games.swap_modifications(game)
    return games.internal_modifications(game)


@click.group()
@click.option("--seed", default=0, show_default=True, help="Base RNG seed.")
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Output file (CSV commands default to stdout).")
@click.option("--threads", default=1, show_default=True,
              help="Worker threads for experiment grids.")
@click.pass_context
def main(ctx, seed, out, threads):
    """MaxEnt inverse-correlated-equilibrium toolkit."""
    level = os.environ.get("ICE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.ensure_object(dict)
    ctx.obj.update(seed=seed, out=out, threads=max(1, threads))


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.argument("outdir", type=click.Path(file_okay=False))
@click.pass_context
def gen(ctx, config, outdir):
    """Build a game from CONFIG; write game, utilities and equilibrium."""
    doc = _load_json(config)
    os.makedirs(outdir, exist_ok=True)
    if "drivers" in doc:
        cfg = routing.RoutingConfig.from_dict(doc)
        game, w_star = routing.build(cfg)
        games.save_game(game, os.path.join(outdir, "game.json"))
        run = equilibria.mixed_equilibrium(game, w_star, iters=EQ_ITERS,
                                           seeds=range(EQ_SEEDS))
        behavior.save_distribution(run.sigma, os.path.join(outdir, "sigma.json"))
        with open(os.path.join(outdir, "meta.json"), "w") as fh:
            json.dump({"w_star": list(map(float, w_star)),
                       "epsilon": run.epsilon_achieved,
                       "iterations": run.iterations}, fh)
        click.echo(f"wrote game ({game.num_outcomes} outcomes), equilibrium "
                   f"(epsilon={run.epsilon_achieved:.3g}) to {outdir}")
    else:
        game = games.game_from_dict(doc)
        games.save_game(game, os.path.join(outdir, "game.json"))
        click.echo(f"wrote game ({game.num_outcomes} outcomes) to {outdir}")


@main.command()
@click.argument("sigma_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-m", "num", default=16, show_default=True,
              help="Number of observations to draw.")
@click.pass_context
def sample(ctx, sigma_file, num):
    """Draw observations from a saved behavior distribution."""
    sigma = behavior.load_distribution(sigma_file)
    samples = behavior.draw(sigma, num, seed=ctx.obj["seed"])
    out = ctx.obj["out"] or "samples.json"
    behavior.save_samples(samples, out)
    click.echo(f"wrote {num} observations to {out}")


@main.command()
@click.argument("game_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("samples_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--C", "budget", default=None, type=float,
              help="Multiplier/utility l1 budget (defaults per solver policy).")
@click.option("--T", "iters", default=None, type=int,
              help="Exponentiated-gradient iteration cap (default: the "
                   "theoretical bound for a 0.05-accurate dual, capped at 1e5).")
@click.option("--gamma", default=None, type=float, help="Base step size.")
@click.option("--transfer-game", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Predict in this game instead of the observed one.")
@click.option("--mods", default="internal", show_default=True,
              type=click.Choice(["internal", "swap"]))
@click.pass_context
def fit(ctx, game_file, samples_file, budget, iters, gamma, transfer_game,
        mods):
    """Fit a prediction (or transfer) model from observations."""
    game, _ = _load_game_or_config(game_file)
    samples = behavior.load_samples(samples_file)
    emp = behavior.empirical(samples, game)
    mods_obs = _mods_for(game, mods)
    game_target, mods_target = None, None
    if transfer_game is not None:
        game_target, _ = _load_game_or_config(transfer_game)
        if game_target.feature_dim != game.feature_dim:
            click.echo("feature dimensions of observed and transfer games "
                       "disagree", err=True)
            sys.exit(3)
        mods_target = _mods_for(game_target, mods)
    if budget is None:
        budget = 10.0 * game.feature_dim
        log.warning("no budget given; defaulting to C = 10*K = %g", budget)
    if iters is None:
        delta = games.max_regret_entry(game, mods_obs)
        if game_target is not None:
            delta = max(delta, games.max_regret_entry(game_target, mods_target))
        n_mult = len(mods_target or mods_obs) * game.feature_dim
        iters = min(solver.iteration_bound(0.05, n_mult, delta), 100_000)
    params = solver.SolverParams(C=budget, T=iters, gamma=gamma)
    model = solver.fit(game, mods_obs, emp, game_target=game_target,
                       mods_target=mods_target, params=params)
    out = ctx.obj["out"] or "model.json"
    solver.save_model(model, out, target_game_ref=transfer_game or game_file)
    pred_out = out + ".pred.json"
    behavior.save_distribution(model.predicted, pred_out)
    click.echo(f"gap={model.dual.gap:.3g} nu={model.nu_certified:.3g} "
               f"model -> {out}, prediction -> {pred_out}")
    if not (np.isfinite(model.dual.gap)
            and np.all(np.isfinite(model.predicted.probs))):
        click.echo("numerical failure: non-finite gap or prediction "
                   "(artifacts written)", err=True)
        sys.exit(4)
    if not model.dual.converged:
        click.echo("duality gap above tolerance; increase --T or lower --C",
                   err=True)


@main.command(name="eval")
@click.argument("pred_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("truth_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def eval_cmd(ctx, pred_file, truth_file):
    """Log-loss and entropy of a prediction against a reference."""
    pred = behavior.load_distribution(pred_file)
    truth = behavior.load_distribution(truth_file)
    if pred.num_outcomes != truth.num_outcomes:
        click.echo("prediction and reference are over different outcome "
                   "spaces", err=True)
        sys.exit(3)
    rows = [
        ("eval", "prediction", 0, ctx.obj["seed"], "log_loss",
         _fmt(behavior.log_loss(truth, pred)), 0),
        ("eval", "prediction", 0, ctx.obj["seed"], "entropy",
         _fmt(behavior.entropy(pred)), 0),
        ("eval", "truth", 0, ctx.obj["seed"], "entropy",
         _fmt(behavior.entropy(truth)), 0),
    ]
    _write_rows(ctx.obj["out"], rows)


@main.command()
@click.argument("epsilon", type=float)
@click.argument("delta", type=float)
@click.argument("mods_size", type=int)
@click.argument("k", type=int)
def samplebound(epsilon, delta, mods_size, k):
    """Observations sufficient for epsilon-accurate regret features."""
    try:
        m = behavior.sample_bound(epsilon, delta, mods_size, k)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    click.echo(m)


def _fig2_cell(game, mods, truth, m, seed):
    samples = behavior.draw(truth, m, seed=seed)
    emp = behavior.empirical(samples, game)
    params = solver.SolverParams(C=FIG2_C, T=FIG2_T, polish=False)
    ice = solver.fit(game, mods, emp, params=params).predicted
    mle = baselines.mle_uniform_prior(samples, game)
    logistic = baselines.predict_logistic(
        baselines.fit_logistic(samples, game), game)
    return {
        "maxent_ice": behavior.log_loss(truth, ice),
        "mle": behavior.log_loss(truth, mle),
        "logistic": behavior.log_loss(truth, logistic),
    }


def _check_hoeffding(game, mods, truth, epsilon=0.1, delta=0.05,
                     trials=500):
    """Empirical deviation test for the sample-complexity bound.

    Returns (M, deviation_rate, upper_confidence): the rate at which the
    empirical regret features of M draws deviate from their expectation by
    at least epsilon*Delta in any coordinate, plus a one-sided 95% binomial
    upper bound on that rate.
    """
    m = behavior.sample_bound(epsilon, delta, len(mods), game.feature_dim)
    rstack = np.stack([games.regret_row_block(game, f) for f in mods])
    delta_cap = float(np.abs(rstack).max())
    expect = np.einsum("a,iak->ik", truth.probs, rstack)
    bad = 0
    for trial in range(trials):
        emp = behavior.empirical(behavior.draw(truth, m, seed=trial), game)
        dev = np.abs(np.einsum("a,iak->ik", emp.probs, rstack) - expect).max()
        bad += dev >= epsilon * delta_cap
    rate = bad / trials
    upper = rate + 1.645 * math.sqrt(max(rate * (1.0 - rate), 1e-12) / trials)
    return m, rate, upper


@main.command()
@click.option("--config", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Routing config (default: built-in desk game).")
@click.option("--max-m", default=1024, show_default=True,
              help="Largest observation count (grid is powers of two).")
@click.option("--seeds", default=10, show_default=True,
              help="Number of sampling seeds per observation count.")
@click.option("--check-hoeffding", is_flag=True,
              help="Also run the 500-trial sample-complexity deviation test.")
@click.pass_context
def fig2(ctx, config, max_m, seeds, check_hoeffding):
    """Prediction log-loss versus number of observations (CSV)."""
    if config is not None:
        cfg = routing.RoutingConfig.from_dict(_load_json(config))
    else:
        cfg = routing.desk_config()
    game, w_star = routing.build(cfg)
    truth = equilibria.mixed_equilibrium(game, w_star, iters=EQ_ITERS,
                                         seeds=range(EQ_SEEDS)).sigma
    mods = games.internal_modifications(game)
    grid_m = [2 ** q for q in range(int(math.log2(max_m)) + 1)]
    base_seed = ctx.obj["seed"]
    seed_list = [base_seed + s for s in range(seeds)]
    cells = [(m, s) for m in grid_m for s in seed_list]

    def run_cell(cell):
        m, s = cell
        return cell, _fig2_cell(game, mods, truth, m, s)

    if ctx.obj["threads"] > 1:
        with ThreadPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
            results = dict(pool.map(run_cell, cells))
    else:
        results = dict(map(run_cell, cells))

    h_truth = behavior.entropy(truth)
    ll_uniform = math.log(game.num_outcomes)
    rows = []
    for m in grid_m:
        for s in seed_list:
            cell = results[(m, s)]
            for method in ("maxent_ice", "mle", "logistic"):
                rows.append(("fig2", method, m, s, "log_loss",
                             _fmt(cell[method]), 0))
            rows.append(("fig2", "uniform", m, s, "log_loss",
                         _fmt(ll_uniform), 0))
            rows.append(("fig2", "truth", m, s, "log_loss", _fmt(h_truth), 0))
    failed = False
    if check_hoeffding:
        m_bound, rate, upper = _check_hoeffding(game, mods, truth)
        rows.append(("fig2", "truth", m_bound, base_seed,
                     "hoeffding_deviation_rate", _fmt(rate), 0))
        rows.append(("fig2", "truth", m_bound, base_seed,
                     "hoeffding_upper_95", _fmt(upper), 0))
        failed = upper > 0.05
    _write_rows(ctx.obj["out"], rows)
    if failed:
        click.echo("sample-complexity deviation test failed", err=True)
        sys.exit(4)


@main.command()
@click.option("--config", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Base routing config (default: built-in 7-driver game).")
@click.pass_context
def table1(ctx, config):
    """Transfer log-loss on the four structural variants (CSV)."""
    if config is not None:
        cfg = routing.RoutingConfig.from_dict(_load_json(config))
    else:
        cfg = routing.default_config()
    game, w_star = routing.build(cfg)
    truth = equilibria.mixed_equilibrium(game, w_star, iters=EQ_ITERS,
                                         seeds=range(EQ_SEEDS)).sigma
    mods = games.internal_modifications(game)
    seed = ctx.obj["seed"]
    samples = behavior.draw(truth, TABLE1_M, seed=seed)
    emp = behavior.empirical(samples, game)
    logistic_model = baselines.fit_logistic(samples, game)
    rows = []
    for kind in routing.VARIANT_KINDS:
        vcfg = routing.variant(cfg, kind)
        vgame, vw = routing.build(vcfg)
        vtruth = equilibria.mixed_equilibrium(vgame, vw, iters=EQ_ITERS,
                                              seeds=range(EQ_SEEDS)).sigma
        vmods = games.internal_modifications(vgame)
        params = solver.SolverParams(C=TABLE1_C, T=100, polish=True,
                                     polish_mu_min=1e-2)
        model = solver.fit(game, mods, emp, game_target=vgame,
                           mods_target=vmods, params=params)
        if model.nu_certified > TABLE1_NU_TOL:
            log.info("%s: certified slack %.3g > %g; backing off to C=%g",
                     kind, model.nu_certified, TABLE1_NU_TOL, TABLE1_C_SOFT)
            soft = solver.SolverParams(C=TABLE1_C_SOFT, T=100, polish=True,
                                       polish_mu_min=1e-2)
            model = solver.fit(game, mods, emp, game_target=vgame,
                               mods_target=vmods, params=soft)
        ice = model.predicted
        logistic = baselines.predict_logistic(logistic_model, vgame)
        exp = f"table1-{kind}"
        rows.append((exp, "maxent_ice", TABLE1_M, seed, "log_loss",
                     _fmt(behavior.log_loss(vtruth, ice)), 0))
        rows.append((exp, "logistic", TABLE1_M, seed, "log_loss",
                     _fmt(behavior.log_loss(vtruth, logistic)), 0))
        rows.append((exp, "uniform", TABLE1_M, seed, "log_loss",
                     _fmt(math.log(vgame.num_outcomes)), 0))
        rows.append((exp, "truth", TABLE1_M, seed, "log_loss",
                     _fmt(behavior.entropy(vtruth)), 0))
    _write_rows(ctx.obj["out"], rows)


if __name__ == "__main__":
    main()
