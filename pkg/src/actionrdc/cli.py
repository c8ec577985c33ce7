"""Config-driven command line front end.

Three subcommands: `run` executes a JSON-described task (single point,
curve, surface, or simulation) and writes a CSV plus a JSON sidecar that
echoes the effective config; `verify` runs a named cross-check suite and
prints a machine-readable report; `figures` turns a result CSV into a
tool-agnostic plot description.

Exit codes for `run`: 0 success, 2 config error, 3 infeasible model,
4 search/simulation budget exhausted.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import codingsim, probcore, regions
from .optim import BudgetExhaustedError, SearchConfig, blahut_arimoto_rd, grid_search_conditional
from .probcore import (
    Alphabet,
    Channel,
    CostFn,
    JointPmf,
    Pmf,
    binary_alphabet,
    mutual_information,
)
from .regions import SwitchingModel
from .regions.lossless import _schannel_best_at_budget
from .seeding import derive_rng

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

_TASKS = ("region", "curve", "surface", "simulate", "verify")
_TOP_KEYS = {"task", "setting", "model", "sweep", "search", "sim", "output", "seed", "suite"}


class ConfigError(ValueError):
    """Invalid configuration; `key` names the offending entry."""

    def __init__(self, key, message):
        super().__init__(f"config error at '{key}': {message}")
        self.key = key


def _max_threads():
    raw = os.environ.get("ACTION_RDC_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        print(f"ignoring non-integer ACTION_RDC_THREADS={raw!r}", file=sys.stderr)
        return 1
    return max(1, value)


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _need(cfg, key, parent):
    if key not in cfg:
        raise ConfigError(f"{parent}.{key}" if parent else key, "missing required field")
    return cfg[key]


def _parse_alphabet(spec, key):
    if not isinstance(spec, list) or not spec:
        raise ConfigError(key, "alphabet must be a non-empty list of symbols")
    return Alphabet(tuple(str(s) for s in spec))


def _parse_joint(spec, key):
    if not isinstance(spec, dict):
        raise ConfigError(key, "expected an object with x, y, table")
    x = _parse_alphabet(_need(spec, "x", key), f"{key}.x")
    y = _parse_alphabet(_need(spec, "y", key), f"{key}.y")
    try:
        return JointPmf(("x", "y"), (x, y), _need(spec, "table", key))
    except ValueError as exc:
        raise ConfigError(f"{key}.table", str(exc))


def _parse_source(spec, key):
    if not isinstance(spec, dict):
        raise ConfigError(key, "expected an object with symbols, probs")
    alpha = _parse_alphabet(_need(spec, "symbols", key), f"{key}.symbols")
    try:
        return Pmf(alpha, _need(spec, "probs", key))
    except ValueError as exc:
        raise ConfigError(f"{key}.probs", str(exc))


def _parse_switching(spec, key):
    joint = _parse_joint(_need(spec, "joint", key), f"{key}.joint")
    k = _need(spec, "decoders", key)
    if not isinstance(k, int) or k < 1:
        raise ConfigError(f"{key}.decoders", "must be a positive integer")
    try:
        return SwitchingModel(joint, k, costs=spec.get("costs"))
    except ValueError as exc:
        raise ConfigError(key, str(exc))


def _parse_policy(spec, key, shape):
    policy = np.asarray(spec, dtype=float)
    if policy.shape != shape:
        raise ConfigError(key, f"policy must have shape {shape}")
    return policy


def _sweep_values(sweep, key):
    if not isinstance(sweep, dict):
        raise ConfigError(key, "expected an object")
    if "values" in sweep:
        vals = sweep["values"]
        if not isinstance(vals, list) or not vals:
            raise ConfigError(f"{key}.values", "must be a non-empty list")
        return [float(v) for v in vals]
    start = float(_need(sweep, "start", key))
    stop = float(_need(sweep, "stop", key))
    if "step" in sweep:
        step = float(sweep["step"])
        if step <= 0:
            raise ConfigError(f"{key}.step", "must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(max(count, 1))]
    steps = _need(sweep, "steps", key)
    if not isinstance(steps, int) or steps < 2:
        raise ConfigError(f"{key}.steps", "must be an integer >= 2")
    return list(np.linspace(start, stop, steps))


def _search_config(search, seed, key):
    if not isinstance(search, dict):
        raise ConfigError(key, "expected an object")
    known = {"grid_resolution", "refinement_rounds", "refinement_shrink", "tolerance", "max_evals"}
    for k in search:
        if k not in known:
            raise ConfigError(f"{key}.{k}", "unknown search field")
    try:
        return SearchConfig(
            grid_resolution=search.get("grid_resolution", 21),
            refinement_rounds=search.get("refinement_rounds", 3),
            refinement_shrink=search.get("refinement_shrink", 0.25),
            tolerance=search.get("tolerance", 1e-6),
            max_evals=search.get("max_evals"),
            seed=seed,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, str(exc))


# ---------------------------------------------------------------------------
# task handlers: each returns (columns, rows, argmin-payload)
# ---------------------------------------------------------------------------


def _handle_schannel(cfg):
    model = cfg.get("model", {})
    if cfg["task"] == "region":
        budget = float(_need(model, "budget", "model"))
        tilt = float(model.get("tilt", 0.0))
        rate = regions.schannel_rate(budget, tilt)
        return ["C", "tilt", "R"], [(budget, tilt, rate)], None
    if cfg["task"] != "curve":
        raise ConfigError("task", "schannel_rate supports the region and curve tasks")
    budgets = _sweep_values(_need(cfg, "sweep", ""), "sweep")
    resolution = cfg.get("search", {}).get("grid_resolution", 41)
    rows = []
    argmin = []
    for c in budgets:
        if c < 0:
            raise ConfigError("sweep", f"cost budget must be nonnegative, got {c}")
        (v, p1, delta), (v0, _) = _schannel_best_at_budget(float(c), resolution)
        rows.append((float(c), v, v0))
        argmin.append({"budget": float(c), "p1": p1, "tilt": delta})
    return ["C", "R_opt", "R_indep"], rows, argmin


def _handle_binary_switching_lossy(cfg):
    model = cfg.get("model", {})
    if cfg["task"] == "region":
        d1 = float(_need(model, "d1", "model"))
        d2 = float(_need(model, "d2", "model"))
        return ["D1", "D2", "R"], [(d1, d2, regions.binary_switching_lossy_rate(d1, d2))], None
    if cfg["task"] != "surface":
        raise ConfigError("task", "binary_switching_lossy_rate supports region and surface tasks")
    values = _sweep_values(_need(cfg, "sweep", ""), "sweep")
    rows = regions.binary_switching_lossy_surface(values, values)
    return ["D1", "D2", "R"], rows, None


def _handle_gaussian_compdel(cfg):
    model = cfg.get("model", {})
    p = float(_need(model, "signal_power", "model"))
    noise = float(_need(model, "noise_power", "model"))
    d1 = float(_need(model, "d1", "model"))
    d2 = float(_need(model, "d2", "model"))
    rate = regions.gaussian_compdel_rate(p, noise, d1, d2)
    return ["P", "N", "D1", "D2", "R"], [(p, noise, d1, d2, rate)], None


def _handle_dsbs_compdel(cfg):
    model = cfg.get("model", {})
    p = float(_need(model, "crossover", "model"))
    d1 = float(_need(model, "d1", "model"))
    d2 = float(_need(model, "d2", "model"))
    return ["p", "D1", "D2", "R"], [(p, d1, d2, regions.dsbs_compdel_rate(p, d1, d2))], None


def _handle_switching_lossless(cfg):
    model = cfg.get("model", {})
    joint = _parse_joint(_need(model, "joint", "model"), "model.joint")
    k = _need(model, "decoders", "model")
    if not isinstance(k, int) or k < 1:
        raise ConfigError("model.decoders", "must be a positive integer")
    pt = regions.switching_lossless_rate(joint, k)
    return ["decoders", "R"], [(k, pt.rate)], None


def _handle_four_state(cfg):
    model = cfg.get("model", {})
    joint = _parse_joint(_need(model, "joint", "model"), "model.joint")
    costs = _need(model, "costs", "model")
    budget = float(_need(model, "budget", "model"))
    scfg = _search_config(cfg.get("search", {}), cfg["seed"], "search")
    pt = regions.four_state_switching_rate(joint, costs, budget, scfg)
    argmin = {"action_policy": np.asarray(pt.achieving["action_policy"]).tolist()}
    return ["C", "R", "cost"], [(budget, pt.rate, pt.cost)], argmin


def _handle_decoder_actions(cfg):
    model = cfg.get("model", {})
    switching = _parse_switching(_need(model, "switching", "model"), "model.switching")
    budget = float(_need(model, "budget", "model"))
    scfg = _search_config(cfg.get("search", {}), cfg["seed"], "search")
    pt = regions.lossless_decoder_actions_rate(
        switching.source_pmf(), switching.to_action_model(), budget, scfg)
    argmin = {"action_policy": np.asarray(pt.achieving["action_policy"]).tolist()}
    return ["C", "R", "cost"], [(budget, pt.rate, pt.cost)], argmin


def _sim_trials(cfg, default):
    sim = cfg.get("sim", {})
    trials = sim.get("trials", default)
    if not isinstance(trials, int) or trials <= 0:
        raise ConfigError("sim.trials", "must be a positive integer")
    return trials


def _handle_sim_identity(cfg):
    sim = cfg.get("sim", {})
    n = _need(sim, "n", "sim")
    k = _need(sim, "decoders", "sim")
    rep = codingsim.simulate_identity_switch(
        n, k, Pmf(binary_alphabet(), [0.5, 0.5]), _sim_trials(cfg, 100), cfg["seed"])
    cols = ["n", "decoders", "trials", "rate", "error_rate", "seed"]
    return cols, [(n, k, rep.trials, rep.rate, rep.error_rate, rep.seed)], None


def _handle_sim_sw_modulo(cfg):
    model = cfg.get("model", {})
    sim = cfg.get("sim", {})
    joint = _parse_joint(_need(model, "joint", "model"), "model.joint")
    half_n = _need(sim, "half_n", "sim")
    margin = float(_need(sim, "rate_margin", "sim"))
    rep = codingsim.simulate_sw_modulo(
        joint, half_n, margin, _sim_trials(cfg, 200), cfg["seed"],
        rate_override=sim.get("rate_override"))
    cols = ["half_n", "rate_margin", "trials", "rate", "error_rate", "seed"]
    return cols, [(half_n, margin, rep.trials, rep.rate, rep.error_rate, rep.seed)], None


def _handle_sim_partition(cfg):
    model = cfg.get("model", {})
    sim = cfg.get("sim", {})
    joint = _parse_joint(_need(model, "joint", "model"), "model.joint")
    policy = _parse_policy(_need(model, "policy", "model"), "model.policy",
                           (len(joint.alphabet_of("x")), 4))
    costs = _need(model, "costs", "model")
    n = _need(sim, "n", "sim")
    margin = float(_need(sim, "rate_margin", "sim"))
    rep = codingsim.simulate_partition_switch(
        joint, policy, costs, n, margin, _sim_trials(cfg, 200), cfg["seed"])
    cols = ["n", "rate_margin", "trials", "rate", "error_rate", "cost", "seed"]
    return cols, [(n, margin, rep.trials, rep.rate, rep.error_rate, rep.cost, rep.seed)], None


def _handle_sim_dsbs(cfg):
    model = cfg.get("model", {})
    sim = cfg.get("sim", {})
    p = float(_need(model, "crossover", "model"))
    rate = float(_need(sim, "rate", "sim"))
    trials = _sim_trials(cfg, 500)
    if "sweep" in cfg:
        ns = [int(v) for v in _sweep_values(cfg["sweep"], "sweep")]
    else:
        ns = [_need(sim, "n", "sim")]
    rows = []
    for n in ns:
        rep = codingsim.simulate_dsbs_compdel(p, rate, n, trials, cfg["seed"])
        rows.append((n, rep.rate, rep.trials, rep.distortions[0], rep.distortions[1], rep.seed))
    return ["n", "rate", "trials", "d1", "d2", "seed"], rows, None


def _handle_sim_action_binning(cfg):
    model = cfg.get("model", {})
    sim = cfg.get("sim", {})
    switching = _parse_switching(_need(model, "switching", "model"), "model.switching")
    action_model = switching.to_action_model()
    policy = _parse_policy(
        _need(model, "policy", "model"), "model.policy",
        (len(action_model.source_alphabet), len(action_model.actions)))
    n = _need(sim, "n", "sim")
    margin = float(_need(sim, "rate_margin", "sim"))
    rep = codingsim.simulate_action_binning(
        switching.source_pmf(), action_model, policy, margin, n,
        _sim_trials(cfg, 200), cfg["seed"])
    cols = ["n", "rate_margin", "trials", "rate", "error_rate", "cost", "seed"]
    return cols, [(n, margin, rep.trials, rep.rate, rep.error_rate, rep.cost, rep.seed)], None


_REGION_SETTINGS = {
    "schannel_rate": _handle_schannel,
    "binary_switching_lossy_rate": _handle_binary_switching_lossy,
    "gaussian_compdel_rate": _handle_gaussian_compdel,
    "dsbs_compdel_rate": _handle_dsbs_compdel,
    "switching_lossless_rate": _handle_switching_lossless,
    "four_state_switching_rate": _handle_four_state,
    "lossless_decoder_actions_rate": _handle_decoder_actions,
}

_SIM_SETTINGS = {
    "simulate_identity_switch": _handle_sim_identity,
    "simulate_sw_modulo": _handle_sim_sw_modulo,
    "simulate_partition_switch": _handle_sim_partition,
    "simulate_dsbs_compdel": _handle_sim_dsbs,
    "simulate_action_binning": _handle_sim_action_binning,
}


def _validate_config(raw):
    if not isinstance(raw, dict):
        raise ConfigError("", "config must be a JSON object")
    if "config" in raw and "columns" in raw:
        raw = raw["config"]  # accept a sidecar written by an earlier run
    for key in raw:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown config key")
    task = _need(raw, "task", "")
    if task not in _TASKS:
        raise ConfigError("task", f"must be one of {', '.join(_TASKS)}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed", "must be an integer")
    cfg = dict(raw)
    cfg["seed"] = seed
    return cfg


def _effective_config(cfg, seed=None, grid_resolution=None, trials=None):
    out = json.loads(json.dumps(cfg))  # deep copy of plain JSON data
    if seed is not None:
        out["seed"] = seed
    if grid_resolution is not None:
        out.setdefault("search", {})["grid_resolution"] = grid_resolution
    if trials is not None:
        out.setdefault("sim", {})["trials"] = trials
    return out


def _format_cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _write_outputs(path, columns, rows, sidecar):
    lines = [",".join(columns)]
    lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(path + ".json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run(config_path, out_dir=None, seed=None, grid_resolution=None, trials=None):
    """Execute one config file; returns the process exit code."""
    try:
        with open(config_path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"config error at '{config_path}': {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"config error at '{config_path}': invalid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        cfg = _validate_config(raw)
        cfg = _effective_config(cfg, seed, grid_resolution, trials)
        task = cfg["task"]
        if task == "verify":
            suite = _need(cfg, "suite", "")
            report, ok = run_verify_suite(suite, cfg["seed"])
            print(json.dumps(report, indent=2, sort_keys=True))
            return EXIT_OK if ok else 1
        setting = _need(cfg, "setting", "")
        registry = _SIM_SETTINGS if task == "simulate" else _REGION_SETTINGS
        if setting not in registry:
            raise ConfigError("setting", f"unknown setting for task {task}: {setting}")
        output = _need(cfg, "output", "")
        if not isinstance(output, str) or not output:
            raise ConfigError("output", "must be a non-empty path")
        columns, rows, argmin = registry[setting](cfg)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except (codingsim.SimBudgetError, BudgetExhaustedError) as exc:
        print(f"budget exhausted while running '{cfg.get('setting', '?')}': {exc}",
              file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"infeasible model for '{cfg.get('setting', '?')}': {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    path = os.path.join(out_dir, os.path.basename(output)) if out_dir else output
    bad = [c for row in rows for c in row
           if isinstance(c, (float, np.floating)) and not np.isfinite(c)]
    if bad:
        print(f"infeasible model for '{cfg['setting']}': non-finite result {bad[0]}",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    sidecar = {"config": cfg, "columns": columns, "rows": len(rows)}
    if argmin is not None:
        sidecar["argmin"] = argmin
    _write_outputs(path, columns, rows, sidecar)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _random_binary_joint(rng):
    table = rng.random((2, 2)) + 0.05
    return JointPmf(("x", "y"), (binary_alphabet(), binary_alphabet()),
                    table / table.sum())


def _check_closed_form_vs_search(seed):
    """Switching lossless closed form against the generic action search."""
    checks = []
    for i in range(10):
        rng = derive_rng(seed, "closed-form-joint", i)
        joint = _random_binary_joint(rng)
        sw = SwitchingModel(joint, 2)
        closed = regions.switching_lossless_rate(joint, 2).rate
        searched = regions.lossless_decoder_actions_rate(
            sw.source_pmf(), sw.to_action_model(), budget=1.0,
            cfg=SearchConfig(grid_resolution=13, refinement_rounds=4, seed=seed),
        ).rate
        delta = searched - closed
        checks.append({"name": f"switching-vs-search-{i}", "delta": delta,
                       "tolerance": 5e-3, "pass": bool(-1e-9 <= delta < 5e-3)})
    return checks


def _check_ba_vs_gridsearch(seed):
    """Blahut-Arimoto rate-distortion against a direct grid search."""
    checks = []
    alpha = binary_alphabet()
    d = probcore.hamming_distortion(alpha)
    for i in range(5):
        rng = derive_rng(seed, "ba-source", i)
        p = 0.2 + 0.6 * rng.random()
        source = Pmf(alpha, [p, 1 - p])
        target = 0.1
        ba = blahut_arimoto_rd(source, d, target)

        def objective(ch):
            joint = probcore.compose(source, ch)
            return mutual_information(joint, ("x",), ("xhat",))

        def within(ch):
            joint = probcore.compose(source, ch)
            dist = sum(joint.table[i, j] * d.d[i, j]
                       for i in range(2) for j in range(2))
            return dist <= target + 1e-9

        res = grid_search_conditional(
            objective, (2, 2), constraints=(within,),
            cfg=SearchConfig(grid_resolution=41, refinement_rounds=4, seed=seed))
        delta = abs(res.value - ba)
        checks.append({"name": f"ba-vs-grid-{i}", "delta": delta,
                       "tolerance": 2e-3, "pass": bool(delta < 2e-3)})
    return checks


def _check_sim_vs_theory(seed):
    """Segment-parity switching must be error free at the exact rate."""
    checks = []
    src = Pmf(binary_alphabet(), [0.5, 0.5])
    for k in (2, 4):
        rep = codingsim.simulate_identity_switch(1000, k, src, 50, seed)
        ok = rep.error_rate == 0.0 and rep.rate == (k - 1) / k
        checks.append({"name": f"identity-switch-k{k}",
                       "delta": rep.error_rate, "tolerance": 0.0, "pass": bool(ok)})
    return checks


_SUITES = {
    "closed-form-vs-search": _check_closed_form_vs_search,
    "ba-vs-gridsearch": _check_ba_vs_gridsearch,
    "sim-vs-theory": _check_sim_vs_theory,
}


def run_verify_suite(suite, seed=0):
    """Run one named cross-check suite; returns (report dict, all passed)."""
    if suite not in _SUITES:
        raise ConfigError("suite", f"unknown suite: {suite}")
    threads = _max_threads()
    fn = _SUITES[suite]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            checks = pool.submit(fn, seed).result()
    else:
        checks = fn(seed)
    ok = all(c["pass"] for c in checks)
    failed = [c["name"] for c in checks if not c["pass"]]
    report = {"suite": suite, "seed": seed, "checks": checks, "pass": ok}
    if failed:
        report["failed"] = failed
    return report, ok


# ---------------------------------------------------------------------------
# figure descriptions
# ---------------------------------------------------------------------------


def emit_figures(csv_path):
    """Write a <csv>.plotspec.json describing how to plot the CSV."""
    try:
        with open(csv_path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().split("\n") if ln]
    except OSError as exc:
        print(f"cannot read '{csv_path}': {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not lines:
        print(f"'{csv_path}' is empty; nothing to plot", file=sys.stderr)
        return EXIT_CONFIG
    columns = lines[0].split(",")
    if len(lines) < 2:
        print(f"'{csv_path}' has no data rows", file=sys.stderr)
        return EXIT_CONFIG

    if {"C", "R_opt", "R_indep"} <= set(columns):
        spec = {
            "kind": "line",
            "x": {"column": "C", "label": "action cost budget"},
            "y_label": "rate (bits per symbol)",
            "series": [
                {"column": "R_opt", "style": "solid",
                 "label": "optimized action policy"},
                {"column": "R_indep", "style": "dashed",
                 "label": "source-independent actions"},
            ],
        }
    elif {"D1", "D2", "R"} <= set(columns):
        spec = {
            "kind": "surface-3d",
            "x": {"column": "D1", "label": "decoder 1 distortion"},
            "y": {"column": "D2", "label": "decoder 2 distortion"},
            "z": {"column": "R", "label": "rate (bits per symbol)"},
        }
    else:
        print(f"'{csv_path}' has no plottable column set: {columns}", file=sys.stderr)
        return EXIT_CONFIG

    out = os.path.splitext(csv_path)[0] + ".plotspec.json"
    spec["source_csv"] = os.path.basename(csv_path)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(spec, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="action-rdc",
        description="Rate-distortion-cost computations for source coding "
                    "with encoder or decoder controlled side information.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="directory for output files")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--grid-resolution", type=int, default=None)
    p_run.add_argument("--trials", type=int, default=None)

    p_verify = sub.add_parser("verify", help="run a cross-check suite")
    p_verify.add_argument("suite", choices=sorted(_SUITES))
    p_verify.add_argument("--seed", type=int, default=0)

    p_fig = sub.add_parser("figures", help="emit a plot description for a CSV")
    p_fig.add_argument("csv")

    args = parser.parse_args(argv)
    if args.command == "run":
        return run(args.config, out_dir=args.out, seed=args.seed,
                   grid_resolution=args.grid_resolution, trials=args.trials)
    if args.command == "verify":
        try:
            report, ok = run_verify_suite(args.suite, args.seed)
        except ConfigError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_CONFIG
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_OK if ok else 1
    return emit_figures(args.csv)


if __name__ == "__main__":
    sys.exit(main())
