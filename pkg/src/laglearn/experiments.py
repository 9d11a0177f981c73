"""Batch experiment harness behind the command-line interface.

Experiments are described by flat INI configs (sections: experiment,
learner, sweep, stream, loss, delays).  One experiment expands into one
or more arms (a delay sweep, a correlation sweep, a learner-vs-baseline
pair, a horizon scaling check, or a single run); every arm runs the same
trials with the same derived per-trial seeds, so arms are compared under
common random numbers.  Outputs are one CSV of aggregated curves per arm
plus a manifest recording the fully resolved configuration, the seeds,
and headline metrics; rerunning the manifest's config reproduces every
byte regardless of thread count.
"""

from __future__ import annotations

import configparser
import dataclasses
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import environment, evaluation, feedback, geometry, learners
from .evaluation import RegretReport, Trajectory
from .geometry import Ball, ConvexBody, EuclideanMap, NegativeEntropyMap, Simplex

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

KINDS = ("delay-sweep", "correlation-sweep", "baseline-compare", "scaling-check", "single-run")
LEARNERS = ("ogd", "omd", "adversarial", "naive")
SCHEDULES = ("sqrt", "strongly-convex", "constant")
STREAMS = ("gaussian", "pentagon", "csv")
FAMILIES = ("quadratic", "norm", "power", "exp")
DELAY_KINDS = ("fixed", "adversarial", "file")

OUT_DIR_ENV = "LAGLEARN_OUT_DIR"


def mix64(z: int) -> int:
    """SplitMix-style 64-bit finalizer."""
    z &= _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def trial_seed(base_seed: int, index: int) -> int:
    return mix64((base_seed + (index + 1) * _GAMMA) & _MASK64)


def _sub_seed(seed: int, slot: int) -> int:
    return mix64((seed + (slot + 1) * _GAMMA) & _MASK64)


# ---------------------------------------------------------------------------
# Configuration model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = ""
    horizon: int = 1000
    trials: int = 1
    seed: int = 0
    out_dir: str | None = None

    learner: str = "ogd"
    schedule: str = "sqrt"
    sigma: float | str | None = None      # number or "auto"
    gamma: float | None = None
    eta: float | str | None = None        # number or "auto"
    beta: float | None = None
    lam: float | str = "coupled"          # number or "coupled"
    tau: int = 0
    warmup: int = 0                       # dummy-candidate rounds = warmup * tau
    mirror: str = "euclidean"

    sweep_taus: tuple[int, ...] | None = None
    sweep_rhos: tuple[float, ...] | None = None
    sweep_horizons: tuple[int, ...] | None = None

    stream: str = "gaussian"
    rho: float = 0.0
    mean: float = 1.0
    variance: float = 1.0
    d1: int = 1
    d2: int = 1
    radius: float = 4.0
    context_path: str | None = None

    family: str = "quadratic"
    coefficients: str = "uniform"         # "uniform" draws a,b ~ U[0,1] per round
    a: float = 1.0
    b: float = 0.0
    m: int = 2
    sigma1: float = 1.0

    delay_kind: str = "fixed"
    d_max: int = 20
    delay_path: str | None = None


def _parse_scalar(text: str, keywords: tuple[str, ...]):
    token = text.strip()
    if token.lower() in keywords:
        return token.lower()
    return float(token)


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.replace(",", " ").split())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.replace(",", " ").split())


_SCHEMA = {
    ("experiment", "kind"): ("kind", str.strip),
    ("experiment", "horizon"): ("horizon", int),
    ("experiment", "trials"): ("trials", int),
    ("experiment", "seed"): ("seed", int),
    ("experiment", "out_dir"): ("out_dir", str.strip),
    ("learner", "kind"): ("learner", str.strip),
    ("learner", "schedule"): ("schedule", str.strip),
    ("learner", "sigma"): ("sigma", lambda s: _parse_scalar(s, ("auto",))),
    ("learner", "gamma"): ("gamma", float),
    ("learner", "eta"): ("eta", lambda s: _parse_scalar(s, ("auto",))),
    ("learner", "beta"): ("beta", float),
    ("learner", "lam"): ("lam", lambda s: _parse_scalar(s, ("coupled",))),
    ("learner", "tau"): ("tau", int),
    ("learner", "warmup"): ("warmup", int),
    ("learner", "mirror"): ("mirror", str.strip),
    ("sweep", "tau"): ("sweep_taus", _parse_int_list),
    ("sweep", "rho"): ("sweep_rhos", _parse_float_list),
    ("sweep", "horizon"): ("sweep_horizons", _parse_int_list),
    ("stream", "kind"): ("stream", str.strip),
    ("stream", "rho"): ("rho", float),
    ("stream", "mean"): ("mean", float),
    ("stream", "variance"): ("variance", float),
    ("stream", "d1"): ("d1", int),
    ("stream", "d2"): ("d2", int),
    ("stream", "radius"): ("radius", float),
    ("stream", "path"): ("context_path", str.strip),
    ("loss", "family"): ("family", str.strip),
    ("loss", "coefficients"): ("coefficients", str.strip),
    ("loss", "a"): ("a", float),
    ("loss", "b"): ("b", float),
    ("loss", "m"): ("m", int),
    ("loss", "sigma1"): ("sigma1", float),
    ("delays", "kind"): ("delay_kind", str.strip),
    ("delays", "d_max"): ("d_max", int),
    ("delays", "path"): ("delay_path", str.strip),
}


class ConfigFileError(ValueError):
    """Unparseable or invalid configuration; `errors` lists every problem."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def parse_config(path) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigFileError([f"{path}: {exc}"]) from exc

    overrides = {}
    errors = []
    for section in parser.sections():
        for option, raw in parser.items(section):
            key = (section, option)
            if key not in _SCHEMA:
                errors.append(f"{section}.{option}: unknown option")
                continue
            attr, convert = _SCHEMA[key]
            try:
                overrides[attr] = convert(raw)
            except (TypeError, ValueError):
                errors.append(f"{section}.{option}: cannot parse {raw!r}")
    if errors:
        raise ConfigFileError(errors)
    return ExperimentConfig(**overrides)


def validate_config(cfg: ExperimentConfig) -> list[str]:
    """Every violated field, named; empty list means the config is runnable."""
    errors = []

    if cfg.kind not in KINDS:
        errors.append(f"experiment.kind: must be one of {', '.join(KINDS)}")
    if cfg.horizon < 1:
        errors.append("experiment.horizon: must be >= 1")
    if cfg.trials < 1:
        errors.append("experiment.trials: must be >= 1")

    if cfg.learner not in LEARNERS:
        errors.append(f"learner.kind: must be one of {', '.join(LEARNERS)}")
    if cfg.tau < 0:
        errors.append("learner.tau: must be >= 0")
    if cfg.warmup < 0:
        errors.append("learner.warmup: must be >= 0")
    if cfg.warmup * cfg.tau >= cfg.horizon:
        errors.append("learner.warmup: warm-up rounds must not cover the horizon")

    if cfg.learner in ("ogd", "omd"):
        if cfg.schedule not in SCHEDULES:
            errors.append(f"learner.schedule: must be one of {', '.join(SCHEDULES)}")
        elif cfg.schedule == "sqrt":
            if cfg.sigma is None or (isinstance(cfg.sigma, float) and cfg.sigma <= 0):
                errors.append("learner.sigma: sqrt schedule needs sigma > 0 or 'auto'")
        elif cfg.schedule == "strongly-convex":
            if cfg.gamma is None or cfg.gamma <= 0:
                errors.append("learner.gamma: strongly-convex schedule needs gamma > 0")
        elif cfg.schedule == "constant":
            if not isinstance(cfg.eta, float) or cfg.eta <= 0:
                errors.append("learner.eta: constant schedule needs a numeric eta > 0")
        if cfg.delay_kind != "fixed" and cfg.kind != "single-run":
            errors.append("delays.kind: fixed-lag learners need fixed delays")
    if cfg.learner == "omd":
        if cfg.mirror not in ("euclidean", "negentropy"):
            errors.append("learner.mirror: must be euclidean or negentropy")
        elif cfg.mirror == "negentropy" and cfg.stream != "csv":
            errors.append("learner.mirror: negentropy needs simplex data from a csv stream")
    if cfg.learner == "adversarial":
        if cfg.eta is None or (isinstance(cfg.eta, float) and cfg.eta <= 0):
            errors.append("learner.eta: adversarial learner needs eta > 0 or 'auto'")
        if not isinstance(cfg.lam, float):
            errors.append("learner.lam: adversarial learner needs a numeric lam")

    if cfg.kind == "delay-sweep" and not cfg.sweep_taus:
        errors.append("sweep.tau: delay-sweep needs a tau list")
    if cfg.kind == "correlation-sweep" and not cfg.sweep_rhos:
        errors.append("sweep.rho: correlation-sweep needs a rho list")
    if cfg.kind == "scaling-check" and not cfg.sweep_horizons:
        errors.append("sweep.horizon: scaling-check needs a horizon list")
    if cfg.sweep_taus and any(t < 0 for t in cfg.sweep_taus):
        errors.append("sweep.tau: entries must be >= 0")
    if cfg.sweep_rhos and any(not -1.0 <= r <= 1.0 for r in cfg.sweep_rhos):
        errors.append("sweep.rho: entries must lie in [-1, 1]")
    if cfg.sweep_horizons and any(h < 1 for h in cfg.sweep_horizons):
        errors.append("sweep.horizon: entries must be >= 1")

    if cfg.stream not in STREAMS:
        errors.append(f"stream.kind: must be one of {', '.join(STREAMS)}")
    if not -1.0 <= cfg.rho <= 1.0:
        errors.append("stream.rho: must lie in [-1, 1]")
    if cfg.variance <= 0:
        errors.append("stream.variance: must be positive")
    if cfg.d2 < 1 or cfg.d1 < cfg.d2:
        errors.append("stream.d1/d2: need d1 >= d2 >= 1")
    if cfg.radius <= 0:
        errors.append("stream.radius: must be positive")
    if cfg.stream == "csv" and not cfg.context_path:
        errors.append("stream.path: csv stream needs a file path")
    if cfg.stream == "pentagon" and (cfg.d1 < 2 or cfg.d2 != 2):
        errors.append("stream.d1/d2: pentagon stream needs d2 = 2 and d1 >= 2")

    if cfg.family not in FAMILIES:
        errors.append(f"loss.family: must be one of {', '.join(FAMILIES)}")
    if cfg.coefficients not in ("uniform", "fixed"):
        errors.append("loss.coefficients: must be uniform or fixed")
    if cfg.family == "quadratic" and cfg.coefficients == "fixed":
        if cfg.a <= 0:
            errors.append("loss.a: must be positive")
        if cfg.b < 0:
            errors.append("loss.b: must be >= 0")
    if cfg.family in ("power", "exp") and cfg.m < 1:
        errors.append("loss.m: must be an integer >= 1")
    if cfg.family == "exp" and (cfg.a <= 0 or cfg.sigma1 <= 0):
        errors.append("loss.a/loss.sigma1: exp family needs positive coefficients")

    if cfg.delay_kind not in DELAY_KINDS:
        errors.append(f"delays.kind: must be one of {', '.join(DELAY_KINDS)}")
    if cfg.delay_kind == "adversarial" and cfg.d_max < 1:
        errors.append("delays.d_max: must be >= 1")
    if cfg.delay_kind == "file" and not cfg.delay_path:
        errors.append("delays.path: file delays need a file path")

    return errors


# ---------------------------------------------------------------------------
# Building game pieces from a config
# ---------------------------------------------------------------------------

def _hidden_body(cfg: ExperimentConfig) -> ConvexBody:
    if cfg.stream == "pentagon":
        return geometry.regular_polygon(5, center=(1.0, 1.0), circumradius=1.0)
    if cfg.learner == "omd" and cfg.mirror == "negentropy":
        return Simplex(cfg.d2)
    return Ball(np.zeros(cfg.d2), cfg.radius)


def _build_stream(cfg: ExperimentConfig, seed: int, body: ConvexBody):
    if cfg.stream == "gaussian":
        return environment.GaussianStream(
            d1=cfg.d1, d2=cfg.d2, mean=cfg.mean, variance=cfg.variance, rho=cfg.rho,
            body_hidden=body, seed=seed)
    if cfg.stream == "pentagon":
        return environment.PolygonStream(
            body, d1=cfg.d1, mean=cfg.mean, variance=cfg.variance, seed=seed)
    return environment.ExplicitStream.from_csv(cfg.context_path, cfg.d1, cfg.d2,
                                               body_hidden=body)


def _loss_factory(cfg: ExperimentConfig):
    from . import losses as loss_mod
    if cfg.family == "quadratic":
        if cfg.coefficients == "uniform":
            return environment.uniform_quadratic()
        return environment.fixed_loss(loss_mod.QuadraticLoss, a=cfg.a, b=cfg.b)
    if cfg.family == "norm":
        return environment.fixed_loss(loss_mod.NormLoss)
    if cfg.family == "power":
        return environment.fixed_loss(loss_mod.PowerLoss, m=cfg.m)
    return environment.fixed_loss(loss_mod.ExpLoss, a=cfg.a, s=cfg.sigma1, m=cfg.m)


def _auto_lipschitz(cfg: ExperimentConfig, body: ConvexBody) -> float:
    """Gradient-norm bound for tuning: worst case over the body's diameter."""
    from . import losses as loss_mod
    reach = 2.0 * body.radius_bound
    anchor = np.zeros(cfg.d2)
    if cfg.family == "norm":
        return 1.0
    if cfg.family == "quadratic":
        a = 1.0 if cfg.coefficients == "uniform" else cfg.a
        return loss_mod.QuadraticLoss(anchor, a=a).lipschitz_bound(reach)
    if cfg.family == "power":
        return loss_mod.PowerLoss(anchor, m=cfg.m).lipschitz_bound(reach)
    return loss_mod.ExpLoss(anchor, a=cfg.a, s=cfg.sigma1, m=cfg.m).lipschitz_bound(reach)


def _influence(cfg: ExperimentConfig) -> learners.Influence:
    if cfg.lam == "coupled":
        sign = 1.0 if cfg.rho >= 0 else -1.0
        return learners.Influence.coupled(cfg.d2, sign=sign)
    if cfg.lam == 0.0:
        return learners.Influence.disabled(cfg.d2)
    return learners.Influence.constant(float(cfg.lam), cfg.d2)


def _resolve_sigma(cfg: ExperimentConfig, body: ConvexBody, smoothness: float = 1.0):
    if cfg.sigma == "auto":
        L = _auto_lipschitz(cfg, body)
        tau = max(cfg.tau, 1)
        if smoothness == 1.0:
            return learners.sigma_for_fixed_delay(L, body.radius_bound, tau)
        return learners.sigma_for_mirror(L, body.radius_bound, tau, smoothness)
    return float(cfg.sigma)


def _build_schedule(cfg: ExperimentConfig, body: ConvexBody, smoothness: float = 1.0):
    if cfg.schedule == "sqrt":
        return learners.InverseSqrtStep(sigma=_resolve_sigma(cfg, body, smoothness),
                                        tau=cfg.tau, beta_override=cfg.beta)
    if cfg.schedule == "strongly-convex":
        return learners.InverseTimeStep(gamma=float(cfg.gamma), tau=cfg.tau,
                                        beta_override=cfg.beta)
    return learners.ConstantStep(value=float(cfg.eta), tau=cfg.tau, beta_override=cfg.beta)


def _build_learner(cfg: ExperimentConfig, body: ConvexBody, delays, horizon: int):
    if cfg.learner == "naive":
        return learners.NaiveLearner(body)
    if cfg.learner == "ogd":
        return learners.OgdLearner(body, _build_schedule(cfg, body), _influence(cfg))
    if cfg.learner == "omd":
        mirror = EuclideanMap() if cfg.mirror == "euclidean" else NegativeEntropyMap()
        schedule = _build_schedule(cfg, body, smoothness=mirror.smoothness)
        return learners.OmdLearner(body, mirror, schedule, _influence(cfg))
    # adversarial: a constant step, tuned to the realized delay sum when "auto"
    if cfg.eta == "auto":
        delay_sum = int(delays.realize(horizon).sum())
        L = _auto_lipschitz(cfg, body)
        eta = learners.eta_for_arbitrary_delay(L, body.radius_bound, float(cfg.lam),
                                               horizon, delay_sum)
    else:
        eta = float(cfg.eta)
    return learners.AdversarialLearner(body, eta=eta, beta=cfg.beta, influence=_influence(cfg))


def _build_delays(cfg: ExperimentConfig, seed: int):
    if cfg.delay_kind == "fixed":
        return feedback.FixedDelay(cfg.tau)
    if cfg.delay_kind == "adversarial":
        return feedback.RandomDelay(d_max=cfg.d_max, seed=seed)
    return feedback.delays_from_file(cfg.delay_path)


def resolve_arm(cfg: ExperimentConfig) -> dict:
    """Trial-independent resolved parameters (also the arm fingerprint)."""
    body = _hidden_body(cfg)
    resolved = dataclasses.asdict(cfg)
    resolved.pop("out_dir")
    resolved.pop("seed")
    resolved.pop("trials")
    resolved["body"] = body.describe()
    if cfg.learner in ("ogd", "omd") and cfg.schedule == "sqrt":
        resolved["sigma_resolved"] = _resolve_sigma(
            cfg, body,
            smoothness=NegativeEntropyMap.smoothness if cfg.mirror == "negentropy" else 1.0)
    if cfg.learner == "adversarial" and cfg.eta == "auto":
        resolved["eta_resolved"] = "auto(per-trial delay sum)"
    return resolved


def run_single(cfg: ExperimentConfig, seed: int, fingerprint: str = ""
               ) -> tuple[Trajectory, RegretReport]:
    """One seeded trial: build the pieces, play the game, measure regret."""
    stream_seed = _sub_seed(seed, 0)
    coeff_seed = _sub_seed(seed, 1)
    delay_seed = _sub_seed(seed, 2)

    body = _hidden_body(cfg)
    delays = _build_delays(cfg, delay_seed)
    stream = _build_stream(cfg, stream_seed, body)
    learner = _build_learner(cfg, body, delays, cfg.horizon)
    scoring = environment.LinearScoring.default(cfg.d1, cfg.d2)
    traj = environment.run_game(learner, stream, delays, _loss_factory(cfg), scoring,
                                cfg.horizon, seed=coeff_seed, fingerprint=fingerprint)
    report = evaluation.regret(traj, body, skip_rounds=cfg.warmup * cfg.tau)
    return traj, report


# ---------------------------------------------------------------------------
# Whole experiments
# ---------------------------------------------------------------------------

def expand_arms(cfg: ExperimentConfig) -> list[tuple[str, ExperimentConfig]]:
    if cfg.kind == "delay-sweep":
        return [(f"tau{t}", dataclasses.replace(cfg, tau=t)) for t in cfg.sweep_taus]
    if cfg.kind == "correlation-sweep":
        return [(f"rho{r:g}", dataclasses.replace(cfg, rho=r)) for r in cfg.sweep_rhos]
    if cfg.kind == "scaling-check":
        return [(f"T{h}", dataclasses.replace(cfg, horizon=h)) for h in cfg.sweep_horizons]
    if cfg.kind == "baseline-compare":
        return [(cfg.learner, cfg), ("naive", dataclasses.replace(cfg, learner="naive"))]
    return [("run", cfg)]


def run_experiment(cfg: ExperimentConfig, out_dir, threads: int = 1) -> dict:
    """Run all arms and trials; write per-arm CSVs and a manifest.

    Returns the manifest dictionary (also written to manifest.json).
    """
    errors = validate_config(cfg)
    if errors:
        raise ConfigFileError(errors)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seeds = [trial_seed(cfg.seed, i) for i in range(cfg.trials)]

    manifest: dict = {
        "kind": cfg.kind,
        "base_seed": cfg.seed,
        "trials": cfg.trials,
        "trial_seeds": seeds,
        "resolved": {},
        "arms": {},
        "metrics": {},
        "outputs": [],
    }

    scaling_points = []
    finals = {}

    for label, arm in expand_arms(cfg):
        fingerprint = json.dumps(resolve_arm(arm), sort_keys=True)
        manifest["resolved"][label] = resolve_arm(arm)

        def one_trial(s, arm=arm, fingerprint=fingerprint):
            return run_single(arm, s, fingerprint=fingerprint)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(one_trial, seeds))
        else:
            results = [one_trial(s) for s in seeds]

        reports = [rep for _, rep in results]

        if cfg.kind == "single-run":
            traj = results[0][0]
            traj_file = out / "trajectory.csv"
            _write_trajectory_csv(traj, traj_file)
            manifest["outputs"].append(traj_file.name)
            manifest["metrics"]["replay_gap"] = float(traj.replay_gap())
            manifest["metrics"]["flags"] = list(traj.flags)

        curves = evaluation.aggregate(reports)
        csv_path = out / f"{label}.csv"
        evaluation.write_csv(curves, csv_path)
        manifest["outputs"].append(csv_path.name)

        final = {
            "csv": csv_path.name,
            "final_cum_loss_mean": float(curves.cum_loss_mean[-1]),
            "final_cum_loss_stderr": float(curves.cum_loss_stderr[-1]),
            "final_regret_mean": float(curves.regret_mean[-1]),
            "final_regret_stderr": float(curves.regret_stderr[-1]),
            "delay_sum_mean": float(np.mean([r.delay_sum for r in reports])),
        }
        manifest["arms"][label] = final
        finals[label] = final

        if cfg.kind == "scaling-check":
            scaling_points.append((arm.horizon, final["final_regret_mean"],
                                   final["delay_sum_mean"]))

    if cfg.kind == "scaling-check" and len(scaling_points) >= 3:
        fit = evaluation.fit_scaling([(v, r) for v, r, _ in scaling_points])
        manifest["metrics"]["regret_exponent"] = fit.exponent
        manifest["metrics"]["regret_exponent_halfwidth"] = fit.halfwidth
        manifest["metrics"]["regret_over_sqrt_delay_sum"] = {
            f"T{v}": r / float(np.sqrt(d)) for v, r, d in scaling_points
        }
    if cfg.kind == "baseline-compare":
        learner_label = cfg.learner
        ratio = (finals["naive"]["final_cum_loss_mean"]
                 / finals[learner_label]["final_cum_loss_mean"])
        manifest["metrics"]["naive_to_learner_cum_loss_ratio"] = ratio

    manifest_path = out / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    manifest["outputs"].append(manifest_path.name)
    return manifest


def _write_trajectory_csv(traj: Trajectory, path) -> None:
    coord_cols = ",".join(f"estimate_{j}" for j in range(traj.dim))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"t,loss,score_error,delivered,{coord_cols}\n")
        for i in range(traj.horizon):
            delivered = ";".join(str(s) for s in traj.delivered[i])
            coords = ",".join(repr(float(v)) for v in traj.estimates[i])
            fh.write(f"{i + 1},{float(traj.loss_values[i])!r},"
                     f"{float(traj.score_errors[i])!r},{delivered},{coords}\n")


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def preset_names() -> list[str]:
    root = resources.files("laglearn").joinpath("presets")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def preset_path(name: str) -> Path:
    root = resources.files("laglearn").joinpath("presets")
    candidate = root.joinpath(f"{name}.ini")
    if not candidate.is_file():
        raise FileNotFoundError(f"no preset named {name!r}; have {', '.join(preset_names())}")
    return Path(str(candidate))


def resolve_config_arg(arg: str) -> Path:
    """A config argument is either a file path or a shipped preset name."""
    path = Path(arg)
    if path.is_file():
        return path
    try:
        return preset_path(arg)
    except FileNotFoundError:
        raise FileNotFoundError(f"{arg!r} is neither a config file nor a preset name")
