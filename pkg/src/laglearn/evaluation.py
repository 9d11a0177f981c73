"""Regret measurement: offline comparator, regret curves, scaling fits.

Regret over a horizon T compares the learner's accumulated loss against
the single best fixed decision in hindsight:

    regret(T) = sum_t f_t(x_t)  -  min_{y in body} sum_t f_t(y)

The prefix series regret(t) reuses the horizon-T comparator (the fixed
benchmark the guarantees are stated against); per-prefix comparators are
available behind a flag for diagnostics.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .geometry import Array, ConvexBody
from .losses import ExpLoss, Loss, NormLoss, PowerLoss, QuadraticLoss


@dataclass
class Trajectory:
    """Per-round record of one play-through, replayable from stored losses."""

    horizon: int
    dim: int
    estimates: Array                 # (T, dim) decisions actually played
    loss_values: Array               # (T,) f_t evaluated at the decision
    score_errors: Array              # (T,) |score with estimate - true score|
    score_error_losses: Array        # (T,) radial profile applied to the score error
    delivered: tuple[tuple[int, ...], ...]   # delivery sets per round
    losses: list[Loss]
    delays: Array                    # (T,) per-round delays d_t
    delay_sum: int
    seed: int
    fingerprint: str = ""
    flags: tuple[str, ...] = ()

    def replay_gap(self) -> float:
        """Max |stored loss value - loss re-evaluated at the stored estimate|."""
        worst = 0.0
        for i, loss in enumerate(self.losses):
            worst = max(worst, abs(loss.value(self.estimates[i]) - self.loss_values[i]))
        return worst


@dataclass
class OfflineSolution:
    point: Array
    total: float
    converged: bool = True


@dataclass
class RegretReport:
    horizon: int
    regret: Array                    # (T,) prefix regret with the fixed comparator
    cum_loss: Array                  # (T,)
    comparator: Array
    comparator_loss: float
    delay_sum: int
    fingerprint: str = ""
    converged: bool = True
    exponent: float | None = None
    exponent_halfwidth: float | None = None
    regret_refit: Array | None = None   # diagnostics: per-prefix comparators


@dataclass
class AggregateCurves:
    horizon: int
    trials: int
    cum_loss_mean: Array
    cum_loss_stderr: Array
    regret_mean: Array
    regret_stderr: Array
    fingerprint: str = ""


@dataclass
class ScalingFit:
    exponent: float
    halfwidth: float
    points_used: int


def harmonic(n: int) -> float:
    """n-th harmonic number (sum of 1/k, k = 1..n)."""
    if n < 1:
        return 0.0
    return float(np.sum(1.0 / np.arange(1, n + 1)))


# ---------------------------------------------------------------------------
# Offline comparator
# ---------------------------------------------------------------------------

def offline_optimum(losses: list[Loss], body: ConvexBody,
                    max_iters: int = 100_000, restarts: int = 5,
                    seed: int = 0, method: str = "auto") -> OfflineSolution:
    """Best fixed decision: argmin over the body of the summed losses.

    Quadratic families admit a closed form (the summed quadratic is a
    single isotropic quadratic, so projecting its weighted-mean center is
    exact); one-dimensional norm losses reduce to the median.  Everything
    else runs projected gradient descent with step 1/(L n), stopping when
    the displacement drops below 1e-8, restarted from `restarts` random
    points with the best kept.  `method="iterative"` forces the gradient
    path even where a closed form exists (used to cross-check the two).
    """
    if method not in ("auto", "iterative"):
        raise ValueError("method must be 'auto' or 'iterative'")
    if not losses:
        raise ValueError("need at least one loss")
    dim = losses[0].dim
    for loss in losses:
        if loss.dim != dim:
            raise ValueError("loss anchors disagree on dimension")
    if body.dim != dim:
        raise ValueError("body dimension does not match the losses")

    objective, gradient = _sum_oracles(losses)

    if method == "auto" and all(isinstance(l, QuadraticLoss) for l in losses):
        weights = np.array([l.a for l in losses])
        anchors = np.stack([l.anchor for l in losses])
        center = (weights[:, None] * anchors).sum(axis=0) / weights.sum()
        point = body.project(center)
        return OfflineSolution(point=point, total=objective(point), converged=True)

    if method == "auto" and all(isinstance(l, NormLoss) for l in losses) and dim == 1:
        median = float(np.median(np.stack([l.anchor for l in losses])[:, 0]))
        point = body.project(np.array([median]))
        return OfflineSolution(point=point, total=objective(point), converged=True)

    radius = body.radius_bound + max(float(np.linalg.norm(l.anchor)) for l in losses)
    lipschitz = max(l.lipschitz_bound(radius) for l in losses)
    step = 1.0 / (lipschitz * len(losses))
    rng = np.random.default_rng(seed)

    best_point = None
    best_value = np.inf
    any_converged = False
    for _ in range(restarts):
        x = body.sample(rng)
        converged = False
        for _ in range(max_iters):
            x_next = body.project(x - step * gradient(x))
            if float(np.linalg.norm(x_next - x)) <= 1e-8:
                x = x_next
                converged = True
                break
            x = x_next
        value = objective(x)
        if value < best_value:
            best_point, best_value = x, value
        any_converged = any_converged or converged

    if not any_converged:
        warnings.warn("offline comparator search hit the iteration budget", RuntimeWarning)
    return OfflineSolution(point=best_point, total=best_value, converged=any_converged)


def _sum_oracles(losses):
    """Value and gradient of the summed objective, vectorized per family."""
    first = type(losses[0])
    homogeneous = all(type(l) is first for l in losses)
    anchors = np.stack([l.anchor for l in losses])

    if homogeneous and first is QuadraticLoss:
        a = np.array([l.a for l in losses])
        b_total = float(sum(l.b for l in losses))

        def value(x):
            r2 = np.sum((x - anchors) ** 2, axis=1)
            return float(np.dot(a, r2)) + b_total

        def grad(x):
            return 2.0 * np.sum(a[:, None] * (x - anchors), axis=0)

        return value, grad

    if homogeneous and first is NormLoss:
        def value(x):
            return float(np.sum(np.linalg.norm(x - anchors, axis=1)))

        def grad(x):
            diff = x - anchors
            r = np.linalg.norm(diff, axis=1)
            keep = r > 0
            return np.sum(diff[keep] / r[keep, None], axis=0)

        return value, grad

    if homogeneous and first is PowerLoss and len({l.m for l in losses}) == 1:
        m = losses[0].m

        def value(x):
            r = np.linalg.norm(x - anchors, axis=1)
            return float(np.sum(r**m))

        def grad(x):
            diff = x - anchors
            r = np.linalg.norm(diff, axis=1)
            if m == 1:
                keep = r > 0
                return np.sum(diff[keep] / r[keep, None], axis=0)
            return m * np.sum(r[:, None] ** (m - 2) * diff, axis=0)

        return value, grad

    if homogeneous and first is ExpLoss and len({(l.a, l.s, l.m) for l in losses}) == 1:
        a, s, m = losses[0].a, losses[0].s, losses[0].m

        def value(x):
            r = np.linalg.norm(x - anchors, axis=1)
            return float(a * np.sum(np.exp(r**m / s**2)))

        def grad(x):
            diff = x - anchors
            r = np.linalg.norm(diff, axis=1)
            if m == 1:
                keep = r > 0
                w = a / s**2 * np.exp(r[keep] / s**2)
                return np.sum(w[:, None] * diff[keep] / r[keep, None], axis=0)
            w = a * m / s**2 * r ** (m - 2) * np.exp(r**m / s**2)
            return np.sum(w[:, None] * diff, axis=0)

        return value, grad

    def value(x):
        return float(sum(l.value(x) for l in losses))

    def grad(x):
        total = np.zeros_like(anchors[0])
        for l in losses:
            total = total + l.grad(x)
        return total

    return value, grad


def _per_loss_values(losses, x) -> Array:
    return np.array([l.value(x) for l in losses])


# ---------------------------------------------------------------------------
# Regret
# ---------------------------------------------------------------------------

def regret(traj: Trajectory, body: ConvexBody, refit_prefixes: bool = False,
           skip_rounds: int = 0) -> RegretReport:
    """Regret curve of a finished trajectory against the hindsight optimum.

    `skip_rounds` drops that many initial rounds from the reported regret
    (and from the comparator's objective): the dummy-candidate warm-up.
    The cumulative-loss curve always covers every round.
    """
    if len(traj.losses) != traj.horizon:
        raise ValueError("trajectory is incomplete")
    if not 0 <= skip_rounds < traj.horizon:
        raise ValueError("skip_rounds must lie in [0, horizon)")
    scored = traj.losses[skip_rounds:]
    solution = offline_optimum(scored, body)
    comparator_values = np.zeros(traj.horizon)
    comparator_values[skip_rounds:] = _per_loss_values(scored, solution.point)
    scored_loss = traj.loss_values.copy()
    scored_loss[:skip_rounds] = 0.0
    cum_loss = np.cumsum(traj.loss_values)
    series = np.cumsum(scored_loss) - np.cumsum(comparator_values)

    refit = None
    if refit_prefixes:
        refit = np.empty(traj.horizon)
        cum_scored = np.cumsum(scored_loss)
        for t in range(1, traj.horizon + 1):
            if t <= skip_rounds:
                refit[t - 1] = 0.0
                continue
            sol_t = offline_optimum(traj.losses[skip_rounds:t], body)
            refit[t - 1] = cum_scored[t - 1] - sol_t.total

    return RegretReport(
        horizon=traj.horizon,
        regret=series,
        cum_loss=cum_loss,
        comparator=solution.point,
        comparator_loss=solution.total,
        delay_sum=traj.delay_sum,
        fingerprint=traj.fingerprint,
        converged=solution.converged,
        regret_refit=refit,
    )


def fit_scaling(points) -> ScalingFit:
    """Least-squares power-law exponent from (scale, regret) pairs.

    Fits log regret against log scale; returns the slope and its 95%
    confidence half-width.  Nonpositive regrets are dropped; fewer than 3
    surviving points is an error.
    """
    kept = [(float(v), float(r)) for v, r in points if r > 0.0]
    for v, _ in kept:
        if v <= 0.0:
            raise ValueError("scale values must be positive")
    if len(kept) < 3:
        raise ValueError(f"need at least 3 positive points, have {len(kept)}")
    log_v = np.log([v for v, _ in kept])
    log_r = np.log([r for _, r in kept])
    fit = stats.linregress(log_v, log_r)
    if np.isnan(fit.stderr) or fit.stderr == 0.0:
        halfwidth = 0.0
    else:
        halfwidth = float(fit.stderr * stats.t.ppf(0.975, len(kept) - 2))
    return ScalingFit(exponent=float(fit.slope), halfwidth=halfwidth, points_used=len(kept))


def aggregate(reports: list[RegretReport]) -> AggregateCurves:
    """Pointwise mean and standard error over trials of one configuration."""
    if not reports:
        raise ValueError("nothing to aggregate")
    fingerprint = reports[0].fingerprint
    horizon = reports[0].horizon
    for r in reports:
        if r.fingerprint != fingerprint:
            raise ValueError("trials come from different configurations")
        if r.horizon != horizon:
            raise ValueError("trials disagree on the horizon")
    cum = np.stack([r.cum_loss for r in reports])
    reg = np.stack([r.regret for r in reports])
    n = len(reports)

    def stderr(stack):
        if n < 2:
            return np.zeros(stack.shape[1])
        return np.std(stack, axis=0, ddof=1) / np.sqrt(n)

    return AggregateCurves(
        horizon=horizon,
        trials=n,
        cum_loss_mean=cum.mean(axis=0),
        cum_loss_stderr=stderr(cum),
        regret_mean=reg.mean(axis=0),
        regret_stderr=stderr(reg),
        fingerprint=fingerprint,
    )


def write_csv(curves: AggregateCurves, path) -> None:
    """Serialize aggregated curves: t, cum_loss_mean/stderr, regret_mean/stderr."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("t,cum_loss_mean,cum_loss_stderr,regret_mean,regret_stderr\n")
        for i in range(curves.horizon):
            fh.write(
                f"{i + 1},{float(curves.cum_loss_mean[i])!r},{float(curves.cum_loss_stderr[i])!r},"
                f"{float(curves.regret_mean[i])!r},{float(curves.regret_stderr[i])!r}\n"
            )
