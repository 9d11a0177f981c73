#!/usr/bin/env python3
"""Feedback with arbitrary (adversary-chosen) delays.

Each round's loss lands after its own random delay, so a single round
may deliver several losses at once or none at all.  The constant-step
learner folds whole delivery batches into one update; its regret tracks
the square root of the total delay sum D rather than the horizon alone.
"""

import numpy as np

from laglearn import (
    AdversarialLearner,
    Ball,
    GaussianStream,
    LinearScoring,
    RandomDelay,
    eta_for_arbitrary_delay,
    fixed_loss,
    NormLoss,
    regret,
    run_game,
)

body = Ball([0.0], 4.0)
print("horizon   delay sum D   eta        regret   regret/sqrt(D)")
for horizon in (500, 1000, 2000):
    delays = RandomDelay(d_max=20, seed=33)
    delay_sum = int(delays.realize(horizon).sum())
    eta = eta_for_arbitrary_delay(L=1.0, R=body.radius_bound, lam=0.0,
                                  horizon=horizon, delay_sum=delay_sum)
    stream = GaussianStream(mean=0.25, body_hidden=body, seed=5)
    learner = AdversarialLearner(body, eta=eta)
    traj = run_game(learner, stream, delays, fixed_loss(NormLoss),
                    LinearScoring.default(1, 1), horizon, seed=8)
    report = regret(traj, body)
    r = report.regret[-1]
    print(f"{horizon:7d}   {delay_sum:11d}   {eta:.6f}  {r:7.2f}   {r / np.sqrt(delay_sum):8.4f}")

print("\nbatched deliveries around one mid-game round:")
delays = RandomDelay(d_max=20, seed=33)
stream = GaussianStream(mean=0.25, body_hidden=body, seed=5)
learner = AdversarialLearner(body, eta=0.01)
traj = run_game(learner, stream, delays, fixed_loss(NormLoss),
                LinearScoring.default(1, 1), 60, seed=8)
for t in range(20, 31):
    print(f"  round {t}: delivered {list(traj.delivered[t - 1]) or 'nothing'}")
