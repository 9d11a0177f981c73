#!/usr/bin/env python3
"""Smaller cousins of the delay and correlation sweep experiments.

More delay means more cumulative loss; more correlation between the
visible and hidden context parts lets the pull help slightly.  The full
presets (fig1, fig2) run 100 trials; this uses 10 to stay snappy.
"""

import dataclasses

from laglearn import experiments

fig1 = dataclasses.replace(
    experiments.parse_config(experiments.preset_path("fig1")), trials=10)
manifest = experiments.run_experiment(fig1, "results/demo-delay-sweep")

print("== delay sweep (10 trials, T=1000) ==")
for tau in (10, 15, 30):
    arm = manifest["arms"][f"tau{tau}"]
    print(f"  tau={tau:2d}: cumulative loss {arm['final_cum_loss_mean']:8.1f}"
          f"   regret {arm['final_regret_mean']:7.1f}")

fig2 = dataclasses.replace(
    experiments.parse_config(experiments.preset_path("fig2")), trials=10)
manifest = experiments.run_experiment(fig2, "results/demo-correlation-sweep")

print("\n== correlation sweep (tau=10, 10 trials) ==")
for rho in (0.0, 0.4, 0.8):
    arm = manifest["arms"][f"rho{rho:g}"]
    print(f"  rho={rho:.1f}: cumulative loss {arm['final_cum_loss_mean']:8.1f}")

print("\nCSV curves and manifest.json written under results/demo-*")
