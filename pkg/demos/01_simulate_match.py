#!/usr/bin/env python3
"""Simulate a match between two team profiles and read the report.

The engine is fully deterministic for a fixed seed: run this twice and you
get byte-identical numbers.
"""

from hatsim import load_params, preset_profiles, simulate

params = load_params("kb-probabilistic")
profiles = preset_profiles()

home, away = profiles["NM"], profiles["CA"]
report = simulate(home, away, params, trials=50_000, seed=42)

print("NM (home) vs CA (away), 50k trials, seed 42")
print(f"  P(home win) = {report.hda.home:.3f}")
print(f"  P(draw)     = {report.hda.draw:.3f}")
print(f"  P(away win) = {report.hda.away:.3f}")
print()
print("goal sources per match (means):")
for side, stats in (("home", report.home), ("away", report.away)):
    parts = ", ".join(f"{k} {v:.3f}" for k, v in stats.goal_means.items() if v > 0)
    print(f"  {side}: total {stats.total_mean:.3f}  ({parts})")
print()
print("home total-goal histogram:", report.home.histogram)

# The counterattacking away side converts the home side's misses; compare
# its counter goals against the same profile forced onto the Normal tactic.
from dataclasses import replace
from hatsim import TacticSpec

away_normal = replace(away, tactic=TacticSpec("Normal"))
base = simulate(home, away_normal, params, trials=50_000, seed=42)
print()
print(f"away counter goals with CA tactic:  {report.away.goal_means['counter']:.3f}")
print(f"away counter goals playing Normal:  {base.away.goal_means['counter']:.3f}")
