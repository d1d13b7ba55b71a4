#!/usr/bin/env python3
"""What-if analysis: which rating is worth upgrading, and does pressing
really blunt a long-shots opponent?

Every sweep reuses one seed across its points (common random numbers), so a
curve's shape reflects the intervention, not resampling noise.
"""

from dataclasses import replace

from hatsim import TacticSpec, load_params
from hatsim.sweeps import SweepSpec, preset_profiles, run_sweep

params = load_params("kb-probabilistic")
profiles = preset_profiles()
nm, ls = profiles["NM"], profiles["LS"]

TRIALS = 20_000

print("== mirror match: upgrade midfield or one attack sector? ==")
for vary in ("midfield", "mid_att"):
    spec = SweepSpec(base_home=nm, base_away=nm, vary=vary,
                     points=[0, 1, 2, 3, 4], delta=True,
                     trials_per_point=TRIALS, seed=11)
    result = run_sweep(spec, params)
    curve = "  ".join(f"{p.value:.0f}:{p.p_win:.3f}" for p in result.points)
    gain = result.points[-1].p_win - result.points[0].p_win
    print(f"  {vary:<9} p_win by level  {curve}   (+{gain:.3f} over +4)")

print()
print("== countering a long-shots team with pressing ==")
pressing_home = replace(nm, tactic=TacticSpec("PR", 10))
spec = SweepSpec(base_home=pressing_home, base_away=ls, vary="tactic_skill",
                 points=list(range(10, 21, 2)), trials_per_point=TRIALS, seed=13)
result = run_sweep(spec, params)
print("  PR skill   p_win   p_draw  opponent p_win")
for p in result.points:
    print(f"  {p.value:>8}   {p.p_win:.3f}   {p.p_draw:.3f}   {p.p_lose:.3f}")
print()
print("Pressing mostly converts the opponent's wins into draws: the win")
print("probability moves less than the loss probability falls.")
