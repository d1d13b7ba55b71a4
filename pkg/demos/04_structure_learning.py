#!/usr/bin/env python3
"""Generate a simulator dataset, learn a structure over it, and compare the
learned equivalence class against an expected reference.

Desk-scale version of the pipeline: simulate matches -> discretise ->
score-based search -> graphical comparison.
"""

from hatsim import (Dag, SamplerSpec, SearchOptions, bic_score, compare_graphs,
                    dag_to_cpdag, generate_dataset, hill_climb, load_params,
                    split, tabu_search)

params = load_params("kb-probabilistic")

spec = SamplerSpec(
    tactics=("Normal",),
    columns=("ratings", "goals", "hda"),
    rating_bins=3,
)
data = generate_dataset(12_000, spec, params, seed=21)
print(f"dataset: {data.n} matches x {len(data.variables)} columns")

train, test = split(data, 0.9, seed=1)
print(f"split: {train.n} train / {test.n} held out")

# Learn over a focused column subset so the run stays instant.
view = train.select([
    "home_midfield", "away_midfield", "home_mid_att", "away_mid_def",
    "home_goals_normal", "home_goals_total", "hda",
])
opts = SearchOptions(max_indegree=3)
hc = hill_climb(view, opts)
tabu = tabu_search(view, opts)
print(f"hill climb BIC {hc.bic:.1f} with {len(hc.dag.edges)} edges")
print(f"tabu       BIC {tabu.bic:.1f} with {len(tabu.dag.edges)} edges")

held_out = bic_score(tabu.dag, test.select(list(view.variables)))
print(f"tabu structure re-scored on held-out rows: BIC {held_out.bic:.1f}")

print("\nlearned edges:")
for u, v in sorted(tabu.dag.edges):
    print(f"  {u} -> {v}")

# Dependencies we know the generator wires in directly.
reference = Dag.of(view.variables, [
    ("home_midfield", "home_goals_normal"),
    ("home_mid_att", "home_goals_normal"),
    ("away_mid_def", "home_goals_normal"),
    ("home_goals_normal", "home_goals_total"),
    ("home_goals_total", "hda"),
])
learned_skeleton = dag_to_cpdag(tabu.dag).skeleton()
recall = sum(frozenset(e) in learned_skeleton for e in reference.edges)
print(f"\nreference dependencies recovered: {recall}/{len(reference.edges)}")

cmp_ = compare_graphs(tabu.dag, reference)
print(f"equivalence-class comparison: F1 {cmp_.f1:.2f}, BSF {cmp_.bsf:.2f}, "
      f"SHD {cmp_.shd:.1f}")
print("Orientation credit is only given where the class compels a direction,")
print("so a recovered skeleton with free orientations still scores low on F1.")
