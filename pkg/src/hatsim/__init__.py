"""Seedable probabilistic football match engine with decision sweeps, forecast
scoring, graph-comparison metrics, and score-based structure learning."""

from .core import (PositionCounts, SpecialityRoster, TacticSpec, TeamProfile,
                   ValidationError, Violation, denominate, hatstats,
                   profile_from_dict, profile_to_dict, validate_profile)
from .params import EngineParams, load_params
from .chances import (ChanceAllocation, PossessionPair, allocate_chances,
                      effective_midfields, possession, pressing_suppression)
from .attacks import (SectorDistribution, assign_sectors, generate_counterattacks,
                      pdim_blocks, pnf_extra_attacks, score_long_shot,
                      score_open_play, score_set_piece, sector_distribution)
from .events import (allocate_event, corner_subtype, event_counts,
                     score_corner_to_head, score_event, select_player_event)
from .engine import (GoalBreakdown, MatchOutcome, SimulationReport, outcome_to_hda,
                     simulate, simulate_trial)
from .forecast import ForecastTriple, baseline_priors, goal_diff_error, rps
from .graphs import (Cpdag, Dag, GraphComparison, compare_graphs, dag_to_cpdag,
                     graph_from_json, graph_to_json, model_average)
from .dataset import DiscreteDataset, SamplerSpec, generate_dataset, split
from .structlearn import ScoredGraph, SearchOptions, bic_score, hill_climb, tabu_search
from .sweeps import SweepResult, SweepSpec, preset_profiles, run_sweep

__version__ = "0.1.0"

__all__ = [
    "PositionCounts", "SpecialityRoster", "TacticSpec", "TeamProfile",
    "ValidationError", "Violation", "denominate", "hatstats",
    "profile_from_dict", "profile_to_dict", "validate_profile",
    "EngineParams", "load_params",
    "ChanceAllocation", "PossessionPair", "allocate_chances",
    "effective_midfields", "possession", "pressing_suppression",
    "SectorDistribution", "assign_sectors", "generate_counterattacks",
    "pdim_blocks", "pnf_extra_attacks", "score_long_shot", "score_open_play",
    "score_set_piece", "sector_distribution",
    "allocate_event", "corner_subtype", "event_counts", "score_corner_to_head",
    "score_event", "select_player_event",
    "GoalBreakdown", "MatchOutcome", "SimulationReport", "outcome_to_hda",
    "simulate", "simulate_trial",
    "ForecastTriple", "baseline_priors", "goal_diff_error", "rps",
    "Cpdag", "Dag", "GraphComparison", "compare_graphs", "dag_to_cpdag",
    "graph_from_json", "graph_to_json", "model_average",
    "DiscreteDataset", "SamplerSpec", "generate_dataset", "split",
    "ScoredGraph", "SearchOptions", "bic_score", "hill_climb", "tabu_search",
    "SweepResult", "SweepSpec", "preset_profiles", "run_sweep",
]
