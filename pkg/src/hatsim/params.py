"""Engine parameter registry.

Every numeric constant the engine consumes lives here, never inline in the
mechanics, so the two presets ("kb-probabilistic" and "kb-regression") differ
only by data. Any value can be overridden through a flat JSON object of
dotted keys, e.g. ``{"pk_score": 0.5, "pdim_block.2": 0.10}``.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from typing import Any

from .core import ValidationError

PLAYER_EVENT_KINDS = (
    "winger_any", "tech_over_head", "quick_rush", "quick_pass",
    "unpred_long_pass", "unpred_score_own", "unpred_special",
    "unpred_mistake", "unpred_own_goal",
)
TEAM_EVENT_KINDS = ("experienced_fwd", "inexp_defender", "tired_defender", "corner")

# Player events that score against the team they happen to.
NEGATIVE_EVENT_KINDS = ("unpred_mistake", "unpred_own_goal")

#: Baseline chance distribution over sectors and set-piece types.
SECTOR_BASELINE = {
    "left": 0.2565, "mid": 0.3615, "right": 0.2565,
    "dfk": 0.0586, "ifk": 0.0418, "pk": 0.0251,
}

#: Player-based special events: share of events, per-match rate, scoring rate.
PLAYER_EVENT_TABLE = {
    "winger_any":       (0.2572, 0.2163, 0.4951),
    "tech_over_head":   (0.1519, 0.1277, 0.2937),
    "quick_rush":       (0.1529, 0.1286, 0.3670),
    "quick_pass":       (0.1449, 0.1219, 0.4387),
    "unpred_long_pass": (0.0817, 0.0687, 0.4090),
    "unpred_score_own": (0.0637, 0.0536, 0.5822),
    "unpred_special":   (0.0666, 0.0560, 0.4241),
    "unpred_mistake":   (0.0345, 0.0290, 0.1816),
    "unpred_own_goal":  (0.0466, 0.0392, 0.1725),
}

#: Team-based special events: share, per-match rate, scoring rate.
TEAM_EVENT_TABLE = {
    "experienced_fwd": (0.1076, 0.0400, 0.3704),
    "inexp_defender":  (0.1054, 0.0392, 0.1050),
    "tired_defender":  (0.0012, 0.0004, 0.3432),
    "corner":          (0.7858, 0.2922, 0.4849),
}
CORNER_TO_HEAD_SCORE = 0.5503

#: Team-based event rates in the regression variant: (goal rate, no-goal rate).
REGRESSION_TEAM_RATES = {
    "corner_to_head":   (0.0819, 0.0521),
    "corner_to_anyone": (0.1394, 0.0558),
    "tired_defender":   (0.0031, 0.0022),
    "experienced_fwd":  (0.0269, 0.0181),
    "inexp_defender":   (0.0121, 0.0345),
}

#: Cubic in the ISP attack-minus-defence difference used for set-piece scoring.
SETPIECE_CURVE = {
    "coeffs": [0.45515, 0.0366246, 0.0000226846, -0.0000380429],  # c0 + c1*d + c2*d^2 + c3*d^3
    "diff_range": [-15.0, 15.0],
}

#: Community regression polynomials for tactic conversion rates over skill.
REGRESSION_TACTIC_POLYS = {
    "ca":  [-0.617941717072569, 0.104274398, -0.00358354796, 0.0000434356],
    "aim": [0.0705084, 0.02180462, -0.00036765, 0.0],
    "aow": [0.10514706, 0.02894608, -0.00046569, 0.0],
    "ls_convert": [0.07520052, 0.00761935, 0.0, 0.0],
}

_LINEAR_TACTIC_RANGES = {
    "aim": (0.20, 0.35),
    "aow": (0.34, 0.52),
    "ca": (0.04, 0.45),
    "ls_convert": (0.06, 0.43),
    "press_one": (0.05, 0.41),
    "press_both": (0.20, 0.64),
    "press_ls": (0.44, 0.66),
}

SKILL_DOMAIN = (1.0, 20.0)


@dataclass(frozen=True)
class EngineParams:
    """Immutable bundle of every tunable engine constant."""

    variant: str
    sector_probs: dict[str, float]
    player_event_frequencies: dict[str, float]
    team_event_frequencies: dict[str, float]
    player_event_rates: dict[str, float]
    team_event_rates: dict[str, float]
    score_probs: dict[str, float]
    player_event_mean: float
    team_event_mean: float
    player_event_trials: int
    team_event_trials: int
    tactic_curves: dict[str, dict]
    ls_score: dict[str, Any]
    ca_nontactical_rates: dict[int, float]
    tech_ca_rates: dict[int, float]
    pnf_rates: dict[str, float]
    pdim_block: dict[int, float]
    pk_score: float
    setpiece_multipliers: dict[str, float]
    setpiece_curve: dict[str, Any]
    nontactical_ls: float
    nontactical_ls_skill: float
    corner_to_head_rates: dict[int, float]
    winger_to_head_rates: dict[int, float]
    winger_head_bonus: float
    use_corner_head_formula: bool
    expfwd_reference: float
    inexpdef_reference: float
    pc: dict[str, Any]
    ca_midfield_penalty: float

    # -- curve evaluation -----------------------------------------------

    def tactic_rate(self, name: str, skill: float) -> float:
        """Conversion rate of a tactic curve at the given skill, clamped to [0, 1]."""
        curve = self.tactic_curves[name]
        if curve["kind"] == "linear":
            lo, hi = SKILL_DOMAIN
            t = min(max((skill - lo) / (hi - lo), 0.0), 1.0)
            v = curve["lo"] + t * (curve["hi"] - curve["lo"])
        else:
            c = curve["coeffs"]
            v = c[0] + c[1] * skill + c[2] * skill ** 2 + c[3] * skill ** 3
        return min(max(v, 0.0), 1.0)

    def validate(self) -> None:
        _check_prob_map("sector_probs", self.sector_probs, must_sum=1.0)
        _check_prob_map("player_event_frequencies", self.player_event_frequencies, must_sum=1.0)
        _check_prob_map("team_event_frequencies", self.team_event_frequencies, must_sum=1.0)
        _check_prob_map("score_probs", self.score_probs)
        _check_prob_map("player_event_rates", self.player_event_rates)
        _check_prob_map("team_event_rates", self.team_event_rates)
        for name, m in (("ca_nontactical_rates", self.ca_nontactical_rates),
                        ("tech_ca_rates", self.tech_ca_rates),
                        ("pnf_rates", self.pnf_rates),
                        ("pdim_block", self.pdim_block),
                        ("corner_to_head_rates", self.corner_to_head_rates),
                        ("winger_to_head_rates", self.winger_to_head_rates)):
            _check_prob_map(name, m)
        for name, v in (("pk_score", self.pk_score),
                        ("nontactical_ls", self.nontactical_ls)):
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1], got {v}", name)
        # Rate columns must agree with the stated per-match means.
        p_sum = math.fsum(self.player_event_rates.values())
        t_sum = math.fsum(self.team_event_rates.values())
        if abs(p_sum - self.player_event_mean) >= 5e-4:
            raise ValidationError(
                f"player event rates sum {p_sum:.4f} != stated mean {self.player_event_mean}",
                "player_event_rates")
        if abs(t_sum - self.team_event_mean) >= 5e-4:
            raise ValidationError(
                f"team event rates sum {t_sum:.4f} != stated mean {self.team_event_mean}",
                "team_event_rates")


def _check_prob_map(name: str, m: dict, must_sum: float | None = None) -> None:
    for k, v in m.items():
        if not 0.0 <= v <= 1.0:
            raise ValidationError(f"{name}.{k} must be in [0, 1], got {v}", f"{name}.{k}")
    if must_sum is not None:
        s = math.fsum(m.values())
        if abs(s - must_sum) > 1e-9:
            raise ValidationError(f"{name} must sum to {must_sum}, got {s!r}", name)


def _base_tree() -> dict[str, Any]:
    return {
        "variant": "kb-probabilistic",
        "sector_probs": dict(SECTOR_BASELINE),
        "player_event_frequencies": {k: v[0] for k, v in PLAYER_EVENT_TABLE.items()},
        "team_event_frequencies": {k: v[0] for k, v in TEAM_EVENT_TABLE.items()},
        "player_event_rates": {k: v[1] for k, v in PLAYER_EVENT_TABLE.items()},
        "team_event_rates": {k: v[1] for k, v in TEAM_EVENT_TABLE.items()},
        "score_probs": {
            **{k: v[2] for k, v in PLAYER_EVENT_TABLE.items()},
            **{k: v[2] for k, v in TEAM_EVENT_TABLE.items()},
            "corner_to_anyone": TEAM_EVENT_TABLE["corner"][2],
            "corner_to_head": CORNER_TO_HEAD_SCORE,
        },
        "player_event_mean": 0.841,
        "team_event_mean": 0.372,
        "player_event_trials": 4,
        "team_event_trials": 5,
        "tactic_curves": {
            name: {"kind": "linear", "lo": lo, "hi": hi}
            for name, (lo, hi) in _LINEAR_TACTIC_RANGES.items()
        },
        "ls_score": {"lo": 0.11, "hi": 1.00, "diff_range": [-15.0, 15.0]},
        "ca_nontactical_rates": {2: 0.0175, 3: 0.0363, 4: 0.0604, 5: 0.0803},
        "tech_ca_rates": {2: 0.0084, 3: 0.0100, 4: 0.0311},  # 4 stands for "more than three"
        "pnf_rates": {
            "1,0": 0.096, "1,1": 0.069, "1,2": 0.033, "1,3": 0.020,
            "2,0": 0.117, "2,1": 0.096, "2,2": 0.052, "2,3": 0.031,
            "3,*": 0.066,
        },
        "pdim_block": {1: 0.065, 2: 0.065, 3: 0.065},
        # Flat penalty conversion; calibrated against the 3.76 goals/match
        # target by scripts/calibrate_pk.py (see README).
        "pk_score": 0.0,
        "setpiece_multipliers": {"dfk": 1.0, "ifk": 1.0},
        "setpiece_curve": copy.deepcopy(SETPIECE_CURVE),
        "nontactical_ls": 0.0,
        "nontactical_ls_skill": 10.0,
        "corner_to_head_rates": {1: 0.27, 2: 0.42, 3: 0.51, 4: 0.59, 5: 0.65},
        "winger_to_head_rates": {1: 0.15, 2: 0.29, 3: 0.35, 4: 0.38, 5: 0.42},
        "winger_head_bonus": 0.11,
        "use_corner_head_formula": True,
        "expfwd_reference": 2.0,
        "inexpdef_reference": 3.5,
        "pc": {"extra_trials": 2, "own": [2.37, 3.80], "opp": [1.63, 1.88], "both": 3.05},
        "ca_midfield_penalty": 0.07,
    }


def _regression_tree() -> dict[str, Any]:
    tree = _base_tree()
    tree["variant"] = "kb-regression"
    for name, coeffs in REGRESSION_TACTIC_POLYS.items():
        tree["tactic_curves"][name] = {"kind": "poly", "coeffs": list(coeffs)}
    # Team-based event registry rebuilt from the regression rate table.
    rates = {k: g + n for k, (g, n) in REGRESSION_TEAM_RATES.items()}
    corner_rate = rates["corner_to_head"] + rates["corner_to_anyone"]
    team_rates = {
        "experienced_fwd": rates["experienced_fwd"],
        "inexp_defender": rates["inexp_defender"],
        "tired_defender": rates["tired_defender"],
        "corner": corner_rate,
    }
    total = math.fsum(team_rates.values())
    tree["team_event_rates"] = team_rates
    tree["team_event_frequencies"] = {k: v / total for k, v in team_rates.items()}
    tree["team_event_mean"] = total
    goal = {k: g for k, (g, n) in REGRESSION_TEAM_RATES.items()}
    tree["score_probs"].update({
        "experienced_fwd": goal["experienced_fwd"] / rates["experienced_fwd"],
        "inexp_defender": goal["inexp_defender"] / rates["inexp_defender"],
        "tired_defender": goal["tired_defender"] / rates["tired_defender"],
        "corner_to_anyone": goal["corner_to_anyone"] / rates["corner_to_anyone"],
        "corner_to_head": goal["corner_to_head"] / rates["corner_to_head"],
        "corner": goal["corner_to_anyone"] / rates["corner_to_anyone"],
    })
    tree["use_corner_head_formula"] = False
    # All three set-piece kinds follow the fitted cubic in this variant.
    tree["pk_score"] = 0.0  # unused: PK scoring goes through the cubic
    return tree


PRESETS = {
    "kb-probabilistic": _base_tree,
    "kb-regression": _regression_tree,
}

_INT_KEY_MAPS = {"ca_nontactical_rates", "tech_ca_rates", "pdim_block",
                 "corner_to_head_rates", "winger_to_head_rates"}


def _apply_override(tree: dict, dotted: str, value: Any) -> None:
    parts = dotted.split(".")
    node: Any = tree
    for i, part in enumerate(parts[:-1]):
        if not isinstance(node, dict) or part not in node:
            raise ValidationError(f"unknown parameter key {dotted!r}", dotted)
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict):
        raise ValidationError(f"unknown parameter key {dotted!r}", dotted)
    if len(parts) >= 2 and parts[-2] in _INT_KEY_MAPS:
        try:
            key: Any = int(leaf)
        except ValueError:
            raise ValidationError(f"key {leaf!r} of {parts[-2]} must be an integer", dotted)
        node[key] = value
        return
    if leaf not in node:
        raise ValidationError(f"unknown parameter key {dotted!r}", dotted)
    if isinstance(node[leaf], dict) and not isinstance(value, dict):
        raise ValidationError(f"{dotted!r} is a group, not a value", dotted)
    node[leaf] = value


def load_params(preset: str = "kb-probabilistic",
                overrides: dict[str, Any] | None = None) -> EngineParams:
    """Build an EngineParams from a named preset plus flat dotted-key overrides."""
    if preset not in PRESETS:
        raise ValidationError(f"unknown preset {preset!r}; "
                              f"expected one of {sorted(PRESETS)}", "preset")
    tree = PRESETS[preset]()
    for key, value in (overrides or {}).items():
        _apply_override(tree, key, value)
    params = EngineParams(**tree)
    params.validate()
    return params
