"""What-if sweeps: vary one input of a team and track win/draw/lose probabilities."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from typing import Any

from .core import (RATING_FIELDS, TacticSpec, TeamProfile, ValidationError,
                   profile_from_dict, require_valid, validate_profile)
from .engine import simulate
from .params import EngineParams

PRESET_NAMES = ("NM", "CA", "LS")

SWEEPABLE_FIELDS = RATING_FIELDS + ("tactic_skill", "tactic_kind")


def preset_profiles() -> dict[str, TeamProfile]:
    """The three commonly debated team profiles, loaded from the shipped files."""
    out = {}
    for name in PRESET_NAMES:
        text = (resources.files("hatsim.data.profiles") / f"{name.lower()}.json").read_text()
        out[name] = profile_from_dict(json.loads(text), path=name)
    return out


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional intervention sweep against a fixed opponent.

    `vary` names a rating field, "tactic_skill", or "tactic_kind"; `points`
    are absolute values, or offsets from the base profile when `delta` is
    set. The varied side is always `base_home`.
    """

    base_home: TeamProfile
    base_away: TeamProfile
    vary: str
    points: list[Any]
    trials_per_point: int = 20_000
    seed: int = 0
    delta: bool = False

    def validate(self) -> None:
        if self.vary not in SWEEPABLE_FIELDS:
            raise ValidationError(f"cannot vary {self.vary!r}; "
                                  f"expected one of {SWEEPABLE_FIELDS}", "vary")
        if not self.points:
            raise ValidationError("points must be non-empty", "points")
        if self.vary != "tactic_kind":
            vals = [float(p) for p in self.points]
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValidationError("points must be strictly increasing", "points")
        if self.trials_per_point < 1:
            raise ValidationError("trials_per_point must be >= 1", "trials_per_point")
        if self.delta and self.vary in ("tactic_kind",):
            raise ValidationError("delta mode needs a numeric field", "delta")


@dataclass(frozen=True)
class SweepPoint:
    value: Any
    p_win: float
    p_draw: float
    p_lose: float
    mean_total_goals: float


@dataclass(frozen=True)
class SweepResult:
    vary: str
    points: list[SweepPoint]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "vary": self.vary,
            "points": [
                {"value": p.value, "p_win": p.p_win, "p_draw": p.p_draw,
                 "p_lose": p.p_lose, "mean_total_goals": p.mean_total_goals}
                for p in self.points
            ],
        }


def apply_intervention(base: TeamProfile, vary: str, value: Any) -> TeamProfile:
    """Clone the profile with exactly one field changed."""
    if vary in RATING_FIELDS:
        return replace(base, **{vary: float(value)})
    if vary == "tactic_skill":
        return replace(base, tactic=TacticSpec(base.tactic.kind, int(value)))
    if vary == "tactic_kind":
        return replace(base, tactic=TacticSpec(str(value), base.tactic.skill))
    raise ValidationError(f"cannot vary {vary!r}", "vary")


def run_sweep(spec: SweepSpec, params: EngineParams) -> SweepResult:
    """Simulate every sweep point with a shared seed (common random numbers)."""
    spec.validate()
    require_valid(spec.base_home, "base_home")
    require_valid(spec.base_away, "base_away")

    out: list[SweepPoint] = []
    for raw in spec.points:
        value = raw
        if spec.delta:
            base_value = (spec.base_home.tactic.skill if spec.vary == "tactic_skill"
                          else getattr(spec.base_home, spec.vary))
            value = base_value + raw
        home = apply_intervention(spec.base_home, spec.vary, value)
        violations = validate_profile(home)
        if violations:
            raise ValidationError(
                f"point {raw!r} produces an invalid profile: {violations[0]}", spec.vary)
        report = simulate(home, spec.base_away, params,
                          trials=spec.trials_per_point, seed=spec.seed)
        total = report.home.total_mean + report.away.total_mean
        out.append(SweepPoint(value=value, p_win=report.hda.home,
                              p_draw=report.hda.draw, p_lose=report.hda.away,
                              mean_total_goals=total))
    return SweepResult(vary=spec.vary, points=out)
