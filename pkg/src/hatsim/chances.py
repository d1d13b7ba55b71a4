"""Possession, chance allocation, pressing suppression, and counterattack eligibility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TacticSpec, TeamProfile
from .params import EngineParams


@dataclass(frozen=True)
class PossessionPair:
    pos_home: float
    pos_away: float


@dataclass(frozen=True)
class ChanceAllocation:
    exclusive_home: int
    exclusive_away: int
    shared_home: int
    shared_away: int

    @property
    def normal_home(self) -> int:
        return self.exclusive_home + self.shared_home

    @property
    def normal_away(self) -> int:
        return self.exclusive_away + self.shared_away


@dataclass(frozen=True)
class EffectiveMidfields:
    mid_home: float
    mid_away: float
    home_ca_eligible: bool
    away_ca_eligible: bool


def _denom(rating: float) -> float:
    # Internal variant without the >= 1 input check: effective midfields after
    # the counterattack penalty may dip slightly below 1.
    return 4.0 * rating - 3.0


def effective_midfields(home: TeamProfile, away: TeamProfile,
                        params: EngineParams) -> EffectiveMidfields:
    """Apply the counterattack midfield penalty and derive CA eligibility.

    A team playing CA gives up a fraction of its midfield rating, and only
    counts as counterattack-eligible if its pre-penalty midfield is strictly
    lower than the opponent's pre-penalty midfield.
    """
    factor = 1.0 - params.ca_midfield_penalty
    mh, ma = home.midfield, away.midfield
    home_elig = home.tactic.kind == "CA" and home.midfield < away.midfield
    away_elig = away.tactic.kind == "CA" and away.midfield < home.midfield
    if home.tactic.kind == "CA":
        mh = home.midfield * factor
    if away.tactic.kind == "CA":
        ma = away.midfield * factor
    return EffectiveMidfields(mh, ma, home_elig, away_elig)


def possession(mid_home: float, mid_away: float) -> PossessionPair:
    """Probability of winning an attack from the cubed denominated midfield ratings."""
    h = _denom(mid_home) ** 3
    a = _denom(mid_away) ** 3
    p = h / (h + a)
    return PossessionPair(p, 1.0 - p)


def allocate_chances(pos: PossessionPair, rng: np.random.Generator) -> ChanceAllocation:
    """Sample the per-team exclusive and shared chances for one match.

    Each team draws its five exclusive chances independently; the five shared
    chances are split, so a shared chance lost by one side goes to the other.
    """
    eh = int(rng.binomial(5, pos.pos_home))
    ea = int(rng.binomial(5, pos.pos_away))
    sh = int(rng.binomial(5, pos.pos_home))
    return ChanceAllocation(eh, ea, sh, 5 - sh)


def pressing_suppression(home: TacticSpec, away: TacticSpec,
                         params: EngineParams) -> tuple[float, float]:
    """Per-attack suppression probabilities (normal, long-shot) due to pressing.

    One team pressing thins normal attacks on a skill-scaled rate; when both
    press, a steeper combined curve is evaluated at the mean of the two
    skills. Long-shot suppression only applies when a pressing team faces a
    long-shots opponent.
    """
    home_pr = home.kind == "PR"
    away_pr = away.kind == "PR"
    if not home_pr and not away_pr:
        return 0.0, 0.0
    if home_pr and away_pr:
        p_norm = params.tactic_rate("press_both", (home.skill + away.skill) / 2.0)
        return p_norm, 0.0
    pr_skill = home.skill if home_pr else away.skill
    opponent = away if home_pr else home
    p_norm = params.tactic_rate("press_one", pr_skill)
    p_ls = params.tactic_rate("press_ls", pr_skill) if opponent.kind == "LS" else 0.0
    return p_norm, p_ls
