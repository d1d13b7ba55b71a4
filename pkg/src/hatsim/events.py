"""Team-based and player-based special events: counts, selection, allocation, scoring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attacks import score_open_play
from .core import TacticSpec, TeamProfile
from .params import (EngineParams, NEGATIVE_EVENT_KINDS, PLAYER_EVENT_KINDS,
                     TEAM_EVENT_KINDS)

HOME, AWAY = "home", "away"


@dataclass(frozen=True)
class EventOutcome:
    kind: str
    beneficiary: str          # side the event happened for
    scored: bool
    own_goal: bool            # a goal credited to the beneficiary's opponent


def pc_side_multipliers(home: TacticSpec, away: TacticSpec,
                        params: EngineParams) -> tuple[float, float]:
    """Per-side event-rate multipliers induced by the creative tactic.

    The creative side gets the own-team boost interpolated over skill, its
    opponent a smaller boost; when both sides play creatively a single flat
    multiplier applies to each.
    """
    pc = params.pc
    home_pc, away_pc = home.kind == "PC", away.kind == "PC"
    if home_pc and away_pc:
        return pc["both"], pc["both"]
    if not home_pc and not away_pc:
        return 1.0, 1.0

    def lerp(rng_pair, skill):
        lo, hi = rng_pair
        t = min(max((skill - 1.0) / 19.0, 0.0), 1.0)
        return lo + t * (hi - lo)

    if home_pc:
        return lerp(pc["own"], home.skill), lerp(pc["opp"], home.skill)
    return lerp(pc["opp"], away.skill), lerp(pc["own"], away.skill)


def event_counts(home: TacticSpec, away: TacticSpec, params: EngineParams,
                 rng: np.random.Generator) -> tuple[int, int]:
    """Sample the match-level (team-based, player-based) special event counts.

    Counts are binomial with the trial counts and per-match means from the
    registry. Creative play raises both trial counts by two and rescales the
    success probability so the expected count carries the tactic multiplier.
    """
    (n_t, p_t), (n_p, p_p) = _count_distributions(home, away, params)
    return int(rng.binomial(n_t, p_t)), int(rng.binomial(n_p, p_p))


def _count_distributions(home, away, params):
    m_home, m_away = pc_side_multipliers(home, away, params)
    mult = (m_home + m_away) / 2.0
    n_t, n_p = params.team_event_trials, params.player_event_trials
    if home.kind == "PC" or away.kind == "PC":
        n_t += params.pc["extra_trials"]
        n_p += params.pc["extra_trials"]
    p_t = min(params.team_event_mean * mult / n_t, 1.0)
    p_p = min(params.player_event_mean * mult / n_p, 1.0)
    return (n_t, p_t), (n_p, p_p)


# --- player events ----------------------------------------------------------

def _enabler_count(kind: str, team: TeamProfile, opponent: TeamProfile) -> int:
    """Roster slots on `team` able to trigger the given player event."""
    r = team.roster
    if kind == "winger_any":
        return team.positions.wingers
    if kind == "tech_over_head":
        # Needs a headed defender or midfielder on the other side to dribble past.
        return r.technical_offensives if opponent.roster.head_defenders_or_ims >= 1 else 0
    if kind in ("quick_rush", "quick_pass"):
        return r.quick_offensives
    if kind == "unpred_long_pass":
        return r.unpredictable_lp_players
    if kind == "unpred_score_own":
        return r.unpredictable_offensives
    if kind == "unpred_special":
        return r.unpredictable_sa_players
    if kind == "unpred_mistake":
        return r.unpredictable_mistake_players
    if kind == "unpred_own_goal":
        return r.unpredictable_owngoal_players
    raise ValueError(f"not a player event kind: {kind!r}")


def feasible_player_events(home: TeamProfile, away: TeamProfile) -> list[str]:
    return [k for k in PLAYER_EVENT_KINDS
            if _enabler_count(k, home, away) + _enabler_count(k, away, home) > 0]


def select_player_event(feasible: list[str], params: EngineParams,
                        rng: np.random.Generator) -> str | None:
    """Draw an event kind from the base frequencies restricted to `feasible`.

    Frequencies of infeasible kinds are redistributed proportionally over the
    rest; an empty feasible set discards the event.
    """
    if not feasible:
        return None
    weights = np.array([params.player_event_frequencies[k] for k in feasible])
    total = weights.sum()
    if total <= 0.0:
        return None
    return feasible[int(rng.choice(len(feasible), p=weights / total))]


def linear_possession(mid_home: float, mid_away: float) -> float:
    """Linear-difference share of denominated midfields (used for team events)."""
    h = 4.0 * mid_home - 3.0
    a = 4.0 * mid_away - 3.0
    return h / (h + a)


def allocation_weights(kind: str, home: TeamProfile, away: TeamProfile,
                       mids: tuple[float, float],
                       params: EngineParams) -> tuple[float, float]:
    """Unnormalised (home, away) weights for which side an event lands on."""
    if kind in PLAYER_EVENT_KINDS:
        return (float(_enabler_count(kind, home, away)),
                float(_enabler_count(kind, away, home)))
    if kind in ("corner", "tired_defender"):
        p = linear_possession(mids[0], mids[1])
        return p, 1.0 - p
    if kind == "experienced_fwd":
        return float(home.positions.forwards), float(away.positions.forwards)
    if kind == "inexp_defender":
        # The side whose opponent exposes more defenders profits from the mistake.
        return float(away.positions.defenders), float(home.positions.defenders)
    raise ValueError(f"unknown event kind: {kind!r}")


def allocate_event(kind: str, home: TeamProfile, away: TeamProfile,
                   mids: tuple[float, float], params: EngineParams,
                   rng: np.random.Generator,
                   pc_tilt: tuple[float, float] = (1.0, 1.0)) -> str | None:
    """Pick the beneficiary side for an event, or None if nobody can trigger it."""
    w_h, w_a = allocation_weights(kind, home, away, mids, params)
    w_h *= pc_tilt[0]
    w_a *= pc_tilt[1]
    total = w_h + w_a
    if total <= 0.0:
        return None
    return HOME if rng.random() < w_h / total else AWAY


# --- team event selection ---------------------------------------------------

def scale_expfwd_inexpdef(kind: str, relevant_count: int,
                          params: EngineParams) -> float:
    """Linear frequency multiplier in the relevant player count.

    Forward-driven and defender-driven team events scale with how many of
    those players are on the pitch; the reference counts anchor the base
    frequencies.
    """
    if kind == "experienced_fwd":
        return relevant_count / params.expfwd_reference
    if kind == "inexp_defender":
        return relevant_count / params.inexpdef_reference
    raise ValueError(f"kind {kind!r} has no count scaling")


def team_event_weights(home: TeamProfile, away: TeamProfile,
                       params: EngineParams) -> list[float]:
    """Selection weights per team event kind, count-scaled where applicable."""
    weights = []
    for kind in TEAM_EVENT_KINDS:
        w = params.team_event_frequencies[kind]
        if kind == "experienced_fwd":
            w *= (scale_expfwd_inexpdef(kind, home.positions.forwards, params)
                  + scale_expfwd_inexpdef(kind, away.positions.forwards, params)) / 2.0
        elif kind == "inexp_defender":
            w *= (scale_expfwd_inexpdef(kind, away.positions.defenders, params)
                  + scale_expfwd_inexpdef(kind, home.positions.defenders, params)) / 2.0
        weights.append(w)
    return weights


def select_team_event(home: TeamProfile, away: TeamProfile, params: EngineParams,
                      rng: np.random.Generator) -> str | None:
    """Draw a team event kind with forward/defender counts scaling the weights."""
    arr = np.array(team_event_weights(home, away, params))
    total = arr.sum()
    if total <= 0.0:
        return None
    return TEAM_EVENT_KINDS[int(rng.choice(len(TEAM_EVENT_KINDS), p=arr / total))]


# --- subtypes and scoring ---------------------------------------------------

def corner_subtype(offensive_headers: int, params: EngineParams,
                   rng: np.random.Generator) -> str:
    """Split a corner into the headed or anyone variant by attacking header count."""
    p = _header_rate(params.corner_to_head_rates, offensive_headers)
    return "corner_to_head" if rng.random() < p else "corner_to_anyone"


def winger_subtype(head_offensives: int, params: EngineParams,
                   rng: np.random.Generator) -> str:
    p = _header_rate(params.winger_to_head_rates, head_offensives)
    return "winger_to_head" if rng.random() < p else "winger_to_anyone"


def _header_rate(table: dict[int, float], count: int) -> float:
    if count <= 0:
        return 0.0
    return table[min(count, max(table))]


def score_corner_to_head(a: int, b: int) -> float:
    """Headed-corner conversion from attacking (a) vs defending (b) header counts."""
    if a < 1:
        raise ValueError("needs at least one attacking header")
    share = a / (a + b)
    if a > b:
        p = share
    elif a == b:
        p = share - 0.05 * (1.0 + 0.1 * (b - 1))
    else:
        p = share * (a / b)
    return min(max(p, 0.0), 1.0)


def wing_attack_proxy(beneficiary: TeamProfile, opponent: TeamProfile) -> float:
    """Mean open-play conversion over the two wing pairings, used for winger events."""
    left = score_open_play(beneficiary.left_att, opponent.right_def)
    right = score_open_play(beneficiary.right_att, opponent.left_def)
    return (left + right) / 2.0


def score_event(kind: str, beneficiary: TeamProfile, opponent: TeamProfile,
                params: EngineParams, subtype: str | None = None) -> float:
    """Scoring probability of an allocated event.

    Most kinds use their registry average. Winger events proxy through the
    beneficiary's wing attacks (the headed variant adds a flat bonus), and
    headed corners compare the two sides' corner header counts.
    """
    if kind == "winger_any":
        p = wing_attack_proxy(beneficiary, opponent)
        if subtype == "winger_to_head":
            p += params.winger_head_bonus
        return min(max(p, 0.0), 1.0)
    if kind == "corner":
        if subtype == "corner_to_head" and params.use_corner_head_formula:
            return score_corner_to_head(beneficiary.roster.corner_head_offensives,
                                        opponent.roster.corner_head_defensives)
        return params.score_probs[subtype or "corner_to_anyone"]
    return params.score_probs[kind]


class EventRunner:
    """Precomputed special-event machinery for one fixed matchup.

    All selection weights, allocation shares, subtype rates, and scoring
    probabilities are trial-invariant, so a trial reduces to a short sequence
    of uniform draws.
    """

    def __init__(self, home: TeamProfile, away: TeamProfile,
                 mids: tuple[float, float], params: EngineParams):
        self.params = params
        (self.n_t, self.p_t), (self.n_p, self.p_p) = _count_distributions(
            home.tactic, away.tactic, params)
        tilt = pc_side_multipliers(home.tactic, away.tactic, params)
        sides = (home, away)

        def entry(kind):
            w_h, w_a = allocation_weights(kind, home, away, mids, params)
            w_h *= tilt[0]
            w_a *= tilt[1]
            if w_h + w_a <= 0.0:
                return None
            p_home = w_h / (w_h + w_a)
            negative = kind in NEGATIVE_EVENT_KINDS
            if kind == "winger_any":
                head_rate = tuple(
                    _header_rate(params.winger_to_head_rates, s.roster.head_offensives)
                    for s in sides)
                score_any = tuple(score_event(kind, sides[i], sides[1 - i], params,
                                              "winger_to_anyone") for i in (0, 1))
                score_head = tuple(score_event(kind, sides[i], sides[1 - i], params,
                                               "winger_to_head") for i in (0, 1))
                return (kind, p_home, negative, head_rate, score_any, score_head)
            if kind == "corner":
                head_rate = tuple(
                    _header_rate(params.corner_to_head_rates,
                                 s.roster.corner_head_offensives) for s in sides)
                score_any = tuple(score_event(kind, sides[i], sides[1 - i], params,
                                              "corner_to_anyone") for i in (0, 1))
                # A side without corner headers never draws the headed subtype.
                score_head = tuple(
                    score_event(kind, sides[i], sides[1 - i], params, "corner_to_head")
                    if head_rate[i] > 0.0 else 0.0
                    for i in (0, 1))
                return (kind, p_home, negative, head_rate, score_any, score_head)
            return (kind, p_home, negative, None,
                    (score_event(kind, sides[0], sides[1], params),
                     score_event(kind, sides[1], sides[0], params)), None)

        def build(kinds, frequencies):
            entries, weights = [], []
            for kind in kinds:
                e = entry(kind)
                w = frequencies[kind] if isinstance(frequencies, dict) else frequencies[kinds.index(kind)]
                if e is not None and w > 0.0:
                    entries.append(e)
                    weights.append(w)
            cum = np.cumsum(weights)
            return entries, cum, (float(cum[-1]) if len(cum) else 0.0)

        feasible = feasible_player_events(home, away)
        self.player_entries, self.player_cum, self.player_total = build(
            feasible, params.player_event_frequencies)
        tw = team_event_weights(home, away, params)
        self.team_entries, self.team_cum, self.team_total = build(
            list(TEAM_EVENT_KINDS), tw)

    def _resolve(self, entries, cum, total, rng) -> EventOutcome | None:
        if total <= 0.0:
            return None
        r = rng.random() * total
        idx = int(np.searchsorted(cum, r, side="right"))
        idx = min(idx, len(entries) - 1)
        kind, p_home, negative, head_rate, score_any, score_head = entries[idx]
        side = 0 if rng.random() < p_home else 1
        if head_rate is not None:
            headed = rng.random() < head_rate[side]
            p = score_head[side] if headed else score_any[side]
        else:
            p = score_any[side]
        scored = rng.random() < p
        return EventOutcome(kind=kind, beneficiary=HOME if side == 0 else AWAY,
                            scored=scored, own_goal=scored and negative)

    def run(self, rng: np.random.Generator,
            outcomes: list[EventOutcome] | None = None) -> tuple[int, int, int]:
        """Sample one match's events; returns (home goals, away goals, resolved).

        Pass a list as `outcomes` to also collect the per-event results.
        """
        n_team = int(rng.binomial(self.n_t, self.p_t)) if self.p_t > 0 else 0
        n_player = int(rng.binomial(self.n_p, self.p_p)) if self.p_p > 0 else 0
        goals = [0, 0]
        resolved = 0
        rounds = ((self.player_entries, self.player_cum, self.player_total, n_player),
                  (self.team_entries, self.team_cum, self.team_total, n_team))
        for entries, cum, total, count in rounds:
            for _ in range(count):
                outcome = self._resolve(entries, cum, total, rng)
                if outcome is None:
                    continue
                resolved += 1
                if outcomes is not None:
                    outcomes.append(outcome)
                if outcome.scored:
                    benefit = 0 if outcome.beneficiary == HOME else 1
                    goals[1 - benefit if outcome.own_goal else benefit] += 1
        return goals[0], goals[1], resolved


def run_events(home: TeamProfile, away: TeamProfile, mids: tuple[float, float],
               params: EngineParams, rng: np.random.Generator) -> tuple[int, int, int]:
    """Play out all special events of one match.

    Returns (home goals, away goals, events resolved). Negative events score
    for the opponent of the side they happen to.
    """
    return EventRunner(home, away, mids, params).run(rng)
