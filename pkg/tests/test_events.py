import math
from dataclasses import replace

import numpy as np
import pytest

from hatsim import (TacticSpec, allocate_event, corner_subtype, event_counts,
                    load_params, score_corner_to_head, score_event,
                    select_player_event)
from hatsim.events import (EventRunner, allocation_weights, feasible_player_events,
                           linear_possession, pc_side_multipliers,
                           scale_expfwd_inexpdef, wing_attack_proxy)
from hatsim.params import PLAYER_EVENT_KINDS


class TestEventCounts:
    def test_no_pc_means(self, params, rng):
        trials = 50_000
        t_sum = p_sum = 0
        normal = TacticSpec("Normal")
        for _ in range(trials):
            t, p = event_counts(normal, normal, params, rng)
            t_sum += t
            p_sum += p
        sig_p = math.sqrt(4 * 0.21025 * (1 - 0.21025) / trials)
        sig_t = math.sqrt(5 * 0.0744 * (1 - 0.0744) / trials)
        assert abs(p_sum / trials - 0.841) < 3 * sig_p
        assert abs(t_sum / trials - 0.372) < 3 * sig_t

    def test_both_pc_multiplier(self, params, rng):
        trials = 50_000
        combined = 0
        pc = TacticSpec("PC", 15)
        for _ in range(trials):
            t, p = event_counts(pc, pc, params, rng)
            combined += t + p
        base = 0.372 + 0.841
        sigma = math.sqrt((7 * 0.17 + 6 * 0.35) / trials)  # conservative
        assert abs(combined / trials - 3.05 * base) < 4 * sigma

    def test_pc_side_multipliers(self, params):
        pc, nm = TacticSpec("PC", 20), TacticSpec("Normal")
        own, opp = pc_side_multipliers(pc, nm, params)
        assert own == pytest.approx(3.80)
        assert opp == pytest.approx(1.88)
        own, opp = pc_side_multipliers(pc, pc, params)
        assert own == opp == 3.05
        assert pc_side_multipliers(nm, nm, params) == (1.0, 1.0)


class TestSelection:
    def test_all_feasible_frequencies(self, params, rng):
        feasible = list(PLAYER_EVENT_KINDS)
        trials = 30_000
        hits = sum(select_player_event(feasible, params, rng) == "winger_any"
                   for _ in range(trials))
        sigma = math.sqrt(0.2572 * (1 - 0.2572) / trials)
        assert abs(hits / trials - 0.2572) < 3 * sigma

    def test_restricted_renormalisation(self, params, rng):
        feasible = [k for k in PLAYER_EVENT_KINDS if not k.startswith("unpred")]
        trials = 30_000
        hits = sum(select_player_event(feasible, params, rng) == "winger_any"
                   for _ in range(trials))
        expected = 0.2572 / 0.7069
        sigma = math.sqrt(expected * (1 - expected) / trials)
        assert abs(hits / trials - expected) < 3 * sigma

    def test_single_kind(self, params, rng):
        assert select_player_event(["quick_rush"], params, rng) == "quick_rush"

    def test_empty_discard(self, params, rng):
        assert select_player_event([], params, rng) is None

    def test_feasibility_from_rosters(self, presets):
        nm, ls = presets["NM"], presets["LS"]
        assert set(feasible_player_events(nm, nm)) == set(PLAYER_EVENT_KINDS)
        # LS vs LS: no technical offensive players on either side
        assert "tech_over_head" not in feasible_player_events(ls, ls)

    def test_tech_needs_opposing_header(self, presets):
        nm = presets["NM"]
        bald = replace(nm, roster=replace(nm.roster, head_defenders_or_ims=0))
        assert "tech_over_head" not in feasible_player_events(bald, bald)


class TestAllocation:
    def test_quick_rush_worked_example(self, params, presets):
        home = replace(presets["NM"],
                       roster=replace(presets["NM"].roster, quick_offensives=2))
        away = replace(presets["NM"],
                       roster=replace(presets["NM"].roster, quick_offensives=1))
        w = allocation_weights("quick_rush", home, away, (15, 15), params)
        assert w == (2.0, 1.0)

    def test_corner_linear_possession(self, params, presets):
        w = allocation_weights("corner", presets["NM"], presets["NM"], (17, 14), params)
        assert w[0] == pytest.approx(65 / 118)
        assert linear_possession(15, 15) == 0.5

    def test_inexp_defender_rewards_opponent_defenders(self, params, presets):
        nm, ls = presets["NM"], presets["LS"]  # 3 vs 5 defenders
        w = allocation_weights("inexp_defender", nm, ls, (15, 15), params)
        assert w == (5.0, 3.0)

    def test_discard_when_nobody_can_trigger(self, params, rng, presets):
        nm = presets["NM"]
        none = replace(nm, roster=replace(nm.roster, quick_offensives=0))
        assert allocate_event("quick_rush", none, none, (15, 15), params, rng) is None


class TestSubtypesAndScoring:
    def test_corner_subtype_rates(self, params):
        assert params.corner_to_head_rates == {1: 0.27, 2: 0.42, 3: 0.51, 4: 0.59, 5: 0.65}

    def test_corner_subtype_zero_headers(self, params, rng):
        assert all(corner_subtype(0, params, rng) == "corner_to_anyone"
                   for _ in range(50))

    def test_corner_to_head_values(self):
        assert score_corner_to_head(1, 1) == pytest.approx(0.45, abs=1e-4)
        assert score_corner_to_head(2, 1) == pytest.approx(0.6667, abs=1e-4)
        assert score_corner_to_head(1, 2) == pytest.approx(0.1667, abs=1e-4)

    def test_corner_to_head_ordering(self):
        for b in range(0, 6):
            vals = [score_corner_to_head(a, b) for a in range(1, 6)]
            assert all(y >= x for x, y in zip(vals, vals[1:]))
            assert all(0.0 <= v <= 1.0 for v in vals)

    def test_equal_branch_formula(self):
        for n in range(1, 6):
            expected = 0.5 - 0.05 * (1 + 0.1 * (n - 1))
            assert score_corner_to_head(n, n) == pytest.approx(expected)

    def test_registry_scores(self, params, presets):
        nm = presets["NM"]
        assert score_event("quick_rush", nm, nm, params) == 0.3670
        assert score_event("experienced_fwd", nm, nm, params) == 0.3704

    def test_winger_uses_wing_proxy(self, params, presets):
        nm = presets["NM"]
        assert wing_attack_proxy(nm, nm) == pytest.approx(0.46)
        anyone = score_event("winger_any", nm, nm, params, "winger_to_anyone")
        headed = score_event("winger_any", nm, nm, params, "winger_to_head")
        assert anyone == pytest.approx(0.46)
        assert headed == pytest.approx(0.57)

    def test_scale_examples(self, params):
        assert scale_expfwd_inexpdef("experienced_fwd", 0, params) == 0.0
        assert scale_expfwd_inexpdef("experienced_fwd", 2, params) == 1.0
        assert scale_expfwd_inexpdef("experienced_fwd", 3, params) == 1.5
        assert scale_expfwd_inexpdef("inexp_defender", 7, params) == 2.0


class TestEventRates:
    def test_per_kind_match_rates_track_registry(self, params, presets):
        # A full-speciality mirror matchup on the default tactic keeps every
        # kind feasible, so per-kind rates should land on the registry's
        # per-match rate column (generous relative tolerance).
        nm = presets["NM"]
        full = replace(nm, roster=replace(nm.roster, technical_defenders=1,
                                          head_offensives=1))
        runner = EventRunner(full, full, (15, 15), params)
        rng = np.random.default_rng(17)
        matches = 40_000
        counts = {k: 0 for k in PLAYER_EVENT_KINDS}
        for _ in range(matches):
            outcomes = []
            runner.run(rng, outcomes)
            for o in outcomes:
                if o.kind in counts:
                    counts[o.kind] += 1
        for kind, want in params.player_event_rates.items():
            got = counts[kind] / matches
            assert abs(got - want) / want < 0.20, (kind, got, want)


class TestOutcomeCollection:
    def test_collected_outcomes_match_goals(self, params, presets):
        nm = presets["NM"]
        runner = EventRunner(nm, nm, (15, 15), params)
        rng = np.random.default_rng(31)
        for _ in range(500):
            outcomes = []
            home, away, resolved = runner.run(rng, outcomes)
            assert len(outcomes) == resolved
            expect = {"home": 0, "away": 0}
            for o in outcomes:
                if o.own_goal:
                    assert o.kind in ("unpred_mistake", "unpred_own_goal")
                    expect["away" if o.beneficiary == "home" else "home"] += 1
                elif o.scored:
                    expect[o.beneficiary] += 1
            assert (expect["home"], expect["away"]) == (home, away)


class TestOwnGoals:
    def test_own_goal_credits_opponent(self, presets):
        # Pin every player event to a guaranteed own goal on the home side.
        freqs = {k: 0.0 for k in PLAYER_EVENT_KINDS}
        freqs["unpred_own_goal"] = 1.0
        team_off = {f"score_probs.{k}": 0.0 for k in (
            "corner", "corner_to_anyone", "corner_to_head",
            "experienced_fwd", "inexp_defender", "tired_defender")}
        p = load_params("kb-probabilistic", {
            **{f"player_event_frequencies.{k}": v for k, v in freqs.items()},
            "score_probs.unpred_own_goal": 1.0,
            "use_corner_head_formula": False,
            **team_off,
        })
        nm = presets["NM"]
        home = replace(nm, roster=replace(nm.roster, unpredictable_owngoal_players=2))
        away = replace(nm, roster=replace(nm.roster, unpredictable_owngoal_players=0))
        runner = EventRunner(home, away, (15, 15), p)
        rng = np.random.default_rng(5)
        home_goals = away_goals = 0
        for _ in range(2000):
            h, a, _ = runner.run(rng)
            home_goals += h
            away_goals += a
        assert home_goals == 0
        assert away_goals > 500
