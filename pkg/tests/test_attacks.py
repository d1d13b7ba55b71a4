import math
from dataclasses import replace

import numpy as np
import pytest

from hatsim import (TacticSpec, assign_sectors, generate_counterattacks,
                    load_params, pdim_blocks, pnf_extra_attacks,
                    score_long_shot, score_open_play, score_set_piece,
                    sector_distribution)
from hatsim.attacks import SectorDistribution, counter_distribution, pnf_conversion_rate

from helpers import make_profile


def fixed_tcr(name: str, value: float):
    """Params whose tactic curve is pinned to one conversion rate."""
    return load_params("kb-probabilistic", {
        f"tactic_curves.{name}": {"kind": "linear", "lo": value, "hi": value}})


class TestSectorDistribution:
    def test_normal_is_baseline(self, params):
        d = sector_distribution(TacticSpec("Normal"), params)
        assert d.as_array().tolist() == [0.2565, 0.3615, 0.2565,
                                         0.0586, 0.0418, 0.0251, 0.0]

    def test_aim_mass_move(self):
        d = sector_distribution(TacticSpec("AiM", 10), fixed_tcr("aim", 0.30))
        assert d.mid == pytest.approx(0.3615 + 0.30 * 0.5130)
        assert d.left == pytest.approx(0.17955)
        assert d.right == pytest.approx(0.17955)

    def test_aow_mass_move(self):
        d = sector_distribution(TacticSpec("AoW", 10), fixed_tcr("aow", 0.52))
        assert d.left + d.right == pytest.approx(0.5130 + 0.52 * 0.3615)

    def test_ls_conversion(self):
        d = sector_distribution(TacticSpec("LS", 10), fixed_tcr("ls_convert", 0.25))
        assert d.long_shot == pytest.approx(0.25 * 0.8745)
        assert d.left == pytest.approx(0.2565 * 0.75)

    @pytest.mark.parametrize("kind", ["Normal", "AiM", "AoW", "CA", "LS", "PR", "PC"])
    @pytest.mark.parametrize("skill", [1, 7, 20])
    def test_mass_preserved(self, params, kind, skill):
        d = sector_distribution(TacticSpec(kind, skill), params)
        assert math.fsum(d.as_array().tolist()) == pytest.approx(1.0, abs=1e-12)

    def test_aim_share_range_matches_quoted(self, params):
        lo = sector_distribution(TacticSpec("AiM", 1), params).mid
        hi = sector_distribution(TacticSpec("AiM", 20), params).mid
        assert lo == pytest.approx(0.464, abs=0.01)
        assert hi == pytest.approx(0.541, abs=0.01)

    def test_aow_share_range_matches_quoted(self, params):
        lo = sector_distribution(TacticSpec("AoW", 1), params)
        hi = sector_distribution(TacticSpec("AoW", 20), params)
        assert lo.left + lo.right == pytest.approx(0.636, abs=0.01)
        assert hi.left + hi.right == pytest.approx(0.701, abs=0.01)

    def test_nontactical_long_shots(self):
        p = load_params("kb-probabilistic", {"nontactical_ls": 0.1})
        d = sector_distribution(TacticSpec("Normal"), p)
        assert d.long_shot == pytest.approx(0.1 * 0.8745)
        assert math.fsum(d.as_array().tolist()) == pytest.approx(1.0)

    def test_counter_distribution_excludes_penalties(self, params):
        d = counter_distribution(params)
        assert d.pk == 0.0 and d.long_shot == 0.0
        assert math.fsum(d.as_array().tolist()) == pytest.approx(1.0)
        assert d.mid == pytest.approx(0.3615 / 0.9749)


class TestAssignSectors:
    def test_zero(self, params, rng):
        counts = assign_sectors(0, sector_distribution(TacticSpec("Normal"), params), rng)
        assert all(v == 0 for v in counts.values())

    def test_degenerate(self, rng):
        dist = SectorDistribution(0, 0, 0, 0, 0, 1.0, 0)
        counts = assign_sectors(10, dist, rng)
        assert counts["pk"] == 10

    def test_counts_partition_input(self, params, rng):
        dist = sector_distribution(TacticSpec("LS", 12), params)
        for n in (1, 5, 10, 17):
            counts = assign_sectors(n, dist, rng)
            assert sum(counts.values()) == n

    def test_multinomial_mean(self, params, rng):
        dist = sector_distribution(TacticSpec("Normal"), params)
        trials = 20_000
        total_mid = sum(assign_sectors(10, dist, rng)["mid"] for _ in range(trials))
        sigma = math.sqrt(10 * 0.3615 * (1 - 0.3615) / trials)
        assert abs(total_mid / trials - 3.615) < 3 * sigma


class TestScoreOpenPlay:
    def test_equal_ratings(self):
        assert score_open_play(15, 15) == pytest.approx(0.46, abs=1e-12)

    def test_mismatch(self):
        assert score_open_play(20, 10) == pytest.approx(0.854, abs=1e-3)

    def test_hopeless_attack(self):
        assert score_open_play(1, 1000) < 1e-6

    def test_bounded_and_monotone(self):
        values = [score_open_play(a, 12) for a in (2, 6, 10, 14, 18)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(0 < v < 0.92 for v in values)
        down = [score_open_play(12, d) for d in (2, 6, 10, 14, 18)]
        assert all(b < a for a, b in zip(down, down[1:]))


class TestScoreSetPiece:
    def test_cubic_at_zero(self, params_regression):
        assert score_set_piece("dfk", 15, 15, params_regression) == pytest.approx(0.45515)
        assert score_set_piece("pk", 15, 15, params_regression) == pytest.approx(0.45515)

    def test_cubic_at_ten(self, params_regression):
        assert score_set_piece("ifk", 25, 15, params_regression) == pytest.approx(0.7856, abs=5e-4)

    def test_difference_clamped_to_fitted_range(self, params_regression):
        at_50 = score_set_piece("dfk", 65, 15, params_regression)
        at_15 = score_set_piece("dfk", 30, 15, params_regression)
        assert at_50 == at_15
        assert 0.0 <= at_50 <= 1.0

    def test_probabilistic_pk_is_flat(self):
        p = load_params("kb-probabilistic", {"pk_score": 0.73})
        assert score_set_piece("pk", 1, 20, p) == 0.73
        assert score_set_piece("pk", 20, 1, p) == 0.73

    def test_multipliers_scale_free_kicks(self):
        p = load_params("kb-probabilistic", {"setpiece_multipliers.dfk": 0.5})
        base = load_params("kb-probabilistic")
        assert (score_set_piece("dfk", 15, 15, p)
                == pytest.approx(0.5 * score_set_piece("dfk", 15, 15, base)))

    def test_unknown_kind(self, params):
        with pytest.raises(ValueError):
            score_set_piece("corner", 10, 10, params)


class TestScoreLongShot:
    def test_endpoints_and_midpoint(self, params):
        assert score_long_shot(1, 16, params) == pytest.approx(0.11)   # diff -15
        assert score_long_shot(20, 5, params) == pytest.approx(1.00)   # diff +15
        assert score_long_shot(15, 15, params) == pytest.approx(0.555)

    def test_clamped(self, params):
        assert score_long_shot(20, 1, params) == pytest.approx(1.00)
        assert score_long_shot(1, 20, params) == pytest.approx(0.11)


class TestCounterattacks:
    def test_no_missed_chances(self, params, rng):
        assert generate_counterattacks(0, make_profile(), False, params, rng) == 0

    def test_nontactical_rate_by_defenders(self, params, rng):
        profile = make_profile()  # default positions: no defenders -> clamps to 2
        profile = replace(profile, positions=replace(profile.positions,
                                                     central_defenders=1,
                                                     wing_backs=2))
        trials = 4000
        total = sum(generate_counterattacks(1000, profile, False, params, rng)
                    for _ in range(trials))
        sigma = math.sqrt(1000 * 0.0363 * (1 - 0.0363) / trials)
        assert abs(total / trials - 36.3) < 3 * sigma

    def test_tactical_rate(self, rng, presets):
        # CA preset: skill 20 (rate 0.45) plus the technical channel for its
        # four defenders (rate 0.0311).
        ca = presets["CA"]
        p = load_params("kb-probabilistic")
        trials = 2000
        total = sum(generate_counterattacks(100, ca, True, p, rng)
                    for _ in range(trials))
        rate = 0.45 + 0.0311
        sigma = math.sqrt(100 * rate * (1 - rate) / trials)
        assert abs(total / trials - 100 * rate) < 3 * sigma

    def test_regression_preset_rate(self, params_regression, rng, presets):
        ca = replace(presets["CA"],
                     roster=replace(presets["CA"].roster, technical_defenders=0))
        trials = 2000
        total = sum(generate_counterattacks(100, ca, True, params_regression, rng)
                    for _ in range(trials))
        assert total / trials == pytest.approx(38.16, abs=1.0)


class TestPnfAndPdim:
    def test_rate_table(self, params):
        assert pnf_conversion_rate(1, 2, params) == 0.033
        assert pnf_conversion_rate(3, 0, params) == 0.066
        assert pnf_conversion_rate(3, 5, params) == 0.066
        assert pnf_conversion_rate(0, 2, params) == 0.0
        assert pnf_conversion_rate(2, 9, params) == 0.031  # CD count clamped to 3

    def test_no_pnfs_no_extras(self, params, rng):
        assert pnf_extra_attacks(50, 0, 2, params, rng) == 0

    def test_pdim_zero(self, params, rng):
        assert pdim_blocks(1000, 0, params, rng) == 0

    def test_pdim_mean(self, params, rng):
        trials = 2000
        total = sum(pdim_blocks(1000, 1, params, rng) for _ in range(trials))
        sigma = math.sqrt(1000 * 0.065 * 0.935 / trials)
        assert abs(total / trials - 65.0) < 3 * sigma

    def test_pdim_override_by_count(self, rng):
        p = load_params("kb-probabilistic", {"pdim_block.2": 0.10})
        trials = 2000
        total = sum(pdim_blocks(1000, 2, p, rng) for _ in range(trials))
        sigma = math.sqrt(1000 * 0.10 * 0.90 / trials)
        assert abs(total / trials - 100.0) < 3 * sigma
