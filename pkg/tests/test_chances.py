import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hatsim import (TacticSpec, allocate_chances, effective_midfields,
                    possession, pressing_suppression)
from hatsim.chances import PossessionPair

from helpers import make_profile

ratings = st.floats(min_value=1.0, max_value=20.0,
                    allow_nan=False, allow_infinity=False)


class TestEffectiveMidfields:
    def test_ca_penalty_and_eligibility(self, params):
        home = replace(make_profile(midfield=10), tactic=TacticSpec("CA", 20))
        away = make_profile(midfield=15)
        eff = effective_midfields(home, away, params)
        assert eff.mid_home == pytest.approx(9.3)
        assert eff.mid_away == 15
        assert eff.home_ca_eligible and not eff.away_ca_eligible

    def test_no_ca_identity(self, params):
        eff = effective_midfields(make_profile(), make_profile(), params)
        assert (eff.mid_home, eff.mid_away) == (15, 15)
        assert not eff.home_ca_eligible and not eff.away_ca_eligible

    def test_penalty_without_eligibility(self, params):
        home = replace(make_profile(midfield=16), tactic=TacticSpec("CA", 20))
        eff = effective_midfields(home, make_profile(midfield=15), params)
        assert eff.mid_home == pytest.approx(14.88)
        assert not eff.home_ca_eligible

    def test_equal_midfields_not_eligible(self, params):
        home = replace(make_profile(), tactic=TacticSpec("CA", 10))
        eff = effective_midfields(home, make_profile(), params)
        assert not eff.home_ca_eligible


class TestPossession:
    def test_known_values(self):
        assert possession(17, 14).pos_home == pytest.approx(0.6485, abs=5e-5)
        assert possession(5, 2).pos_home == pytest.approx(0.9752, abs=5e-5)

    def test_equal_ratings(self):
        assert possession(12.5, 12.5).pos_home == 0.5

    @given(a=ratings, b=ratings)
    @settings(max_examples=200)
    def test_complement_and_symmetry(self, a, b):
        p = possession(a, b)
        assert p.pos_home + p.pos_away == 1.0
        assert p.pos_home == pytest.approx(possession(b, a).pos_away, abs=1e-12)

    @given(a=ratings, b=ratings, bump=st.floats(min_value=0.1, max_value=5.0))
    @settings(max_examples=200)
    def test_monotone(self, a, b, bump):
        assert possession(a + bump, b).pos_home > possession(a, b).pos_home
        assert possession(a, b + bump).pos_home < possession(a, b).pos_home

    def test_low_rating_amplification(self):
        assert possession(5, 2).pos_home > possession(20, 17).pos_home


class TestAllocateChances:
    def test_degenerate(self, rng):
        alloc = allocate_chances(PossessionPair(1.0, 0.0), rng)
        assert (alloc.exclusive_home, alloc.exclusive_away) == (5, 0)
        assert (alloc.shared_home, alloc.shared_away) == (5, 0)
        assert alloc.normal_home == 10

    @pytest.mark.parametrize("pos", [0.3, 0.5, 0.6485])
    def test_mean_and_shared_partition(self, pos, rng):
        trials = 30_000
        total = 0
        pair = PossessionPair(pos, 1.0 - pos)
        for _ in range(trials):
            alloc = allocate_chances(pair, rng)
            assert alloc.shared_home + alloc.shared_away == 5
            assert alloc.normal_home <= 10 and alloc.normal_away <= 10
            total += alloc.normal_home
        sigma = math.sqrt(10 * pos * (1 - pos) / trials)
        assert abs(total / trials - 10 * pos) < 3 * sigma


class TestPressing:
    def test_no_pressing(self, params):
        assert pressing_suppression(TacticSpec("Normal"), TacticSpec("LS", 10),
                                    params) == (0.0, 0.0)

    def test_one_side_endpoints(self, params):
        p_norm, p_ls = pressing_suppression(TacticSpec("PR", 20),
                                            TacticSpec("Normal"), params)
        assert p_norm == pytest.approx(0.41)
        assert p_ls == 0.0

    def test_pr_against_long_shots(self, params):
        p_norm, p_ls = pressing_suppression(TacticSpec("PR", 20),
                                            TacticSpec("LS", 15), params)
        assert p_ls == pytest.approx(0.66)
        p_norm, p_ls = pressing_suppression(TacticSpec("PR", 1),
                                            TacticSpec("LS", 15), params)
        assert p_ls == pytest.approx(0.44)

    def test_both_pressing_uses_mean_skill(self, params):
        p_norm, p_ls = pressing_suppression(TacticSpec("PR", 10),
                                            TacticSpec("PR", 20), params)
        expected = params.tactic_rate("press_both", 15)
        assert p_norm == pytest.approx(expected)
        assert p_ls == 0.0
