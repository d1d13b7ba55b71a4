"""Single-match trial sampler and the Monte Carlo match simulator."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import attacks, chances, events
from .attacks import CATEGORIES
from .core import TeamProfile, ValidationError, require_valid
from .forecast import ForecastTriple
from .params import EngineParams
from .rng import DOMAIN_TRIAL, StreamPool

GOAL_CATEGORIES = ("normal", "setpiece", "counter", "longshot", "special", "pnf")

_LS_INDEX = CATEGORIES.index("long_shot")
_OPEN_IDX = slice(0, 3)          # left, mid, right
_SP_IDX = slice(3, 6)            # dfk, ifk, pk


@dataclass(frozen=True)
class GoalBreakdown:
    normal: int = 0
    setpiece: int = 0
    counter: int = 0
    longshot: int = 0
    special: int = 0
    pnf: int = 0

    @property
    def total(self) -> int:
        return (self.normal + self.setpiece + self.counter
                + self.longshot + self.special + self.pnf)

    def as_dict(self) -> dict[str, int]:
        return {c: getattr(self, c) for c in GOAL_CATEGORIES}


@dataclass(frozen=True)
class MatchOutcome:
    home: GoalBreakdown
    away: GoalBreakdown


@dataclass(frozen=True)
class TrialDetail:
    """Extra per-trial observables used for dataset generation."""

    outcome: MatchOutcome
    normal_chances: tuple[int, int]
    missed_normal: tuple[int, int]
    sector_counts: tuple[dict[str, int], dict[str, int]]
    counterattacks: tuple[int, int]
    pnf_attacks: tuple[int, int]


def outcome_to_hda(home_goals: int, away_goals: int) -> str:
    if home_goals > away_goals:
        return "H"
    if home_goals < away_goals:
        return "A"
    return "D"


class MatchSetup:
    """Precomputed per-matchup probabilities; `sample` draws one trial.

    Everything that does not depend on the random stream (sector splits,
    pairing probabilities, conversion rates) is resolved once so a trial is
    just a fixed sequence of draws.
    """

    def __init__(self, home: TeamProfile, away: TeamProfile, params: EngineParams):
        require_valid(home, "home")
        require_valid(away, "away")
        self.home, self.away, self.params = home, away, params

        eff = chances.effective_midfields(home, away, params)
        self.eff = eff
        self.pos = chances.possession(eff.mid_home, eff.mid_away)
        self.press_norm, self.press_ls = chances.pressing_suppression(
            home.tactic, away.tactic, params)

        self.dist = (sector_distribution_arr(home.tactic, params),
                     sector_distribution_arr(away.tactic, params))
        self.score_p = (self._bucket_probs(home, away),
                        self._bucket_probs(away, home))
        self.suppress_p = (self._suppression_probs(home),
                           self._suppression_probs(away))
        ca_dist = attacks.counter_distribution(params)
        self.ca_dist = ca_dist.as_array()
        # Counterattacks resolve with the countering side's own pairings, penalties excluded.
        self.ca_score_p = tuple(p.copy() for p in self.score_p)
        for p in self.ca_score_p:
            p[CATEGORIES.index("pk")] = 0.0

        self.pnf_rate = (
            attacks.pnf_conversion_rate(home.positions.pnfs,
                                        away.positions.central_defenders, params),
            attacks.pnf_conversion_rate(away.positions.pnfs,
                                        home.positions.central_defenders, params),
        )
        self.pnf_score = (attacks.score_open_play(home.mid_att, away.mid_def),
                          attacks.score_open_play(away.mid_att, home.mid_def))
        self.ca_rates = (attacks.counter_rates(home, eff.home_ca_eligible, params),
                         attacks.counter_rates(away, eff.away_ca_eligible, params))
        self.pdim_rate = (attacks.pdim_block_rate(away.positions.pdims, params),
                          attacks.pdim_block_rate(home.positions.pdims, params))
        self.events = events.EventRunner(
            home, away, (eff.mid_home, eff.mid_away), params)

    def _bucket_probs(self, side: TeamProfile, opp: TeamProfile) -> np.ndarray:
        p = self.params
        skill = (side.tactic.skill if side.tactic.kind == "LS"
                 else p.nontactical_ls_skill)
        return np.array([
            attacks.score_open_play(side.left_att, opp.right_def),
            attacks.score_open_play(side.mid_att, opp.mid_def),
            attacks.score_open_play(side.right_att, opp.left_def),
            attacks.score_set_piece("dfk", side.isp_att, opp.isp_def, p),
            attacks.score_set_piece("ifk", side.isp_att, opp.isp_def, p),
            attacks.score_set_piece("pk", side.isp_att, opp.isp_def, p),
            attacks.score_long_shot(skill, opp.avg_defence, p),
        ])

    def _suppression_probs(self, side: TeamProfile) -> np.ndarray | None:
        if self.press_norm == 0.0 and self.press_ls == 0.0:
            return None
        probs = np.full(len(CATEGORIES), self.press_norm)
        if side.tactic.kind == "LS" and self.press_ls > 0.0:
            probs[_LS_INDEX] = self.press_ls
        return probs

    def sample(self, rng: np.random.Generator, detail: bool = False):
        alloc = chances.allocate_chances(self.pos, rng)
        normals = (alloc.normal_home, alloc.normal_away)

        counts: list[list[int]] = []
        goals_open = [0, 0]
        goals_sp = [0, 0]
        goals_ls = [0, 0]
        missed = [0, 0]
        for i in (0, 1):
            n = normals[i]
            if n > 0 and self.pdim_rate[i] > 0.0:
                n -= int(rng.binomial(n, self.pdim_rate[i]))
            if n == 0:
                counts.append([0] * 7)
                continue
            c = rng.multinomial(n, self.dist[i])
            sup = self.suppress_p[i]
            if sup is not None:
                c = c - rng.binomial(c, sup)
            cl = c.tolist()
            n_resolved = sum(cl)
            if n_resolved == 0:
                counts.append(cl)
                continue
            gl = rng.binomial(c, self.score_p[i]).tolist()
            goals_open[i] = gl[0] + gl[1] + gl[2]
            goals_sp[i] = gl[3] + gl[4] + gl[5]
            goals_ls[i] = gl[6]
            missed[i] = n_resolved - goals_open[i] - goals_sp[i] - goals_ls[i]
            counts.append(cl)

        goals_ca = [0, 0]
        n_ca = [0, 0]
        for i in (0, 1):
            opp_missed = missed[1 - i]
            if opp_missed == 0:
                continue
            main, tech = self.ca_rates[i]
            n = int(rng.binomial(opp_missed, main))
            if tech > 0.0:
                n += int(rng.binomial(opp_missed, tech))
            n_ca[i] = n
            if n > 0:
                c = rng.multinomial(n, self.ca_dist)
                goals_ca[i] = int(rng.binomial(c, self.ca_score_p[i]).sum())

        goals_pnf = [0, 0]
        n_pnf = [0, 0]
        for i in (0, 1):
            if self.pnf_rate[i] > 0.0 and missed[i] > 0:
                extra = int(rng.binomial(missed[i], self.pnf_rate[i]))
                n_pnf[i] = extra
                if extra > 0:
                    goals_pnf[i] = int(rng.binomial(extra, self.pnf_score[i]))

        se_home, se_away, _ = self.events.run(rng)

        outcome = MatchOutcome(
            home=GoalBreakdown(goals_open[0], goals_sp[0], goals_ca[0],
                               goals_ls[0], se_home, goals_pnf[0]),
            away=GoalBreakdown(goals_open[1], goals_sp[1], goals_ca[1],
                               goals_ls[1], se_away, goals_pnf[1]),
        )
        if not detail:
            return outcome
        return TrialDetail(
            outcome=outcome,
            normal_chances=normals,
            missed_normal=(missed[0], missed[1]),
            sector_counts=(dict(zip(CATEGORIES, counts[0])),
                           dict(zip(CATEGORIES, counts[1]))),
            counterattacks=(n_ca[0], n_ca[1]),
            pnf_attacks=(n_pnf[0], n_pnf[1]),
        )


def sector_distribution_arr(tactic, params) -> np.ndarray:
    return attacks.sector_distribution(tactic, params).as_array()


def simulate_trial(home: TeamProfile, away: TeamProfile, params: EngineParams,
                   trial_rng: np.random.Generator) -> MatchOutcome:
    """Sample one full match. Prefer `simulate` for aggregate statistics."""
    return MatchSetup(home, away, params).sample(trial_rng)


@dataclass(frozen=True)
class TeamStats:
    goal_means: dict[str, float]
    goal_stds: dict[str, float]
    total_mean: float
    total_std: float
    histogram: list[int]


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    seed: int
    hda: ForecastTriple
    home: TeamStats
    away: TeamStats

    def to_json_dict(self) -> dict[str, Any]:
        def team(t: TeamStats) -> dict[str, Any]:
            return {
                "goal_means": {c: t.goal_means[c] for c in GOAL_CATEGORIES},
                "goal_stds": {c: t.goal_stds[c] for c in GOAL_CATEGORIES},
                "total_goals": {"mean": t.total_mean, "std": t.total_std},
                "histogram": list(t.histogram),
            }
        return {
            "trials": self.trials,
            "seed": self.seed,
            "hda": {"home": self.hda.home, "draw": self.hda.draw, "away": self.hda.away},
            "home": team(self.home),
            "away": team(self.away),
        }


class _Tally:
    """Integer accumulators for one block of trials; merging is order-free."""

    __slots__ = ("n", "sums", "sumsq", "hist", "hda")

    def __init__(self):
        self.n = 0
        self.sums = [[0] * 7 for _ in (0, 1)]   # 6 categories + total
        self.sumsq = [[0] * 7 for _ in (0, 1)]
        self.hist: list[list[int]] = [[0] * 12, [0] * 12]
        self.hda = [0, 0, 0]

    def add(self, outcome: MatchOutcome) -> None:
        self.n += 1
        totals = []
        for i, b in enumerate((outcome.home, outcome.away)):
            t = b.normal + b.setpiece + b.counter + b.longshot + b.special + b.pnf
            totals.append(t)
            sums, sumsq = self.sums[i], self.sumsq[i]
            for j, v in enumerate((b.normal, b.setpiece, b.counter, b.longshot,
                                   b.special, b.pnf, t)):
                sums[j] += v
                sumsq[j] += v * v
            hist = self.hist[i]
            if t >= len(hist):
                hist.extend([0] * (t + 1 - len(hist)))
            hist[t] += 1
        h, a = totals
        self.hda[0 if h > a else (1 if h == a else 2)] += 1

    def merge(self, other: "_Tally") -> None:
        self.n += other.n
        for i in (0, 1):
            for j in range(7):
                self.sums[i][j] += other.sums[i][j]
                self.sumsq[i][j] += other.sumsq[i][j]
            if len(other.hist[i]) > len(self.hist[i]):
                self.hist[i].extend([0] * (len(other.hist[i]) - len(self.hist[i])))
            for j, v in enumerate(other.hist[i]):
                self.hist[i][j] += v
        for j in (0, 1, 2):
            self.hda[j] += other.hda[j]


def simulate(home: TeamProfile, away: TeamProfile, params: EngineParams,
             trials: int = 100_000, seed: int = 0, workers: int = 1,
             chunk_size: int = 8192,
             deadline: float | None = None) -> SimulationReport:
    """Monte Carlo match simulation over independent per-trial streams.

    Trial i draws from a counter-based stream keyed on (seed, i), so reports
    are bit-identical for a fixed seed regardless of run, chunking, or worker
    count. `deadline` (time.monotonic value) aborts long runs with TimeoutError.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1", "trials")
    setup = MatchSetup(home, away, params)

    def run_chunk(start: int, stop: int) -> _Tally:
        tally = _Tally()
        pool = StreamPool(seed, DOMAIN_TRIAL)
        sample = setup.sample
        add = tally.add
        for i in range(start, stop):
            add(sample(pool.get(i)))
        return tally

    bounds = [(s, min(s + chunk_size, trials)) for s in range(0, trials, chunk_size)]
    total = _Tally()
    if workers <= 1:
        for start, stop in bounds:
            _check_deadline(deadline)
            total.merge(run_chunk(start, stop))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for tally in pool.map(lambda b: run_chunk(*b), bounds):
                _check_deadline(deadline)
                total.merge(tally)

    return _report(total, trials, seed)


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None:
        import time
        if time.monotonic() > deadline:
            raise TimeoutError("simulation exceeded its time budget")


def _report(t: _Tally, trials: int, seed: int) -> SimulationReport:
    def team(i: int) -> TeamStats:
        means = np.asarray(t.sums[i], dtype=float) / trials
        var = np.asarray(t.sumsq[i], dtype=float) / trials - means ** 2
        stds = np.sqrt(np.maximum(var, 0.0))
        hist = t.hist[i]
        last = max((j for j, v in enumerate(hist) if v > 0), default=0)
        return TeamStats(
            goal_means={c: float(means[j]) for j, c in enumerate(GOAL_CATEGORIES)},
            goal_stds={c: float(stds[j]) for j, c in enumerate(GOAL_CATEGORIES)},
            total_mean=float(means[6]),
            total_std=float(stds[6]),
            histogram=[int(v) for v in hist[:last + 1]],
        )

    hda = ForecastTriple(*(c / trials for c in t.hda))
    return SimulationReport(trials=trials, seed=seed, hda=hda,
                            home=team(0), away=team(1))
