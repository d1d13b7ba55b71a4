"""Sector assignment of chances and the scoring of every attack type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TacticSpec, TeamProfile
from .params import EngineParams

#: Fixed category order used for multinomial assignment and tallies.
CATEGORIES = ("left", "mid", "right", "dfk", "ifk", "pk", "long_shot")
SET_PIECE_KINDS = ("dfk", "ifk", "pk")


@dataclass(frozen=True)
class SectorDistribution:
    """Probabilities over the seven chance categories; always sums to 1."""

    left: float
    mid: float
    right: float
    dfk: float
    ifk: float
    pk: float
    long_shot: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.left, self.mid, self.right,
                         self.dfk, self.ifk, self.pk, self.long_shot])


def sector_distribution(tactic: TacticSpec, params: EngineParams) -> SectorDistribution:
    """Tactic-adjusted chance distribution.

    Starts from the baseline sector probabilities and moves mass between
    categories: AiM pulls wing mass into the middle, AoW pushes middle mass
    onto the wings (split evenly), LS converts open-play mass into long
    shots. Moves preserve total mass, so no renormalisation is needed.
    """
    base = params.sector_probs
    left, mid, right = base["left"], base["mid"], base["right"]
    dfk, ifk, pk = base["dfk"], base["ifk"], base["pk"]
    long_shot = 0.0

    if tactic.kind == "AiM":
        tcr = params.tactic_rate("aim", tactic.skill)
        moved = tcr * (left + right)
        left *= (1.0 - tcr)
        right *= (1.0 - tcr)
        mid += moved
    elif tactic.kind == "AoW":
        tcr = params.tactic_rate("aow", tactic.skill)
        moved = tcr * mid
        mid -= moved
        left += moved / 2.0
        right += moved / 2.0
    elif tactic.kind == "LS":
        tcr = params.tactic_rate("ls_convert", tactic.skill)
        long_shot = tcr * (left + mid + right)
        left *= (1.0 - tcr)
        mid *= (1.0 - tcr)
        right *= (1.0 - tcr)
    elif params.nontactical_ls > 0.0:
        share = params.nontactical_ls
        long_shot = share * (left + mid + right)
        left *= (1.0 - share)
        mid *= (1.0 - share)
        right *= (1.0 - share)

    return SectorDistribution(left, mid, right, dfk, ifk, pk, long_shot)


def counter_distribution(params: EngineParams) -> SectorDistribution:
    """Baseline distribution renormalised with penalty kicks excluded.

    Counterattacks can arrive through either wing, the middle, or as a free
    kick, but never as a penalty.
    """
    base = params.sector_probs
    keep = {k: base[k] for k in ("left", "mid", "right", "dfk", "ifk")}
    total = sum(keep.values())
    return SectorDistribution(
        keep["left"] / total, keep["mid"] / total, keep["right"] / total,
        keep["dfk"] / total, keep["ifk"] / total, 0.0, 0.0,
    )


def assign_sectors(n_attacks: int, dist: SectorDistribution,
                   rng: np.random.Generator) -> dict[str, int]:
    """One multinomial draw partitioning n_attacks over the seven categories."""
    if n_attacks < 0:
        raise ValueError(f"n_attacks must be >= 0, got {n_attacks}")
    if n_attacks == 0:
        return {c: 0 for c in CATEGORIES}
    counts = rng.multinomial(n_attacks, dist.as_array())
    return dict(zip(CATEGORIES, (int(c) for c in counts)))


def score_open_play(att: float, def_: float) -> float:
    """Probability of converting an open-play attack for the given rating pairing.

    Callers pair sectors crosswise: a left attack meets the opponent's right
    defence, a right attack the left defence, and middle meets middle.
    """
    a = (4.0 * att - 3.0) ** 3.5
    d = (4.0 * def_ - 3.0) ** 3.5
    return 0.92 * a / (a + d)


def score_set_piece(kind: str, isp_att: float, isp_def: float,
                    params: EngineParams) -> float:
    """Probability of scoring a set piece of the given kind (dfk, ifk, pk).

    Both variants evaluate a fitted cubic in the ISP rating difference,
    clamped to the fitted range. The probabilistic variant scales free kicks
    with per-kind multipliers and replaces the penalty curve with a flat
    conversion rate.
    """
    if kind not in SET_PIECE_KINDS:
        raise ValueError(f"unknown set piece kind {kind!r}")
    if params.variant == "kb-probabilistic" and kind == "pk":
        return params.pk_score
    curve = params.setpiece_curve
    lo, hi = curve["diff_range"]
    d = min(max(isp_att - isp_def, lo), hi)
    c = curve["coeffs"]
    p = c[0] + c[1] * d + c[2] * d ** 2 + c[3] * d ** 3
    if params.variant == "kb-probabilistic":
        p *= params.setpiece_multipliers[kind]
    return min(max(p, 0.0), 1.0)


def score_long_shot(tactic_skill: float, opp_avg_def: float,
                    params: EngineParams) -> float:
    """Probability of scoring a long shot.

    Linear in the difference between the tactic skill and the opponent's
    average defence rating, which stands in for the hidden keeper skill.
    """
    lo, hi = params.ls_score["diff_range"]
    d = min(max(tactic_skill - opp_avg_def, lo), hi)
    t = (d - lo) / (hi - lo)
    return params.ls_score["lo"] + t * (params.ls_score["hi"] - params.ls_score["lo"])


def _clamped_lookup(table: dict[int, float], key: int) -> float:
    keys = sorted(table)
    return table[min(max(key, keys[0]), keys[-1])]


def counter_rates(profile: TeamProfile, ca_eligible: bool,
                  params: EngineParams) -> tuple[float, float]:
    """(main, technical) per-missed-chance counterattack conversion rates.

    The main channel uses the tactical skill curve when the team plays an
    eligible counterattack tactic, and the defender-count-keyed baseline
    otherwise. The technical channel needs at least one technical defender.
    """
    if profile.tactic.kind == "CA" and ca_eligible:
        main = params.tactic_rate("ca", profile.tactic.skill)
    else:
        main = _clamped_lookup(params.ca_nontactical_rates, profile.positions.defenders)
    tech = (_clamped_lookup(params.tech_ca_rates, profile.positions.defenders)
            if profile.roster.technical_defenders >= 1 else 0.0)
    return main, tech


def generate_counterattacks(missed_opponent_normals: int, profile: TeamProfile,
                            ca_eligible: bool, params: EngineParams,
                            rng: np.random.Generator) -> int:
    """Number of counterattacks earned from the opponent's missed chances.

    Each miss independently converts through the main channel and, if
    technical defenders are fielded, through a second independent technical
    channel.
    """
    if missed_opponent_normals < 0:
        raise ValueError("missed chances must be >= 0")
    if missed_opponent_normals == 0:
        return 0
    main, tech = counter_rates(profile, ca_eligible, params)
    n = int(rng.binomial(missed_opponent_normals, main))
    if tech > 0.0:
        n += int(rng.binomial(missed_opponent_normals, tech))
    return n


def pnf_conversion_rate(pnfs: int, opp_cds: int, params: EngineParams) -> float:
    """Extra-attack rate per missed chance, by PNF count against opposing CDs."""
    if pnfs <= 0:
        return 0.0
    if pnfs >= 3:
        return params.pnf_rates["3,*"]
    cd = min(max(opp_cds, 0), 3)
    return params.pnf_rates[f"{pnfs},{cd}"]


def pnf_extra_attacks(missed_normals: int, pnfs: int, opp_cds: int,
                      params: EngineParams, rng: np.random.Generator) -> int:
    """Extra attacks generated by powerful forwards after the team's own misses."""
    if missed_normals < 0:
        raise ValueError("missed chances must be >= 0")
    rate = pnf_conversion_rate(pnfs, opp_cds, params)
    if missed_normals == 0 or rate == 0.0:
        return 0
    return int(rng.binomial(missed_normals, rate))


def pdim_block_rate(pdims: int, params: EngineParams) -> float:
    if pdims <= 0:
        return 0.0
    return _clamped_lookup(params.pdim_block, pdims)


def pdim_blocks(opp_normal_attacks: int, pdims: int, params: EngineParams,
                rng: np.random.Generator) -> int:
    """Opponent attacks stopped by powerful defensive inner midfielders."""
    if opp_normal_attacks < 0:
        raise ValueError("attack count must be >= 0")
    rate = pdim_block_rate(pdims, params)
    if rate == 0.0 or opp_normal_attacks == 0:
        return 0
    return int(rng.binomial(opp_normal_attacks, rate))
