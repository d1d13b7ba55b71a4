"""Discrete tabular datasets: simulator-backed generation, binning, CSV, splits."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

import numpy as np

from .core import (PositionCounts, SpecialityRoster, TacticSpec, TeamProfile,
                   ValidationError, hatstats)
from .engine import GOAL_CATEGORIES, MatchSetup, outcome_to_hda
from .params import EngineParams
from .rng import DOMAIN_DATASET, stream
from .sweeps import preset_profiles


@dataclass(frozen=True)
class DiscreteDataset:
    """Categorical data matrix with per-variable ordered category labels."""

    variables: tuple[str, ...]
    categories: dict[str, list[str]]
    codes: np.ndarray  # shape (n, len(variables)), integer category indices

    def __post_init__(self):
        if self.codes.ndim != 2 or self.codes.shape[1] != len(self.variables):
            raise ValidationError("codes matrix shape does not match variables")
        if self.codes.shape[0] < 1:
            raise ValidationError("dataset needs at least one row")
        for i, v in enumerate(self.variables):
            col = self.codes[:, i]
            if col.min() < 0 or col.max() >= len(self.categories[v]):
                raise ValidationError(f"column {v!r} has out-of-range category index")

    @property
    def n(self) -> int:
        return int(self.codes.shape[0])

    def labels(self, variable: str) -> list[str]:
        i = self.variables.index(variable)
        cats = self.categories[variable]
        return [cats[c] for c in self.codes[:, i]]

    def select(self, variables: list[str]) -> "DiscreteDataset":
        idx = [self.variables.index(v) for v in variables]
        return DiscreteDataset(tuple(variables),
                               {v: list(self.categories[v]) for v in variables},
                               self.codes[:, idx].copy())

    def permute_columns(self, order: list[int]) -> "DiscreteDataset":
        names = tuple(self.variables[i] for i in order)
        return DiscreteDataset(names,
                               {v: list(self.categories[v]) for v in names},
                               self.codes[:, order].copy())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.variables)
        cats = [self.categories[v] for v in self.variables]
        for row in self.codes:
            w.writerow([cats[j][c] for j, c in enumerate(row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DiscreteDataset":
        rows = list(csv.reader(io.StringIO(text)))
        if len(rows) < 2:
            raise ValidationError("CSV needs a header and at least one row")
        variables = tuple(rows[0])
        data_rows = rows[1:]
        categories: dict[str, list[str]] = {}
        codes = np.zeros((len(data_rows), len(variables)), dtype=np.int32)
        for j, v in enumerate(variables):
            seen = sorted({r[j] for r in data_rows}, key=_label_sort_key)
            categories[v] = seen
            index = {label: i for i, label in enumerate(seen)}
            for i, r in enumerate(data_rows):
                codes[i, j] = index[r[j]]
        return cls(variables, categories, codes)


def _label_sort_key(label: str):
    try:
        return (0, float(label), label)
    except ValueError:
        return (1, 0.0, label)


def split(d: DiscreteDataset, train_fraction: float, seed: int) -> tuple[DiscreteDataset, DiscreteDataset]:
    """Disjoint random row partition, reproducible by seed."""
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError("train_fraction must be strictly between 0 and 1",
                              "train_fraction")
    n_train = int(round(d.n * train_fraction))
    if n_train < 1 or n_train >= d.n:
        raise ValidationError(f"split of {d.n} rows at {train_fraction} leaves an empty part")
    order = np.random.default_rng(seed).permutation(d.n)
    cats = {v: list(d.categories[v]) for v in d.variables}
    return (DiscreteDataset(d.variables, cats, d.codes[order[:n_train]].copy()),
            DiscreteDataset(d.variables, cats, d.codes[order[n_train:]].copy()))


# --- simulator-backed generation ---------------------------------------------

COLUMN_GROUPS = ("ratings", "tactics", "specialities", "positions",
                 "chances", "goals", "hda")

RATING_COLUMNS = ("left_att", "mid_att", "right_att", "left_def", "mid_def",
                  "right_def", "midfield", "isp_att", "isp_def")


@dataclass(frozen=True)
class SamplerSpec:
    """How random team profile pairs are drawn for dataset generation.

    Squad shapes (positions and speciality roster) are drawn from the shipped
    preset profiles; ratings, tactic, and tactic skill are sampled uniformly.
    A HatStats floor, when set, rejects uncompetitive pairings.
    """

    rating_range: tuple[float, float] = (5.0, 20.0)
    tactics: tuple[str, ...] = ("Normal", "AiM", "AoW", "CA", "LS", "PR", "PC")
    skill_range: tuple[int, int] = (10, 20)
    hatstats_min: float | None = None
    rating_bins: int = 5
    columns: tuple[str, ...] = ("ratings", "tactics", "goals", "hda")
    max_rejects_per_row: int = 1000

    def validate(self) -> None:
        lo, hi = self.rating_range
        if not (1.0 <= lo < hi):
            raise ValidationError("rating_range must satisfy 1 <= lo < hi", "rating_range")
        if self.rating_bins < 2:
            raise ValidationError("rating_bins must be >= 2", "rating_bins")
        unknown = set(self.columns) - set(COLUMN_GROUPS)
        if unknown:
            raise ValidationError(f"unknown column groups {sorted(unknown)}", "columns")

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SamplerSpec":
        kwargs = {}
        for key in ("rating_range", "skill_range"):
            if key in doc:
                kwargs[key] = tuple(doc[key])
        for key in ("tactics", "columns"):
            if key in doc:
                kwargs[key] = tuple(doc[key])
        for key in ("hatstats_min", "rating_bins", "max_rejects_per_row"):
            if key in doc:
                kwargs[key] = doc[key]
        spec = cls(**kwargs)
        spec.validate()
        return spec


def _sample_profile(spec: SamplerSpec, shapes: list[TeamProfile],
                    rng: np.random.Generator) -> TeamProfile:
    base = shapes[int(rng.integers(len(shapes)))]
    lo, hi = spec.rating_range
    ratings = {f: float(np.round(rng.uniform(lo, hi), 2)) for f in RATING_COLUMNS}
    kind = spec.tactics[int(rng.integers(len(spec.tactics)))]
    skill = int(rng.integers(spec.skill_range[0], spec.skill_range[1] + 1))
    return replace(base, tactic=TacticSpec(kind, skill), **ratings)


def sample_profile_pair(spec: SamplerSpec, shapes: list[TeamProfile],
                        rng: np.random.Generator) -> tuple[TeamProfile, TeamProfile]:
    """Draw a matchup, rejecting pairs below the HatStats floor."""
    for _ in range(spec.max_rejects_per_row):
        home = _sample_profile(spec, shapes, rng)
        away = _sample_profile(spec, shapes, rng)
        if spec.hatstats_min is None or (hatstats(home) >= spec.hatstats_min
                                         and hatstats(away) >= spec.hatstats_min):
            return home, away
    raise ValidationError(
        "HatStats floor rejected every candidate pairing; "
        "raise rating_range or lower hatstats_min", "hatstats_min")


def _rating_binner(spec: SamplerSpec):
    lo, hi = spec.rating_range
    edges = np.linspace(lo, hi, spec.rating_bins + 1)
    labels = [f"[{edges[i]:.2f},{edges[i + 1]:.2f})" for i in range(spec.rating_bins)]

    def bin_of(value: float) -> str:
        i = int(np.searchsorted(edges, value, side="right")) - 1
        return labels[min(max(i, 0), spec.rating_bins - 1)]

    return labels, bin_of


def generate_dataset(n_matches: int, spec: SamplerSpec, params: EngineParams,
                     seed: int) -> DiscreteDataset:
    """Simulate n random matches and emit one discretised row per match.

    Row i is fully determined by (seed, i): the profile pair, the rejection
    loop for the HatStats floor, and the match trial all draw from the row's
    own stream.
    """
    if n_matches < 1:
        raise ValidationError("n_matches must be >= 1", "n_matches")
    spec.validate()
    shapes = list(preset_profiles().values())
    rating_labels, bin_of = _rating_binner(spec)

    columns: list[tuple[str, list[str] | None]] = []  # (name, fixed categories)
    for group in spec.columns:
        if group == "ratings":
            columns += [(f"{side}_{f}", rating_labels)
                        for side in ("home", "away") for f in RATING_COLUMNS]
        elif group == "tactics":
            for side in ("home", "away"):
                columns.append((f"{side}_tactic", list(spec.tactics)))
                columns.append((f"{side}_tactic_skill", None))
        elif group == "specialities":
            columns += [(f"{side}_{f}", None)
                        for side in ("home", "away")
                        for f in SpecialityRoster.__dataclass_fields__]
        elif group == "positions":
            columns += [(f"{side}_{f}", None)
                        for side in ("home", "away")
                        for f in PositionCounts.__dataclass_fields__]
        elif group == "chances":
            columns += [(f"{side}_{name}", None)
                        for side in ("home", "away")
                        for name in ("normal_chances", "missed_normal")]
        elif group == "goals":
            columns += [(f"{side}_goals_{c}", None)
                        for side in ("home", "away") for c in GOAL_CATEGORIES]
            columns += [(f"{side}_goals_total", None) for side in ("home", "away")]
        elif group == "hda":
            columns.append(("hda", ["H", "D", "A"]))

    names = [c[0] for c in columns]
    rows: list[list[str]] = []
    for i in range(n_matches):
        rng = stream(seed, i, DOMAIN_DATASET)
        home, away = sample_profile_pair(spec, shapes, rng)
        detail = MatchSetup(home, away, params).sample(rng, detail=True)
        rows.append(_row_values(spec, columns, home, away, detail, bin_of))

    categories: dict[str, list[str]] = {}
    for j, (name, fixed) in enumerate(columns):
        if fixed is not None:
            categories[name] = list(fixed)
        else:
            seen = sorted({r[j] for r in rows}, key=_label_sort_key)
            categories[name] = seen
    codes = np.zeros((n_matches, len(columns)), dtype=np.int32)
    for j, name in enumerate(names):
        index = {label: k for k, label in enumerate(categories[name])}
        for i, r in enumerate(rows):
            codes[i, j] = index[r[j]]
    return DiscreteDataset(tuple(names), categories, codes)


def _row_values(spec, columns, home, away, detail, bin_of) -> list[str]:
    profiles = {"home": home, "away": away}
    outcome = detail.outcome
    breakdown = {"home": outcome.home, "away": outcome.away}
    side_index = {"home": 0, "away": 1}
    values = []
    for name, _ in columns:
        if name == "hda":
            values.append(outcome_to_hda(outcome.home.total, outcome.away.total))
            continue
        side, field_name = name.split("_", 1)
        p = profiles[side]
        i = side_index[side]
        if field_name in RATING_COLUMNS:
            values.append(bin_of(getattr(p, field_name)))
        elif field_name == "tactic":
            values.append(p.tactic.kind)
        elif field_name == "tactic_skill":
            values.append(str(p.tactic.skill))
        elif field_name == "normal_chances":
            values.append(str(detail.normal_chances[i]))
        elif field_name == "missed_normal":
            values.append(str(detail.missed_normal[i]))
        elif field_name.startswith("goals_"):
            cat = field_name[len("goals_"):]
            values.append(str(breakdown[side].total if cat == "total"
                              else getattr(breakdown[side], cat)))
        elif hasattr(p.roster, field_name):
            values.append(str(getattr(p.roster, field_name)))
        elif hasattr(p.positions, field_name):
            values.append(str(getattr(p.positions, field_name)))
        else:
            raise ValidationError(f"unmapped column {name!r}")
    return values
