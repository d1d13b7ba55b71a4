"""Ordinal forecast scoring for (home, draw, away) outcome distributions."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ValidationError

OUTCOMES = ("H", "D", "A")
_OUTCOME_VECTOR = {"H": (1.0, 0.0, 0.0), "D": (0.0, 1.0, 0.0), "A": (0.0, 0.0, 1.0)}


@dataclass(frozen=True)
class ForecastTriple:
    """Ordered (home, draw, away) probabilities summing to one."""

    home: float
    draw: float
    away: float

    def __post_init__(self):
        for name, v in (("home", self.home), ("draw", self.draw), ("away", self.away)):
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"probability {name} must be in [0, 1], got {v}", name)
        s = self.home + self.draw + self.away
        if abs(s - 1.0) > 1e-9:
            raise ValidationError(f"probabilities must sum to 1, got {s!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.home, self.draw, self.away)


def rps(pred: ForecastTriple, observed: str) -> float:
    """Rank probability score of a forecast against the observed outcome.

    Mean squared difference of the cumulative forecast and outcome
    distributions over the ordered categories; 0 is a perfect forecast, 1 the
    worst possible.
    """
    if observed not in _OUTCOME_VECTOR:
        raise ValidationError(f"observed outcome must be one of {OUTCOMES}, got {observed!r}")
    e = _OUTCOME_VECTOR[observed]
    p = pred.as_tuple()
    total = 0.0
    cum = 0.0
    for i in range(len(p) - 1):
        cum += p[i] - e[i]
        total += cum * cum
    return total / (len(p) - 1)


def baseline_priors(kind: str, outcome_counts: tuple[int, int, int] | None = None) -> ForecastTriple:
    """Reference forecasts: `ignorant` is uniform, `global` the empirical mix."""
    if kind == "ignorant":
        return ForecastTriple(1 / 3, 1 / 3, 1 / 3)
    if kind == "global":
        if not outcome_counts or sum(outcome_counts) == 0:
            raise ValidationError("global prior needs non-empty outcome counts", "outcome_counts")
        total = sum(outcome_counts)
        return ForecastTriple(*(c / total for c in outcome_counts))
    raise ValidationError(f"unknown prior kind {kind!r}", "kind")


def goal_diff_error(pred_diff: float, obs_diff: int) -> float:
    """Absolute error between predicted and observed goal difference."""
    return abs(pred_diff - obs_diff)
