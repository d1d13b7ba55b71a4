"""Team profile types, validation, and rating arithmetic shared by the engine."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Any

TACTIC_KINDS = ("Normal", "AiM", "AoW", "CA", "LS", "PR", "PC")

MIN_RATING = 1.0
MIN_SKILL, MAX_SKILL = 1, 20


class ValidationError(ValueError):
    """Raised when an input document or value fails validation.

    ``field_path`` points at the offending field (e.g. ``"home.midfield"``).
    """

    def __init__(self, message: str, field_path: str = ""):
        super().__init__(message)
        self.field_path = field_path


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass(frozen=True)
class TacticSpec:
    """Chosen match tactic plus the skill it is executed at (skill is ignored for Normal)."""

    kind: str = "Normal"
    skill: int = 1

    def __post_init__(self):
        if self.kind not in TACTIC_KINDS:
            raise ValidationError(f"unknown tactic kind {self.kind!r}", "tactic.kind")


@dataclass(frozen=True)
class SpecialityRoster:
    """Counts of fielded players with event-enabling specialities, by role."""

    unpredictable_offensives: int = 0
    unpredictable_sa_players: int = 0
    unpredictable_lp_players: int = 0
    unpredictable_mistake_players: int = 0
    unpredictable_owngoal_players: int = 0
    quick_offensives: int = 0
    quick_defenders: int = 0
    technical_offensives: int = 0
    technical_defenders: int = 0
    head_offensives: int = 0
    corner_head_offensives: int = 0
    corner_head_defensives: int = 0
    head_defenders_or_ims: int = 0


@dataclass(frozen=True)
class PositionCounts:
    """Outfield positional layout. PDIMs sit inside inner midfielders, PNFs inside forwards."""

    central_defenders: int = 0
    wing_backs: int = 0
    wingers: int = 0
    inner_midfielders: int = 0
    forwards: int = 0
    pdims: int = 0
    pnfs: int = 0

    @property
    def defenders(self) -> int:
        return self.central_defenders + self.wing_backs

    @property
    def outfield_total(self) -> int:
        return (self.central_defenders + self.wing_backs + self.wingers
                + self.inner_midfielders + self.forwards)


RATING_FIELDS = ("left_att", "mid_att", "right_att",
                 "left_def", "mid_def", "right_def",
                 "midfield", "isp_att", "isp_def")


@dataclass(frozen=True)
class TeamProfile:
    """Every controllable input for one team: ratings, tactic, roster, positions."""

    left_att: float
    mid_att: float
    right_att: float
    left_def: float
    mid_def: float
    right_def: float
    midfield: float
    isp_att: float
    isp_def: float
    tactic: TacticSpec = field(default_factory=TacticSpec)
    roster: SpecialityRoster = field(default_factory=SpecialityRoster)
    positions: PositionCounts = field(default_factory=PositionCounts)

    @property
    def avg_defence(self) -> float:
        return (self.left_def + self.mid_def + self.right_def) / 3.0


def denominate(rating: float, field_name: str = "rating") -> float:
    """Map an in-game rating R to its denominated form 4R - 3 (> 0 for R >= 1)."""
    if rating < MIN_RATING:
        raise ValidationError(f"rating must be >= {MIN_RATING}, got {rating}", field_name)
    return 4.0 * rating - 3.0


def hatstats(p: TeamProfile) -> float:
    """Competitiveness aggregate: 3x midfield plus all sector attack and defence ratings."""
    return (3.0 * p.midfield
            + p.left_att + p.mid_att + p.right_att
            + p.left_def + p.mid_def + p.right_def)


def validate_profile(p: TeamProfile) -> list[Violation]:
    """Return every invariant violation of the profile (empty list means valid)."""
    out: list[Violation] = []
    for name in RATING_FIELDS:
        v = getattr(p, name)
        if not isinstance(v, (int, float)) or v < MIN_RATING:
            out.append(Violation(name, f"rating must be >= {MIN_RATING}, got {v}"))

    t = p.tactic
    if t.kind != "Normal" and not (MIN_SKILL <= t.skill <= MAX_SKILL):
        out.append(Violation("tactic.skill",
                             f"skill must be in {MIN_SKILL}..{MAX_SKILL}, got {t.skill}"))

    pos = p.positions
    for name in ("central_defenders", "wing_backs", "wingers",
                 "inner_midfielders", "forwards", "pdims", "pnfs"):
        v = getattr(pos, name)
        if not isinstance(v, int) or v < 0:
            out.append(Violation(f"positions.{name}", f"count must be a non-negative integer, got {v}"))
            return out  # counts below are meaningless with bad inputs
    if pos.outfield_total > 10:
        out.append(Violation("positions", f"outfield players must be <= 10, got {pos.outfield_total}"))
    if pos.pdims > pos.inner_midfielders:
        out.append(Violation("positions.pdims",
                             f"pdims ({pos.pdims}) exceed inner_midfielders ({pos.inner_midfielders})"))
    if pos.pnfs > pos.forwards:
        out.append(Violation("positions.pnfs",
                             f"pnfs ({pos.pnfs}) exceed forwards ({pos.forwards})"))

    r = p.roster
    offensive_roles = pos.wingers + pos.inner_midfielders + pos.forwards
    role_caps = {
        "unpredictable_offensives": offensive_roles,
        "unpredictable_sa_players": pos.outfield_total,
        "unpredictable_lp_players": pos.defenders + 1,  # keeper can launch the long pass
        "unpredictable_mistake_players": pos.defenders + pos.inner_midfielders,
        "unpredictable_owngoal_players": pos.wingers + pos.forwards,
        "quick_offensives": offensive_roles,
        "quick_defenders": pos.defenders,
        "technical_offensives": offensive_roles,
        "technical_defenders": pos.defenders,
        "head_offensives": offensive_roles,
        "corner_head_offensives": pos.outfield_total,
        "corner_head_defensives": pos.outfield_total,
        "head_defenders_or_ims": pos.defenders + pos.inner_midfielders,
    }
    for name, cap in role_caps.items():
        v = getattr(r, name)
        if not isinstance(v, int) or v < 0 or v > 11:
            out.append(Violation(f"roster.{name}", f"count must be in 0..11, got {v}"))
        elif v > cap:
            out.append(Violation(f"roster.{name}",
                                 f"count ({v}) exceeds eligible role slots ({cap})"))
    return out


# --- JSON (de)serialization -------------------------------------------------

def profile_to_dict(p: TeamProfile) -> dict[str, Any]:
    d = asdict(p)
    d["tactic"] = {"kind": p.tactic.kind, "skill": p.tactic.skill}
    return d


def _require(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise ValidationError(f"missing field {key!r}", f"{path}.{key}" if path else key)
    return doc[key]


def _number(doc: dict, key: str, path: str) -> float:
    v = _require(doc, key, path)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"field {key!r} must be a number", f"{path}.{key}" if path else key)
    return float(v)


def _count(doc: dict, key: str, path: str, default: int = 0) -> int:
    v = doc.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"field {key!r} must be an integer", f"{path}.{key}" if path else key)
    return v


def profile_from_dict(doc: dict, path: str = "") -> TeamProfile:
    """Parse a TeamProfile JSON document; raises ValidationError with a field path."""
    if not isinstance(doc, dict):
        raise ValidationError("profile must be a JSON object", path or "profile")
    ratings = {name: _number(doc, name, path) for name in RATING_FIELDS}

    tdoc = doc.get("tactic", {"kind": "Normal", "skill": 1})
    if not isinstance(tdoc, dict):
        raise ValidationError("tactic must be an object", f"{path}.tactic" if path else "tactic")
    kind = tdoc.get("kind", "Normal")
    if kind not in TACTIC_KINDS:
        raise ValidationError(f"unknown tactic kind {kind!r}",
                              f"{path}.tactic.kind" if path else "tactic.kind")
    skill = tdoc.get("skill", 1)
    if isinstance(skill, bool) or not isinstance(skill, int):
        raise ValidationError("tactic skill must be an integer",
                              f"{path}.tactic.skill" if path else "tactic.skill")
    tactic = TacticSpec(kind=kind, skill=skill)

    rdoc = doc.get("roster", {})
    roster = SpecialityRoster(**{
        f: _count(rdoc, f, f"{path}.roster" if path else "roster")
        for f in SpecialityRoster.__dataclass_fields__
    })
    pdoc = doc.get("positions", {})
    positions = PositionCounts(**{
        f: _count(pdoc, f, f"{path}.positions" if path else "positions")
        for f in PositionCounts.__dataclass_fields__
    })
    return TeamProfile(tactic=tactic, roster=roster, positions=positions, **ratings)


def require_valid(p: TeamProfile, path: str = "") -> TeamProfile:
    """Raise ValidationError on the first profile violation; returns the profile."""
    violations = validate_profile(p)
    if violations:
        v = violations[0]
        raise ValidationError(v.message, f"{path}.{v.field}" if path else v.field)
    return p
