/** Form state for one team, kept exactly parallel to the service's profile
 * JSON so presets round-trip without loss, plus a client-side mirror of the
 * server validation used to disable submission of bad intermediate states. */

import type { PositionsJson, RosterJson, TeamProfileJson } from "./api.js";

export const RATING_FIELDS = [
  "left_att", "mid_att", "right_att",
  "left_def", "mid_def", "right_def",
  "midfield", "isp_att", "isp_def",
] as const;
export type RatingField = (typeof RATING_FIELDS)[number];

export const TACTIC_KINDS = ["Normal", "AiM", "AoW", "CA", "LS", "PR", "PC"] as const;

export const ROSTER_FIELDS: (keyof RosterJson)[] = [
  "unpredictable_offensives", "unpredictable_sa_players",
  "unpredictable_lp_players", "unpredictable_mistake_players",
  "unpredictable_owngoal_players", "quick_offensives", "quick_defenders",
  "technical_offensives", "technical_defenders", "head_offensives",
  "corner_head_offensives", "corner_head_defensives", "head_defenders_or_ims",
];

export const POSITION_FIELDS: (keyof PositionsJson)[] = [
  "central_defenders", "wing_backs", "wingers", "inner_midfielders",
  "forwards", "pdims", "pnfs",
];

export interface ProfileForm {
  ratings: Record<RatingField, number>;
  tacticKind: string;
  tacticSkill: number;
  roster: RosterJson;
  positions: PositionsJson;
}

export function loadPreset(preset: TeamProfileJson): ProfileForm {
  const ratings = {} as Record<RatingField, number>;
  for (const field of RATING_FIELDS) {
    ratings[field] = preset[field];
  }
  return {
    ratings,
    tacticKind: preset.tactic.kind,
    tacticSkill: preset.tactic.skill,
    roster: { ...preset.roster },
    positions: { ...preset.positions },
  };
}

export function serializeForm(form: ProfileForm): TeamProfileJson {
  return {
    ...form.ratings,
    tactic: { kind: form.tacticKind, skill: form.tacticSkill },
    roster: { ...form.roster },
    positions: { ...form.positions },
  };
}

/** Mirror of the server-side profile checks; returns human-readable
 * problems, empty when the form may be submitted. */
export function validateForm(form: ProfileForm): string[] {
  const problems: string[] = [];
  for (const field of RATING_FIELDS) {
    const v = form.ratings[field];
    if (!Number.isFinite(v) || v < 1) {
      problems.push(`${field}: rating must be at least 1`);
    }
  }
  if (!TACTIC_KINDS.includes(form.tacticKind as never)) {
    problems.push(`tactic: unknown kind ${form.tacticKind}`);
  }
  if (form.tacticKind !== "Normal") {
    if (!Number.isInteger(form.tacticSkill) || form.tacticSkill < 1 || form.tacticSkill > 20) {
      problems.push("tactic skill: must be an integer between 1 and 20");
    }
  }
  const p = form.positions;
  const counts: [string, number][] = [
    ...POSITION_FIELDS.map((f) => [`positions.${f}`, p[f]] as [string, number]),
    ...ROSTER_FIELDS.map((f) => [`roster.${f}`, form.roster[f]] as [string, number]),
  ];
  for (const [name, v] of counts) {
    if (!Number.isInteger(v) || v < 0 || v > 11) {
      problems.push(`${name}: must be a whole number between 0 and 11`);
    }
  }
  const outfield = p.central_defenders + p.wing_backs + p.wingers
    + p.inner_midfielders + p.forwards;
  if (outfield > 10) {
    problems.push(`positions: ${outfield} outfield players exceed 10`);
  }
  if (p.pdims > p.inner_midfielders) {
    problems.push("positions.pdims: more blockers than inner midfielders");
  }
  if (p.pnfs > p.forwards) {
    problems.push("positions.pnfs: more powerful forwards than forwards");
  }
  const r = form.roster;
  const offensive = p.wingers + p.inner_midfielders + p.forwards;
  const defenders = p.central_defenders + p.wing_backs;
  const caps: [keyof RosterJson, number][] = [
    ["unpredictable_offensives", offensive],
    ["unpredictable_sa_players", outfield],
    ["unpredictable_lp_players", defenders + 1],
    ["unpredictable_mistake_players", defenders + p.inner_midfielders],
    ["unpredictable_owngoal_players", p.wingers + p.forwards],
    ["quick_offensives", offensive],
    ["quick_defenders", defenders],
    ["technical_offensives", offensive],
    ["technical_defenders", defenders],
    ["head_offensives", offensive],
    ["corner_head_offensives", outfield],
    ["corner_head_defensives", outfield],
    ["head_defenders_or_ims", defenders + p.inner_midfielders],
  ];
  for (const [field, cap] of caps) {
    if (r[field] > cap) {
      problems.push(`roster.${field}: ${r[field]} exceeds the ${cap} eligible players`);
    }
  }
  return problems;
}

/** Drops responses that were superseded while in flight. Each panel keeps
 * one sequencer; a response renders only when its ticket is still the
 * latest one issued. */
export class RequestSequencer {
  private latest = 0;

  issue(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}
