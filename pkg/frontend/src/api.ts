/** Typed client for the simulation service. The UI never does probability
 * arithmetic itself: every number rendered comes from these payloads. */

export interface TacticJson {
  kind: string;
  skill: number;
}

export interface RosterJson {
  unpredictable_offensives: number;
  unpredictable_sa_players: number;
  unpredictable_lp_players: number;
  unpredictable_mistake_players: number;
  unpredictable_owngoal_players: number;
  quick_offensives: number;
  quick_defenders: number;
  technical_offensives: number;
  technical_defenders: number;
  head_offensives: number;
  corner_head_offensives: number;
  corner_head_defensives: number;
  head_defenders_or_ims: number;
}

export interface PositionsJson {
  central_defenders: number;
  wing_backs: number;
  wingers: number;
  inner_midfielders: number;
  forwards: number;
  pdims: number;
  pnfs: number;
}

export interface TeamProfileJson {
  left_att: number;
  mid_att: number;
  right_att: number;
  left_def: number;
  mid_def: number;
  right_def: number;
  midfield: number;
  isp_att: number;
  isp_def: number;
  tactic: TacticJson;
  roster: RosterJson;
  positions: PositionsJson;
}

export interface HdaJson {
  home: number;
  draw: number;
  away: number;
}

export interface TeamStatsJson {
  goal_means: Record<string, number>;
  goal_stds: Record<string, number>;
  total_goals: { mean: number; std: number };
  histogram: number[];
}

export interface SimulationReportJson {
  trials: number;
  seed: number;
  hda: HdaJson;
  home: TeamStatsJson;
  away: TeamStatsJson;
}

export interface SweepPointJson {
  value: number | string;
  p_win: number;
  p_draw: number;
  p_lose: number;
  mean_total_goals: number;
}

export interface SweepResultJson {
  vary: string;
  points: SweepPointJson[];
}

export interface ApiErrorJson {
  code: string;
  message: string;
  field_path?: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorJson,
  ) {
    super(body.message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base: string = "http://localhost:8000",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.base}${path}`, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body as ApiErrorJson);
    }
    return body as T;
  }

  profiles(): Promise<Record<string, TeamProfileJson>> {
    return this.request("/api/v1/profiles");
  }

  predict(body: {
    home: TeamProfileJson;
    away: TeamProfileJson;
    trials: number;
    seed: number;
  }, signal?: AbortSignal): Promise<SimulationReportJson> {
    return this.request("/api/v1/predict", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  sweep(body: {
    base_home: TeamProfileJson;
    base_away: TeamProfileJson;
    vary: string;
    points: number[];
    trials_per_point: number;
    seed: number;
  }, signal?: AbortSignal): Promise<SweepResultJson> {
    return this.request("/api/v1/sweep", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }
}
