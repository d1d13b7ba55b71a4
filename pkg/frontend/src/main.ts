/** DOM wiring for the what-if explorer: two profile forms, live prediction,
 * and sweep curves. All numbers rendered come from the service JSON. */

import { ApiClient, type SimulationReportJson, type TeamProfileJson } from "./api.js";
import { goalTable, hdaBarsSvg, sweepChartSvg } from "./charts.js";
import {
  POSITION_FIELDS, RATING_FIELDS, ROSTER_FIELDS, RequestSequencer,
  TACTIC_KINDS, loadPreset, serializeForm, validateForm, type ProfileForm,
} from "./state.js";

const API_BASE = (globalThis as { HATSIM_API_BASE?: string }).HATSIM_API_BASE
  ?? "http://localhost:8000";
const QUICK_TRIALS = 10_000;
const FULL_TRIALS = 100_000;
const DEBOUNCE_MS = 350;

const client = new ApiClient(API_BASE);
const predictSequencer = new RequestSequencer();
const sweepSequencer = new RequestSequencer();
let predictAbort: AbortController | undefined;
let sweepAbort: AbortController | undefined;

const forms: { home?: ProfileForm; away?: ProfileForm } = {};
let presets: Record<string, TeamProfileJson> = {};
let debounceTimer: number | undefined;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function numberInput(id: string, value: number, min: number, max: number,
                     step: number, onInput: (v: number) => void): string {
  queueMicrotask(() => {
    const input = document.getElementById(id) as HTMLInputElement | null;
    input?.addEventListener("input", () => onInput(Number(input.value)));
  });
  return `<input type="number" id="${id}" value="${value}" min="${min}" max="${max}" step="${step}">`;
}

function renderForm(side: "home" | "away"): void {
  const form = forms[side];
  if (!form) return;
  const root = el<HTMLDivElement>(`${side}-form`);
  const rows: string[] = [];

  rows.push(`<h3>${side} team</h3>`);
  rows.push(`<label>preset <select id="${side}-preset">` +
    Object.keys(presets).map((n) => `<option>${n}</option>`).join("") +
    `</select></label>`);

  rows.push(`<fieldset><legend>ratings</legend>`);
  for (const field of RATING_FIELDS) {
    const id = `${side}-${field}`;
    rows.push(
      `<label>${field}` +
      `<input type="range" id="${id}" min="1" max="20" step="0.5" value="${form.ratings[field]}">` +
      `<output id="${id}-out">${form.ratings[field]}</output></label>`,
    );
    queueMicrotask(() => {
      const input = document.getElementById(id) as HTMLInputElement | null;
      input?.addEventListener("input", () => {
        form.ratings[field] = Number(input.value);
        el<HTMLOutputElement>(`${id}-out`).value = input.value;
        onFormChanged();
      });
    });
  }
  rows.push(`</fieldset>`);

  rows.push(`<fieldset><legend>tactic</legend>`);
  rows.push(`<label>kind <select id="${side}-tactic">` +
    TACTIC_KINDS.map((k) => `<option${k === form.tacticKind ? " selected" : ""}>${k}</option>`).join("") +
    `</select></label>`);
  rows.push(
    `<label>skill <input type="range" id="${side}-skill" min="1" max="20" step="1" ` +
    `value="${form.tacticSkill}" ${form.tacticKind === "Normal" ? "disabled" : ""}>` +
    `<output id="${side}-skill-out">${form.tacticSkill}</output></label>`,
  );
  queueMicrotask(() => {
    const kind = document.getElementById(`${side}-tactic`) as HTMLSelectElement | null;
    kind?.addEventListener("change", () => {
      form.tacticKind = kind.value;
      renderForm(side);
      onFormChanged();
    });
    const skill = document.getElementById(`${side}-skill`) as HTMLInputElement | null;
    skill?.addEventListener("input", () => {
      form.tacticSkill = Number(skill.value);
      el<HTMLOutputElement>(`${side}-skill-out`).value = skill.value;
      onFormChanged();
    });
  });
  rows.push(`</fieldset>`);

  rows.push(`<fieldset class="counts"><legend>positions</legend>`);
  for (const field of POSITION_FIELDS) {
    rows.push(`<label>${field} ` + numberInput(
      `${side}-pos-${field}`, form.positions[field], 0, 11, 1,
      (v) => { form.positions[field] = v; onFormChanged(); }) + `</label>`);
  }
  rows.push(`</fieldset>`);

  rows.push(`<fieldset class="counts"><legend>specialities</legend>`);
  for (const field of ROSTER_FIELDS) {
    rows.push(`<label>${field} ` + numberInput(
      `${side}-roster-${field}`, form.roster[field], 0, 11, 1,
      (v) => { form.roster[field] = v; onFormChanged(); }) + `</label>`);
  }
  rows.push(`</fieldset>`);

  root.innerHTML = rows.join("");
  queueMicrotask(() => {
    const select = document.getElementById(`${side}-preset`) as HTMLSelectElement | null;
    select?.addEventListener("change", () => {
      forms[side] = loadPreset(presets[select.value]);
      renderForm(side);
      onFormChanged();
    });
  });
}

function formsValid(): boolean {
  const problems = [
    ...(forms.home ? validateForm(forms.home) : ["loading"]),
    ...(forms.away ? validateForm(forms.away) : ["loading"]),
  ];
  el<HTMLDivElement>("problems").innerHTML =
    problems.map((p) => `<div class="problem">${p}</div>`).join("");
  el<HTMLButtonElement>("full-run").disabled = problems.length > 0;
  return problems.length === 0;
}

function onFormChanged(): void {
  if (!formsValid()) return;
  window.clearTimeout(debounceTimer);
  debounceTimer = window.setTimeout(() => void runPredict(QUICK_TRIALS), DEBOUNCE_MS);
}

async function runPredict(trials: number): Promise<void> {
  if (!forms.home || !forms.away) return;
  const seed = Number((el<HTMLInputElement>("seed")).value) || 0;
  const ticket = predictSequencer.issue();
  predictAbort?.abort(); // at most one in-flight request for this panel
  predictAbort = new AbortController();
  el<HTMLDivElement>("predict-status").textContent = `running ${trials.toLocaleString()} trials...`;
  try {
    const report = await client.predict({
      home: serializeForm(forms.home),
      away: serializeForm(forms.away),
      trials,
      seed,
    }, predictAbort.signal);
    if (!predictSequencer.isCurrent(ticket)) return; // superseded: discard
    renderReport(report);
  } catch (err) {
    if (!predictSequencer.isCurrent(ticket)) return;
    if ((err as Error).name === "AbortError") return;
    el<HTMLDivElement>("predict-status").textContent = `error: ${(err as Error).message}`;
  }
}

function renderReport(report: SimulationReportJson): void {
  el<HTMLDivElement>("hda-bars").innerHTML = hdaBarsSvg(report.hda);
  el<HTMLDivElement>("goal-table").innerHTML = goalTable(report);
  el<HTMLDivElement>("predict-status").textContent =
    `${report.trials.toLocaleString()} trials, seed ${report.seed} (rerun with the same seed to reproduce)`;
}

async function runSweep(): Promise<void> {
  if (!forms.home || !forms.away) return;
  const vary = (el<HTMLSelectElement>("sweep-vary")).value;
  const from = Number((el<HTMLInputElement>("sweep-from")).value);
  const to = Number((el<HTMLInputElement>("sweep-to")).value);
  const step = Number((el<HTMLInputElement>("sweep-step")).value) || 1;
  const points: number[] = [];
  for (let x = from; x <= to + 1e-9; x += step) points.push(Number(x.toFixed(4)));
  const trials = 10_000;
  const ticket = sweepSequencer.issue();
  sweepAbort?.abort();
  sweepAbort = new AbortController();
  el<HTMLDivElement>("sweep-status").textContent = `sweeping ${points.length} points...`;
  try {
    const result = await client.sweep({
      base_home: serializeForm(forms.home),
      base_away: serializeForm(forms.away),
      vary,
      points,
      trials_per_point: trials,
      seed: Number((el<HTMLInputElement>("seed")).value) || 0,
    }, sweepAbort.signal);
    if (!sweepSequencer.isCurrent(ticket)) return;
    el<HTMLDivElement>("sweep-chart").innerHTML = sweepChartSvg(result.points, trials);
    el<HTMLDivElement>("sweep-status").textContent =
      `${result.vary}: win and lose probability for the home side`;
  } catch (err) {
    if (!sweepSequencer.isCurrent(ticket)) return;
    if ((err as Error).name === "AbortError") return;
    el<HTMLDivElement>("sweep-status").textContent = `error: ${(err as Error).message}`;
  }
}

async function boot(): Promise<void> {
  try {
    presets = await client.profiles();
  } catch (err) {
    el<HTMLDivElement>("problems").innerHTML =
      `<div class="problem">cannot reach the service at ${API_BASE}: ` +
      `${(err as Error).message} <button id="retry">retry</button></div>`;
    queueMicrotask(() => {
      document.getElementById("retry")?.addEventListener("click", () => void boot());
    });
    return;
  }
  forms.home = loadPreset(presets.NM);
  forms.away = loadPreset(presets.NM);
  renderForm("home");
  renderForm("away");

  const varySelect = el<HTMLSelectElement>("sweep-vary");
  varySelect.innerHTML = [...RATING_FIELDS, "tactic_skill"]
    .map((f) => `<option>${f}</option>`).join("");

  el<HTMLButtonElement>("full-run").addEventListener("click",
    () => void runPredict(FULL_TRIALS));
  el<HTMLButtonElement>("sweep-run").addEventListener("click", () => void runSweep());
  formsValid();
  void runPredict(QUICK_TRIALS);
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void boot());
}
