/**
 * Pure HTML rendering. renderApp maps a view model to a markup string and
 * nothing else: no fetches, no DOM reads, no arithmetic on statistical
 * quantities. Every number shown here was produced by the server; the only
 * client math is layout (and the pixel mapping inside the chart helpers).
 */

import type {
  ConditioningProposal,
  DispersionFeedback,
  DivergenceRow,
  MarginalFeedback,
  PriorSummary,
  SessionResource,
  VineAwaitingFeedback,
  VineOpenFeedback,
} from "./api.js";
import {
  curveMarkers,
  densityChart,
  divergenceChart,
  heatmap,
  intervalBands,
  type HeatmapCell,
} from "./charts.js";
import { escapeAttr, escapeHtml, fmt, fmtInt } from "./format.js";
import {
  activeCellBounds,
  clampToBounds,
  screenFor,
  type ViewModel,
} from "./model.js";

// -- small building blocks ----------------------------------------------------------

function textField(label: string, field: string, value: string, attrs = ""): string {
  return `<label class="field">
    <span>${escapeHtml(label)}</span>
    <input type="text" data-field="${escapeAttr(field)}" value="${escapeAttr(value)}" ${attrs}/>
  </label>`;
}

function selectField(
  label: string,
  field: string,
  value: string,
  options: readonly string[],
): string {
  const rows = options
    .map((opt) => {
      const selected = opt === value ? " selected" : "";
      return `<option value="${escapeAttr(opt)}"${selected}>${escapeHtml(opt)}</option>`;
    })
    .join("");
  return `<label class="field">
    <span>${escapeHtml(label)}</span>
    <select data-field="${escapeAttr(field)}">${rows}</select>
  </label>`;
}

interface ButtonGate {
  op?: string;
  // accept buttons only: a standing rejection for this source holds them disabled
  source?: string;
  disabled?: boolean;
}

function canMutate(vm: ViewModel): boolean {
  return !vm.busy && !vm.demo;
}

function opLegal(vm: ViewModel, op: string): boolean {
  return (vm.resource?.legal_operations ?? []).includes(op);
}

function actionButton(vm: ViewModel, action: string, label: string, gate: ButtonGate = {}): string {
  let disabled = gate.disabled === true || !canMutate(vm);
  if (gate.op !== undefined && !opLegal(vm, gate.op)) disabled = true;
  if (gate.source !== undefined && vm.rejection !== null && vm.rejection.source === gate.source) {
    disabled = true;
  }
  const attr = disabled ? " disabled" : "";
  return `<button data-action="${escapeAttr(action)}"${attr}>${escapeHtml(label)}</button>`;
}

/** Inline server rejection for a form: the message plus, when the server
 *  supplied one, its admissible range, quoted verbatim. */
function rejectionBlock(vm: ViewModel, source: string): string {
  const rejection = vm.rejection;
  if (rejection === null || rejection.source !== source) return "";
  let range = "";
  if (rejection.admissible !== null) {
    range = ` <span data-role="admissible-range">admissible range [${fmt(
      rejection.admissible.lo,
    )}, ${fmt(rejection.admissible.hi)}]</span>`;
  }
  return `<div class="rejection" data-role="rejection">${escapeHtml(rejection.message)}${range}</div>`;
}

function schemaIssuesBlock(vm: ViewModel): string {
  if (vm.schemaIssues.length === 0) return "";
  const items = vm.schemaIssues.map((s) => `<li>${escapeHtml(s)}</li>`).join("");
  return `<ul class="schema-issues" data-role="schema-issues">${items}</ul>`;
}

function keyValueTable(rows: [string, string][]): string {
  const body = rows
    .map(([k, v]) => `<tr><th>${escapeHtml(k)}</th><td>${escapeHtml(v)}</td></tr>`)
    .join("");
  return `<table class="kv">${body}</table>`;
}

// -- setup --------------------------------------------------------------------------

function previewScenarios(json: string): string {
  if (json.trim() === "") return `<p class="hint">Paste or load a scenario table to begin.</p>`;
  let parsed: unknown;
  try {
    parsed = JSON.parse(json);
  } catch (err) {
    return `<p class="hint">Not valid JSON yet: ${escapeHtml(String(err))}</p>`;
  }
  const table = parsed as {
    covariates?: unknown[];
    covariate_names?: unknown[];
    descriptions?: unknown[];
    link?: unknown;
  };
  if (!Array.isArray(table.covariates)) {
    return `<p class="hint">Expected a "covariates" array.</p>`;
  }
  const names = Array.isArray(table.covariate_names) ? table.covariate_names : [];
  const header = ["#", ...names.map((n) => String(n)), "description"]
    .map((h) => `<th>${escapeHtml(h)}</th>`)
    .join("");
  const rows = table.covariates
    .map((row, i) => {
      const cells = Array.isArray(row) ? row : [row];
      const desc = Array.isArray(table.descriptions) ? String(table.descriptions[i] ?? "") : "";
      const tds = cells.map((c) => `<td>${escapeHtml(String(c))}</td>`).join("");
      return `<tr><td>${i}</td>${tds}<td>${escapeHtml(desc)}</td></tr>`;
    })
    .join("");
  const link = typeof table.link === "string" ? table.link : "?";
  return `<p class="hint">${table.covariates.length} scenarios, link ${escapeHtml(link)}</p>
    <table class="data"><thead><tr>${header}</tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderSetup(vm: ViewModel): string {
  const f = vm.forms.setup;
  return `<section class="screen" data-screen="setup">
    <h2>Start a session</h2>
    <div class="columns">
      <div>
        <label class="field block">
          <span>Scenario table (JSON)</span>
          <textarea data-field="setup.scenariosJson" rows="14">${escapeHtml(f.scenariosJson)}</textarea>
        </label>
        ${actionButton(vm, "insert-example", "Insert example table", { disabled: vm.demo })}
      </div>
      <div>
        ${textField("Seed", "setup.seed", f.seed)}
        ${textField("Alpha", "setup.alpha", f.alpha)}
        ${textField("Session id (optional)", "setup.sessionId", f.sessionId)}
        ${textField("Family override (optional)", "setup.familyName", f.familyName)}
        ${textField("Family power (optional)", "setup.familyPower", f.familyPower)}
        ${actionButton(vm, "create-session", "Create session")}
        ${rejectionBlock(vm, "create")}
      </div>
    </div>
    <h3>Preview</h3>
    ${previewScenarios(f.scenariosJson)}
  </section>`;
}

// -- random component ----------------------------------------------------------------

function dispersionPanel(vm: ViewModel): string {
  const fb = vm.panels.dispersion;
  if (fb === null) return "";
  const markers = [
    { x: fb.implied.lower1, label: `implied lower ${fmt(fb.implied.lower1, 4)}` },
    { x: fb.implied.lower2, label: `implied lower ${fmt(fb.implied.lower2, 4)}` },
  ];
  const chart = densityChart(fb.grid, fb.density, {
    xLabel: "sample mean of draws",
    markers,
    bands: intervalBands(fb.intervals),
  });
  const intervals = fb.intervals
    .map(
      (row) =>
        `<tr><td>${fmt(row.prob, 4)}</td><td>${fmt(row.lower)}</td><td>${fmt(row.upper)}</td></tr>`,
    )
    .join("");
  const summary = keyValueTable([
    ["degrees of freedom", fmt(fb.dof)],
    ["rate", fmt(fb.rate)],
    ["dispersion", fb.phi === null ? "free" : fmt(fb.phi)],
    ["mean scale", fmt(fb.mean_scale)],
    ["collapsed to normal limit", fb.collapsed ? "yes" : "no"],
  ]);
  return `<div class="panel" data-role="dispersion-feedback">
    <h3>Implied law of the sample mean</h3>
    ${chart}
    <div class="columns">
      <div>
        <h4>Central intervals</h4>
        <table class="data"><thead><tr><th>prob</th><th>lower</th><th>upper</th></tr></thead>
        <tbody>${intervals}</tbody></table>
      </div>
      <div>
        <h4>Fitted law</h4>
        ${summary}
      </div>
    </div>
  </div>`;
}

function diagnosticsPanel(vm: ViewModel): string {
  const d = vm.diagnostics;
  let body = "";
  if (d.running) {
    body = `<p class="hint">sampling…</p>`;
  } else if (d.error !== null) {
    body = `<p class="rejection">${escapeHtml(d.error)}</p>`;
  } else if (d.report !== null) {
    const r = d.report;
    body = keyValueTable([
      ["family", r.family],
      ["draw count", `${fmtInt(r.n)} samples of ${fmtInt(r.draws)} draws`],
      ["Kolmogorov distance", fmt(r.kolmogorov)],
      ["DKW tolerance", fmt(r.dkw_epsilon)],
      ["within band", r.within_band ? "yes" : "no"],
      ["KL estimate", `${fmt(r.kl_estimate)} ± ${fmt(r.kl_stderr)}`],
      ["partial run", r.partial ? "yes" : "no"],
    ]);
  } else {
    body = `<p class="hint">Compare the fitted law against simulated sample means.</p>`;
  }
  return `<div class="panel" data-role="diagnostics">
    <h3>Sampling check</h3>
    <div class="row">
      ${textField("samples", "diagnostics.n", d.n, 'size="8"')}
      ${actionButton(vm, "run-diagnostics", "Run", { disabled: d.running || vm.resource === null })}
    </div>
    ${body}
  </div>`;
}

export function renderDispersion(vm: ViewModel): string {
  const f = vm.forms.dispersion;
  const family = vm.resource?.snapshot.family;
  const familyLine = family
    ? `<p class="hint">Family ${escapeHtml(family.name)}${
        family.power === null ? "" : `, power ${fmt(family.power)}`
      }. Describe the sample mean of repeated draws at a reference scenario.</p>`
    : "";
  const knownBlock = f.useKnown
    ? `${textField("Known dispersion", "dispersion.phi", f.phi)}
       ${actionButton(vm, "set-known-dispersion", "Set known dispersion", {
         op: "set_known_dispersion",
       })}`
    : "";
  return `<section class="screen" data-screen="dispersion">
    <h2>Random component</h2>
    ${familyLine}
    <div class="panel">
      <div class="row">
        ${textField("Central value", "dispersion.mean0", f.mean0)}
        ${textField("Draws per sample mean", "dispersion.draws", f.draws)}
      </div>
      <div class="row">
        ${textField("Lower bound 1", "dispersion.lower1", f.lower1)}
        ${textField("Coverage 1", "dispersion.prob1", f.prob1)}
      </div>
      <div class="row">
        ${textField("Lower bound 2", "dispersion.lower2", f.lower2)}
        ${textField("Coverage 2", "dispersion.prob2", f.prob2)}
      </div>
      <label class="field check">
        <input type="checkbox" data-field="dispersion.useKnown" ${f.useKnown ? "checked" : ""}/>
        <span>dispersion is known</span>
      </label>
      ${knownBlock}
      <div class="row">
        ${actionButton(vm, "assess-dispersion", "Assess", { op: "assess_dispersion" })}
        ${actionButton(vm, "accept-dispersion", "Accept", { op: "accept_dispersion", source: "dispersion" })}
      </div>
      ${rejectionBlock(vm, "dispersion")}
    </div>
    ${dispersionPanel(vm)}
  </section>`;
}

// -- power parameter -----------------------------------------------------------------

export function renderPower(vm: ViewModel): string {
  const f = vm.forms.power;
  const knownBlock = f.useKnown
    ? `${textField("Known power", "power.power", f.power)}
       ${actionButton(vm, "set-known-power", "Set known power", {
         op: "set_known_power",
       })}`
    : "";
  return `<section class="screen" data-screen="power">
    <h2>Variance power</h2>
    <p class="hint">State the median of a fresh draw at the reference scenario when the
    sample mean sits at its central value.</p>
    <div class="panel">
      ${textField("Median draw", "power.zeroMedian", f.zeroMedian)}
      <label class="field check">
        <input type="checkbox" data-field="power.useKnown" ${f.useKnown ? "checked" : ""}/>
        <span>power is known</span>
      </label>
      ${knownBlock}
      <div class="row">
        ${actionButton(vm, "assess-power", "Assess", { op: "assess_power" })}
        ${actionButton(vm, "accept-power", "Accept", { op: "accept_power", source: "power" })}
      </div>
      ${rejectionBlock(vm, "power")}
    </div>
    ${feedbackDump(vm)}
  </section>`;
}

/** Generic key/value dump for feedback shapes without a dedicated layout. */
function feedbackDump(vm: ViewModel): string {
  const fb = vm.feedback;
  if (!fb || Object.keys(fb).length === 0) return "";
  const rows: [string, string][] = [];
  for (const [key, value] of Object.entries(fb)) {
    if (key === "phase" || typeof value === "object") continue;
    rows.push([key, typeof value === "number" ? fmt(value) : String(value)]);
  }
  if (rows.length === 0) return "";
  return `<div class="panel"><h3>Feedback</h3>${keyValueTable(rows)}</div>`;
}

// -- marginals -----------------------------------------------------------------------

function marginalPending(fb: MarginalFeedback): string {
  if (!fb.curve) return "";
  const bands =
    fb.stated === undefined
      ? []
      : [
          {
            lower: fb.stated.lower,
            upper: fb.stated.upper,
            label: `stated ${fmt(fb.stated.prob, 4)} interval`,
          },
        ];
  const chart = densityChart(fb.curve.grid, fb.curve.density, {
    xLabel: "scenario mean",
    markers: curveMarkers(fb.curve),
    bands,
  });
  const quantiles = Object.entries(fb.curve.quantiles)
    .map(([p, q]) => `<tr><td>${escapeHtml(p)}</td><td>${fmt(q)}</td></tr>`)
    .join("");
  return `<div class="panel" data-role="marginal-feedback">
    <h3>Implied marginal</h3>
    ${chart}
    <div class="columns">
      <div>${keyValueTable([
        ["location", fmt(fb.loc ?? null)],
        ["scale", fmt(fb.scale ?? null)],
        ["median", fmt(fb.curve.median)],
      ])}</div>
      <div>
        <h4>Quantiles</h4>
        <table class="data"><thead><tr><th>prob</th><th>value</th></tr></thead>
        <tbody>${quantiles}</tbody></table>
      </div>
    </div>
  </div>`;
}

function completedMarginals(vm: ViewModel): string {
  const bundles = Object.values(vm.panels.marginalCurves);
  const current = (vm.feedback as MarginalFeedback | null)?.scenario;
  const done = bundles.filter((b) => b.scenario !== current);
  if (done.length === 0) return "";
  const rows = done
    .map(
      (b) =>
        `<tr><td>${b.scenario}</td><td>${escapeHtml(b.description)}</td>` +
        `<td>${fmt(b.loc)}</td><td>${fmt(b.scale)}</td></tr>`,
    )
    .join("");
  return `<div class="panel">
    <h3>Assessed so far</h3>
    <table class="data"><thead><tr><th>#</th><th>scenario</th><th>location</th><th>scale</th></tr></thead>
    <tbody>${rows}</tbody></table>
  </div>`;
}

export function renderMarginals(vm: ViewModel): string {
  const fb = vm.feedback as MarginalFeedback | null;
  const f = vm.forms.marginal;
  const scenario = vm.resource?.phase.scenario;
  const intro =
    fb && fb.description !== undefined
      ? `<p class="hint">Scenario ${fb.scenario}: ${escapeHtml(fb.description)}
         (covariates ${fb.covariates.map((c) => fmt(c, 4)).join(", ")}).
         ${fmtInt(fb.remaining)} scenario(s) remaining.</p>`
      : "";
  return `<section class="screen" data-screen="marginals">
    <h2>Scenario marginal${scenario === undefined ? "" : ` ${scenario}`}</h2>
    ${intro}
    <div class="panel">
      <div class="row">
        ${textField("Lower", "marginal.lower", f.lower)}
        ${textField("Upper", "marginal.upper", f.upper)}
        ${textField("Coverage", "marginal.prob", f.prob)}
      </div>
      <div class="row">
        ${actionButton(vm, "assess-marginal", "Assess", { op: "assess_marginal" })}
        ${actionButton(vm, "accept-marginal", "Accept", { op: "accept_marginal", source: "marginals" })}
      </div>
      ${rejectionBlock(vm, "marginals")}
    </div>
    ${fb && fb.curve ? marginalPending(fb) : ""}
    ${completedMarginals(vm)}
  </section>`;
}

// -- vine ----------------------------------------------------------------------------

function proposalsTable(vm: ViewModel, proposals: ConditioningProposal[]): string {
  const rows = proposals
    .map((p, i) => {
      const use = canMutate(vm)
        ? `<button data-action="use-proposal" data-index="${i}">use</button>`
        : "";
      return `<tr>
        <td>${p.scenario}</td><td>${escapeHtml(p.side)}</td><td>${fmt(p.prob, 4)}</td>
        <td>${escapeHtml(p.mode)}</td><td>${fmt(p.eta, 4)}</td><td>${fmt(p.mean, 4)}</td>
        <td>${use}</td>
      </tr>`;
    })
    .join("");
  return `<table class="data" data-role="proposals">
    <thead><tr><th>scenario</th><th>side</th><th>prob</th><th>mode</th>
    <th>conditioning value</th><th>mean</th><th></th></tr></thead>
    <tbody>${rows}</tbody></table>`;
}

function vineChoosing(vm: ViewModel, fb: VineAwaitingFeedback): string {
  const f = vm.forms.conditioning;
  const level = vm.resource?.phase.level;
  return `<div class="panel">
    <h3>Open level${level === null || level === undefined ? "" : ` ${level}`}: pick a conditioning value</h3>
    <p class="hint">Suppose the first scenario's value landed in a tail. Pick which tail and
    how far out; the proposals below are ready-made choices.</p>
    ${proposalsTable(vm, fb.proposals)}
    <div class="row">
      ${textField("Tail probability", "conditioning.prob", f.prob)}
      ${selectField("Side", "conditioning.side", f.side, ["upper", "lower"])}
      ${selectField("Scale", "conditioning.mode", f.mode, ["elicited", "unit"])}
      ${actionButton(vm, "choose-conditioning", "Condition", {
        op: "choose_conditioning",
      })}
    </div>
    ${rejectionBlock(vm, "conditioning")}
  </div>`;
}

function vinePreviewBlock(fb: VineOpenFeedback): string {
  if (!fb.preview) return "";
  const p = fb.preview;
  const chart = fb.curve
    ? densityChart(fb.curve.grid, fb.curve.density, {
        xLabel: "conditional scenario mean",
        markers: curveMarkers(fb.curve),
      })
    : "";
  return `<div class="panel" data-role="conditional-preview">
    <h3>Preview</h3>
    ${chart}
    ${keyValueTable([
      ["conditional median", fmt(p.median)],
      ["partial correlation", fmt(p.partial_corr)],
      ["scale entry", fmt(p.scale_entry)],
      ["conditional variance", fmt(p.conditional_variance)],
      ["previous conditional variance", fmt(p.previous_conditional_variance)],
      ["feasible range", `[${fmt(p.feasible[0])}, ${fmt(p.feasible[1])}]`],
    ])}
  </div>`;
}

function vineOpen(vm: ViewModel, fb: VineOpenFeedback): string {
  const active = vm.resource?.phase.cell;
  const medians = vm.resource?.snapshot.vine?.medians ?? {};
  const cellRows = Object.entries(fb.cells)
    .map(([key, info]) => {
      const cell = Number(key);
      const state =
        active !== null && active !== undefined && cell < active
          ? fmt(medians[`${fb.level}:${key}`] ?? null)
          : cell === active
            ? "active"
            : "pending";
      return `<tr${cell === active ? ' class="active"' : ""}>
        <td>${key}</td><td>${escapeHtml(info.description)}</td>
        <td data-role="cell-bounds">[${fmt(info.bounds[0])}, ${fmt(info.bounds[1])}]</td>
        <td>${escapeHtml(state)}</td>
      </tr>`;
    })
    .join("");
  const bounds = activeCellBounds(vm);
  let control = "";
  if (bounds !== null) {
    const raw = Number(vm.forms.vine.median);
    const midpoint = bounds.lo + (bounds.hi - bounds.lo) / 2;
    const value = Number.isFinite(raw) ? clampToBounds(raw, bounds.lo, bounds.hi) : midpoint;
    const step = (bounds.hi - bounds.lo) / 200;
    control = `<div class="row">
      <label class="field grow">
        <span>Conditional median for cell ${bounds.cell}
          <em data-role="slider-range">[${fmt(bounds.lo)}, ${fmt(bounds.hi)}]</em></span>
        <input type="range" data-field="vine.median" data-role="median-slider"
          min="${escapeAttr(String(bounds.lo))}" max="${escapeAttr(String(bounds.hi))}"
          step="${escapeAttr(String(step))}" value="${escapeAttr(String(value))}"/>
      </label>
      ${textField("Value", "vine.median", vm.forms.vine.median, 'size="12" data-role="median-value"')}
      ${actionButton(vm, "assess-conditional", "Assess", {
        op: "assess_conditional",
      })}
      ${actionButton(vm, "accept-conditional", "Accept", {
        op: "accept_conditional",
        source: "conditionals",
      })}
    </div>`;
  }
  return `<div class="panel">
    <h3>Level ${fb.level}, conditioning value ${fmt(fb.conditioning_eta)}</h3>
    <table class="data"><thead><tr><th>cell</th><th>scenario</th><th>feasible bounds</th>
    <th>median</th></tr></thead><tbody>${cellRows}</tbody></table>
    ${control}
    ${rejectionBlock(vm, "conditionals")}
  </div>
  ${vinePreviewBlock(fb)}`;
}

export function renderVine(vm: ViewModel): string {
  const fb = vm.feedback;
  let body = "";
  if (fb && "proposals" in fb) {
    body = vineChoosing(vm, fb as VineAwaitingFeedback);
  } else if (fb && "cells" in fb) {
    body = vineOpen(vm, fb as VineOpenFeedback);
  }
  const earlyStop = opLegal(vm, "truncate") ? truncatePanel(vm, "Stop early") : "";
  return `<section class="screen" data-screen="vine">
    <h2>Dependence</h2>
    ${body}
    ${earlyStop}
  </section>`;
}

// -- review and conclusion -------------------------------------------------------------

function divergencePanel(vm: ViewModel, rows: DivergenceRow[]): string {
  const chosen = vm.resource?.snapshot.truncation ?? null;
  const chart = divergenceChart(rows, { chosenLevel: chosen });
  const table = rows
    .map(
      (r) => `<tr${r.above_threshold ? ' class="above"' : ""}>
        <td>${r.level}</td><td>${fmt(r.divergence)}</td>
        <td>${r.above_threshold ? "yes" : "no"}</td></tr>`,
    )
    .join("");
  return `<div class="panel" data-role="divergence">
    <h3>Divergence by level</h3>
    ${chart}
    <table class="data"><thead><tr><th>level</th><th>divergence</th><th>above threshold</th></tr></thead>
    <tbody>${table}</tbody></table>
  </div>`;
}

function truncatePanel(vm: ViewModel, title: string): string {
  const ft = vm.forms.truncate;
  return `<div class="panel">
    <h3>${escapeHtml(title)}</h3>
    <div class="row">
      ${textField("Keep levels up to", "truncate.level", ft.level, 'size="6"')}
      ${actionButton(vm, "truncate", "Truncate", { op: "truncate" })}
    </div>
    ${rejectionBlock(vm, "truncate")}
  </div>`;
}

export function renderReview(vm: ViewModel): string {
  const rows = vm.panels.divergence ?? [];
  const truncation = vm.resource?.snapshot.truncation ?? null;
  const fi = vm.forms.induce;
  return `<section class="screen" data-screen="review">
    <h2>Dependence review</h2>
    <p class="hint">Completed level ${fmtInt(vm.panels.completedLevel)}.
      ${truncation === null ? "No truncation chosen." : `Truncated at level ${fmtInt(truncation)}.`}</p>
    ${rows.length > 0 ? divergencePanel(vm, rows) : ""}
    ${truncatePanel(vm, "Truncate")}
    <div class="panel">
      <h3>Induce the coefficient prior</h3>
      <div class="row">
        ${textField("Target family (optional)", "induce.family", fi.family)}
        ${textField("Target power (optional)", "induce.power", fi.power)}
        ${textField("Target dispersion (optional)", "induce.phi", fi.phi)}
      </div>
      ${actionButton(vm, "induce", "Induce prior", { op: "induce" })}
      ${rejectionBlock(vm, "induce")}
    </div>
  </section>`;
}

function priorPanel(prior: PriorSummary): string {
  const header = prior.names.map((n) => `<th>${escapeHtml(n)}</th>`).join("");
  const locRow = prior.coef_loc.map((v) => `<td>${fmt(v)}</td>`).join("");
  const scaleRows = prior.coef_scale
    .map(
      (row, i) =>
        `<tr><th>${escapeHtml(prior.names[i] ?? String(i))}</th>` +
        row.map((v) => `<td>${fmt(v)}</td>`).join("") +
        `</tr>`,
    )
    .join("");
  return `<div class="panel" data-role="prior">
    <h3>Coefficient prior</h3>
    ${keyValueTable([
      ["family", prior.family],
      ["degrees of freedom", fmt(prior.dof)],
      ["rate", fmt(prior.rate)],
      ["dispersion", prior.phi === null ? "free" : fmt(prior.phi)],
      ["dispersion ratio", fmt(prior.dispersion_ratio)],
      ["truncation level", prior.truncation === null ? "none" : fmtInt(prior.truncation)],
    ])}
    <h4>Location</h4>
    <div class="scroll"><table class="data"><thead><tr>${header}</tr></thead>
    <tbody><tr>${locRow}</tr></tbody></table></div>
    <h4>Scale matrix</h4>
    <div class="scroll"><table class="data"><thead><tr><th></th>${header}</tr></thead>
    <tbody>${scaleRows}</tbody></table></div>
  </div>`;
}

export function renderConcluded(vm: ViewModel): string {
  const prior = vm.panels.prior ?? vm.resource?.snapshot.prior ?? null;
  const rows = vm.panels.divergence;
  return `<section class="screen" data-screen="concluded">
    <h2>Concluded</h2>
    ${prior ? priorPanel(prior) : `<p class="hint">No prior recorded.</p>`}
    ${rows && rows.length > 0 ? divergencePanel(vm, rows) : ""}
  </section>`;
}

// -- side panel -----------------------------------------------------------------------

function medianHeatmap(resource: SessionResource): string {
  const vine = resource.snapshot.vine;
  if (!vine || Object.keys(vine.medians).length === 0) return "";
  const n = vine.n;
  const cells: HeatmapCell[][] = [];
  const rowLabels: string[] = [];
  for (let level = 1; level < n; level += 1) {
    const row: HeatmapCell[] = [];
    for (let cell = 1; cell < n; cell += 1) {
      const value = vine.medians[`${level}:${cell}`];
      row.push({ value: value === undefined ? null : value });
    }
    cells.push(row);
    rowLabels.push(`L${level}`);
  }
  const colLabels = Array.from({ length: n - 1 }, (_, i) => `c${i + 1}`);
  return `<h4>Conditional medians</h4>
    <div data-role="median-grid">${heatmap(cells, { rowLabels, colLabels, digits: 3 })}</div>`;
}

function partialHeatmap(resource: SessionResource): string {
  const vine = resource.snapshot.vine;
  if (!vine) return "";
  const any = vine.partials.some((row) => row.some((v) => v !== null));
  if (!any) return "";
  const labels = vine.partials.map((_, i) => `s${i}`);
  const cells: HeatmapCell[][] = vine.partials.map((row) =>
    row.map((v) => ({ value: v })),
  );
  return `<h4>Partial correlations</h4>
    <div data-role="partial-grid">${heatmap(cells, {
      rowLabels: labels,
      colLabels: labels,
      domain: [-1, 1],
      diverging: true,
      digits: 2,
    })}</div>`;
}

function settingsBlock(vm: ViewModel): string {
  return `<div class="panel">
    <h4>Feedback settings</h4>
    ${textField("Grid size", "settings.gridSize", vm.settings.gridSize, 'size="6"')}
    ${textField("Quantile probs (csv)", "settings.probsCsv", vm.settings.probsCsv, 'size="14"')}
    ${actionButton(vm, "apply-settings", "Refresh feedback", { disabled: vm.resource === null })}
  </div>`;
}

export function renderSide(vm: ViewModel): string {
  const resource = vm.resource;
  if (resource === null) return "";
  const transcript =
    vm.transcriptUrl === null
      ? ""
      : `<p><a data-role="transcript-link" href="${escapeAttr(vm.transcriptUrl)}" download>Download transcript</a></p>`;
  return `<aside class="side">
    <div class="panel">
      <h4>Session</h4>
      ${keyValueTable([
        ["id", resource.id],
        ["phase", resource.phase.name],
        ["events", fmtInt(resource.events)],
      ])}
      <p class="hint">legal: ${resource.legal_operations.map(escapeHtml).join(", ") || "none"}</p>
      ${transcript}
    </div>
    <div class="panel" data-role="vine-progress">
      <h4>Vine progress</h4>
      ${medianHeatmap(resource) || `<p class="hint">No conditional medians yet.</p>`}
      ${partialHeatmap(resource)}
    </div>
    ${diagnosticsPanel(vm)}
    ${settingsBlock(vm)}
  </aside>`;
}

// -- top level ------------------------------------------------------------------------

function bannerBlock(vm: ViewModel): string {
  if (vm.banner === null) return "";
  return `<div class="banner" data-role="banner">
    <span>${escapeHtml(vm.banner.message)}</span>
    <button data-action="retry">Retry</button>
    <button data-action="dismiss-banner">Dismiss</button>
  </div>`;
}

export function renderApp(vm: ViewModel): string {
  const screen = screenFor(vm);
  let body: string;
  switch (screen) {
    case "setup":
      body = renderSetup(vm);
      break;
    case "dispersion":
      body = renderDispersion(vm);
      break;
    case "power":
      body = renderPower(vm);
      break;
    case "marginals":
      body = renderMarginals(vm);
      break;
    case "vine":
      body = renderVine(vm);
      break;
    case "review":
      body = renderReview(vm);
      break;
    case "concluded":
      body = renderConcluded(vm);
      break;
  }
  const demoBadge = vm.demo
    ? `<span class="badge" data-role="demo-badge">demo (read-only)</span>`
    : "";
  const progress =
    vm.demoProgress === null
      ? ""
      : `<span class="hint" data-role="demo-progress">${escapeHtml(vm.demoProgress)}</span>`;
  const busy = vm.busy ? `<span class="badge busy" data-role="busy">working…</span>` : "";
  const notice =
    vm.notice === null ? "" : `<div class="notice" data-role="notice">${escapeHtml(vm.notice)}</div>`;
  return `<div class="console${vm.busy ? " is-busy" : ""}">
    <header>
      <h1>Prior elicitation console</h1>
      ${demoBadge}${busy}${progress}
    </header>
    ${bannerBlock(vm)}
    ${notice}
    ${schemaIssuesBlock(vm)}
    <main class="layout">
      ${body}
      ${renderSide(vm)}
    </main>
  </div>`;
}
