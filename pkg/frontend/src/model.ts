// View model for the console. It mirrors the server's session resource and
// keeps the raw text of every form plus the most recent feedback bundles so
// a screen can be re-rendered from this object alone.

import type {
  CurvePayload,
  DispersionFeedback,
  DiscrepancyReport,
  DivergenceRow,
  Feedback,
  MutationReply,
  PriorSummary,
  SessionResource,
} from "./api.js";

export interface SetupForm {
  scenariosJson: string;
  seed: string;
  alpha: string;
  sessionId: string;
  familyName: string;
  familyPower: string;
}

export interface DispersionForm {
  mean0: string;
  draws: string;
  lower1: string;
  prob1: string;
  lower2: string;
  prob2: string;
  phi: string;
  useKnown: boolean;
}

export interface PowerForm {
  zeroMedian: string;
  power: string;
  useKnown: boolean;
}

export interface MarginalForm {
  lower: string;
  upper: string;
  prob: string;
}

export interface ConditioningForm {
  prob: string;
  side: "upper" | "lower";
  mode: "elicited" | "unit";
}

export interface VineForm {
  median: string;
  cell: number | null;
}

export interface TruncateForm {
  level: string;
}

export interface InduceForm {
  family: string;
  phi: string;
  power: string;
}

export interface Forms {
  setup: SetupForm;
  dispersion: DispersionForm;
  power: PowerForm;
  marginal: MarginalForm;
  conditioning: ConditioningForm;
  vine: VineForm;
  truncate: TruncateForm;
  induce: InduceForm;
}

export interface Rejection {
  source: string;
  message: string;
  admissible: { lo: number; hi: number } | null;
}

export interface Banner {
  message: string;
}

export interface MarginalCurveBundle {
  scenario: number;
  description: string;
  curve: CurvePayload;
  stated: { lower: number; upper: number; prob: number } | null;
  loc: number | null;
  scale: number | null;
}

/** Server payload bundles retained across phase changes so later screens can
 *  still show them. Every number inside arrived from the API. */
export interface Panels {
  dispersion: DispersionFeedback | null;
  marginalCurves: Record<number, MarginalCurveBundle>;
  divergence: DivergenceRow[] | null;
  completedLevel: number | null;
  prior: PriorSummary | null;
}

export interface DiagnosticsPanel {
  report: DiscrepancyReport | null;
  running: boolean;
  error: string | null;
  n: string;
}

export interface Settings {
  gridSize: string;
  probsCsv: string;
}

export interface ViewModel {
  resource: SessionResource | null;
  transcriptUrl: string | null;
  feedback: Feedback | null;
  forms: Forms;
  panels: Panels;
  diagnostics: DiagnosticsPanel;
  settings: Settings;
  rejection: Rejection | null;
  banner: Banner | null;
  notice: string | null;
  schemaIssues: string[];
  busy: boolean;
  demo: boolean;
  demoProgress: string | null;
}

export function defaultForms(): Forms {
  return {
    setup: {
      scenariosJson: "",
      seed: "1",
      alpha: "0.05",
      sessionId: "",
      familyName: "",
      familyPower: "",
    },
    dispersion: {
      mean0: "",
      draws: "25",
      lower1: "",
      prob1: "0.3333333333333333",
      lower2: "",
      prob2: "0.9",
      phi: "",
      useKnown: false,
    },
    power: { zeroMedian: "", power: "", useKnown: false },
    marginal: { lower: "", upper: "", prob: "0.8" },
    conditioning: { prob: "0.8", side: "upper", mode: "elicited" },
    vine: { median: "", cell: null },
    truncate: { level: "" },
    induce: { family: "", phi: "", power: "" },
  };
}

export function initialViewModel(): ViewModel {
  return {
    resource: null,
    transcriptUrl: null,
    feedback: null,
    forms: defaultForms(),
    panels: {
      dispersion: null,
      marginalCurves: {},
      divergence: null,
      completedLevel: null,
      prior: null,
    },
    diagnostics: { report: null, running: false, error: null, n: "2000" },
    settings: { gridSize: "257", probsCsv: "" },
    rejection: null,
    banner: null,
    notice: null,
    schemaIssues: [],
    busy: false,
    demo: false,
    demoProgress: null,
  };
}

/** Starter scenario table inserted by the setup screen's example button. */
export function exampleScenariosJson(): string {
  const table = {
    covariates: [[1.0], [2.0], [3.0]],
    covariate_names: ["dose"],
    link: "logit",
    families: [{ name: "simplex", power: null }],
    descriptions: ["response at dose=1", "response at dose=2", "response at dose=3"],
    known_phi: null,
  };
  return JSON.stringify(table, null, 2);
}

export type Screen =
  | "setup"
  | "dispersion"
  | "power"
  | "marginals"
  | "vine"
  | "review"
  | "concluded";

export function screenFor(vm: ViewModel): Screen {
  if (vm.resource === null) return "setup";
  switch (vm.resource.phase.name) {
    case "setup":
    case "random_component":
      return "dispersion";
    case "power_parameter":
      return "power";
    case "marginals":
      return "marginals";
    case "vine_level":
      return "vine";
    case "dependence_complete":
    case "truncated":
      return "review";
    case "concluded":
      return "concluded";
    default:
      return "setup";
  }
}

function hasKey(feedback: Feedback, key: string): boolean {
  return typeof feedback === "object" && feedback !== null && key in feedback;
}

/** Fold a feedback payload into the view model, retaining the bundles later
 *  screens re-display. */
export function absorbFeedback(vm: ViewModel, feedback: Feedback): void {
  vm.feedback = feedback;
  if (hasKey(feedback, "grid") && hasKey(feedback, "implied")) {
    vm.panels.dispersion = feedback as DispersionFeedback;
  }
  if (hasKey(feedback, "curve") && hasKey(feedback, "scenario")) {
    const fb = feedback as {
      scenario: number;
      description: string;
      curve: CurvePayload;
      stated?: { lower: number; upper: number; prob: number };
      loc?: number;
      scale?: number;
    };
    vm.panels.marginalCurves[fb.scenario] = {
      scenario: fb.scenario,
      description: fb.description,
      curve: fb.curve,
      stated: fb.stated ?? null,
      loc: fb.loc ?? null,
      scale: fb.scale ?? null,
    };
  }
  if (hasKey(feedback, "divergence_series")) {
    const fb = feedback as { divergence_series: DivergenceRow[]; completed_level: number };
    vm.panels.divergence = fb.divergence_series;
    vm.panels.completedLevel = fb.completed_level;
  }
  if (hasKey(feedback, "prior")) {
    vm.panels.prior = (feedback as { prior: PriorSummary }).prior;
  }
}

export function absorbReply(vm: ViewModel, reply: MutationReply): void {
  vm.rejection = null;
  vm.schemaIssues = [];
  vm.notice = null;
  absorbFeedback(vm, reply.feedback);
}

/** Feasible bounds for the currently open vine cell, straight from the last
 *  feedback payload; null when no cell is open. */
export function activeCellBounds(vm: ViewModel): { cell: number; lo: number; hi: number } | null {
  const feedback = vm.feedback;
  if (!feedback || !hasKey(feedback, "cells")) return null;
  const cell = vm.resource?.phase.cell;
  if (cell === null || cell === undefined) return null;
  const info = (feedback as { cells: Record<string, { bounds: [number, number] }> }).cells[
    String(cell)
  ];
  if (!info) return null;
  return { cell, lo: info.bounds[0], hi: info.bounds[1] };
}

export function clampToBounds(value: number, lo: number, hi: number): number {
  return value < lo ? lo : value > hi ? hi : value;
}
