/**
 * Typed client for the elicitation service's /v1 JSON API.
 *
 * The console talks to the service exclusively through this module. All
 * statistical quantities shown anywhere in the UI come back from these
 * calls; nothing is recomputed on the client.
 */

export interface FamilyChoice {
  name: string;
  power: number | null;
}

export interface ScenarioTable {
  covariates: number[][];
  covariate_names: string[];
  link: string;
  families: FamilyChoice[];
  descriptions: string[];
  known_phi: number | null;
}

export interface PhaseInfo {
  name: string;
  scenario?: number;
  level?: number | null;
  cell?: number | null;
}

export interface DispersionState {
  dof: number;
  rate: number;
  phi: number | null;
  mean_scale: number;
  mean0: number;
  draws: number;
  lower1: number | null;
  prob1: number | null;
  lower2: number | null;
  prob2: number | null;
}

export interface VineSnapshot {
  n: number;
  loc: number[];
  scale: number[][];
  partials: (number | null)[][];
  cond_eta: (number | null)[];
  completed_level: number;
  active_level: number | null;
  medians: Record<string, number>;
}

export interface PriorSummary {
  names: string[];
  coef_loc: number[];
  coef_scale: number[][];
  dof: number;
  rate: number;
  phi: number | null;
  dispersion_ratio: number;
  projector: number[][];
  family: string;
  truncation: number | null;
}

export interface Snapshot {
  phase: PhaseInfo;
  family: FamilyChoice;
  dispersion: DispersionState | null;
  dispersion_partial: Record<string, number | null> | null;
  truncation: number | null;
  prior: PriorSummary | null;
  vine?: VineSnapshot | null;
  power?: Record<string, number | null> | null;
  [key: string]: unknown;
}

export interface SessionResource {
  id: string;
  schema_version: number;
  phase: PhaseInfo;
  events: number;
  legal_operations: string[];
  snapshot: Snapshot;
}

export interface EventRecord {
  seq: number;
  timestamp: number;
  phase: PhaseInfo;
  op: string;
  inputs: Record<string, unknown>;
  revision: boolean;
  deltas: Record<string, unknown>;
}

export interface IntervalRow {
  prob: number;
  lower: number;
  upper: number;
}

export interface CurvePayload {
  median: number;
  quantiles: Record<string, number>;
  grid: number[];
  density: number[];
  cdf: number[];
}

export interface DispersionFeedback {
  phase: PhaseInfo;
  mean0: number;
  draws: number;
  dof: number;
  rate: number;
  phi: number | null;
  mean_scale: number;
  collapsed: boolean;
  implied: { lower1: number; lower2: number };
  intervals: IntervalRow[];
  grid: number[];
  density: number[];
}

export interface PowerFeedback {
  phase: PhaseInfo;
  dof: number;
  draws: number;
  mean0: number;
  mean_scale: number;
  median_bounds: [number, number];
  [key: string]: unknown;
}

export interface MarginalFeedback {
  phase: PhaseInfo;
  scenario: number;
  description: string;
  covariates: number[];
  remaining: number;
  stated?: { lower: number; upper: number; prob: number };
  loc?: number;
  scale?: number;
  curve?: CurvePayload;
}

export interface ConditioningProposal {
  level: number;
  scenario: number;
  eta: number;
  mean: number;
  conditional_eta_location: number;
  mode: "elicited" | "unit";
  side: "upper" | "lower";
  prob: number;
}

export interface VineAwaitingFeedback {
  phase: PhaseInfo;
  proposals: ConditioningProposal[];
}

export interface VineCellInfo {
  bounds: [number, number];
  description: string;
}

export interface VinePreview {
  level: number;
  scenario: number;
  median: number;
  scale_entry: number;
  partial_corr: number;
  conditional_variance: number;
  previous_conditional_variance: number;
  feasible: [number, number];
}

export interface VineOpenFeedback {
  phase: PhaseInfo;
  level: number;
  conditioning_eta: number;
  cells: Record<string, VineCellInfo>;
  preview?: VinePreview;
  curve?: CurvePayload;
}

export interface DivergenceRow {
  level: number;
  divergence: number;
  threshold: number;
  above_threshold: boolean;
}

export interface DivergenceFeedback {
  phase: PhaseInfo;
  completed_level: number;
  divergence_series: DivergenceRow[];
}

export interface ConcludedFeedback {
  phase: PhaseInfo;
  prior: PriorSummary;
}

export type Feedback =
  | Record<string, never>
  | DispersionFeedback
  | PowerFeedback
  | MarginalFeedback
  | VineAwaitingFeedback
  | VineOpenFeedback
  | DivergenceFeedback
  | ConcludedFeedback;

export interface MutationReply {
  event: EventRecord;
  phase: PhaseInfo;
  legal_operations: string[];
  feedback: Feedback;
}

export interface DiscrepancyReport {
  family: string;
  mean0: number;
  draws: number;
  n: number;
  kolmogorov: number;
  dkw_epsilon: number;
  within_band: boolean;
  kl_estimate: number;
  kl_stderr: number;
  partial: boolean;
}

export type MutationEndpoint =
  | "dispersion"
  | "power"
  | "marginals"
  | "conditioning"
  | "conditionals"
  | "truncate"
  | "induce";

export interface CreateSessionBody {
  scenarios: ScenarioTable;
  seed: number;
  alpha?: number;
  family?: { name: string; power?: number | null } | null;
  session_id?: string | null;
}

/** Non-2xx reply, with the parsed error payload attached. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: unknown,
  ) {
    super(describeErrorPayload(status, payload));
    this.name = "ApiError";
  }

  get admissible(): { lo: number; hi: number } | null {
    const p = this.payload as { admissible?: { lo: number; hi: number } } | null;
    if (p && typeof p === "object" && p.admissible && typeof p.admissible.lo === "number") {
      return p.admissible;
    }
    return null;
  }

  get errorType(): string | null {
    const p = this.payload as { type?: string } | null;
    return p && typeof p === "object" && typeof p.type === "string" ? p.type : null;
  }
}

function describeErrorPayload(status: number, payload: unknown): string {
  if (payload && typeof payload === "object") {
    const body = payload as Record<string, unknown>;
    if (typeof body.error === "string") return body.error;
    const detail = body.detail;
    if (typeof detail === "string") return detail;
    if (detail && typeof detail === "object" && !Array.isArray(detail)) {
      const inner = (detail as Record<string, unknown>).error;
      if (typeof inner === "string") return inner;
    }
    if (Array.isArray(detail) && detail.length > 0) {
      const first = detail[0] as Record<string, unknown>;
      if (typeof first.msg === "string") return first.msg;
    }
  }
  return `request failed with status ${status}`;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface FeedbackOptions {
  gridSize?: number;
  probs?: string;
}

export interface DiagnosticsOptions {
  n?: number;
  mean0?: number;
  draws?: number;
  stream?: number;
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly base: string,
    readonly token: string | null = null,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private headers(json: boolean): Record<string, string> {
    const out: Record<string, string> = {};
    if (json) out["Content-Type"] = "application/json";
    if (this.token !== null) out["Authorization"] = `Bearer ${this.token}`;
    return out;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: this.headers(body !== undefined) };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    const text = await response.text();
    let payload: unknown = null;
    if (text !== "") {
      try {
        payload = JSON.parse(text);
      } catch {
        payload = text;
      }
    }
    if (!response.ok) throw new ApiError(response.status, payload);
    return payload as T;
  }

  createSession(body: CreateSessionBody): Promise<SessionResource> {
    return this.request("POST", "/v1/sessions", body);
  }

  getSession(id: string): Promise<SessionResource> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(id)}`);
  }

  listSessions(): Promise<{ sessions: SessionResource[] }> {
    return this.request("GET", "/v1/sessions");
  }

  mutate(
    id: string,
    endpoint: MutationEndpoint,
    body: Record<string, unknown>,
  ): Promise<MutationReply> {
    return this.request("POST", `/v1/sessions/${encodeURIComponent(id)}/${endpoint}`, body);
  }

  feedback(id: string, options: FeedbackOptions = {}): Promise<Feedback> {
    const params = new URLSearchParams();
    if (options.gridSize !== undefined) params.set("grid_size", String(options.gridSize));
    if (options.probs !== undefined && options.probs !== "") params.set("probs", options.probs);
    const query = params.toString();
    const suffix = query === "" ? "" : `?${query}`;
    return this.request("GET", `/v1/sessions/${encodeURIComponent(id)}/feedback${suffix}`);
  }

  diagnostics(id: string, options: DiagnosticsOptions = {}): Promise<DiscrepancyReport> {
    const params = new URLSearchParams();
    if (options.n !== undefined) params.set("n", String(options.n));
    if (options.mean0 !== undefined) params.set("mean0", String(options.mean0));
    if (options.draws !== undefined) params.set("draws", String(options.draws));
    if (options.stream !== undefined) params.set("stream", String(options.stream));
    const query = params.toString();
    const suffix = query === "" ? "" : `?${query}`;
    return this.request("GET", `/v1/sessions/${encodeURIComponent(id)}/diagnostics${suffix}`);
  }

  transcriptUrl(id: string): string {
    return `${this.base}/v1/sessions/${encodeURIComponent(id)}/transcript`;
  }

  async transcript(id: string): Promise<string> {
    const response = await this.fetchImpl(this.transcriptUrl(id), {
      headers: this.headers(false),
    });
    const text = await response.text();
    if (!response.ok) throw new ApiError(response.status, text);
    return text;
  }
}
