// Transcript replay. A saved session transcript is newline-delimited JSON:
// a header line with the session inputs, then one line per event. Replaying
// pushes each event back through the public API, so the demo session is a
// real server-side session and every number on screen still comes from it.

import type { MutationEndpoint, ScenarioTable } from "./api.js";

export interface TranscriptHeader {
  schema: string;
  version: number;
  seed: number;
  alpha: number;
  family: { name: string; power: number | null } | null;
  scenarios: ScenarioTable;
}

export interface TranscriptEvent {
  seq: number;
  op: string;
  inputs: Record<string, unknown>;
}

export interface Transcript {
  header: TranscriptHeader;
  events: TranscriptEvent[];
}

export function parseTranscript(text: string): Transcript {
  const lines = text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line !== "");
  if (lines.length === 0) throw new Error("transcript is empty");
  const header = JSON.parse(lines[0]) as TranscriptHeader;
  if (typeof header.seed !== "number" || header.scenarios === undefined) {
    throw new Error("transcript header is missing seed or scenarios");
  }
  const events: TranscriptEvent[] = [];
  for (let i = 1; i < lines.length; i += 1) {
    const record = JSON.parse(lines[i]) as TranscriptEvent & { snapshot?: unknown };
    if (typeof record.op === "string") {
      events.push(record);
    } else if (record.snapshot !== undefined) {
      // closing checkpoint after the last event
      break;
    } else {
      throw new Error(`line ${i + 1} is neither an event nor the closing snapshot`);
    }
  }
  return { header, events };
}

interface EndpointCall {
  endpoint: MutationEndpoint;
  body: Record<string, unknown>;
}

const ACTION_ENDPOINTS: Record<string, { endpoint: MutationEndpoint; action: string }> = {
  assess_dispersion: { endpoint: "dispersion", action: "assess" },
  accept_dispersion: { endpoint: "dispersion", action: "accept" },
  set_known_dispersion: { endpoint: "dispersion", action: "set_known" },
  assess_power: { endpoint: "power", action: "assess" },
  accept_power: { endpoint: "power", action: "accept" },
  set_known_power: { endpoint: "power", action: "set_known" },
  assess_marginal: { endpoint: "marginals", action: "assess" },
  accept_marginal: { endpoint: "marginals", action: "accept" },
  assess_conditional: { endpoint: "conditionals", action: "assess" },
  accept_conditional: { endpoint: "conditionals", action: "accept" },
};

/** Map a transcript event to the API endpoint and request body that replays it. */
export function endpointFor(event: TranscriptEvent): EndpointCall {
  const inputs = event.inputs ?? {};
  const mapped = ACTION_ENDPOINTS[event.op];
  if (mapped !== undefined) {
    return { endpoint: mapped.endpoint, body: { action: mapped.action, ...inputs } };
  }
  switch (event.op) {
    case "choose_conditioning":
      return { endpoint: "conditioning", body: { ...inputs } };
    case "truncate":
      return { endpoint: "truncate", body: { ...inputs } };
    case "induce":
      return { endpoint: "induce", body: { ...inputs } };
    default:
      throw new Error(`transcript op ${event.op} has no endpoint`);
  }
}
