// Client-side mirror of the service's request schemas. The console refuses
// to send a mutation the server would reject on syntactic grounds (wrong
// type, missing field, unknown action); semantic verdicts such as feasible
// ranges stay server-side and come back as 422 payloads.

import type { MutationEndpoint } from "./api.js";

type Body = Record<string, unknown>;

const DISPERSION_ACTIONS = ["assess", "accept", "set_known"];
const POWER_ACTIONS = ["assess", "accept", "set_known"];
const ASSESS_ACCEPT = ["assess", "accept"];
const SIDES = ["upper", "lower"];
const MODES = ["elicited", "unit"];

function isFiniteNumber(value: unknown): value is number {
  return typeof value === "number" && Number.isFinite(value);
}

function isInteger(value: unknown): value is number {
  return isFiniteNumber(value) && Number.isInteger(value);
}

function checkOptionalNumber(body: Body, field: string, issues: string[]): void {
  const value = body[field];
  if (value !== undefined && value !== null && !isFiniteNumber(value)) {
    issues.push(`${field} must be a finite number`);
  }
}

function checkOptionalInteger(body: Body, field: string, issues: string[]): void {
  const value = body[field];
  if (value !== undefined && value !== null && !isInteger(value)) {
    issues.push(`${field} must be an integer`);
  }
}

function checkRequiredNumber(body: Body, field: string, issues: string[]): void {
  if (!isFiniteNumber(body[field])) {
    issues.push(`${field} must be a finite number`);
  }
}

function checkAction(body: Body, allowed: string[], issues: string[]): string {
  const action = body.action === undefined ? "assess" : body.action;
  if (typeof action !== "string" || allowed.indexOf(action) === -1) {
    issues.push(`action must be one of ${allowed.join(", ")}`);
    return "";
  }
  return action;
}

function checkChoice(body: Body, field: string, allowed: string[], issues: string[]): void {
  const value = body[field];
  if (value === undefined || value === null) return;
  if (typeof value !== "string" || allowed.indexOf(value) === -1) {
    issues.push(`${field} must be one of ${allowed.join(", ")}`);
  }
}

export function checkCreateSession(body: Body): string[] {
  const issues: string[] = [];
  const scenarios = body.scenarios;
  if (scenarios === null || typeof scenarios !== "object" || Array.isArray(scenarios)) {
    issues.push("scenarios must be an object");
  }
  if (!isInteger(body.seed)) issues.push("seed must be an integer");
  checkOptionalNumber(body, "alpha", issues);
  const family = body.family;
  if (family !== undefined && family !== null) {
    if (typeof family !== "object" || typeof (family as Body).name !== "string") {
      issues.push("family must carry a name string");
    } else {
      checkOptionalNumber(family as Body, "power", issues);
    }
  }
  const sid = body.session_id;
  if (sid !== undefined && sid !== null) {
    if (typeof sid !== "string") issues.push("session_id must be a string");
    else if (sid.length > 80) issues.push("session_id is limited to 80 characters");
  }
  return issues;
}

export function checkMutation(endpoint: MutationEndpoint, body: Body): string[] {
  const issues: string[] = [];
  checkOptionalInteger(body, "event_id", issues);
  switch (endpoint) {
    case "dispersion": {
      const action = checkAction(body, DISPERSION_ACTIONS, issues);
      if (action === "assess") {
        checkRequiredNumber(body, "mean0", issues);
        checkRequiredNumber(body, "lower1", issues);
        checkRequiredNumber(body, "prob1", issues);
        checkRequiredNumber(body, "lower2", issues);
        checkRequiredNumber(body, "prob2", issues);
        if (!isInteger(body.draws)) issues.push("draws must be an integer");
      } else if (action === "set_known") {
        checkRequiredNumber(body, "phi", issues);
        checkOptionalNumber(body, "mean0", issues);
        checkOptionalInteger(body, "draws", issues);
      }
      break;
    }
    case "power": {
      const action = checkAction(body, POWER_ACTIONS, issues);
      if (action === "assess") {
        checkRequiredNumber(body, "zero_median", issues);
      } else if (action === "set_known") {
        checkRequiredNumber(body, "power", issues);
      }
      break;
    }
    case "marginals": {
      const action = checkAction(body, ASSESS_ACCEPT, issues);
      if (action === "assess") {
        if (!isInteger(body.index)) issues.push("index must be an integer");
        checkRequiredNumber(body, "lower", issues);
        checkRequiredNumber(body, "upper", issues);
        checkRequiredNumber(body, "prob", issues);
      }
      break;
    }
    case "conditioning": {
      checkRequiredNumber(body, "prob", issues);
      if (typeof body.side !== "string" || SIDES.indexOf(body.side) === -1) {
        issues.push("side must be upper or lower");
      }
      checkChoice(body, "mode", MODES, issues);
      break;
    }
    case "conditionals": {
      const action = checkAction(body, ASSESS_ACCEPT, issues);
      if (action === "assess") {
        if (!isInteger(body.cell)) issues.push("cell must be an integer");
        checkRequiredNumber(body, "median", issues);
      }
      break;
    }
    case "truncate": {
      if (!isInteger(body.level)) issues.push("level must be an integer");
      break;
    }
    case "induce": {
      const family = body.family;
      if (family !== undefined && family !== null && typeof family !== "string") {
        issues.push("family must be a string");
      }
      checkOptionalNumber(body, "power", issues);
      checkOptionalNumber(body, "phi", issues);
      const design = body.design;
      if (design !== undefined && design !== null) {
        issues.push(...checkDesign(design));
      }
      break;
    }
  }
  return issues;
}

function checkDesign(design: unknown): string[] {
  const issues: string[] = [];
  if (design === null || typeof design !== "object" || Array.isArray(design)) {
    return ["design must be an object with a matrix"];
  }
  const body = design as Body;
  const matrix = body.matrix;
  if (
    !Array.isArray(matrix) ||
    matrix.length === 0 ||
    !matrix.every(row => Array.isArray(row) && row.every(isFiniteNumber))
  ) {
    issues.push("design.matrix must be a non-empty list of numeric rows");
  }
  const names = body.names;
  if (names !== undefined && names !== null) {
    if (!Array.isArray(names) || !names.every(n => typeof n === "string")) {
      issues.push("design.names must be a list of strings");
    }
  }
  const offset = body.offset;
  if (offset !== undefined && offset !== null) {
    if (!Array.isArray(offset) || !offset.every(isFiniteNumber)) {
      issues.push("design.offset must be a list of numbers");
    }
  }
  return issues;
}

// Query parameter bounds for the feedback endpoint.
export function checkFeedbackParams(gridSize: number, probsCsv: string): string[] {
  const issues: string[] = [];
  if (!Number.isInteger(gridSize) || gridSize < 16 || gridSize > 4096) {
    issues.push("grid size must be an integer between 16 and 4096");
  }
  if (probsCsv.trim() !== "") {
    const parts = probsCsv.split(",");
    for (const part of parts) {
      const value = Number(part.trim());
      if (part.trim() === "" || !Number.isFinite(value)) {
        issues.push("feedback probs must be a comma-separated list of numbers");
        break;
      }
    }
  }
  return issues;
}
