/**
 * Controller. Owns the view model, serializes every server call through a
 * queue (one in flight at a time, no optimistic state), and re-renders after
 * each settled call. Nothing is written to the view model on the way OUT to
 * the server; screens change only after the server has committed and the
 * session resource has been re-fetched.
 */

import {
  ApiClient,
  ApiError,
  type ConditioningProposal,
  type FeedbackOptions,
  type MutationEndpoint,
  type VineAwaitingFeedback,
} from "./api.js";
import { parseInteger, parseNumber } from "./format.js";
import {
  absorbFeedback,
  absorbReply,
  activeCellBounds,
  clampToBounds,
  exampleScenariosJson,
  initialViewModel,
  type ViewModel,
} from "./model.js";
import { renderApp } from "./render.js";
import { endpointFor, parseTranscript } from "./demo.js";
import { checkCreateSession, checkFeedbackParams, checkMutation } from "./schema.js";

function numberOrOmit(raw: string): number | undefined {
  const value = parseNumber(raw);
  return value === null ? undefined : value;
}

function integerOrOmit(raw: string): number | undefined {
  const value = parseInteger(raw);
  return value === null ? undefined : value;
}

function stripUndefined(body: Record<string, unknown>): Record<string, unknown> {
  const out: Record<string, unknown> = {};
  for (const [key, value] of Object.entries(body)) {
    if (value !== undefined) out[key] = value;
  }
  return out;
}

export class SessionConsole {
  readonly vm: ViewModel;
  private queue: Promise<void> = Promise.resolve();
  private lastAction: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {
    this.vm = initialViewModel();
    root.addEventListener("click", (event) => this.onClick(event));
    root.addEventListener("input", (event) => this.onInput(event));
    root.addEventListener("change", (event) => this.onChange(event));
    this.render();
  }

  /** Settles when every queued server call has finished. */
  idle(): Promise<void> {
    return this.queue;
  }

  private enqueue(task: () => Promise<void>): void {
    this.queue = this.queue.then(task).catch((err) => {
      this.vm.notice = String(err);
      this.render();
    });
  }

  // -- rendering ------------------------------------------------------------------

  render(): void {
    const doc = this.root.ownerDocument;
    const active = doc.activeElement as HTMLInputElement | null;
    const focusField = active?.getAttribute?.("data-field") ?? null;
    const focusRole = active?.getAttribute?.("data-role") ?? null;
    const selection =
      focusField !== null && typeof active?.selectionStart === "number"
        ? { start: active.selectionStart, end: active.selectionEnd ?? active.selectionStart }
        : null;
    this.root.innerHTML = renderApp(this.vm);
    if (focusField !== null) {
      const selector =
        focusRole !== null
          ? `[data-field="${focusField}"][data-role="${focusRole}"]`
          : `[data-field="${focusField}"]`;
      const next = this.root.querySelector<HTMLInputElement>(selector);
      if (next !== null) {
        next.focus();
        if (selection !== null && typeof next.setSelectionRange === "function") {
          try {
            next.setSelectionRange(selection.start, selection.end);
          } catch {
            // selection is cosmetic; some input types refuse it
          }
        }
      }
    }
  }

  // -- form state -----------------------------------------------------------------

  private onInput(event: Event): void {
    const el = event.target as HTMLInputElement;
    const field = el.getAttribute?.("data-field");
    if (!field) return;
    this.setField(field, el, false);
    if (el.type === "range" || el.type === "checkbox" || el.tagName === "SELECT") {
      this.render();
    }
  }

  private onChange(event: Event): void {
    const el = event.target as HTMLInputElement;
    const field = el.getAttribute?.("data-field");
    if (!field) return;
    this.setField(field, el, true);
    this.render();
  }

  /** Write one input's value into the form state; `settled` marks a change
   *  event, where the conditional-median box is clamped to the server bounds. */
  private setField(field: string, el: HTMLInputElement, settled: boolean): void {
    const forms = this.vm.forms;
    const value = el.type === "checkbox" ? el.checked : el.value;
    const [group, name] = field.split(".");
    if (group === "settings") {
      if (name === "gridSize") this.vm.settings.gridSize = String(value);
      if (name === "probsCsv") this.vm.settings.probsCsv = String(value);
      return;
    }
    if (group === "diagnostics") {
      if (name === "n") this.vm.diagnostics.n = String(value);
      return;
    }
    if (group === "vine" && name === "median") {
      let raw = String(value);
      const bounds = activeCellBounds(this.vm);
      if (bounds !== null && (settled || el.type === "range")) {
        const parsed = parseNumber(raw);
        if (parsed !== null) raw = String(clampToBounds(parsed, bounds.lo, bounds.hi));
      }
      forms.vine.median = raw;
      return;
    }
    const record = (forms as unknown as Record<string, Record<string, unknown>>)[group];
    if (record !== undefined && name in record) {
      record[name] = value;
    }
  }

  // -- actions --------------------------------------------------------------------

  private onClick(event: Event): void {
    const el = (event.target as HTMLElement).closest?.("[data-action]");
    if (!el) return;
    const action = el.getAttribute("data-action");
    if (!action) return;
    this.dispatch(action, el as HTMLElement);
  }

  dispatch(action: string, el: HTMLElement | null = null): void {
    switch (action) {
      case "insert-example":
        this.vm.forms.setup.scenariosJson = exampleScenariosJson();
        this.render();
        return;
      case "dismiss-banner":
        this.vm.banner = null;
        this.render();
        return;
      case "retry": {
        const again = this.lastAction;
        this.vm.banner = null;
        this.render();
        if (again !== null) this.dispatch(again);
        return;
      }
      case "use-proposal":
        this.useProposal(el);
        return;
      case "create-session":
        this.enqueue(() => this.createSession());
        return;
      case "run-diagnostics":
        this.enqueue(() => this.runDiagnostics());
        return;
      case "apply-settings":
        this.enqueue(() => this.applySettings());
        return;
      default:
        this.enqueue(() => this.mutateFor(action));
    }
  }

  private useProposal(el: HTMLElement | null): void {
    const index = Number(el?.getAttribute("data-index") ?? "");
    const fb = this.vm.feedback as VineAwaitingFeedback | null;
    const proposal: ConditioningProposal | undefined = fb?.proposals?.[index];
    if (proposal === undefined) return;
    this.vm.forms.conditioning = {
      prob: String(proposal.prob),
      side: proposal.side,
      mode: proposal.mode,
    };
    this.render();
  }

  // -- server calls ---------------------------------------------------------------

  private async createSession(): Promise<void> {
    if (this.vm.busy || this.vm.demo) return;
    const f = this.vm.forms.setup;
    let scenarios: unknown;
    try {
      scenarios = JSON.parse(f.scenariosJson);
    } catch (err) {
      this.vm.schemaIssues = [`scenario table is not valid JSON: ${String(err)}`];
      this.render();
      return;
    }
    const body = stripUndefined({
      scenarios,
      seed: integerOrOmit(f.seed),
      alpha: numberOrOmit(f.alpha),
      session_id: f.sessionId.trim() === "" ? undefined : f.sessionId.trim(),
      family:
        f.familyName.trim() === ""
          ? undefined
          : { name: f.familyName.trim(), power: numberOrOmit(f.familyPower) ?? null },
    });
    const issues = checkCreateSession(body);
    if (issues.length > 0) {
      this.vm.schemaIssues = issues;
      this.render();
      return;
    }
    this.vm.busy = true;
    this.vm.schemaIssues = [];
    this.render();
    try {
      const resource = await this.client.createSession(body as never);
      this.vm.resource = resource;
      this.vm.transcriptUrl = this.client.transcriptUrl(resource.id);
      this.vm.rejection = null;
      this.vm.notice = null;
      const feedback = await this.client.feedback(resource.id, this.feedbackOptions());
      absorbFeedback(this.vm, feedback);
    } catch (err) {
      this.absorbFailure(err, "create", "create-session");
    } finally {
      this.vm.busy = false;
      this.render();
    }
  }

  async loadSession(id: string): Promise<void> {
    this.vm.busy = true;
    this.render();
    try {
      const resource = await this.client.getSession(id);
      this.vm.resource = resource;
      this.vm.transcriptUrl = this.client.transcriptUrl(id);
      const feedback = await this.client.feedback(id, this.feedbackOptions());
      absorbFeedback(this.vm, feedback);
      this.syncPhaseForms(null);
    } catch (err) {
      this.absorbFailure(err, "load", null);
    } finally {
      this.vm.busy = false;
      this.render();
    }
  }

  private feedbackOptions(): FeedbackOptions {
    const options: FeedbackOptions = {};
    const grid = parseInteger(this.vm.settings.gridSize);
    if (grid !== null && grid !== 257) options.gridSize = grid;
    if (this.vm.settings.probsCsv.trim() !== "") options.probs = this.vm.settings.probsCsv.trim();
    return options;
  }

  private settingsCustomized(): boolean {
    const options = this.feedbackOptions();
    return options.gridSize !== undefined || options.probs !== undefined;
  }

  /** Build the request body for a mutation button. Returns null when the
   *  action is unknown or no session is open. */
  private bodyFor(action: string): { endpoint: MutationEndpoint; body: Record<string, unknown>; source: string } | null {
    const resource = this.vm.resource;
    if (resource === null) return null;
    const f = this.vm.forms;
    switch (action) {
      case "assess-dispersion":
        return {
          endpoint: "dispersion",
          source: "dispersion",
          body: stripUndefined({
            action: "assess",
            mean0: numberOrOmit(f.dispersion.mean0),
            draws: integerOrOmit(f.dispersion.draws),
            lower1: numberOrOmit(f.dispersion.lower1),
            prob1: numberOrOmit(f.dispersion.prob1),
            lower2: numberOrOmit(f.dispersion.lower2),
            prob2: numberOrOmit(f.dispersion.prob2),
          }),
        };
      case "accept-dispersion":
        return { endpoint: "dispersion", source: "dispersion", body: { action: "accept" } };
      case "set-known-dispersion":
        return {
          endpoint: "dispersion",
          source: "dispersion",
          body: stripUndefined({ action: "set_known", phi: numberOrOmit(f.dispersion.phi) }),
        };
      case "assess-power":
        return {
          endpoint: "power",
          source: "power",
          body: stripUndefined({ action: "assess", zero_median: numberOrOmit(f.power.zeroMedian) }),
        };
      case "accept-power":
        return { endpoint: "power", source: "power", body: { action: "accept" } };
      case "set-known-power":
        return {
          endpoint: "power",
          source: "power",
          body: stripUndefined({ action: "set_known", power: numberOrOmit(f.power.power) }),
        };
      case "assess-marginal":
        return {
          endpoint: "marginals",
          source: "marginals",
          body: stripUndefined({
            action: "assess",
            index: resource.phase.scenario,
            lower: numberOrOmit(f.marginal.lower),
            upper: numberOrOmit(f.marginal.upper),
            prob: numberOrOmit(f.marginal.prob),
          }),
        };
      case "accept-marginal":
        return {
          endpoint: "marginals",
          source: "marginals",
          body: stripUndefined({ action: "accept", index: resource.phase.scenario }),
        };
      case "choose-conditioning":
        return {
          endpoint: "conditioning",
          source: "conditioning",
          body: stripUndefined({
            prob: numberOrOmit(f.conditioning.prob),
            side: f.conditioning.side,
            mode: f.conditioning.mode,
          }),
        };
      case "assess-conditional": {
        const bounds = activeCellBounds(this.vm);
        let median = parseNumber(f.vine.median);
        if (bounds !== null) {
          if (median === null) median = bounds.lo + (bounds.hi - bounds.lo) / 2;
          median = clampToBounds(median, bounds.lo, bounds.hi);
        }
        return {
          endpoint: "conditionals",
          source: "conditionals",
          body: stripUndefined({
            action: "assess",
            cell: resource.phase.cell ?? undefined,
            median: median ?? undefined,
          }),
        };
      }
      case "accept-conditional":
        return {
          endpoint: "conditionals",
          source: "conditionals",
          body: stripUndefined({ action: "accept", cell: resource.phase.cell ?? undefined }),
        };
      case "truncate":
        return {
          endpoint: "truncate",
          source: "truncate",
          body: stripUndefined({ level: integerOrOmit(f.truncate.level) }),
        };
      case "induce":
        return {
          endpoint: "induce",
          source: "induce",
          body: stripUndefined({
            family: f.induce.family.trim() === "" ? undefined : f.induce.family.trim(),
            power: numberOrOmit(f.induce.power),
            phi: numberOrOmit(f.induce.phi),
          }),
        };
      default:
        return null;
    }
  }

  private async mutateFor(action: string): Promise<void> {
    if (this.vm.busy || this.vm.demo) return;
    const call = this.bodyFor(action);
    if (call === null) return;
    const resource = this.vm.resource;
    if (resource === null) return;
    const body = { ...call.body, event_id: resource.events };
    const issues = checkMutation(call.endpoint, body);
    if (issues.length > 0) {
      this.vm.schemaIssues = issues;
      this.render();
      return;
    }
    this.vm.busy = true;
    this.vm.schemaIssues = [];
    this.render();
    try {
      const reply = await this.client.mutate(resource.id, call.endpoint, body);
      absorbReply(this.vm, reply);
      await this.refreshResource(resource);
      if (this.settingsCustomized()) {
        absorbFeedback(this.vm, await this.client.feedback(resource.id, this.feedbackOptions()));
      }
    } catch (err) {
      await this.absorbFailure(err, call.source, action);
    } finally {
      this.vm.busy = false;
      this.render();
    }
  }

  private async refreshResource(previous: { phase: { scenario?: number; cell?: number | null } } | null): Promise<void> {
    const id = this.vm.resource?.id;
    if (id === undefined) return;
    this.vm.resource = await this.client.getSession(id);
    this.syncPhaseForms(previous);
  }

  /** Reset per-step form state when the server moved to a new scenario or cell. */
  private syncPhaseForms(previous: { phase: { scenario?: number; cell?: number | null } } | null): void {
    const phase = this.vm.resource?.phase;
    if (phase === undefined) return;
    if (phase.scenario !== undefined && phase.scenario !== previous?.phase.scenario) {
      this.vm.forms.marginal = { ...this.vm.forms.marginal, lower: "", upper: "" };
    }
    const cell = phase.cell ?? null;
    if (cell !== (this.vm.forms.vine.cell ?? null)) {
      this.vm.forms.vine = { median: "", cell };
    }
  }

  private async absorbFailure(err: unknown, source: string, action: string | null): Promise<void> {
    if (err instanceof ApiError) {
      if (err.status === 422) {
        this.vm.rejection = { source, message: err.message, admissible: err.admissible };
        return;
      }
      if (err.status === 409) {
        const payload = err.payload as { detail?: { error?: string } } | null;
        if (payload && typeof payload === "object" && payload.detail?.error?.includes("event id")) {
          this.vm.notice = "another client advanced this session; reloaded the latest state";
          await this.refreshResource(this.vm.resource);
          return;
        }
      }
      this.vm.notice = err.message;
      return;
    }
    // fetch rejects with a TypeError when the service is unreachable; keep the
    // form state and offer a retry
    this.lastAction = action;
    this.vm.banner = { message: `could not reach the service: ${String(err)}` };
  }

  private async runDiagnostics(): Promise<void> {
    const resource = this.vm.resource;
    if (resource === null || this.vm.diagnostics.running) return;
    const n = parseInteger(this.vm.diagnostics.n);
    this.vm.diagnostics.running = true;
    this.vm.diagnostics.error = null;
    this.render();
    try {
      this.vm.diagnostics.report = await this.client.diagnostics(
        resource.id,
        n === null ? {} : { n },
      );
    } catch (err) {
      this.vm.diagnostics.error = err instanceof ApiError ? err.message : String(err);
    } finally {
      this.vm.diagnostics.running = false;
      this.render();
    }
  }

  private async applySettings(): Promise<void> {
    const resource = this.vm.resource;
    if (resource === null) return;
    const grid = parseInteger(this.vm.settings.gridSize);
    const issues =
      grid === null
        ? ["grid size must be an integer between 16 and 4096"]
        : checkFeedbackParams(grid, this.vm.settings.probsCsv);
    if (issues.length > 0) {
      this.vm.schemaIssues = issues;
      this.render();
      return;
    }
    this.vm.schemaIssues = [];
    this.vm.busy = true;
    this.render();
    try {
      absorbFeedback(this.vm, await this.client.feedback(resource.id, this.feedbackOptions()));
    } catch (err) {
      await this.absorbFailure(err, "feedback", "apply-settings");
    } finally {
      this.vm.busy = false;
      this.render();
    }
  }

  // -- demo replay ------------------------------------------------------------------

  /** Recreate a saved session by replaying its transcript through the API,
   *  then show it read-only. */
  async loadDemo(text: string): Promise<void> {
    const transcript = parseTranscript(text);
    this.vm.demo = true;
    this.vm.busy = true;
    this.render();
    try {
      const resource = await this.client.createSession({
        scenarios: transcript.header.scenarios,
        seed: transcript.header.seed,
        alpha: transcript.header.alpha,
        family: transcript.header.family,
      });
      this.vm.resource = resource;
      this.vm.transcriptUrl = this.client.transcriptUrl(resource.id);
      const total = transcript.events.length;
      for (let i = 0; i < total; i += 1) {
        const call = endpointFor(transcript.events[i]);
        this.vm.demoProgress = `replaying recorded session: ${i + 1}/${total}`;
        const reply = await this.client.mutate(resource.id, call.endpoint, call.body);
        absorbFeedback(this.vm, reply.feedback);
        if (i % 8 === 0) this.render();
      }
      this.vm.resource = await this.client.getSession(resource.id);
      absorbFeedback(this.vm, await this.client.feedback(resource.id));
    } catch (err) {
      this.vm.notice = `demo replay failed: ${err instanceof Error ? err.message : String(err)}`;
    } finally {
      this.vm.demoProgress = null;
      this.vm.busy = false;
      this.render();
    }
  }
}
