// Entry point. Query parameters pick the service and the starting state:
//   ?api=http://host:port   service base (defaults to same origin)
//   ?token=...              bearer token, when the service requires one
//   ?session=<id>           open an existing session
//   ?demo=1                 replay the bundled case study read-only

import { ApiClient } from "./api.js";
import { SessionConsole } from "./app.js";
import { SEAGRASS_TRANSCRIPT } from "./fixtures/seagrass.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "";
const token = params.get("token");
const root = document.getElementById("app");
if (root === null) throw new Error("missing #app element");

const client = new ApiClient(base, token);
const app = new SessionConsole(root, client);

const sessionId = params.get("session");
if (params.get("demo") === "1") {
  void app.loadDemo(SEAGRASS_TRANSCRIPT);
} else if (sessionId !== null) {
  void app.loadSession(sessionId);
}
