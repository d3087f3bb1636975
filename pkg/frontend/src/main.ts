/** Application shell: session bootstrap, polling, optimistic writes. */

import {
  ApiError,
  createSession,
  finalizeSession,
  getSession,
  listHierarchies,
  submitJudgment,
} from "./api";
import type { BlockingNode, SessionPayload } from "./api";
import { mergeSubmit, withJudgment } from "./model";
import { renderBanner, renderCreateForm, renderSession } from "./view";
import type { Handlers, ViewState } from "./view";
import "./style.css";

const POLL_INTERVAL_MS = 2000;
const DEFAULT_GOAL = "Pairwise judgment questionnaire";

const app = document.getElementById("app") as HTMLElement;

let goal = DEFAULT_GOAL;
let state: ViewState | null = null;
let pollTimer: ReturnType<typeof setInterval> | undefined;

function sessionIdFromHash(): string | null {
  const match = /^#\/session\/([0-9a-f]{32})$/.exec(location.hash);
  return match ? match[1] : null;
}

const handlers: Handlers = {
  onSelect(nodeId, i, j, value) {
    void select(nodeId, i, j, value);
  },
  onFinalize() {
    void finalize();
  },
  onRetry() {
    void refresh();
  },
};

function render(): void {
  app.replaceChildren();
  if (state !== null) {
    app.append(renderSession(state, handlers));
  }
}

function stopPolling(): void {
  if (pollTimer !== undefined) {
    clearInterval(pollTimer);
    pollTimer = undefined;
  }
}

function startPolling(): void {
  stopPolling();
  pollTimer = setInterval(() => {
    void poll();
  }, POLL_INTERVAL_MS);
}

async function poll(): Promise<void> {
  if (state === null || state.busy || state.payload.state !== "open" || state.exportDoc !== null) {
    return;
  }
  try {
    const payload = await getSession(state.payload.id);
    state.payload = payload;
    if (state.banner?.retry) {
      state.banner = null;
    }
    render();
  } catch (err) {
    if (!(err instanceof ApiError)) {
      state.banner = { message: "Service unreachable. Will keep retrying.", retry: true };
      render();
    }
  }
}

async function refresh(): Promise<void> {
  if (state === null) {
    void boot();
    return;
  }
  try {
    state.payload = await getSession(state.payload.id);
    state.banner = null;
  } catch (err) {
    state.banner = describeFailure(err, "Could not refresh the session.");
  }
  render();
}

function describeFailure(err: unknown, fallback: string): { message: string; retry: boolean } {
  if (err instanceof ApiError) {
    return { message: `${fallback} ${err.message}`, retry: false };
  }
  return { message: "Service unreachable. Check the connection and retry.", retry: true };
}

async function select(nodeId: string, i: number, j: number, value: string): Promise<void> {
  if (state === null || state.busy || state.payload.state !== "open" || state.exportDoc !== null) {
    return;
  }
  const snapshot = state.payload;
  state.payload = withJudgment(snapshot, nodeId, i, j, value);
  state.busy = true;
  state.banner = null;
  render();
  try {
    const result = await submitJudgment(snapshot.id, { node_id: nodeId, i, j, value });
    state.payload = mergeSubmit(state.payload, result);
    state.busy = false;
  } catch (err) {
    state.payload = snapshot;
    state.busy = false;
    state.banner =
      err instanceof ApiError
        ? { message: `Judgment rejected: ${err.message}`, retry: false }
        : { message: "Service unreachable. The judgment was not saved.", retry: true };
  }
  render();
}

async function finalize(): Promise<void> {
  if (state === null || state.busy || state.exportDoc !== null) {
    return;
  }
  state.busy = true;
  render();
  try {
    const doc = await finalizeSession(state.payload.id);
    state.busy = false;
    state.exportDoc = doc;
    state.payload = { ...state.payload, state: "finalized" };
    state.banner = null;
    stopPolling();
  } catch (err) {
    state.busy = false;
    if (err instanceof ApiError) {
      const blocking = (err.details as { blocking?: BlockingNode[] } | null)?.blocking;
      const detail = blocking?.length
        ? ` Blocked by: ${blocking.map((b) => `${b.node_id} (${b.reason})`).join(", ")}.`
        : "";
      state.banner = { message: `Finalize refused: ${err.message}.${detail}`, retry: false };
    } else {
      state.banner = { message: "Service unreachable. Finalize not applied.", retry: true };
    }
  }
  render();
}

function showCreateForm(): void {
  state = null;
  stopPolling();
  app.replaceChildren(
    renderCreateForm(goal, (expert) => {
      void (async () => {
        try {
          const payload = await createSession(expert);
          openSession(payload);
          location.hash = `#/session/${payload.id}`;
        } catch (err) {
          app.prepend(renderBanner(describeFailure(err, "Could not create the session."), handlers));
        }
      })();
    }),
  );
}

function openSession(payload: SessionPayload): void {
  state = { payload, goal, banner: null, busy: false, exportDoc: null };
  render();
  if (payload.state === "open") {
    startPolling();
  }
}

async function boot(): Promise<void> {
  try {
    const listing = await listHierarchies();
    if (listing.hierarchies.length > 0) {
      goal = listing.hierarchies[0].goal;
    }
    const id = sessionIdFromHash();
    if (id === null) {
      showCreateForm();
      return;
    }
    openSession(await getSession(id));
  } catch (err) {
    state = null;
    stopPolling();
    const banner = renderBanner(describeFailure(err, "Could not load the session."), {
      ...handlers,
      onRetry() {
        void boot();
      },
    });
    app.replaceChildren(banner);
  }
}

window.addEventListener("hashchange", () => {
  void boot();
});

void boot();
