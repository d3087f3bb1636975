/** DOM rendering: pure functions from state to elements, handlers injected. */

import type { NodeReport, JudgmentEntry, SessionPayload } from "./api";
import {
  blockingReasons,
  crBadge,
  finalizeEnabled,
  highlightTriad,
  pairRows,
  progressPercent,
  scaleCells,
} from "./model";

export interface Handlers {
  onSelect(nodeId: string, i: number, j: number, value: string): void;
  onFinalize(): void;
  onRetry(): void;
}

export interface Banner {
  message: string;
  retry: boolean;
}

export interface ViewState {
  payload: SessionPayload;
  goal: string;
  banner: Banner | null;
  busy: boolean;
  exportDoc: unknown | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function renderBanner(banner: Banner, handlers: Handlers): HTMLElement {
  const root = el("div", banner.retry ? "banner banner-retry" : "banner banner-error");
  root.append(el("span", "banner-message", banner.message));
  if (banner.retry) {
    const button = el("button", "banner-retry-button", "Retry");
    button.type = "button";
    button.addEventListener("click", () => handlers.onRetry());
    root.append(button);
  }
  return root;
}

function renderNode(
  node: NodeReport,
  judgments: JudgmentEntry[],
  handlers: Handlers,
  disabled: boolean,
): HTMLElement {
  const section = el("section", "node");
  section.dataset.node = node.node_id;

  const heading = el("h2", "node-heading");
  heading.append(
    el(
      "span",
      "node-title",
      `${node.node_id} — ${node.answered_pairs}/${node.total_pairs} pairs`,
    ),
  );
  const badge = crBadge(node);
  if (badge) {
    heading.append(el("span", badge.acceptable ? "cr-badge ok" : "cr-badge bad", badge.text));
  }
  section.append(heading);

  const triad = highlightTriad(node);
  if (triad) {
    section.append(
      el(
        "p",
        "triad-note",
        `Most inconsistent triple: ${triad.items.join(", ")} ` +
          `(discrepancy ${triad.discrepancy.toFixed(4)}). Revise the highlighted rows.`,
      ),
    );
  }

  if (node.total_pairs === 0) {
    section.append(el("p", "node-empty", "Single item, nothing to compare."));
    return section;
  }

  const table = el("table", "grid");
  const thead = el("thead");
  const headRow = el("tr");
  headRow.append(el("th", "pair-label"));
  const positive = el("th", "scale-side", "Positive");
  positive.colSpan = 8;
  const equal = el("th", "scale-equal", "Equality");
  const negative = el("th", "scale-side", "Negative");
  negative.colSpan = 8;
  headRow.append(positive, equal, negative);
  headRow.append(el("th", "pair-label"));
  thead.append(headRow);
  table.append(thead);

  const tbody = el("tbody");
  const cells = scaleCells();
  for (const row of pairRows(node, judgments)) {
    const tr = el("tr", row.inWorstTriad ? "pair-row triad" : "pair-row");
    tr.dataset.i = String(row.i);
    tr.dataset.j = String(row.j);
    tr.append(el("th", "pair-label left", row.leftLabel));
    for (const cell of cells) {
      const td = el("td", cell.side === "equal" ? "cell-slot equal" : "cell-slot");
      const button = el("button", "cell", String(cell.code));
      button.type = "button";
      button.dataset.value = cell.value;
      button.dataset.side = cell.side;
      if (row.selected && row.selected.side === cell.side && row.selected.code === cell.code) {
        button.classList.add("selected");
      }
      button.disabled = disabled;
      button.addEventListener("click", () =>
        handlers.onSelect(node.node_id, row.i, row.j, cell.value),
      );
      td.append(button);
      tr.append(td);
    }
    tr.append(el("th", "pair-label right", row.rightLabel));
    tbody.append(tr);
  }
  table.append(tbody);
  section.append(table);
  return section;
}

export function renderSession(state: ViewState, handlers: Handlers): HTMLElement {
  const { payload } = state;
  const root = el("div", "session");

  const header = el("header", "session-header");
  header.append(el("h1", undefined, state.goal));
  header.append(
    el(
      "p",
      "session-meta",
      `Expert: ${payload.expert.name} · Session ${payload.id.slice(0, 8)} · ${payload.state}`,
    ),
  );
  const progress = el("div", "progress");
  const bar = el("div", "progress-bar");
  bar.style.width = `${progressPercent(payload)}%`;
  progress.append(bar);
  header.append(progress);
  header.append(el("p", "progress-text", `${progressPercent(payload)}% of pairs answered`));
  root.append(header);

  if (state.banner) {
    root.append(renderBanner(state.banner, handlers));
  }

  const finalized = payload.state === "finalized" || state.exportDoc !== null;
  for (const node of payload.nodes) {
    root.append(
      renderNode(node, payload.judgments[node.node_id] ?? [], handlers, finalized || state.busy),
    );
  }

  const footer = el("footer", "session-footer");
  const finalize = el(
    "button",
    "finalize",
    payload.state === "finalized" ? "Finalized" : "Finalize session",
  );
  finalize.type = "button";
  finalize.disabled = !(finalizeEnabled(payload) && !state.busy && state.exportDoc === null);
  const reasons = blockingReasons(payload);
  if (payload.state === "finalized") {
    finalize.title = "Session already finalized";
  } else if (reasons.length > 0) {
    finalize.title = `Blocked by: ${reasons.join("; ")}`;
  } else {
    finalize.title = "All nodes are consistent";
  }
  finalize.addEventListener("click", () => handlers.onFinalize());
  footer.append(finalize);
  root.append(footer);

  if (state.exportDoc !== null) {
    const exportSection = el("section", "export");
    exportSection.append(el("h2", undefined, "Finalized questionnaire"));
    exportSection.append(el("pre", "export-json", JSON.stringify(state.exportDoc, null, 2)));
    root.append(exportSection);
  }
  return root;
}

export function renderCreateForm(
  goal: string,
  onCreate: (expert: { name: string; experience_years: number; degree: string }) => void,
): HTMLElement {
  const root = el("div", "create");
  root.append(el("h1", undefined, goal));
  root.append(
    el("p", undefined, "Start a session and compare the criteria pairwise on the 1..9 scale."),
  );
  const form = el("form", "create-form");
  const name = el("input");
  name.name = "name";
  name.placeholder = "Expert name";
  name.required = true;
  const years = el("input");
  years.name = "experience_years";
  years.type = "number";
  years.min = "0";
  years.step = "0.5";
  years.placeholder = "Years of experience";
  const degree = el("input");
  degree.name = "degree";
  degree.placeholder = "Degree";
  const submit = el("button", undefined, "Start session");
  submit.type = "submit";
  form.append(name, years, degree, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!name.value.trim()) {
      return;
    }
    onCreate({
      name: name.value.trim(),
      experience_years: Number(years.value || 0),
      degree: degree.value.trim(),
    });
  });
  root.append(form);
  return root;
}
