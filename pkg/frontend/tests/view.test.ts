import { describe, expect, it, vi } from "vitest";

import type { SessionPayload } from "../src/api";
import { pairCount } from "../src/model";
import { renderCreateForm, renderSession } from "../src/view";
import type { Handlers, ViewState } from "../src/view";
import acceptableJson from "./fixtures/session-acceptable.json";
import freshJson from "./fixtures/session-fresh.json";
import inconsistentJson from "./fixtures/session-inconsistent.json";

const fresh = freshJson as unknown as SessionPayload;
const acceptable = acceptableJson as unknown as SessionPayload;
const inconsistent = inconsistentJson as unknown as SessionPayload;

function makeHandlers(): Handlers {
  return { onSelect: vi.fn(), onFinalize: vi.fn(), onRetry: vi.fn() };
}

function view(payload: SessionPayload, extra: Partial<ViewState> = {}): ViewState {
  return {
    payload,
    goal: "Financial risk exposure",
    banner: null,
    busy: false,
    exportDoc: null,
    ...extra,
  };
}

function nodeSection(root: HTMLElement, id: string): HTMLElement {
  const section = root.querySelector<HTMLElement>(`section.node[data-node="${id}"]`);
  if (!section) {
    throw new Error(`missing section ${id}`);
  }
  return section;
}

describe("renderSession grid", () => {
  it("renders one section per comparison node with C(n,2) pair rows", () => {
    const root = renderSession(view(fresh), makeHandlers());
    expect(root.querySelectorAll("section.node")).toHaveLength(5);
    for (const node of fresh.nodes) {
      const rows = nodeSection(root, node.node_id).querySelectorAll("tbody tr.pair-row");
      expect(rows).toHaveLength(pairCount(node.items.length));
    }
    expect(
      nodeSection(root, "goal").querySelectorAll("tbody tr.pair-row"),
    ).toHaveLength(6);
    expect(
      nodeSection(root, "CFR").querySelectorAll("tbody tr.pair-row"),
    ).toHaveLength(91);
  });

  it("gives every pair row the 17-cell two-sided strip", () => {
    const root = renderSession(view(fresh), makeHandlers());
    const firstRow = root.querySelector("tbody tr.pair-row");
    expect(firstRow?.querySelectorAll("button.cell")).toHaveLength(17);
    const header = root.querySelector("thead tr");
    expect(header?.textContent).toContain("Positive");
    expect(header?.textContent).toContain("Equality");
    expect(header?.textContent).toContain("Negative");
  });

  it("marks exactly one selected cell per answered pair", () => {
    const root = renderSession(view(acceptable), makeHandlers());
    for (const node of acceptable.nodes) {
      if (node.total_pairs === 0) {
        continue;
      }
      const rows = nodeSection(root, node.node_id).querySelectorAll("tbody tr.pair-row");
      for (const row of rows) {
        expect(row.querySelectorAll("button.cell.selected")).toHaveLength(1);
      }
    }
  });

  it("keeps unanswered rows unselected", () => {
    const root = renderSession(view(fresh), makeHandlers());
    expect(root.querySelectorAll("button.cell.selected")).toHaveLength(0);
  });
});

describe("CR badge", () => {
  it("is absent while a node is incomplete", () => {
    const root = renderSession(view(fresh), makeHandlers());
    expect(root.querySelectorAll(".cr-badge")).toHaveLength(0);
  });

  it("shows the service value verbatim once complete", () => {
    const root = renderSession(view(acceptable), makeHandlers());
    for (const node of acceptable.nodes) {
      const badge = nodeSection(root, node.node_id).querySelector(".cr-badge");
      expect(badge?.textContent).toBe(`CR ${String(node.consistency?.cr)}`);
      expect(badge?.classList.contains("ok")).toBe(true);
    }
  });

  it("turns red and keeps full precision on an inconsistent node", () => {
    const root = renderSession(view(inconsistent), makeHandlers());
    const badge = nodeSection(root, "goal").querySelector(".cr-badge");
    expect(badge?.textContent).toBe("CR 2.1823236180559222");
    expect(badge?.classList.contains("bad")).toBe(true);
  });
});

describe("worst-triad highlight", () => {
  it("flags the three rows of the worst triple on a failing node", () => {
    const root = renderSession(view(inconsistent), makeHandlers());
    const triadRows = nodeSection(root, "goal").querySelectorAll("tr.pair-row.triad");
    const pairs = Array.from(triadRows).map((row) => [
      (row as HTMLElement).dataset.i,
      (row as HTMLElement).dataset.j,
    ]);
    expect(pairs).toEqual([
      ["0", "1"],
      ["0", "2"],
      ["1", "2"],
    ]);
    expect(nodeSection(root, "goal").querySelector(".triad-note")).not.toBeNull();
  });

  it("does not flag rows on acceptable nodes", () => {
    const root = renderSession(view(acceptable), makeHandlers());
    expect(root.querySelectorAll("tr.pair-row.triad")).toHaveLength(0);
  });
});

describe("finalize control", () => {
  function finalizeButton(root: HTMLElement): HTMLButtonElement {
    const button = root.querySelector<HTMLButtonElement>("button.finalize");
    if (!button) {
      throw new Error("missing finalize button");
    }
    return button;
  }

  it("is disabled with a tooltip naming blockers while incomplete", () => {
    const button = finalizeButton(renderSession(view(fresh), makeHandlers()));
    expect(button.disabled).toBe(true);
    for (const node of fresh.nodes) {
      expect(button.title).toContain(node.node_id);
    }
  });

  it("is disabled while a node is inconsistent", () => {
    const button = finalizeButton(renderSession(view(inconsistent), makeHandlers()));
    expect(button.disabled).toBe(true);
    expect(button.title).toContain("goal");
    expect(button.title).toContain("2.1823236180559222");
  });

  it("is enabled only when the service reports all nodes acceptable", () => {
    const handlers = makeHandlers();
    const button = finalizeButton(renderSession(view(acceptable), handlers));
    expect(button.disabled).toBe(false);
    button.click();
    expect(handlers.onFinalize).toHaveBeenCalledTimes(1);
  });

  it("stays disabled while a write is in flight", () => {
    const button = finalizeButton(
      renderSession(view(acceptable, { busy: true }), makeHandlers()),
    );
    expect(button.disabled).toBe(true);
  });
});

describe("cell interaction", () => {
  it("reports the wire value for the clicked side", () => {
    const handlers = makeHandlers();
    const root = renderSession(view(fresh), handlers);
    const row = nodeSection(root, "goal").querySelector('tr.pair-row[data-i="0"][data-j="1"]');
    const buttons = row?.querySelectorAll<HTMLButtonElement>("button.cell");
    expect(buttons).toHaveLength(17);
    buttons![0].click();
    expect(handlers.onSelect).toHaveBeenLastCalledWith("goal", 0, 1, "9");
    buttons![8].click();
    expect(handlers.onSelect).toHaveBeenLastCalledWith("goal", 0, 1, "1");
    buttons![16].click();
    expect(handlers.onSelect).toHaveBeenLastCalledWith("goal", 0, 1, "1/9");
  });

  it("disables every cell while busy or finalized", () => {
    const busyRoot = renderSession(view(fresh, { busy: true }), makeHandlers());
    const busyButtons = busyRoot.querySelectorAll<HTMLButtonElement>("button.cell");
    expect(Array.from(busyButtons).every((b) => b.disabled)).toBe(true);

    const doneRoot = renderSession(
      view({ ...acceptable, state: "finalized" }), makeHandlers(),
    );
    const doneButtons = doneRoot.querySelectorAll<HTMLButtonElement>("button.cell");
    expect(Array.from(doneButtons).every((b) => b.disabled)).toBe(true);
  });
});

describe("banner and export", () => {
  it("shows a retry banner with a working button", () => {
    const handlers = makeHandlers();
    const root = renderSession(
      view(fresh, { banner: { message: "Service unreachable.", retry: true } }),
      handlers,
    );
    const banner = root.querySelector(".banner-retry");
    expect(banner?.textContent).toContain("Service unreachable.");
    banner?.querySelector("button")?.click();
    expect(handlers.onRetry).toHaveBeenCalledTimes(1);
  });

  it("shows a plain error banner without retry", () => {
    const root = renderSession(
      view(fresh, { banner: { message: "Judgment rejected: bad value", retry: false } }),
      makeHandlers(),
    );
    expect(root.querySelector(".banner-error")?.textContent).toContain("Judgment rejected");
    expect(root.querySelector(".banner-error button")).toBeNull();
  });

  it("prints the finalized questionnaire document", () => {
    const doc = { expert: { name: "Fixture Expert" }, judgments: {} };
    const root = renderSession(view(acceptable, { exportDoc: doc }), makeHandlers());
    const exported = root.querySelector("pre.export-json");
    expect(exported?.textContent).toBe(JSON.stringify(doc, null, 2));
    expect(root.querySelector<HTMLButtonElement>("button.finalize")?.disabled).toBe(true);
  });
});

describe("renderCreateForm", () => {
  it("submits trimmed expert details", () => {
    const onCreate = vi.fn();
    const root = renderCreateForm("Financial risk exposure", onCreate);
    const form = root.querySelector("form");
    const inputs = root.querySelectorAll("input");
    inputs[0].value = "  Jordan Kim ";
    inputs[1].value = "12";
    inputs[2].value = "PhD";
    form?.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(onCreate).toHaveBeenCalledWith({
      name: "Jordan Kim",
      experience_years: 12,
      degree: "PhD",
    });
  });

  it("ignores submission without a name", () => {
    const onCreate = vi.fn();
    const root = renderCreateForm("Financial risk exposure", onCreate);
    root.querySelector("form")?.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(onCreate).not.toHaveBeenCalled();
  });
});
