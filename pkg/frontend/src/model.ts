/** Pure view-model logic for the two-sided questionnaire grid.
 *
 * Everything here is derived from service payloads; in particular the UI
 * never computes consistency ratios itself, it only formats what the
 * service reported.
 */

import type {
  JudgmentEntry,
  NodeReport,
  SessionPayload,
  SubmitResult,
  WorstTriad,
} from "./api";

export type Side = "positive" | "equal" | "negative";

export interface ScaleCell {
  side: Side;
  code: number;
  /** Wire value: left (row favored) -> "c", right -> "1/c", equality -> "1". */
  value: string;
}

/** The 17 cells of one pair row: 9..2, 1, 2..9. */
export function scaleCells(): ScaleCell[] {
  const cells: ScaleCell[] = [];
  for (let code = 9; code >= 2; code--) {
    cells.push({ side: "positive", code, value: String(code) });
  }
  cells.push({ side: "equal", code: 1, value: "1" });
  for (let code = 2; code <= 9; code++) {
    cells.push({ side: "negative", code, value: `1/${code}` });
  }
  return cells;
}

/** Map a stored judgment value back to the grid cell it selects. */
export function parseValue(value: string): { side: Side; code: number } {
  const slash = value.indexOf("/");
  if (slash >= 0) {
    const den = Number(value.slice(slash + 1));
    return den === 1 ? { side: "equal", code: 1 } : { side: "negative", code: den };
  }
  const num = Number(value);
  return num === 1 ? { side: "equal", code: 1 } : { side: "positive", code: num };
}

export function pairKey(i: number, j: number): string {
  return `${i}:${j}`;
}

export function allPairs(n: number): [number, number][] {
  const pairs: [number, number][] = [];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      pairs.push([i, j]);
    }
  }
  return pairs;
}

export function pairCount(n: number): number {
  return (n * (n - 1)) / 2;
}

export interface PairRow {
  i: number;
  j: number;
  leftLabel: string;
  rightLabel: string;
  selected: { side: Side; code: number } | null;
  inWorstTriad: boolean;
}

export function triadKeys(triad: WorstTriad | null): Set<string> {
  if (!triad) {
    return new Set();
  }
  const [a, b, c] = triad.indices;
  return new Set([pairKey(a, b), pairKey(a, c), pairKey(b, c)]);
}

/** The triad is a revision aid: surfaced only while the node fails the CR gate. */
export function highlightTriad(node: NodeReport): WorstTriad | null {
  if (node.complete && node.consistency !== null && !node.consistency.acceptable) {
    return node.worst_triad;
  }
  return null;
}

export function pairRows(node: NodeReport, judgments: JudgmentEntry[]): PairRow[] {
  const byPair = new Map<string, string>();
  for (const entry of judgments) {
    byPair.set(pairKey(entry.i, entry.j), entry.value);
  }
  const highlight = triadKeys(highlightTriad(node));
  return allPairs(node.items.length).map(([i, j]) => {
    const value = byPair.get(pairKey(i, j));
    return {
      i,
      j,
      leftLabel: node.items[i].label,
      rightLabel: node.items[j].label,
      selected: value === undefined ? null : parseValue(value),
      inWorstTriad: highlight.has(pairKey(i, j)),
    };
  });
}

/** Badge shown only once the node is complete; text carries the CR verbatim. */
export function crBadge(node: NodeReport): { text: string; acceptable: boolean } | null {
  if (!node.complete || node.consistency === null) {
    return null;
  }
  return {
    text: `CR ${String(node.consistency.cr)}`,
    acceptable: node.consistency.acceptable,
  };
}

export function finalizeEnabled(payload: SessionPayload): boolean {
  return payload.state === "open" && payload.all_acceptable;
}

/** Human-readable list of nodes that block finalization. */
export function blockingReasons(payload: SessionPayload): string[] {
  const reasons: string[] = [];
  for (const node of payload.nodes) {
    if (!node.complete) {
      reasons.push(`${node.node_id}: ${node.remaining_pairs.length} pair(s) unanswered`);
    } else if (node.consistency !== null && !node.consistency.acceptable) {
      reasons.push(`${node.node_id}: CR ${String(node.consistency.cr)} is not below 0.10`);
    }
  }
  return reasons;
}

export function progressPercent(payload: SessionPayload): number {
  return Math.round(payload.completion * 100);
}

/** Replace or add one judgment locally (optimistic update, pre-confirmation). */
export function withJudgment(
  payload: SessionPayload,
  nodeId: string,
  i: number,
  j: number,
  value: string,
): SessionPayload {
  const judgments = { ...payload.judgments };
  const entries = (judgments[nodeId] ?? []).filter((e) => e.i !== i || e.j !== j);
  entries.push({ i, j, value });
  entries.sort((a, b) => a.i - b.i || a.j - b.j);
  judgments[nodeId] = entries;
  return { ...payload, judgments };
}

/** Fold a write acknowledgement back into the session snapshot. */
export function mergeSubmit(payload: SessionPayload, result: SubmitResult): SessionPayload {
  return {
    ...payload,
    state: result.state,
    completion: result.completion,
    all_acceptable: result.all_acceptable,
    nodes: payload.nodes.map((node) =>
      node.node_id === result.node.node_id ? result.node : node,
    ),
  };
}
