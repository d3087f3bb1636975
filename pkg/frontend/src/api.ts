/** Typed client for the judgment elicitation HTTP API. */

export interface ExpertInfo {
  name: string;
  experience_years: number;
  degree: string;
}

export interface ItemRef {
  id: string;
  label: string;
}

export interface ConsistencySummary {
  n: number;
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  verdict: string;
  acceptable: boolean;
}

export interface WorstTriad {
  items: string[];
  indices: number[];
  discrepancy: number;
}

export interface NodeReport {
  node_id: string;
  items: ItemRef[];
  total_pairs: number;
  answered_pairs: number;
  remaining_pairs: [number, number][];
  complete: boolean;
  consistency: ConsistencySummary | null;
  worst_triad: WorstTriad | null;
}

export interface JudgmentEntry {
  i: number;
  j: number;
  value: string;
}

export interface SessionPayload {
  id: string;
  state: "open" | "finalized";
  hierarchy: string;
  expert: ExpertInfo;
  nodes: NodeReport[];
  completion: number;
  judgments: Record<string, JudgmentEntry[]>;
  all_acceptable: boolean;
}

export interface SubmitResult {
  id: string;
  state: "open" | "finalized";
  node: NodeReport;
  completion: number;
  all_acceptable: boolean;
}

export interface HierarchySummary {
  id: string;
  goal: string;
  alternatives: string[];
}

export interface BlockingNode {
  node_id: string;
  reason: "incomplete" | "inconsistent";
  remaining_pairs: [number, number][];
  cr: number | null;
}

/** Non-2xx response decoded from the {error: {code, message, details}} envelope. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(method: string, path: string, body?: unknown): Promise<T> {
  const resp = await fetch(path, {
    method,
    headers: body === undefined ? {} : { "content-type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const text = await resp.text();
  let data: unknown = null;
  try {
    data = text ? JSON.parse(text) : null;
  } catch {
    data = null;
  }
  if (!resp.ok) {
    const err = (data as { error?: { code?: string; message?: string; details?: unknown } } | null)?.error ?? {};
    throw new ApiError(
      resp.status,
      err.code ?? "http_error",
      err.message ?? `${resp.status} ${resp.statusText}`,
      err.details ?? null,
    );
  }
  return data as T;
}

export function listHierarchies(): Promise<{ hierarchies: HierarchySummary[] }> {
  return request("GET", "/api/hierarchies");
}

export function createSession(expert: {
  name: string;
  experience_years?: number;
  degree?: string;
}): Promise<SessionPayload> {
  return request("POST", "/api/sessions", { expert });
}

export function getSession(id: string): Promise<SessionPayload> {
  return request("GET", `/api/sessions/${id}`);
}

export function submitJudgment(
  id: string,
  judgment: { node_id: string; i: number; j: number; value: string },
): Promise<SubmitResult> {
  return request("PUT", `/api/sessions/${id}/judgments`, judgment);
}

export function finalizeSession(id: string): Promise<unknown> {
  return request("POST", `/api/sessions/${id}/finalize`);
}
