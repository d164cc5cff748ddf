// Thin typed client for the biclustlab HTTP service. All numbers shown in
// the UI come from these responses; nothing is recomputed client-side.

export interface ParamSchema {
  name: string;
  type: "int" | "float" | "str" | "bool";
  default: number | string | boolean | null;
  min: number | null;
  max: number | null;
  choices: string[] | null;
  description: string;
}

export interface AlgorithmSchema {
  name: string;
  description: string;
  params: ParamSchema[];
}

export interface DatasetInfo {
  id: string;
  shape: [number, number];
}

export interface RunInfo {
  id: string;
  dataset_id: string;
  algorithm: string;
  params: Record<string, unknown>;
  seed: number;
  status: "queued" | "running" | "done" | "failed";
  progress: number;
  error: string | null;
  n_biclusters?: number;
}

export interface BiclusterDoc {
  rows?: string[]; // row labels, present when saved with a matrix
  cols?: string[];
  row_indices: number[];
  col_indices: number[];
  score: number | null;
}

export interface RunResultDoc {
  format: string;
  algorithm: string;
  params: Record<string, unknown>;
  seed: number;
  n_biclusters: number;
  matrix_shape?: number[];
  biclusters: BiclusterDoc[];
}

export interface ValidationDoc {
  per_bicluster: Record<string, number | null>[];
  aggregates: Record<string, number | null>;
  overall_mse: number | null;
  jaccard?: number[][];
  best_match_jaccard?: number;
  hausdorff?: number[][];
}

export class ApiError extends Error {
  status: number;
  constructor(status: number, detail: string) {
    super(detail);
    this.status = status;
  }
}

async function json<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(res.status, detail);
  }
  return res.json() as Promise<T>;
}

export async function listAlgorithms(): Promise<AlgorithmSchema[]> {
  return json(await fetch("/api/algorithms"));
}

export async function listDatasets(): Promise<DatasetInfo[]> {
  return json(await fetch("/api/datasets"));
}

export async function uploadDataset(file: File | Blob, name = "matrix.tsv") {
  const form = new FormData();
  form.append("file", file, name);
  return json<{ id: string; shape: number[]; missing_count: number }>(
    await fetch("/api/datasets", { method: "POST", body: form }),
  );
}

export async function preprocessDataset(id: string, steps: object[]) {
  return json<{ id: string; shape: number[] }>(
    await fetch(`/api/datasets/${id}/preprocess`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ steps }),
    }),
  );
}

export async function submitRun(
  datasetId: string,
  algorithm: string,
  params: Record<string, unknown>,
  seed: number,
): Promise<{ id: string }> {
  return json(
    await fetch("/api/runs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dataset_id: datasetId, algorithm, params, seed }),
    }),
  );
}

export async function runStatus(id: string): Promise<RunInfo> {
  return json(await fetch(`/api/runs/${id}`));
}

export async function runBiclusters(id: string): Promise<RunResultDoc> {
  return json(await fetch(`/api/runs/${id}/biclusters`));
}

export async function validateRun(
  runId: string,
  indices: string[],
  referenceRunId?: string,
): Promise<ValidationDoc> {
  return json(
    await fetch("/api/validate", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        run_id: runId,
        indices,
        reference_run_id: referenceRunId ?? null,
      }),
    }),
  );
}

export function vizUrl(runId: string, kind: string, bicluster?: number): string {
  const base = `/api/runs/${runId}/viz/${kind}`;
  return bicluster === undefined ? base : `${base}?bicluster=${bicluster}`;
}

// Poll a job until it settles. Interval starts at 1s and backs off by 1.5x
// up to 10s. onUpdate fires for every observed status.
export async function pollRun(
  id: string,
  onUpdate: (info: RunInfo) => void,
  sleep: (ms: number) => Promise<void> = (ms) =>
    new Promise((r) => setTimeout(r, ms)),
): Promise<RunInfo> {
  let interval = 1000;
  for (;;) {
    const info = await runStatus(id);
    onUpdate(info);
    if (info.status === "done" || info.status === "failed") return info;
    await sleep(interval);
    interval = Math.min(interval * 1.5, 10000);
  }
}
