// In-memory replay of the service HTTP contract, installed as a fetch mock.
// Response shapes mirror the real endpoints byte-for-shape: algorithm
// schemas, job views, stored bicluster-set documents, validation reports.

import { vi } from "vitest";

export const CC_SCHEMA = {
  name: "cc",
  description: "delta-bicluster extraction by greedy residue deletion",
  params: [
    { name: "delta", type: "float", default: 1.0, min: 0.0, max: null,
      choices: null, description: "maximum acceptable mean squared residue" },
    { name: "alpha", type: "float", default: 1.2, min: 1.0, max: null,
      choices: null, description: "multiple-deletion aggressiveness" },
    { name: "n", type: "int", default: 100, min: 1, max: null,
      choices: null, description: "number of biclusters to extract" },
    { name: "multi_deletion_min", type: "int", default: 100, min: 2,
      max: null, choices: null,
      description: "matrix size enabling multiple deletion" },
  ],
};

export const BIMAX_SCHEMA = {
  name: "bimax",
  description: "inclusion-maximal all-ones submatrix enumeration",
  params: [
    { name: "min_rows", type: "int", default: 2, min: 1, max: null,
      choices: null, description: "" },
    { name: "min_cols", type: "int", default: 2, min: 1, max: null,
      choices: null, description: "" },
    { name: "mode", type: "str", default: "recursive", min: null, max: null,
      choices: ["recursive", "iterative"], description: "" },
  ],
};

export interface MockJob {
  id: string;
  dataset_id: string;
  algorithm: string;
  params: Record<string, unknown>;
  seed: number;
  status: string;
  progress: number;
  error: string | null;
  n_biclusters?: number;
  // statuses still to be served before the final one, oldest first
  pendingStatuses?: string[];
}

export class MockService {
  datasets: { id: string; shape: [number, number] }[] = [
    { id: "d1234567890ab", shape: [20, 10] },
  ];
  jobs = new Map<string, MockJob>();
  nextJob = 1;
  requests: { method: string; url: string; body?: unknown }[] = [];

  resultDoc = {
    format: "biclustlab.bicluster_set.v1",
    algorithm: "cc",
    params: { delta: 0.5, alpha: 1.2, n: 2, multi_deletion_min: 100 },
    seed: 42,
    n_biclusters: 2,
    matrix_shape: [20, 10],
    biclusters: [
      { rows: ["g0", "g1", "g2"], cols: ["c0", "c1"],
        row_indices: [0, 1, 2], col_indices: [0, 1], score: 0.12 },
      { rows: ["g5", "g6"], cols: ["c3", "c4", "c5"],
        row_indices: [5, 6], col_indices: [3, 4, 5], score: 0.3 },
    ],
  };

  validationDoc = {
    per_bicluster: [
      { msr: 0.12, constant_variance: 0.5, sign_variance: 1.0, sb_score: 0.7 },
      { msr: 0.3, constant_variance: 0.9, sign_variance: 3.0, sb_score: null },
    ],
    aggregates: { msr: 0.21, constant_variance: 0.7, sign_variance: 2.0,
      sb_score: 0.7 },
    overall_mse: 0.05,
    jaccard: [[1.0, 0.0], [0.0, 1.0]],
    best_match_jaccard: 1.0,
    hausdorff: [[0.0, 2.5], [2.5, 0.0]],
  };

  failNextRunWith: string | null = null;

  private respond(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  }

  async handle(input: RequestInfo | URL, init?: RequestInit): Promise<Response> {
    const url = String(input);
    const method = (init?.method ?? "GET").toUpperCase();
    let body: unknown;
    if (typeof init?.body === "string") body = JSON.parse(init.body);
    this.requests.push({ method, url, body });

    if (url === "/api/algorithms") {
      return this.respond(200, [BIMAX_SCHEMA, CC_SCHEMA]);
    }
    if (url === "/api/datasets" && method === "GET") {
      return this.respond(200, this.datasets);
    }
    if (url === "/api/datasets" && method === "POST") {
      const d = { id: "dnewupload0001", shape: [8, 4] as [number, number] };
      if (!this.datasets.some((x) => x.id === d.id)) this.datasets.push(d);
      return this.respond(200, { id: d.id, shape: d.shape, missing_count: 0 });
    }
    const prep = url.match(/^\/api\/datasets\/([^/]+)\/preprocess$/);
    if (prep && method === "POST") {
      const steps = (body as { steps: { op?: string }[] }).steps;
      if (steps.some((s) => s.op === "mystery")) {
        return this.respond(400, { detail: "unknown preprocessing op 'mystery'" });
      }
      const d = { id: "dpreprocessed1", shape: [20, 10] as [number, number] };
      if (!this.datasets.some((x) => x.id === d.id)) this.datasets.push(d);
      return this.respond(200, { id: d.id, shape: d.shape, missing_count: 0 });
    }
    if (url === "/api/runs" && method === "POST") {
      const req = body as { dataset_id: string; algorithm: string;
        params: Record<string, unknown>; seed: number };
      if (!this.datasets.some((d) => d.id === req.dataset_id)) {
        return this.respond(404, { detail: `unknown dataset ${req.dataset_id}` });
      }
      if (typeof req.params.delta === "number" && req.params.delta < 0) {
        return this.respond(422, { detail: "parameter 'delta' must be >= 0.0" });
      }
      const id = `job-${this.nextJob++}`;
      const job: MockJob = {
        id, dataset_id: req.dataset_id, algorithm: req.algorithm,
        params: req.params, seed: req.seed, status: "queued", progress: 0,
        error: null, pendingStatuses: ["running"],
      };
      if (this.failNextRunWith !== null) {
        job.error = this.failNextRunWith;
        this.failNextRunWith = null;
        job.pendingStatuses = ["failed"];
      } else {
        job.pendingStatuses = ["done"];
      }
      this.jobs.set(id, job);
      return this.respond(201, { id });
    }
    const status = url.match(/^\/api\/runs\/([^/]+)$/);
    if (status && method === "GET") {
      const job = this.jobs.get(status[1]);
      if (!job) return this.respond(404, { detail: `unknown run ${status[1]}` });
      if (job.pendingStatuses && job.pendingStatuses.length > 0) {
        job.status = job.pendingStatuses.shift()!;
        if (job.status === "done") {
          job.progress = 1;
          job.n_biclusters = this.resultDoc.n_biclusters;
        }
        if (job.status === "failed") job.progress = 1;
      }
      const view: Record<string, unknown> = {
        id: job.id, dataset_id: job.dataset_id, algorithm: job.algorithm,
        params: job.params, seed: job.seed, status: job.status,
        progress: job.progress, error: job.status === "failed" ? job.error : null,
      };
      if (job.n_biclusters !== undefined) view.n_biclusters = job.n_biclusters;
      return this.respond(200, view);
    }
    const bics = url.match(/^\/api\/runs\/([^/]+)\/biclusters$/);
    if (bics && method === "GET") {
      const job = this.jobs.get(bics[1]);
      if (!job) return this.respond(404, { detail: `unknown run ${bics[1]}` });
      if (job.status === "failed") return this.respond(500, { detail: job.error });
      if (job.status !== "done") {
        return this.respond(409, { detail: `run ${job.id} is ${job.status}` });
      }
      return this.respond(200, { ...this.resultDoc,
        algorithm: job.algorithm, seed: job.seed });
    }
    if (url === "/api/validate" && method === "POST") {
      const req = body as { run_id: string; reference_run_id: string | null };
      const job = this.jobs.get(req.run_id);
      if (!job) return this.respond(404, { detail: `unknown run ${req.run_id}` });
      return this.respond(200, this.validationDoc);
    }
    return this.respond(404, { detail: `no route ${method} ${url}` });
  }

  install(): void {
    vi.stubGlobal("fetch", (input: RequestInfo | URL, init?: RequestInit) =>
      this.handle(input, init));
  }
}
