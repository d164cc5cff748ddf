// Client session state. Resetting returns to the home page and clears the
// user's selections but keeps everything already fetched or submitted:
// dataset list and run history survive a reset.

import { AlgorithmSchema, DatasetInfo, RunInfo } from "./api";
import { FormState } from "./forms";

export interface RunEntry {
  id: string;
  algorithm: string;
  datasetId: string;
  submittedAt: number;
  info: RunInfo | null;
}

export interface SessionState {
  page: "home" | "visualization" | "validation";
  algorithms: AlgorithmSchema[];
  datasets: DatasetInfo[];
  activeDataset: string | null;
  preprocessSteps: object[];
  selectedAlgorithm: string | null;
  form: FormState | null;
  runs: RunEntry[]; // ordered by submission time
  selectedRun: string | null;
  selectedBicluster: number;
  vizKind: "heatmap" | "gene_plot" | "cluster_plot";
  validationIndices: string[];
  referenceRun: string | null;
}

export function initialState(): SessionState {
  return {
    page: "home",
    algorithms: [],
    datasets: [],
    activeDataset: null,
    preprocessSteps: [],
    selectedAlgorithm: null,
    form: null,
    runs: [],
    selectedRun: null,
    selectedBicluster: 0,
    vizKind: "heatmap",
    validationIndices: ["all"],
    referenceRun: null,
  };
}

export function addRun(state: SessionState, entry: RunEntry): void {
  state.runs.push(entry);
  state.runs.sort((a, b) => a.submittedAt - b.submittedAt);
}

export function updateRun(state: SessionState, info: RunInfo): void {
  const entry = state.runs.find((r) => r.id === info.id);
  if (entry) entry.info = info;
}

export function resetFlow(state: SessionState): void {
  state.page = "home";
  state.activeDataset = null;
  state.preprocessSteps = [];
  state.selectedAlgorithm = null;
  state.form = null;
  state.selectedRun = null;
  state.selectedBicluster = 0;
  state.vizKind = "heatmap";
  state.validationIndices = ["all"];
  state.referenceRun = null;
  // state.datasets and state.runs deliberately untouched
}
