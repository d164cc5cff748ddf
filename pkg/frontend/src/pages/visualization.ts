// Visualization page: heat map / gene plot / cluster plot tabs for the
// selected run, with a bicluster selector. The SVG documents come straight
// from the service; switching biclusters just swaps the object URLs.

import * as api from "../api";
import { SessionState } from "../state";

const KINDS = ["heatmap", "gene_plot", "cluster_plot"] as const;

export async function renderVisualization(
  container: HTMLElement,
  state: SessionState,
  rerender: () => void,
): Promise<void> {
  container.innerHTML = "";
  const h = document.createElement("h2");
  h.textContent = "Visualization";
  container.appendChild(h);

  if (!state.selectedRun) {
    const msg = document.createElement("p");
    msg.className = "empty-state";
    msg.textContent = "Select a completed run on the home page first.";
    container.appendChild(msg);
    return;
  }

  let doc: api.RunResultDoc;
  try {
    doc = await api.runBiclusters(state.selectedRun);
  } catch (err) {
    const msg = document.createElement("p");
    msg.className = "inline-error";
    msg.textContent = (err as Error).message;
    container.appendChild(msg);
    return;
  }

  const empty = doc.n_biclusters === 0;
  const tabs = document.createElement("nav");
  tabs.className = "viz-tabs";
  for (const kind of KINDS) {
    const tab = document.createElement("button");
    tab.textContent = kind;
    tab.className = kind === state.vizKind ? "tab active" : "tab";
    tab.disabled = empty;
    tab.addEventListener("click", () => {
      state.vizKind = kind;
      rerender();
    });
    tabs.appendChild(tab);
  }
  container.appendChild(tabs);

  if (empty) {
    const msg = document.createElement("p");
    msg.className = "empty-state";
    msg.textContent = "This run produced no biclusters.";
    container.appendChild(msg);
    return;
  }

  const picker = document.createElement("select");
  picker.className = "bicluster-picker";
  for (let i = 0; i < doc.n_biclusters; i++) {
    const opt = document.createElement("option");
    opt.value = String(i);
    const b = doc.biclusters[i];
    opt.textContent = `${i}: ${b.row_indices.length}x${b.col_indices.length}`;
    opt.selected = i === state.selectedBicluster;
    picker.appendChild(opt);
  }
  picker.addEventListener("change", () => {
    state.selectedBicluster = parseInt(picker.value, 10);
    rerender();
  });
  container.appendChild(picker);

  // the overview heat map shows the whole matrix; the per-bicluster kinds
  // take the selector into account
  const frame = document.createElement("object");
  frame.className = "viz-frame";
  frame.type = "image/svg+xml";
  frame.data = api.vizUrl(state.selectedRun, state.vizKind,
    state.vizKind === "cluster_plot" ? undefined : state.selectedBicluster);
  container.appendChild(frame);
}
