// Home page: dataset upload/selection, preprocessing builder, algorithm
// picker with schema-driven parameter form, run submission and history.

import * as api from "../api";
import { buildForm, formPayload, formValid, renderForm, setField } from "../forms";
import { SessionState, addRun, updateRun } from "../state";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function statusLabel(entry: { info: api.RunInfo | null }): string {
  if (!entry.info) return "submitted";
  if (entry.info.status === "failed") {
    return `failed: ${entry.info.error ?? "unknown error"}`;
  }
  return entry.info.status;
}

export function renderHome(
  container: HTMLElement,
  state: SessionState,
  rerender: () => void,
): void {
  container.innerHTML = "";

  // --- datasets ---
  const datasets = el("section", "datasets");
  datasets.appendChild(el("h2", undefined, "Datasets"));
  const list = el("ul", "dataset-list");
  for (const d of state.datasets) {
    const item = el("li", d.id === state.activeDataset ? "active" : "");
    const btn = el("button", "dataset-pick", `${d.id} (${d.shape[0]}x${d.shape[1]})`);
    btn.addEventListener("click", () => {
      state.activeDataset = d.id;
      rerender();
    });
    item.appendChild(btn);
    list.appendChild(item);
  }
  datasets.appendChild(list);

  const upload = el("input") as HTMLInputElement;
  upload.type = "file";
  upload.className = "upload";
  upload.addEventListener("change", async () => {
    const file = upload.files?.[0];
    if (!file) return;
    try {
      const res = await api.uploadDataset(file, file.name);
      state.datasets = await api.listDatasets();
      state.activeDataset = res.id;
      rerender();
    } catch (err) {
      showError(datasets, err);
    }
  });
  datasets.appendChild(upload);
  container.appendChild(datasets);

  // --- preprocessing builder ---
  const prep = el("section", "preprocess");
  prep.appendChild(el("h2", undefined, "Preprocessing"));
  const stepsView = el("pre", "steps-view",
    JSON.stringify(state.preprocessSteps, null, 1));
  prep.appendChild(stepsView);
  const stepInput = el("input") as HTMLInputElement;
  stepInput.className = "step-input";
  stepInput.placeholder = '{"op": "normalize", "kind": "zscore_rows"}';
  const addStep = el("button", "add-step", "Add step");
  addStep.addEventListener("click", () => {
    try {
      state.preprocessSteps.push(JSON.parse(stepInput.value));
      rerender();
    } catch (err) {
      showError(prep, err);
    }
  });
  const applySteps = el("button", "apply-steps", "Apply");
  applySteps.disabled = !state.activeDataset || state.preprocessSteps.length === 0;
  applySteps.addEventListener("click", async () => {
    if (!state.activeDataset) return;
    try {
      const res = await api.preprocessDataset(state.activeDataset,
        state.preprocessSteps);
      state.datasets = await api.listDatasets();
      state.activeDataset = res.id;
      state.preprocessSteps = [];
      rerender();
    } catch (err) {
      showError(prep, err);
    }
  });
  prep.append(stepInput, addStep, applySteps);
  container.appendChild(prep);

  // --- algorithm picker and parameter form ---
  const algo = el("section", "algorithm");
  algo.appendChild(el("h2", undefined, "Algorithm"));
  const picker = el("select", "algo-picker") as HTMLSelectElement;
  const blank = el("option", undefined, "choose...");
  blank.setAttribute("value", "");
  picker.appendChild(blank);
  for (const a of state.algorithms) {
    const opt = el("option", undefined, a.name) as HTMLOptionElement;
    opt.value = a.name;
    opt.selected = a.name === state.selectedAlgorithm;
    picker.appendChild(opt);
  }
  picker.addEventListener("change", () => {
    const chosen = state.algorithms.find((a) => a.name === picker.value);
    state.selectedAlgorithm = chosen ? chosen.name : null;
    state.form = chosen ? buildForm(chosen) : null;
    rerender();
  });
  algo.appendChild(picker);

  if (state.form) {
    algo.appendChild(
      renderForm(state.form, (name, raw) => {
        setField(state.form!, name, raw);
        rerender();
      }),
    );
  }

  const submit = el("button", "submit-run", "Run");
  submit.disabled =
    !state.activeDataset || !state.selectedAlgorithm || !state.form ||
    !formValid(state.form);
  submit.addEventListener("click", async () => {
    if (submit.disabled || !state.form) return;
    try {
      const res = await api.submitRun(
        state.activeDataset!,
        state.selectedAlgorithm!,
        formPayload(state.form),
        42,
      );
      addRun(state, {
        id: res.id,
        algorithm: state.selectedAlgorithm!,
        datasetId: state.activeDataset!,
        submittedAt: Date.now(),
        info: null,
      });
      rerender();
      api.pollRun(res.id, (info) => {
        updateRun(state, info);
        rerender();
      }).catch((err) => showError(algo, err));
    } catch (err) {
      showError(algo, err);
    }
  });
  algo.appendChild(submit);
  container.appendChild(algo);

  // --- run history ---
  const history = el("section", "history");
  history.appendChild(el("h2", undefined, "Runs"));
  const table = el("table", "run-table");
  for (const entry of state.runs) {
    const row = el("tr", entry.info?.status ?? "pending");
    row.dataset.run = entry.id;
    row.appendChild(el("td", undefined, entry.id));
    row.appendChild(el("td", undefined, entry.algorithm));
    row.appendChild(el("td", "run-status", statusLabel(entry)));
    const n = entry.info?.status === "done"
      ? String(entry.info.n_biclusters ?? "")
      : "";
    row.appendChild(el("td", "run-count", n));
    row.addEventListener("click", () => {
      state.selectedRun = entry.id;
      rerender();
    });
    table.appendChild(row);
  }
  history.appendChild(table);
  container.appendChild(history);
}

function showError(section: HTMLElement, err: unknown): void {
  let box = section.querySelector(".inline-error") as HTMLElement | null;
  if (!box) {
    box = el("p", "inline-error");
    section.appendChild(box);
  }
  box.textContent = err instanceof Error ? err.message : String(err);
}
