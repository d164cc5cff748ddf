// Validation page: per-bicluster index table with the server's aggregate
// row, plus an optional reference run for Jaccard/Hausdorff matrices.

import * as api from "../api";
import { SessionState } from "../state";

const INDEX_COLUMNS = ["msr", "constant_variance", "sign_variance", "sb_score"];

function fmt(v: number | null | undefined): string {
  if (v === null || v === undefined) return "n/a";
  return Number(v).toPrecision(6);
}

function matrixTable(name: string, rows: number[][]): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = `matrix ${name}`;
  const h = document.createElement("h3");
  h.textContent = name;
  wrap.appendChild(h);
  const table = document.createElement("table");
  for (const row of rows) {
    const tr = document.createElement("tr");
    for (const v of row) {
      const td = document.createElement("td");
      td.textContent = fmt(v);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}

export async function renderValidation(
  container: HTMLElement,
  state: SessionState,
  rerender: () => void,
): Promise<void> {
  container.innerHTML = "";
  const h = document.createElement("h2");
  h.textContent = "Validation";
  container.appendChild(h);

  if (!state.selectedRun) {
    const msg = document.createElement("p");
    msg.className = "empty-state";
    msg.textContent = "Select a completed run on the home page first.";
    container.appendChild(msg);
    return;
  }

  const refPicker = document.createElement("select");
  refPicker.className = "reference-picker";
  const none = document.createElement("option");
  none.value = "";
  none.textContent = "no reference (self)";
  refPicker.appendChild(none);
  for (const r of state.runs) {
    if (r.info?.status !== "done") continue;
    const opt = document.createElement("option");
    opt.value = r.id;
    opt.textContent = `${r.id} (${r.algorithm})`;
    opt.selected = r.id === state.referenceRun;
    refPicker.appendChild(opt);
  }
  refPicker.addEventListener("change", () => {
    state.referenceRun = refPicker.value || null;
    rerender();
  });
  container.appendChild(refPicker);

  let doc: api.ValidationDoc;
  try {
    doc = await api.validateRun(state.selectedRun, state.validationIndices,
      state.referenceRun ?? undefined);
  } catch (err) {
    const msg = document.createElement("p");
    msg.className = "inline-error";
    msg.textContent = (err as Error).message;
    container.appendChild(msg);
    return;
  }

  const cols = INDEX_COLUMNS.filter(
    (c) => doc.per_bicluster.length > 0 && c in doc.per_bicluster[0]);
  const table = document.createElement("table");
  table.className = "index-table";
  const head = document.createElement("tr");
  head.appendChild(document.createElement("th")).textContent = "bicluster";
  for (const c of cols) {
    const th = document.createElement("th");
    th.textContent = c;
    head.appendChild(th);
  }
  table.appendChild(head);
  doc.per_bicluster.forEach((entry, i) => {
    const tr = document.createElement("tr");
    tr.appendChild(document.createElement("td")).textContent = String(i);
    for (const c of cols) {
      const td = document.createElement("td");
      td.textContent = fmt(entry[c]);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  });
  const agg = document.createElement("tr");
  agg.className = "aggregate-row";
  agg.appendChild(document.createElement("td")).textContent = "mean";
  for (const c of cols) {
    const td = document.createElement("td");
    td.textContent = fmt(doc.aggregates[c]);
    agg.appendChild(td);
  }
  table.appendChild(agg);
  container.appendChild(table);

  const mse = document.createElement("p");
  mse.className = "overall-mse";
  mse.textContent = `overall MSE: ${fmt(doc.overall_mse)}`;
  container.appendChild(mse);

  if (doc.jaccard) container.appendChild(matrixTable("jaccard", doc.jaccard));
  if (doc.hausdorff) {
    container.appendChild(matrixTable("hausdorff", doc.hausdorff));
  }
}
