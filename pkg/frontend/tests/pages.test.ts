import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { bootstrap } from "../src/main";
import { MockService } from "./mockService";

let svc: MockService;
let root: HTMLElement;

beforeEach(() => {
  svc = new MockService();
  svc.install();
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app")!;
});

afterEach(() => {
  vi.unstubAllGlobals();
});

function flush(): Promise<void> {
  return new Promise((r) => setTimeout(r, 0));
}

function click(selector: string): void {
  const node = root.querySelector(selector) as HTMLElement | null;
  expect(node, selector).not.toBeNull();
  node!.click();
}

describe("home page", () => {
  it("prefills the CC form from the schema and gates submission", async () => {
    const app = await bootstrap(root);
    // no dataset, no algorithm: submission disabled
    let submit = root.querySelector(".submit-run") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);

    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "cc";
    picker.dispatchEvent(new Event("change"));

    const deltaInput = root.querySelector(
      '.param-row[data-param="delta"] input') as HTMLInputElement;
    expect(deltaInput.value).toBe("1");
    const alphaInput = root.querySelector(
      '.param-row[data-param="alpha"] input') as HTMLInputElement;
    expect(alphaInput.value).toBe("1.2");
    const nInput = root.querySelector(
      '.param-row[data-param="n"] input') as HTMLInputElement;
    expect(nInput.value).toBe("100");

    submit = root.querySelector(".submit-run") as HTMLButtonElement;
    expect(submit.disabled).toBe(false);

    // invalid value disables submission and shows the error inline
    nInput.value = "not-a-number";
    nInput.dispatchEvent(new Event("input"));
    expect((root.querySelector(
      '.param-row[data-param="n"] .field-error') as HTMLElement).textContent)
      .toMatch(/integer/);
    submit = root.querySelector(".submit-run") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    expect(app.state.form!.get("n")!.error).not.toBeNull();
  });

  it("runs a job to completion and shows it in history", async () => {
    const app = await bootstrap(root);
    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "cc";
    picker.dispatchEvent(new Event("change"));
    click(".submit-run");
    await flush();
    await flush();
    const row = root.querySelector('tr[data-run="job-1"]')!;
    expect(row.querySelector(".run-status")!.textContent).toBe("done");
    expect(row.querySelector(".run-count")!.textContent).toBe("2");
    expect(app.state.runs).toHaveLength(1);
  });

  it("failed jobs show the server detail in the history row", async () => {
    await bootstrap(root);
    svc.failNextRunWith = "DomainError: bimax requires a binary matrix";
    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "bimax";
    picker.dispatchEvent(new Event("change"));
    click(".submit-run");
    await flush();
    await flush();
    const status = root.querySelector(
      'tr[data-run="job-1"] .run-status')!.textContent;
    expect(status).toContain("failed");
    expect(status).toContain("binary matrix");
  });

  it("renders server 4xx inline for preprocessing", async () => {
    await bootstrap(root);
    click(".dataset-pick");
    const stepInput = root.querySelector(".step-input") as HTMLInputElement;
    stepInput.value = '{"op": "mystery"}';
    click(".add-step");
    click(".apply-steps");
    await flush();
    expect(root.querySelector(".preprocess .inline-error")!.textContent)
      .toContain("mystery");
  });
});

describe("visualization page", () => {
  async function runJob() {
    const app = await bootstrap(root);
    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "cc";
    picker.dispatchEvent(new Event("change"));
    click(".submit-run");
    await flush();
    await flush();
    app.state.selectedRun = "job-1";
    return app;
  }

  it("renders plot tabs and swaps bicluster without reload", async () => {
    const app = await runJob();
    app.state.page = "visualization";
    app.rerender();
    await flush();
    const frame = root.querySelector(".viz-frame") as HTMLObjectElement;
    expect(frame.data).toContain("/api/runs/job-1/viz/heatmap?bicluster=0");

    const bpicker = root.querySelector(".bicluster-picker") as HTMLSelectElement;
    expect(bpicker.options[1].textContent).toBe("1: 2x3");
    bpicker.value = "1";
    bpicker.dispatchEvent(new Event("change"));
    await flush();
    expect((root.querySelector(".viz-frame") as HTMLObjectElement).data)
      .toContain("bicluster=1");
    expect(app.state.selectedBicluster).toBe(1);
  });

  it("disables tabs and shows an empty state for zero biclusters", async () => {
    const app = await runJob();
    svc.resultDoc = { ...svc.resultDoc, n_biclusters: 0, biclusters: [] };
    app.state.page = "visualization";
    app.rerender();
    await flush();
    expect(root.querySelector(".empty-state")).not.toBeNull();
    const tabs = root.querySelectorAll(".viz-tabs .tab");
    expect(tabs.length).toBe(3);
    tabs.forEach((t) => expect((t as HTMLButtonElement).disabled).toBe(true));
  });
});

describe("validation page", () => {
  it("shows per-bicluster rows with the server aggregate row", async () => {
    const app = await bootstrap(root);
    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "cc";
    picker.dispatchEvent(new Event("change"));
    click(".submit-run");
    await flush();
    await flush();
    app.state.selectedRun = "job-1";
    app.state.page = "validation";
    app.rerender();
    await flush();

    const rows = root.querySelectorAll(".index-table tr");
    expect(rows.length).toBe(4); // header + 2 biclusters + aggregate
    const agg = root.querySelector(".aggregate-row")!;
    const cells = Array.from(agg.querySelectorAll("td")).map(
      (td) => td.textContent);
    // aggregate row equals the column means the server reported
    expect(cells).toEqual(["mean", "0.210000", "0.700000", "2.00000",
      "0.700000"]);
    // self-comparison Jaccard diagonal of 1.0
    const jac = root.querySelectorAll(".matrix.jaccard td");
    expect(jac[0].textContent).toBe("1.00000");
    expect(jac[3].textContent).toBe("1.00000");
  });
});

describe("reset flow", () => {
  it("returns home keeping datasets and run history", async () => {
    const app = await bootstrap(root);
    click(".dataset-pick");
    const picker = root.querySelector(".algo-picker") as HTMLSelectElement;
    picker.value = "cc";
    picker.dispatchEvent(new Event("change"));
    click(".submit-run");
    await flush();
    await flush();
    app.state.page = "validation";
    app.rerender();

    click(".reset");
    expect(app.state.page).toBe("home");
    expect(app.state.activeDataset).toBeNull();
    expect(app.state.selectedAlgorithm).toBeNull();
    // dataset list unchanged, history persists
    expect(root.querySelectorAll(".dataset-pick").length).toBeGreaterThan(0);
    expect(root.querySelector('tr[data-run="job-1"]')).not.toBeNull();
  });
});
