// Application shell: top navigation, page dispatch, reset flow.

import * as api from "./api";
import { renderHome } from "./pages/home";
import { renderValidation } from "./pages/validation";
import { renderVisualization } from "./pages/visualization";
import { SessionState, initialState, resetFlow } from "./state";

export function createApp(root: HTMLElement): { state: SessionState; rerender: () => void } {
  const state = initialState();

  const nav = document.createElement("nav");
  nav.className = "top-nav";
  const content = document.createElement("main");
  content.className = "content";
  root.append(nav, content);

  const pages: [SessionState["page"], string][] = [
    ["home", "Home"],
    ["visualization", "Visualization"],
    ["validation", "Validation"],
  ];

  function rerender(): void {
    nav.innerHTML = "";
    for (const [page, label] of pages) {
      const btn = document.createElement("button");
      btn.textContent = label;
      btn.className = state.page === page ? "nav active" : "nav";
      btn.dataset.page = page;
      btn.addEventListener("click", () => {
        state.page = page;
        rerender();
      });
      nav.appendChild(btn);
    }
    const reset = document.createElement("button");
    reset.textContent = "Reset";
    reset.className = "nav reset";
    reset.addEventListener("click", () => {
      resetFlow(state);
      rerender();
    });
    nav.appendChild(reset);

    if (state.page === "home") {
      renderHome(content, state, rerender);
    } else if (state.page === "visualization") {
      void renderVisualization(content, state, rerender);
    } else {
      void renderValidation(content, state, rerender);
    }
  }

  rerender();
  return { state, rerender };
}

export async function bootstrap(root: HTMLElement) {
  const app = createApp(root);
  const [algorithms, datasets] = await Promise.all([
    api.listAlgorithms(),
    api.listDatasets(),
  ]);
  app.state.algorithms = algorithms;
  app.state.datasets = datasets;
  app.rerender();
  return app;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void bootstrap(document.getElementById("app")!);
}
