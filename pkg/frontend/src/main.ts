/** Browser entry point: wires the controller to the DOM. */

import { HttpApiClient } from "./api.js";
import { renderApp } from "./render.js";
import { SessionController } from "./state.js";

const DEFAULT_BASE = "http://127.0.0.1:8080";

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? DEFAULT_BASE;
}

function start(): void {
  const api = new HttpApiClient(apiBase());
  const controller = new SessionController(api);

  const root = document.getElementById("app");
  const input = document.getElementById("symptom-input") as HTMLInputElement | null;
  const status = document.getElementById("status");
  if (!root || !input) throw new Error("missing #app or #symptom-input");

  controller.subscribe((state) => {
    root.innerHTML = renderApp(state);
    if (input.value !== state.searchText) input.value = state.searchText;
  });
  root.innerHTML = renderApp(controller.getState());

  input.addEventListener("input", () => controller.setSearchText(input.value));

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const suggestion = target.closest<HTMLElement>(".suggestion");
    if (suggestion?.dataset.syd && suggestion.dataset.name) {
      controller.addSymptom({
        syd: Number(suggestion.dataset.syd),
        name: suggestion.dataset.name,
      });
      input.focus();
      return;
    }
    const remove = target.closest<HTMLElement>(".chip-remove");
    if (remove?.dataset.syd) {
      controller.removeSymptom(Number(remove.dataset.syd));
    }
  });

  api
    .health()
    .then((body) => {
      if (status) {
        status.textContent =
          body.status === "ready"
            ? `model ${body.model_hash?.slice(0, 12)} · ${body.corpus_counts?.diseases} diseases`
            : "service is up but no model is loaded";
      }
    })
    .catch(() => {
      if (status) status.textContent = `cannot reach the service at ${apiBase()}`;
    });
}

start();
