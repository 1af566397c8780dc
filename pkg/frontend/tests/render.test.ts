/** Rendering invariants: payload-exact scores, payload ordering, markers. */

import { describe, expect, it } from "vitest";

import { formatScore, renderApp, renderResults } from "../src/render.js";
import { initialState } from "../src/state.js";
import type { SessionState } from "../src/state.js";
import { RECOMMEND } from "./replay.js";

function stateWith(partial: Partial<SessionState>): SessionState {
  return { ...initialState(), ...partial };
}

describe("results table", () => {
  it("shows every score exactly as serialized in the payload", () => {
    const response = RECOMMEND["1,2"];
    const html = renderResults(stateWith({
      chips: [{ syd: 1, name: "a" }, { syd: 2, name: "b" }],
      response,
    }));
    for (const result of response.results) {
      expect(html).toContain(`<td class="score">${formatScore(result.score)}</td>`);
      expect(Number(formatScore(result.score))).toBe(result.score);
    }
  });

  it("renders rows in payload order", () => {
    const response = RECOMMEND["2,81"];
    const html = renderResults(stateWith({ chips: [{ syd: 2, name: "b" }], response }));
    const positions = response.results.map((r) => html.indexOf(`data-did="${r.did}"`));
    expect(positions.every((p) => p >= 0)).toBe(true);
    expect([...positions].sort((a, b) => a - b)).toEqual(positions);
  });

  it("marks stale results and shows the error banner", () => {
    const html = renderResults(stateWith({
      chips: [{ syd: 1, name: "a" }],
      response: RECOMMEND["1"],
      stale: true,
      errorBanner: "network unreachable",
    }));
    expect(html).toContain("stale-marker");
    expect(html).toContain("network unreachable");
  });

  it("renders the no-treatment marker", () => {
    const response = structuredClone(RECOMMEND["1"]);
    response.results[0].remedies = [];
    response.results[0].no_recorded_treatment = true;
    const html = renderResults(stateWith({ chips: [{ syd: 1, name: "a" }], response }));
    expect(html).toContain("no recorded treatment");
  });

  it("empty chip set renders the empty-state prompt", () => {
    const html = renderApp(initialState());
    expect(html).toContain("Add a symptom");
  });

  it("escapes HTML in names and remedies", () => {
    const response = structuredClone(RECOMMEND["1"]);
    response.results[0].disease = "<script>alert(1)</script>";
    const html = renderResults(stateWith({ chips: [{ syd: 1, name: "a" }], response }));
    expect(html).not.toContain("<script>alert(1)</script>");
    expect(html).toContain("&lt;script&gt;");
  });
});
