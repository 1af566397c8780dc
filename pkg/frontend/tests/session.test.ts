/** Session flows against the recorded service responses. */

import { describe, expect, it } from "vitest";

import { SessionController } from "../src/state.js";
import type { SymptomChip } from "../src/state.js";
import { RECOMMEND, ReplayClient, flush, resultNames } from "./replay.js";

const UPPER: SymptomChip = { syd: 1, name: "Upper abdominal pain" };
const LOWER: SymptomChip = { syd: 2, name: "Lower abdominal pain" };
const RASH: SymptomChip = { syd: 81, name: "Rash" };

function immediate(fn: () => void): ReturnType<typeof setTimeout> {
  fn();
  return 0 as unknown as ReturnType<typeof setTimeout>;
}

function controllerWith(client: ReplayClient): SessionController {
  return new SessionController(client, immediate, () => {});
}

describe("adding the two abdominal symptoms", () => {
  it("renders the recorded disease/remedy panel in one round-trip per change", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);

    controller.addSymptom(UPPER);
    await flush();
    expect(resultNames(controller.getState().response!)).toEqual(
      resultNames(RECOMMEND["1"]),
    );

    controller.addSymptom(LOWER);
    await flush();
    const state = controller.getState();
    expect(client.recommendCalls).toEqual([[1], [1, 2]]);
    const names = resultNames(state.response!);
    expect(names).toContain("Ventral hernia");
    expect(names).toContain("Diverticulosis");
    const hernia = state.response!.results.find((r) => r.disease === "Ventral hernia")!;
    expect(hernia.remedies.some((t) => t.startsWith("Eating smaller meals"))).toBe(true);
    expect(state.pending).toBe(false);
    expect(state.stale).toBe(false);
  });

  it("keeps the response ordering exactly as the payload (no re-sorting)", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(LOWER);
    controller.addSymptom(RASH);
    await flush();
    expect(resultNames(controller.getState().response!)).toEqual(
      resultNames(RECOMMEND["2,81"]),
    );
  });

  it("ignores a duplicate chip", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();
    controller.addSymptom({ ...UPPER });
    await flush();
    expect(controller.getState().chips).toHaveLength(1);
    expect(client.recommendCalls).toEqual([[1]]);
  });
});

describe("removing chips", () => {
  it("re-renders to the single-symptom response after removing one of two", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    controller.addSymptom(LOWER);
    await flush();

    controller.removeSymptom(UPPER.syd);
    await flush();
    const state = controller.getState();
    expect(state.chips.map((c) => c.syd)).toEqual([2]);
    expect(state.response).toEqual(RECOMMEND["2"]);
    expect(client.recommendCalls.at(-1)).toEqual([2]);
  });

  it("add-then-remove returns the display to the prior state", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();
    const before = controller.getState();

    controller.addSymptom(LOWER);
    await flush();
    controller.removeSymptom(LOWER.syd);
    await flush();
    const after = controller.getState();
    expect(after.chips).toEqual(before.chips);
    expect(after.response).toEqual(before.response);
    expect(after.stale).toBe(false);
  });

  it("clears the panel without a request when the last chip goes", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();
    const callsBefore = client.recommendCalls.length;

    controller.removeSymptom(UPPER.syd);
    await flush();
    const state = controller.getState();
    expect(state.response).toBeNull();
    expect(state.stale).toBe(false);
    expect(client.recommendCalls.length).toBe(callsBefore);
  });

  it("removing an unknown id is a no-op", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();
    const before = controller.getState();
    controller.removeSymptom(999);
    await flush();
    expect(controller.getState()).toEqual(before);
  });
});

describe("failures and supersession", () => {
  it("offline request keeps previous results, marked stale, with a banner", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();
    const results = controller.getState().response;

    client.offline = true;
    controller.addSymptom(LOWER);
    await flush();
    const state = controller.getState();
    expect(state.response).toEqual(results);
    expect(state.stale).toBe(true);
    expect(state.errorBanner).toMatch(/network/);
    expect(state.pending).toBe(false);
  });

  it("marks the panel stale while a request is in flight", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(UPPER);
    await flush();

    client.deferNext = true;
    controller.addSymptom(LOWER);
    await flush();
    expect(controller.getState().pending).toBe(true);
    expect(controller.getState().stale).toBe(true);

    client.release("1,2");
    await flush();
    expect(controller.getState().stale).toBe(false);
    expect(controller.getState().response).toEqual(RECOMMEND["1,2"]);
  });

  it("a newer chip change supersedes the in-flight request (last write wins)", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.addSymptom(LOWER);
    await flush();

    client.deferNext = true;
    controller.addSymptom(RASH);      // in-flight for [2, 81], deferred
    await flush();
    expect(controller.getState().pending).toBe(true);

    controller.removeSymptom(RASH.syd);  // supersedes with [2]
    await flush();
    const state = controller.getState();
    expect(state.response).toEqual(RECOMMEND["2"]);
    expect(state.pending).toBe(false);
    expect(state.stale).toBe(false);
    expect(client.recommendCalls).toEqual([[2], [2, 81], [2]]);
  });
});

describe("autocomplete", () => {
  it("debounces and fills suggestions from the recorded payload", async () => {
    const client = new ReplayClient();
    let queued: (() => void) | null = null;
    const controller = new SessionController(
      client,
      (fn) => {
        queued = fn;
        return 0 as unknown as ReturnType<typeof setTimeout>;
      },
      () => {
        queued = null;
      },
    );
    controller.setSearchText("abd");
    controller.setSearchText("abdo");
    controller.setSearchText("abdominal");
    expect(client.searchCalls).toHaveLength(0);  // nothing before the timer fires
    queued!();
    await flush();
    expect(client.searchCalls).toEqual(["abdominal"]);  // earlier timers cancelled
    expect(controller.getState().suggestions.map((s) => s.syd)).toContain(1);
    expect(controller.getState().suggestions.map((s) => s.syd)).toContain(2);
  });

  it("clearing the input clears suggestions without a request", async () => {
    const client = new ReplayClient();
    const controller = controllerWith(client);
    controller.setSearchText("abdominal");
    await flush();
    controller.setSearchText("");
    await flush();
    expect(controller.getState().suggestions).toEqual([]);
  });
});
