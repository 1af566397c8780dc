/** Session state and the controller driving it.
 *
 * The displayed ranking always corresponds to the current chip set, or is
 * flagged stale while a request is in flight or after a failure. At most
 * one /recommend request is in flight: a newer chip change aborts the
 * older request and the last write wins. Autocomplete queries are
 * debounced and versioned the same way.
 */

import type { ApiClient, RecommendationResponse, SymptomRecord } from "./api.js";

export interface SymptomChip {
  syd: number;
  name: string;
}

export interface SessionState {
  chips: SymptomChip[];
  searchText: string;
  suggestions: SymptomRecord[];
  response: RecommendationResponse | null;
  pending: boolean;
  /** True whenever `response` does not reflect the current chip set. */
  stale: boolean;
  errorBanner: string | null;
}

export const AUTOCOMPLETE_DEBOUNCE_MS = 150;
export const AUTOCOMPLETE_LIMIT = 10;
export const RESULT_COUNT = 4;

export function initialState(): SessionState {
  return {
    chips: [],
    searchText: "",
    suggestions: [],
    response: null,
    pending: false,
    stale: false,
    errorBanner: null,
  };
}

type Scheduler = (fn: () => void, ms: number) => ReturnType<typeof setTimeout>;

export class SessionController {
  private state: SessionState = initialState();
  private listeners: Array<(s: SessionState) => void> = [];
  private recommendSeq = 0;
  private recommendAbort: AbortController | null = null;
  private searchSeq = 0;
  private searchTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly schedule: Scheduler = (fn, ms) => setTimeout(fn, ms),
    private readonly cancel: (t: ReturnType<typeof setTimeout>) => void = clearTimeout,
  ) {}

  getState(): SessionState {
    return this.state;
  }

  subscribe(listener: (s: SessionState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(update: Partial<SessionState>): void {
    this.state = { ...this.state, ...update };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Debounced autocomplete; stale suggestion responses are dropped. */
  setSearchText(text: string): void {
    this.set({ searchText: text });
    if (this.searchTimer !== null) this.cancel(this.searchTimer);
    const trimmed = text.trim();
    if (!trimmed) {
      this.searchSeq += 1;
      this.set({ suggestions: [] });
      return;
    }
    this.searchTimer = this.schedule(() => {
      const seq = ++this.searchSeq;
      this.api
        .searchSymptoms(trimmed, AUTOCOMPLETE_LIMIT)
        .then((records) => {
          if (seq === this.searchSeq) this.set({ suggestions: records });
        })
        .catch(() => {
          if (seq === this.searchSeq) this.set({ suggestions: [] });
        });
    }, AUTOCOMPLETE_DEBOUNCE_MS);
  }

  /** Add a chip picked from the suggestions; duplicates are ignored. */
  addSymptom(chip: SymptomChip): void {
    if (this.state.chips.some((c) => c.syd === chip.syd)) return;
    this.set({
      chips: [...this.state.chips, chip],
      searchText: "",
      suggestions: [],
    });
    this.requery();
  }

  /** Remove a chip by id; unknown ids are a no-op. */
  removeSymptom(syd: number): void {
    if (!this.state.chips.some((c) => c.syd === syd)) return;
    this.set({ chips: this.state.chips.filter((c) => c.syd !== syd) });
    this.requery();
  }

  private requery(): void {
    this.recommendAbort?.abort();
    if (this.state.chips.length === 0) {
      // empty chip set: clear the panel without issuing a request
      this.recommendSeq += 1;
      this.recommendAbort = null;
      this.set({ response: null, pending: false, stale: false, errorBanner: null });
      return;
    }
    const seq = ++this.recommendSeq;
    const abort = new AbortController();
    this.recommendAbort = abort;
    // previous results stay visible but are flagged stale until the
    // response for the current chip set lands
    this.set({ pending: true, stale: this.state.response !== null });
    const ids = this.state.chips.map((c) => c.syd);
    this.api
      .recommend(ids, RESULT_COUNT, abort.signal)
      .then((response) => {
        if (seq !== this.recommendSeq) return; // superseded
        this.set({ response, pending: false, stale: false, errorBanner: null });
      })
      .catch((err: unknown) => {
        if (seq !== this.recommendSeq) return;
        if (err instanceof DOMException && err.name === "AbortError") return;
        this.set({
          pending: false,
          stale: this.state.response !== null,
          errorBanner: err instanceof Error ? err.message : String(err),
        });
      });
  }
}
