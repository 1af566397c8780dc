/** Pure HTML rendering of the session state.
 *
 * Results are rendered in response order (no client-side re-sorting) and
 * scores are printed with the same six decimal places the service
 * serializes.
 */

import type { SessionState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function formatScore(score: number): string {
  return score.toFixed(6);
}

export function renderChips(state: SessionState): string {
  if (state.chips.length === 0) {
    return '<p class="empty-chips">No symptoms selected.</p>';
  }
  const chips = state.chips
    .map(
      (chip) =>
        `<span class="chip" data-syd="${chip.syd}">${escapeHtml(chip.name)}` +
        `<button class="chip-remove" data-syd="${chip.syd}" ` +
        `aria-label="Remove ${escapeHtml(chip.name)}">&times;</button></span>`,
    )
    .join("");
  return `<div class="chips">${chips}</div>`;
}

export function renderSuggestions(state: SessionState): string {
  if (state.suggestions.length === 0) return "";
  const items = state.suggestions
    .map(
      (record) =>
        `<li class="suggestion" data-syd="${record.syd}" ` +
        `data-name="${escapeHtml(record.name)}">${escapeHtml(record.name)}</li>`,
    )
    .join("");
  return `<ul class="suggestions">${items}</ul>`;
}

export function renderResults(state: SessionState): string {
  const banner = state.errorBanner
    ? `<div class="banner error">${escapeHtml(state.errorBanner)}</div>`
    : "";
  if (state.response === null) {
    if (state.chips.length === 0) {
      return `${banner}<p class="empty-state">Add a symptom to see likely diseases and treatments.</p>`;
    }
    return `${banner}<p class="loading">Looking up recommendations...</p>`;
  }
  const staleMark = state.stale
    ? '<div class="stale-marker">Results are stale: they do not reflect the current selection.</div>'
    : "";
  const rows = state.response.results
    .map((r, i) => {
      const remedies = r.no_recorded_treatment
        ? '<em class="no-treatment">no recorded treatment</em>'
        : `<ul class="remedies">${r.remedies
            .map((t) => `<li>${escapeHtml(t)}</li>`)
            .join("")}</ul>`;
      return (
        `<tr class="result" data-did="${r.did}"><td>${i + 1}</td>` +
        `<td class="disease">${escapeHtml(r.disease)}</td>` +
        `<td class="score">${formatScore(r.score)}</td>` +
        `<td>${remedies}</td></tr>`
      );
    })
    .join("");
  return (
    `${banner}${staleMark}` +
    `<table class="results"><thead><tr>` +
    `<th>#</th><th>Disease</th><th>Score</th><th>Treatment</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderApp(state: SessionState): string {
  return (
    `<section class="picker">${renderChips(state)}${renderSuggestions(state)}</section>` +
    `<section class="panel">${renderResults(state)}</section>`
  );
}
