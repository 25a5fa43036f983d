import type { ViewState } from "./state.js";

function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const CATEGORY_LABELS: Record<string, string> = {
  legal: "Removed: illegal content",
  ethical: "Removed: against community guidelines",
  "legal + ethical": "Removed: illegal content and against community guidelines",
};

/** Pure view: state in, HTML string out.  The page shell assigns this to
 * a container's innerHTML on every store change. */
export function render(state: ViewState): string {
  const parts: string[] = [];

  parts.push(
    `<div class="status">${state.connected ? "connected" : "disconnected"}` +
      (state.room ? ` — room ${escapeHtml(state.room)}` : "") +
      `</div>`,
  );

  if (state.room && state.minorsPresent[state.room]) {
    parts.push(`<div class="minors">Minors are present in this room</div>`);
  }

  for (const banner of state.banners) {
    parts.push(
      `<div class="banner" data-ref="${escapeHtml(banner.ref)}">` +
        `<strong>${CATEGORY_LABELS[banner.category]}</strong>` +
        `<span class="reason">${escapeHtml(banner.reason)}</span>` +
        (banner.counter ? `<p class="counter">${escapeHtml(banner.counter)}</p>` : "") +
        `</div>`,
    );
  }

  for (const notice of state.notices) {
    parts.push(`<div class="notice">Message held (${escapeHtml(notice.cause)})</div>`);
  }

  for (const error of state.errors) {
    parts.push(`<div class="error">${escapeHtml(error)}</div>`);
  }

  parts.push(`<ul class="messages">`);
  for (const m of state.messages) {
    parts.push(
      `<li><b>${escapeHtml(m.author)}</b>: ${escapeHtml(m.text)}</li>`,
    );
  }
  parts.push(`</ul>`);
  return parts.join("\n");
}
