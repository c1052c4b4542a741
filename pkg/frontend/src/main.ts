import { ApiClient, ApiRequestError } from "./api.js";
import { decodeState, encodeState, type SearchState, type View } from "./state.js";
import { isClustered } from "./types.js";
import {
  renderClustered,
  renderError,
  renderPager,
  renderTraditional,
} from "./render.js";
import { renderRecent, renderTop, renderWhoami } from "./sidebar.js";

const api = new ApiClient("");

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id} in index.html`);
  return node;
}

async function refreshSidebar(onPick: (q: string) => void): Promise<void> {
  const host = byId("sidebar");
  host.textContent = "";
  try {
    const [recent, top, who] = await Promise.all([
      api.recent(8),
      api.top(8),
      api.whoami(),
    ]);
    host.appendChild(renderRecent(recent, onPick, document));
    host.appendChild(renderTop(top, document));
    host.appendChild(renderWhoami(who, document));
  } catch {
    // sidebar is decorative; a failed fetch should not break search
  }
}

async function runSearch(state: SearchState, push: boolean): Promise<void> {
  const results = byId("results");
  const pagerHost = byId("pager-host");
  if (push) {
    history.pushState(null, "", encodeState(state) || location.pathname);
  }
  (byId("q") as HTMLInputElement).value = state.q;
  (byId("view") as HTMLSelectElement).value = state.view;

  if (!state.q.trim()) {
    results.textContent = "";
    pagerHost.textContent = "";
    return;
  }

  results.textContent = "Searching…";
  pagerHost.textContent = "";
  try {
    const payload = await api.search(state);
    results.textContent = "";
    results.appendChild(
      isClustered(payload)
        ? renderClustered(payload, document)
        : renderTraditional(payload, document),
    );
    pagerHost.appendChild(
      renderPager(payload.pages, payload.page, (page) => {
        void runSearch({ ...state, page }, true);
      }, document),
    );
  } catch (err) {
    results.textContent = "";
    if (err instanceof ApiRequestError) {
      results.appendChild(renderError(err.code, err.message, document));
    } else {
      results.appendChild(renderError("network", "Search service unreachable.", document));
    }
  }
  void refreshSidebar((q) => void runSearch({ q, view: state.view, page: 1 }, true));
}

export function boot(): void {
  const form = byId("search-form") as HTMLFormElement;
  const input = byId("q") as HTMLInputElement;
  const viewSelect = byId("view") as HTMLSelectElement;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void runSearch(
      { q: input.value, view: viewSelect.value as View, page: 1 },
      true,
    );
  });
  viewSelect.addEventListener("change", () => {
    void runSearch(
      { q: input.value, view: viewSelect.value as View, page: 1 },
      true,
    );
  });
  window.addEventListener("popstate", () => {
    void runSearch(decodeState(location.search), false);
  });

  void runSearch(decodeState(location.search), false);
}

if (typeof window !== "undefined" && document.getElementById("search-form")) {
  boot();
}
