// View state lives in the URL query string so searches are linkable
// and the back button works.

export type View = "traditional" | "clustered";

export interface SearchState {
  q: string;
  view: View;
  page: number;
}

export const DEFAULT_STATE: SearchState = { q: "", view: "traditional", page: 1 };

export function encodeState(state: SearchState): string {
  const params = new URLSearchParams();
  if (state.q) params.set("q", state.q);
  if (state.view !== "traditional") params.set("view", state.view);
  if (state.page !== 1) params.set("page", String(state.page));
  const qs = params.toString();
  return qs ? "?" + qs : "";
}

export function decodeState(search: string): SearchState {
  const params = new URLSearchParams(search);
  const view = params.get("view") === "clustered" ? "clustered" : "traditional";
  const page = parseInt(params.get("page") ?? "1", 10);
  return {
    q: params.get("q") ?? "",
    view,
    page: Number.isFinite(page) && page >= 1 ? page : 1,
  };
}
