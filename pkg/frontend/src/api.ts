import type {
  ApiError,
  RecentResponse,
  SearchResponse,
  TopResponse,
  WhoamiResponse,
} from "./types.js";
import type { SearchState } from "./state.js";

export class ApiRequestError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiError) {
    super(body.message || body.error);
    this.code = body.error;
    this.status = status;
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url, { credentials: "same-origin" });
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiRequestError(resp.status, body as ApiError);
  }
  return body as T;
}

export function searchUrl(state: SearchState, base = ""): string {
  const params = new URLSearchParams({ q: state.q, view: state.view });
  if (state.page !== 1) params.set("page", String(state.page));
  return `${base}/search?${params.toString()}`;
}

export class ApiClient {
  constructor(private readonly base = "") {}

  search(state: SearchState): Promise<SearchResponse> {
    return getJson<SearchResponse>(searchUrl(state, this.base));
  }

  recent(n = 10): Promise<RecentResponse> {
    return getJson<RecentResponse>(`${this.base}/analytics/recent?n=${n}`);
  }

  top(n = 10): Promise<TopResponse> {
    return getJson<TopResponse>(`${this.base}/analytics/top?n=${n}`);
  }

  whoami(): Promise<WhoamiResponse> {
    return getJson<WhoamiResponse>(`${this.base}/whoami`);
  }
}
