// Shapes returned by the search service (see docs/api.md in the repo root).

export interface ApiHit {
  doc_number: number;
  score: number;
  link: string;
  title: string;
  snippet: string;
  date: string | null;
  author: string;
  categories: string[];
  keywords: string[];
  comment_count: number;
  matched_fields: string[];
}

interface Paged {
  total: number;
  page: number;
  size: number;
  total_pages: number;
  pages: number[];
}

export interface TraditionalResponse extends Paged {
  hits: ApiHit[];
}

export interface ClusterNode {
  label: string;
  hit_count: number;
  hits: ApiHit[];
}

export interface ClusteredResponse extends Paged {
  clusters: ClusterNode[];
}

export type SearchResponse = TraditionalResponse | ClusteredResponse;

export interface ApiError {
  error: string;
  message: string;
}

export interface RecentResponse {
  recent: string[];
}

export interface TopEntry {
  query: string;
  count: number;
}

export interface TopResponse {
  top: TopEntry[];
}

export interface WhoamiResponse {
  os: string;
  browser: string;
  ip: string;
}

export function isClustered(r: SearchResponse): r is ClusteredResponse {
  return "clusters" in r;
}
