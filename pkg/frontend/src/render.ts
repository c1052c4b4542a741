import type { ApiHit, ClusteredResponse, TraditionalResponse } from "./types.js";
import { renderSnippet } from "./highlight.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderHit(hit: ApiHit, doc: Document): HTMLElement {
  const item = el(doc, "article", "hit");
  item.dataset.docNumber = String(hit.doc_number);

  const title = el(doc, "h3", "hit-title");
  const link = el(doc, "a", undefined, hit.title || hit.link);
  link.href = hit.link;
  title.appendChild(link);
  item.appendChild(title);

  const snippet = el(doc, "p", "hit-snippet");
  snippet.appendChild(renderSnippet(hit.snippet, doc));
  item.appendChild(snippet);

  const metaBits = [
    hit.date ?? "",
    hit.author,
    hit.comment_count === 1 ? "1 comment" : `${hit.comment_count} comments`,
  ].filter(Boolean);
  item.appendChild(el(doc, "p", "hit-meta", metaBits.join(" · ")));

  if (hit.categories.length) {
    const tags = el(doc, "p", "hit-categories");
    for (const cat of hit.categories) {
      tags.appendChild(el(doc, "span", "tag", cat));
    }
    item.appendChild(tags);
  }
  return item;
}

export function renderTraditional(result: TraditionalResponse, doc: Document): HTMLElement {
  const container = el(doc, "div", "results results-traditional");
  container.appendChild(el(doc, "p", "result-count", `${result.total} results`));
  // DOM order mirrors API relevance order exactly
  for (const hit of result.hits) {
    container.appendChild(renderHit(hit, doc));
  }
  return container;
}

export function renderClustered(result: ClusteredResponse, doc: Document): HTMLElement {
  const container = el(doc, "div", "results results-clustered");
  container.appendChild(el(doc, "p", "result-count", `${result.total} results`));
  // Cluster and hit order come from the API and must not be reordered
  for (const cluster of result.clusters) {
    const details = el(doc, "details", "cluster");
    details.open = true;
    const summary = el(doc, "summary", "cluster-label",
      `${cluster.label} (${cluster.hit_count})`);
    details.appendChild(summary);
    for (const hit of cluster.hits) {
      details.appendChild(renderHit(hit, doc));
    }
    container.appendChild(details);
  }
  return container;
}

export function renderPager(
  pages: number[],
  current: number,
  onSelect: (page: number) => void,
  doc: Document,
): HTMLSelectElement {
  const select = el(doc, "select", "pager");
  for (const page of pages) {
    const option = el(doc, "option", undefined, `Page ${page}`);
    option.value = String(page);
    option.selected = page === current;
    select.appendChild(option);
  }
  select.disabled = pages.length <= 1;
  select.addEventListener("change", () => {
    onSelect(parseInt(select.value, 10));
  });
  return select;
}

export function renderError(code: string, message: string, doc: Document): HTMLElement {
  const friendly: Record<string, string> = {
    empty_query: "Type something to search for.",
    unbalanced_quote: "A quote is missing its closing mark.",
    page_out_of_range: "That page does not exist.",
  };
  const box = el(doc, "div", "error", friendly[code] ?? message ?? code);
  box.dataset.code = code;
  return box;
}
