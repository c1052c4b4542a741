import type { RecentResponse, TopResponse, WhoamiResponse } from "./types.js";

export function renderRecent(
  data: RecentResponse,
  onPick: (query: string) => void,
  doc: Document,
): HTMLElement {
  const box = doc.createElement("section");
  box.className = "sidebar-recent";
  const heading = doc.createElement("h4");
  heading.textContent = "Your recent searches";
  box.appendChild(heading);
  const list = doc.createElement("ul");
  if (!data.recent.length) {
    const li = doc.createElement("li");
    li.className = "empty";
    li.textContent = "Nothing yet";
    list.appendChild(li);
  }
  for (const query of data.recent) {
    const li = doc.createElement("li");
    const button = doc.createElement("button");
    button.type = "button";
    button.textContent = query;
    button.addEventListener("click", () => onPick(query));
    li.appendChild(button);
    list.appendChild(li);
  }
  box.appendChild(list);
  return box;
}

export function renderTop(data: TopResponse, doc: Document): HTMLElement {
  const box = doc.createElement("section");
  box.className = "sidebar-top";
  const heading = doc.createElement("h4");
  heading.textContent = "Popular searches";
  box.appendChild(heading);
  const list = doc.createElement("ol");
  for (const entry of data.top) {
    const li = doc.createElement("li");
    li.textContent = `${entry.query} (${entry.count})`;
    list.appendChild(li);
  }
  box.appendChild(list);
  return box;
}

export function renderWhoami(data: WhoamiResponse, doc: Document): HTMLElement {
  const box = doc.createElement("p");
  box.className = "sidebar-whoami";
  box.textContent = `You appear to be on ${data.os} / ${data.browser} (${data.ip})`;
  return box;
}
