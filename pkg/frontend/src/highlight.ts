// Snippets arrive with matches wrapped in ⟦ ⟧ markers so the UI never
// has to re-tokenize.  This turns them into <mark> elements, treating
// everything outside the markers as plain text (no HTML injection).

const OPEN = "⟦"; // ⟦
const CLOSE = "⟧"; // ⟧

export function renderSnippet(snippet: string, doc: Document): DocumentFragment {
  const fragment = doc.createDocumentFragment();
  let rest = snippet;
  for (;;) {
    const start = rest.indexOf(OPEN);
    if (start < 0) break;
    const end = rest.indexOf(CLOSE, start + 1);
    if (end < 0) break;
    if (start > 0) {
      fragment.appendChild(doc.createTextNode(rest.slice(0, start)));
    }
    const mark = doc.createElement("mark");
    mark.textContent = rest.slice(start + 1, end);
    fragment.appendChild(mark);
    rest = rest.slice(end + 1);
  }
  if (rest) {
    fragment.appendChild(doc.createTextNode(rest));
  }
  return fragment;
}
