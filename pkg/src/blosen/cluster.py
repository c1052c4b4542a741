"""Category-clustered tree view of ranked search hits.

Hits are grouped by each of their categories (a multi-category post
appears under every one of them); posts without a category land in a
trailing "Uncategorized" node.  Within a node, hits keep their global
relevance order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

UNCATEGORIZED = "Uncategorized"


@dataclass(frozen=True)
class ClusterNode:
    label: str
    hits: tuple

    @property
    def hit_count(self) -> int:
        return len(self.hits)


@dataclass(frozen=True)
class ClusterTree:
    nodes: tuple


def cluster_results(hits) -> ClusterTree:
    """Group ranked hits by category.

    Node order: descending hit count, ties lexicographic by label,
    Uncategorized always last.
    """
    groups: dict[str, list] = {}
    uncategorized = []
    for hit in hits:
        categories = hit.document.categories
        if not categories:
            uncategorized.append(hit)
            continue
        for label in categories:
            groups.setdefault(label, []).append(hit)

    nodes = [
        ClusterNode(label=label, hits=tuple(group))
        for label, group in groups.items()
    ]
    nodes.sort(key=lambda n: (-n.hit_count, n.label))
    if uncategorized:
        nodes.append(ClusterNode(label=UNCATEGORIZED, hits=tuple(uncategorized)))
    return ClusterTree(nodes=tuple(nodes))


def tree_payload(tree: ClusterTree) -> dict:
    return {
        "clusters": [
            {
                "label": node.label,
                "hit_count": node.hit_count,
                "hits": [hit.display() for hit in node.hits],
            }
            for node in tree.nodes
        ]
    }


def serialize_tree(tree: ClusterTree) -> str:
    """Deterministic JSON rendering of the tree."""
    return json.dumps(tree_payload(tree), sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))
