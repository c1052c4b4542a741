"""BloSen: a self-contained blog search engine.

Crawls Blogger/WordPress blogs, parses posts into fielded documents,
builds a segmented inverted index and serves ranked, filterable,
cluster-grouped search results.
"""

__version__ = "0.1.0"
