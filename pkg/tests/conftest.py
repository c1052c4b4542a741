import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from blosen.index import IndexReader, IndexWriter  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def site_manifest():
    return os.path.join(FIXTURES, "site", "manifest.tsv")


def build_index(directory, docs):
    with IndexWriter(directory) as writer:
        numbers = [writer.add_document(doc) for doc in docs]
        writer.commit()
    return numbers


@pytest.fixture
def make_index(tmp_path):
    """Factory: build an index from docs, return (directory, reader)."""

    counter = {"n": 0}

    def _make(docs):
        counter["n"] += 1
        directory = str(tmp_path / ("idx%d" % counter["n"]))
        build_index(directory, docs)
        return directory, IndexReader.open(directory)

    return _make
