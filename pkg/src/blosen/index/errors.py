class IndexError_(Exception):
    """Base class for index failures."""


class DuplicateDocument(IndexError_):
    """A live document with the same post_url already exists."""


class WriterClosed(IndexError_):
    pass


class IndexLocked(IndexError_):
    """Another writer holds the index lock."""


class CommitFailed(IndexError_):
    """Commit did not complete; the index remains at its previous state."""


class MergeFailed(IndexError_):
    """Merge did not complete; original segments remain intact."""


class NoSuchDocument(IndexError_):
    pass
