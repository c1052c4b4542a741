"""Manifest handling: the single source of truth for committed state.

The manifest is JSON; replacing it is the commit point.  Replacement is
write-temp + fsync + atomic rename, so a crash before the rename leaves
the previous committed state intact.
"""

from __future__ import annotations

import json
import os

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1


def empty_manifest() -> dict:
    return {"version": MANIFEST_VERSION, "next_doc": 0, "next_seg": 0, "segments": []}


def manifest_path(directory: str) -> str:
    return os.path.join(directory, MANIFEST_NAME)


def read_manifest(directory: str) -> dict:
    path = manifest_path(directory)
    if not os.path.exists(path):
        return empty_manifest()
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("version") != MANIFEST_VERSION:
        raise ValueError("unsupported manifest version")
    return manifest


def replace_manifest(directory: str, manifest: dict) -> None:
    path = manifest_path(directory)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
    dir_fd = os.open(directory, os.O_RDONLY)
    try:
        os.fsync(dir_fd)
    finally:
        os.close(dir_fd)
