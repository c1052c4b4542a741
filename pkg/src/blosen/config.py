"""Service configuration: key = value file with BLOSEN_* env overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass
class ServiceConfig:
    listen_host: str = "127.0.0.1"
    listen_port: int = 8080
    index_dir: str = "index"
    log_file: str = "searches.jsonl"
    taxonomy_path: str | None = None
    rule_table_path: str | None = None
    page_size: int = 10
    crawl_delay: float = 0.5
    crawl_max_pages: int = 200
    ui_dir: str | None = None

    def __post_init__(self):
        if self.page_size < 1:
            raise ValueError("page_size must be >= 1")


_INT_KEYS = {"listen_port", "page_size", "crawl_max_pages"}
_FLOAT_KEYS = {"crawl_delay"}


def load_config(path: str | None = None, env=None) -> ServiceConfig:
    """Load config file (if given), then apply BLOSEN_<KEY> env overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    known = {f.name for f in fields(ServiceConfig)}

    if path:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError("bad config line %d: %r" % (lineno, line))
                key = key.strip().lower()
                if key not in known:
                    raise ValueError("unknown config key %r (line %d)" % (key, lineno))
                values[key] = value.strip()

    for key in known:
        env_key = "BLOSEN_" + key.upper()
        if env_key in env:
            values[key] = env[env_key]

    for key in list(values):
        if key in _INT_KEYS:
            values[key] = int(values[key])
        elif key in _FLOAT_KEYS:
            values[key] = float(values[key])
    return ServiceConfig(**values)
