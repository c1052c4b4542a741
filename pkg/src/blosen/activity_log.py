"""Search activity log: append-only JSON-lines file plus analytics.

Every search is recorded with an opaque user token and client metadata
(OS, browser, IP).  Recent-search and top-search lists are derived by
replaying the file, which stays the source of truth; a frequency cache
only accelerates repeated top-query calls.
"""

from __future__ import annotations

import ipaddress
import json
import re
import time
from collections import Counter
from dataclasses import dataclass


class LogWriteFailed(OSError):
    pass


_WS = re.compile(r"\s+")


def normalize_query(raw: str) -> str:
    return _WS.sub(" ", raw.strip().lower())


def _valid_ip(text: str) -> bool:
    try:
        ipaddress.ip_address(text)
        return True
    except ValueError:
        return False


@dataclass(frozen=True)
class SearchLogEntry:
    user_id: str
    raw_query: str
    timestamp: float
    os_name: str = "unknown"
    browser_name: str = "unknown"
    ip_address: str = "unknown"

    def __post_init__(self):
        if self.ip_address != "unknown" and not _valid_ip(self.ip_address):
            object.__setattr__(self, "ip_address", "unknown")

    def to_json(self) -> str:
        return json.dumps({
            "user_id": self.user_id,
            "raw_query": self.raw_query,
            "timestamp": self.timestamp,
            "os": self.os_name,
            "browser": self.browser_name,
            "ip": self.ip_address,
        }, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "SearchLogEntry":
        data = json.loads(line)
        return cls(
            user_id=data["user_id"],
            raw_query=data["raw_query"],
            timestamp=data["timestamp"],
            os_name=data.get("os", "unknown"),
            browser_name=data.get("browser", "unknown"),
            ip_address=data.get("ip", "unknown"),
        )


class ActivityLog:
    def __init__(self, path: str):
        self.path = path
        self._top_cache: Counter | None = None

    def record_search(self, entry: SearchLogEntry) -> None:
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(entry.to_json() + "\n")
                fh.flush()
        except OSError as exc:
            raise LogWriteFailed(str(exc)) from exc
        if self._top_cache is not None:
            self._top_cache[normalize_query(entry.raw_query)] += 1

    def entries(self) -> list[SearchLogEntry]:
        try:
            with open(self.path, encoding="utf-8") as fh:
                return [SearchLogEntry.from_json(line) for line in fh if line.strip()]
        except FileNotFoundError:
            return []

    def recent_searches(self, user_id: str, n: int) -> list[str]:
        """Most recent n distinct queries of one user, newest first."""
        if n < 1:
            raise ValueError("n must be >= 1")
        seen = set()
        out = []
        for entry in reversed(self.entries()):
            if entry.user_id != user_id:
                continue
            key = normalize_query(entry.raw_query)
            if key in seen:
                continue
            seen.add(key)
            out.append(entry.raw_query)
            if len(out) == n:
                break
        return out

    def top_queries(self, n: int) -> list[tuple[str, int]]:
        """n most frequent normalized queries; count desc, ties lexicographic."""
        if n < 1:
            raise ValueError("n must be >= 1")
        if self._top_cache is None:
            self._top_cache = Counter(
                normalize_query(e.raw_query) for e in self.entries()
            )
        ranked = sorted(self._top_cache.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:n]


# Ordered pattern table; first match wins.
_OS_PATTERNS = (
    ("Windows 10", "windows nt 10"),
    ("Windows", "windows"),
    ("Android", "android"),
    ("iOS", "iphone"),
    ("iOS", "ipad"),
    ("macOS", "mac os x"),
    ("ChromeOS", "cros"),
    ("Linux", "linux"),
)

_BROWSER_PATTERNS = (
    ("Edge", "edg/"),
    ("Opera", "opr/"),
    ("Chrome", "chrome/"),
    ("Firefox", "firefox/"),
    ("Safari", "safari/"),
    ("Internet Explorer", "msie"),
    ("Internet Explorer", "trident/"),
    ("curl", "curl/"),
)


def parse_user_agent(ua: str) -> tuple[str, str]:
    """Best-effort (os name, browser name) from a user-agent string."""
    lowered = ua.lower()
    os_name = next((name for name, marker in _OS_PATTERNS if marker in lowered), "unknown")
    browser = next((name for name, marker in _BROWSER_PATTERNS if marker in lowered), "unknown")
    return os_name, browser


def make_entry(user_id: str, raw_query: str, ua: str = "", ip: str = "unknown",
               timestamp: float | None = None) -> SearchLogEntry:
    os_name, browser = parse_user_agent(ua)
    return SearchLogEntry(
        user_id=user_id,
        raw_query=raw_query,
        timestamp=time.time() if timestamp is None else timestamp,
        os_name=os_name,
        browser_name=browser,
        ip_address=ip,
    )
