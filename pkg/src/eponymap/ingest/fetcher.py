"""Polite HTTP fetching: rate limit, bounded retries, resumable URL cache.

A single fetcher serializes its own requests (one in flight, minimum delay
between them); run one fetcher per source when crawling cities concurrently.
"""

from __future__ import annotations

import hashlib
import time
from pathlib import Path
from typing import Optional

import requests

from ..errors import SourceUnavailable

DEFAULT_MIN_DELAY = 1.0
DEFAULT_ATTEMPTS = 3
USER_AGENT = "eponymap/0.1 (street-name research crawler)"


class Fetcher:
    def __init__(
        self,
        min_delay: float = DEFAULT_MIN_DELAY,
        attempts: int = DEFAULT_ATTEMPTS,
        cache_dir: Optional[str] = None,
        session: Optional[requests.Session] = None,
        sleep=time.sleep,
    ):
        self.min_delay = min_delay
        self.attempts = max(1, attempts)
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.session = session or requests.Session()
        self.session.headers.setdefault("User-Agent", USER_AGENT)
        self._sleep = sleep
        self._last_request = 0.0
        if self.cache_dir:
            self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _cache_path(self, url: str, params) -> Optional[Path]:
        if not self.cache_dir:
            return None
        key = url if not params else url + "?" + repr(sorted(params.items()))
        digest = hashlib.sha1(key.encode("utf-8")).hexdigest()
        return self.cache_dir / f"{digest}.body"

    def fetch_text(self, url: str, params: Optional[dict] = None, headers: Optional[dict] = None) -> str:
        """GET a URL as text; cached responses never hit the network again."""
        cache = self._cache_path(url, params)
        if cache and cache.exists():
            return cache.read_text(encoding="utf-8")

        last_error = None
        for attempt in range(self.attempts):
            wait = self.min_delay - (time.monotonic() - self._last_request)
            if wait > 0:
                self._sleep(wait)
            if attempt:
                # exponential backoff on retry: 1s, 2s, 4s ...
                self._sleep(2 ** (attempt - 1))
            self._last_request = time.monotonic()
            try:
                response = self.session.get(url, params=params, headers=headers, timeout=30)
                response.raise_for_status()
            except requests.RequestException as exc:
                last_error = exc
                continue
            body = response.text
            if cache:
                cache.write_text(body, encoding="utf-8")
            return body
        raise SourceUnavailable(f"{url}: {last_error}")
