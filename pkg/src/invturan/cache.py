"""Newline-delimited JSON result cache keyed by canonical host form.

Entries are appended by a single writer.  On read a deterministic sample of
hits (chosen by key hash) is recomputed and compared with the stored value;
a mismatch drops the entry and the fresh value wins.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

SPOT_CHECK_ONE_IN = 16


def default_path():
    env = os.environ.get("INVTURAN_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "invturan" / "cache.ndjson"


def make_key(host_key, pattern, op, params):
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:16]
    if isinstance(host_key, bytes):
        host_key = host_key.decode("ascii")
    return f"{op}|{pattern}|{host_key}|{digest}"


class ResultCache:
    def __init__(self, path=None, spot_check=SPOT_CHECK_ONE_IN):
        self.path = Path(path) if path else default_path()
        self.spot_check = spot_check
        self._lock = threading.Lock()
        self._data = None
        self.hits = self.misses = self.mismatches = 0

    def _load(self):
        if self._data is not None:
            return
        self._data = {}
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    log.warning("skipping corrupt cache line in %s", self.path)
                    continue
                if rec.get("version") == __version__:
                    self._data[rec["key"]] = rec["value"]

    def _append(self, key, value):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        rec = {"key": key, "value": value, "version": __version__, "timestamp": time.time()}
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def _sampled(self, key):
        if not self.spot_check:
            return False
        h = int(hashlib.sha256(key.encode()).hexdigest()[:8], 16)
        return h % self.spot_check == 0

    def get_or_compute(self, key, compute):
        """Return the cached JSON value for key, computing (and storing) it on a miss."""
        with self._lock:
            self._load()
            cached = self._data.get(key)
        if cached is not None:
            self.hits += 1
            if self._sampled(key):
                fresh = compute()
                if fresh != cached:
                    self.mismatches += 1
                    log.warning("cache entry %s disagrees with recomputation; replacing", key)
                    self._store(key, fresh)
                    return fresh
            return cached
        self.misses += 1
        value = compute()
        self._store(key, value)
        return value

    def _store(self, key, value):
        # round-trip so hits and misses return identical objects
        value = json.loads(json.dumps(value))
        with self._lock:
            self._data[key] = value
            self._append(key, value)


class NullCache:
    hits = misses = mismatches = 0

    def get_or_compute(self, key, compute):
        return json.loads(json.dumps(compute()))
