"""Persistent result cache: one JSON file guarded by a lock file.

Layout::

    {"version": 1,
     "specs": {fingerprint: {"keys": [...], "entries": {op|inputs: {"result": ..., "digest": ...}}}}}

Entries are stored under the fingerprint of the spec they were computed for,
so a cache written for one semigroup is never consulted for another.  Each
entry carries a digest of its result; an entry whose digest does not match,
or a file that does not parse, is dropped with a warning and recomputed.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

from filelock import FileLock

CACHE_VERSION = 1


class CacheWarning(UserWarning):
    pass


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _normalize(obj):
    """Round-trip through JSON, keeping dict insertion order."""
    return json.loads(json.dumps(obj, ensure_ascii=False))


def _digest(obj) -> str:
    return hashlib.sha256(_canonical(obj).encode("utf-8")).hexdigest()


def entry_name(op: str, inputs) -> str:
    return f"{op}|{_canonical(inputs)}"


class ResultCache:
    """Get-or-compute over a JSON file; ``path=None`` gives an in-memory cache."""

    def __init__(self, path=None, timeout: float = 30.0):
        self.path = Path(path) if path is not None else None
        self.lock = FileLock(str(self.path) + ".lock", timeout=timeout) if self.path else None
        self._memory = {"version": CACHE_VERSION, "specs": {}}
        self.hits = 0
        self.misses = 0

    # -- file access --------------------------------------------------------------
    def _empty(self):
        return {"version": CACHE_VERSION, "specs": {}}

    def _load(self) -> dict:
        if self.path is None:
            return self._memory
        if not self.path.exists():
            return self._empty()
        try:
            data = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            warnings.warn(f"cache {self.path} is unreadable; starting afresh", CacheWarning, stacklevel=3)
            return self._empty()
        if not isinstance(data, dict) or not isinstance(data.get("specs"), dict):
            warnings.warn(f"cache {self.path} has an unexpected layout; starting afresh", CacheWarning, stacklevel=3)
            return self._empty()
        if data.get("version") != CACHE_VERSION:
            warnings.warn(f"cache {self.path} has version {data.get('version')!r}; ignoring it", CacheWarning, stacklevel=3)
            return self._empty()
        return data

    def _store(self, data: dict):
        if self.path is None:
            self._memory = data
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=str(self.path.parent), prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(data, ensure_ascii=False))
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _locked(self):
        return self.lock if self.lock is not None else _NullLock()

    # -- public API --------------------------------------------------------------------
    def get(self, fingerprint: str, op: str, inputs):
        with self._locked():
            data = self._load()
        entry = data["specs"].get(fingerprint, {}).get("entries", {}).get(entry_name(op, inputs))
        if entry is None:
            return None
        if not isinstance(entry, dict) or "result" not in entry or entry.get("digest") != _digest(entry["result"]):
            warnings.warn(f"cache entry for {op} failed its digest check; recomputing", CacheWarning, stacklevel=2)
            return None
        return entry["result"]

    def put(self, fingerprint: str, op: str, inputs, result, keys=()):
        with self._locked():
            data = self._load()
            section = data["specs"].setdefault(fingerprint, {"keys": [], "entries": {}})
            section.setdefault("entries", {})[entry_name(op, inputs)] = {"result": result, "digest": _digest(result)}
            known = set(section.get("keys", []))
            section["keys"] = sorted(known | set(keys))
            self._store(data)

    def get_or_compute(self, fingerprint: str, op: str, inputs, compute, keys=()):
        """Return the cached result or compute, store and return it.

        Results must be JSON values; they are normalized through JSON before
        returning so cold and warm runs hand back identical data.  ``keys``
        lists class keys to intern alongside, or is a function of the result.
        """
        hit = self.get(fingerprint, op, inputs)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        result = _normalize(compute())
        self.put(fingerprint, op, inputs, result, keys(result) if callable(keys) else keys)
        return result

    def info(self) -> dict:
        with self._locked():
            data = self._load()
        specs = data["specs"]
        return {
            "path": str(self.path) if self.path else None,
            "version": data.get("version"),
            "specs": [
                {"fingerprint": fp, "entries": len(sec.get("entries", {})), "keys": len(sec.get("keys", []))}
                for fp, sec in sorted(specs.items())
            ],
        }


class _NullLock:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def cache_get_or_compute(cache: ResultCache | None, fingerprint: str, op: str, inputs, compute, keys=()):
    if cache is None:
        return _normalize(compute())
    return cache.get_or_compute(fingerprint, op, inputs, compute, keys)
