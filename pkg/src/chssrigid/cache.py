"""Persistent decomposition cache.

Entries are content addressed by (schema version, root data fingerprint,
operation, arguments).  Files are written atomically; unreadable or
inconsistent entries are ignored and recomputed.  If the directory cannot be
used the cache silently degrades to memory after one warning.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .characters import IrrSum

log = logging.getLogger(__name__)

CACHE_SCHEMA = 1
ENV_VAR = "CHSSRIGID_CACHE_DIR"


def cache_key(rank, op) -> str:
    payload = json.dumps([CACHE_SCHEMA, rank.fingerprint(), repr(op)], ensure_ascii=False)
    return hashlib.sha256(payload.encode()).hexdigest()


def irrsum_to_json(s: IrrSum) -> list:
    return sorted([[list(c), [str(q) for q in ch], str(m)] for (c, ch), m in s.data.items()])


def irrsum_from_json(rank, rows) -> IrrSum:
    data = {}
    for c, ch, m in rows:
        if len(c) != rank.semisimple_rank or len(ch) != rank.torus_dim:
            raise ValueError("entry does not fit the root data")
        data[(tuple(int(x) for x in c), tuple(Fraction(q) for q in ch))] = int(m)
    return IrrSum(rank, data)


class DecompositionCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = os.environ.get(ENV_VAR)
        self.memory: dict[str, list] = {}
        self.directory = Path(directory) if directory else None
        self.hits = self.misses = 0
        if self.directory is not None:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                log.warning("cache directory %s unusable (%s); using memory only", self.directory, exc)
                self.directory = None

    def _path(self, key):
        return self.directory / f"{key}.json"

    def get(self, rank, op):
        key = cache_key(rank, op)
        if key in self.memory:
            self.hits += 1
            return self.memory[key]
        if self.directory is not None:
            try:
                doc = json.loads(self._path(key).read_text(encoding="utf-8"))
                if doc.get("schema") == CACHE_SCHEMA and doc.get("key") == key:
                    self.memory[key] = doc["value"]
                    self.hits += 1
                    return doc["value"]
            except FileNotFoundError:
                pass
            except (OSError, ValueError, KeyError, TypeError) as exc:
                log.warning("ignoring corrupt cache entry %s: %s", key[:12], exc)
        self.misses += 1
        return None

    def put(self, rank, op, value):
        key = cache_key(rank, op)
        self.memory[key] = value
        if self.directory is None:
            return
        doc = json.dumps({"schema": CACHE_SCHEMA, "key": key, "op": repr(op), "value": value},
                         ensure_ascii=False, sort_keys=True)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(doc)
            os.replace(tmp, self._path(key))
        except OSError as exc:
            log.warning("cache write failed (%s); continuing in memory", exc)
            self.directory = None

    def get_irrsum(self, rank, op) -> IrrSum | None:
        rows = self.get(rank, op)
        if rows is None:
            return None
        try:
            return irrsum_from_json(rank, rows)
        except (ValueError, TypeError) as exc:
            log.warning("ignoring malformed cached decomposition: %s", exc)
            self.memory.pop(cache_key(rank, op), None)
            return None

    def put_irrsum(self, rank, op, value: IrrSum):
        self.put(rank, op, irrsum_to_json(value))
