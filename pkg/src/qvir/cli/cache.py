"""On-disk cache for symbolic Gram matrices.

One file per key.  The first line is a header naming the format and the
code version; the rest is canonical JSON with every coefficient as a
decimal string.  Files are written to a temporary name and renamed into
place, so a reader never sees a half-written entry and concurrent writers
simply race to store the same bytes.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

from .. import __version__
from ..exact import RatFunc

FORMAT = "qvir-gram-cache/1"


class CacheWarning(UserWarning):
    pass


def _header() -> str:
    return f"{FORMAT} qvir-{__version__}\n"


class GramCache:
    def __init__(self, root: Path | str):
        self.root = Path(root)

    def key(self, level: int, weight: str, engine: str) -> dict:
        return {"level": level, "weight": weight, "engine": engine, "version": __version__}

    def path(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:32]
        return self.root / f"gram-{digest}.json"

    def load(self, key: dict):
        path = self.path(key)
        if not path.exists():
            return None
        try:
            header, body = path.read_text().split("\n", 1)
            if header + "\n" != _header():
                return None
            obj = json.loads(body)
            if obj["key"] != key:
                raise ValueError("key mismatch")
            return [[RatFunc.from_json(x) for x in row] for row in obj["entries"]]
        except Exception as exc:  # any damage means recompute
            warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", CacheWarning, stacklevel=2)
            return None

    def store(self, key: dict, entries) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        body = json.dumps({"key": key, "entries": [[x.to_json() for x in row] for row in entries]},
                          sort_keys=True, separators=(",", ":"))
        path = self.path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(_header())
                fh.write(body)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_compute(self, level: int, weight: str, engine: str, compute):
        """(entries, hit) for the key, computing and storing on a miss."""
        key = self.key(level, weight, engine)
        cached = self.load(key)
        if cached is not None:
            return cached, True
        entries = compute()
        self.store(key, entries)
        return entries, False
