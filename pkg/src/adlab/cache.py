"""Content-addressed result cache in a local directory.

Keys are sha256 digests of the canonical request (which always includes
the tool version), so entries written by another version are never
returned. Writes go to a temporary file in the same directory followed
by an atomic rename; readers never see partial entries.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .certio import canonical_bytes

DEFAULT_DIR = Path(os.environ.get("ADLAB_CACHE_DIR", Path.home() / ".cache" / "adlab"))


class Cache:
    def __init__(self, root=None, tool_version: str = __version__):
        self.root = Path(root) if root is not None else DEFAULT_DIR
        self.tool_version = tool_version

    def key(self, **request) -> str:
        body = {"tool_version": self.tool_version, **request}
        return hashlib.sha256(canonical_bytes(body)).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def put(self, key: str, data: bytes) -> Path:
        """Store ``data`` under ``key``; IO errors propagate."""
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        record = canonical_bytes({"tool_version": self.tool_version, "key": key, "data": data.decode("latin-1")})
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(record)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        record = json.loads(raw)
        if record.get("tool_version") != self.tool_version or record.get("key") != key:
            return None
        return record["data"].encode("latin-1")

    def put_json(self, key: str, obj) -> Path:
        return self.put(key, canonical_bytes(obj))

    def get_json(self, key: str):
        data = self.get(key)
        return None if data is None else json.loads(data)

    def gc(self) -> list[Path]:
        """Delete entries from other tool versions, unreadable entries and
        stray temporaries; returns the removed paths."""
        removed = []
        if not self.root.exists():
            return removed
        for path in sorted(self.root.glob("*/*")):
            stale = path.name.startswith(".tmp-")
            if not stale:
                try:
                    record = json.loads(path.read_bytes())
                    stale = record.get("tool_version") != self.tool_version
                except (ValueError, OSError):
                    stale = True
            if stale:
                path.unlink()
                removed.append(path)
        return removed
