"""Content-addressed on-disk cache for slice matrices and reports.

Keys are SHA-256 digests of a canonical parameter string plus a version tag,
so bumping ``CACHE_VERSION`` orphans every earlier entry.  Writes go to a
temporary file in the same directory followed by an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

CACHE_VERSION = "gcx-cache-1"
ENV_VAR = "GCX_CACHE_DIR"


def cache_key(params: str) -> str:
    return hashlib.sha256(f"{CACHE_VERSION}\n{params}".encode()).hexdigest()


def canonical_params(**params) -> str:
    return json.dumps({k: str(v) for k, v in params.items()}, sort_keys=True, separators=(",", ":"))


class Cache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @classmethod
    def from_env(cls, root: str | os.PathLike | None = None) -> "Cache | None":
        root = root or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> str | None:
        """Stored payload, or None on a miss (corrupt entries count as misses)."""
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError, UnicodeDecodeError):
            return None
        if not isinstance(data, dict) or data.get("version") != CACHE_VERSION or data.get("key") != key:
            return None
        payload = data.get("payload")
        digest = data.get("sha256")
        if not isinstance(payload, str) or hashlib.sha256(payload.encode()).hexdigest() != digest:
            return None
        return payload

    def put(self, key: str, payload: str) -> None:
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            body = json.dumps(
                {
                    "version": CACHE_VERSION,
                    "key": key,
                    "sha256": hashlib.sha256(payload.encode()).hexdigest(),
                    "payload": payload,
                }
            )
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(body)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            raise OSError(f"cache write failed at {path}: {exc}") from exc


def cache_get(cache: Cache | None, key: str) -> str | None:
    return cache.get(key) if cache is not None else None


def cache_put(cache: Cache | None, key: str, payload: str) -> None:
    if cache is not None:
        cache.put(key, payload)
