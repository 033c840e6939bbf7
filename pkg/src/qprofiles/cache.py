"""Persistent store for bounds-recursion results.

Line-delimited JSON: the first line is a header {"format":"bounds-cache",
"version":1}; each following line is either {"key":…, "r":…} or {"key":…,
"at_r":…, "n1":…, "n2":…}.  Integer values are encoded as decimal strings so
arbitrarily large bounds survive any JSON consumer.  Entries are immutable
once written: re-putting an identical value is a no-op, a conflicting value is
an error.  Appends are serialized with an exclusive file lock.
"""

from __future__ import annotations

import fcntl
import json
import os
from pathlib import Path

_HEADER = {"format": "bounds-cache", "version": 1}
ENV_CACHE_PATH = "QPROFILES_CACHE"


class CacheError(Exception):
    """Cache file unreadable, malformed, or in conflict with new results."""


def default_cache_path() -> Path:
    env = os.environ.get(ENV_CACHE_PATH)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "qprofiles" / "bounds.jsonl"


def _enc(v: int) -> str:
    return str(int(v))


def _dec(v: object, path: Path) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise CacheError(f"{path}: malformed integer value {v!r}")
    try:
        return int(v)
    except ValueError:
        raise CacheError(f"{path}: malformed integer value {v!r}") from None


class BoundsCache:
    """In-memory view of one cache file, with locked appends.

    get_r/get_n count hits and misses; put_r/put_n count real writes.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._r: dict[str, int] = {}
        self._n: dict[tuple[str, int], tuple[int, int]] = {}
        self.hits = 0
        self.misses = 0
        self.writes = 0
        self._load()

    def _load(self) -> None:
        try:
            raw = self.path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return
        except OSError as exc:
            raise CacheError(f"{self.path}: cannot read cache: {exc}") from exc
        lines = raw.splitlines()
        if not lines:
            return
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise CacheError(f"{self.path}: corrupt cache header") from exc
        if header != _HEADER:
            raise CacheError(f"{self.path}: unsupported cache header {header!r}")
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CacheError(f"{self.path}:{lineno}: corrupt cache entry") from exc
            if not isinstance(obj, dict) or "key" not in obj:
                raise CacheError(f"{self.path}:{lineno}: malformed cache entry")
            key = obj["key"]
            if not isinstance(key, str):
                raise CacheError(f"{self.path}:{lineno}: malformed cache key")
            if "r" in obj:
                value = _dec(obj["r"], self.path)
                prior = self._r.get(key)
                if prior is not None and prior != value:
                    raise CacheError(
                        f"{self.path}:{lineno}: conflicting r values for {key}"
                    )
                self._r[key] = value
            elif "at_r" in obj:
                at_r = _dec(obj["at_r"], self.path)
                pair = (_dec(obj["n1"], self.path), _dec(obj["n2"], self.path))
                prior_pair = self._n.get((key, at_r))
                if prior_pair is not None and prior_pair != pair:
                    raise CacheError(
                        f"{self.path}:{lineno}: conflicting n values for {key}"
                    )
                self._n[(key, at_r)] = pair
            else:
                raise CacheError(f"{self.path}:{lineno}: malformed cache entry")

    def get_r(self, key: str) -> int | None:
        value = self._r.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def get_n(self, key: str, at_r: int) -> tuple[int, int] | None:
        pair = self._n.get((key, at_r))
        if pair is None:
            self.misses += 1
        else:
            self.hits += 1
        return pair

    def put_r(self, key: str, value: int) -> None:
        prior = self._r.get(key)
        if prior is not None:
            if prior != value:
                raise CacheError(
                    f"{self.path}: conflicting r for {key}: had {prior}, got {value}"
                )
            return
        self._append({"key": key, "r": _enc(value)})
        self._r[key] = value
        self.writes += 1

    def put_n(self, key: str, at_r: int, n1: int, n2: int) -> None:
        prior = self._n.get((key, at_r))
        if prior is not None:
            if prior != (n1, n2):
                raise CacheError(
                    f"{self.path}: conflicting n values for {key} at r={at_r}"
                )
            return
        self._append(
            {"key": key, "at_r": _enc(at_r), "n1": _enc(n1), "n2": _enc(n2)}
        )
        self._n[(key, at_r)] = (n1, n2)
        self.writes += 1

    def _append(self, obj: dict[str, str]) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
                try:
                    if fh.tell() == 0:
                        fh.write(json.dumps(_HEADER, separators=(",", ":")) + "\n")
                    fh.write(json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n")
                    fh.flush()
                finally:
                    fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
        except OSError as exc:
            raise CacheError(f"{self.path}: cannot write cache: {exc}") from exc

    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "writes": self.writes}
