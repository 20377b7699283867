"""Persistent result cache: a directory of JSON documents keyed by the
pattern's canonical digest, one strongest record per (pattern, n).

Strength order: exact beats lowerBound, larger lowerBound beats smaller;
put never downgrades. Witnesses re-verify on load (dimensions, weight, and
pattern-freeness); any mismatch raises CacheError with a rebuild hint.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional, Union

from .errors import CacheError
from .matrix import ZeroOneMatrix, canonical_key, find_embedding
from .search import ExtremalRecord


def _stronger(a: ExtremalRecord, b: ExtremalRecord) -> ExtremalRecord:
    """The stronger of two records for the same (pattern, n)."""
    if a.status == "exact" and b.status == "exact":
        if a.value != b.value:
            raise CacheError(
                f"two exact records disagree ({a.value} vs {b.value}); "
                "delete the cache entry and recompute"
            )
        return a
    if a.status == "exact":
        return a
    if b.status == "exact":
        return b
    return a if a.value >= b.value else b


class CacheStore:
    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _load(self, pattern: ZeroOneMatrix) -> dict:
        key = canonical_key(pattern)
        path = self._path(key)
        if not path.exists():
            return {"patternKey": key, "pattern": pattern.to_json_dict(), "records": []}
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError) as exc:
            raise CacheError(
                f"unreadable cache file {path}: {exc}; delete it to rebuild"
            ) from exc
        if doc.get("patternKey") != key:
            raise CacheError(f"cache file {path} holds a different pattern; delete it to rebuild")
        return doc

    def get(self, pattern: ZeroOneMatrix, n: int) -> Optional[ExtremalRecord]:
        doc = self._load(pattern)
        best: Optional[ExtremalRecord] = None
        for raw in doc.get("records", []):
            try:
                rec = ExtremalRecord.from_json_dict(raw)
            except Exception as exc:
                raise CacheError(
                    f"corrupt record under key {doc['patternKey']}: {exc}; "
                    f"delete {self._path(doc['patternKey'])} to rebuild"
                ) from exc
            if rec.n != n:
                continue
            self._verify(pattern, rec)
            best = rec if best is None else _stronger(best, rec)
        return best

    def put(self, pattern: ZeroOneMatrix, record: ExtremalRecord) -> ExtremalRecord:
        """Merge a record in, never downgrading; returns the stored record."""
        self._verify(pattern, record)
        doc = self._load(pattern)
        records = []
        merged = record
        for raw in doc.get("records", []):
            rec = ExtremalRecord.from_json_dict(raw)
            if rec.n == record.n:
                merged = _stronger(rec, record)
            else:
                records.append(rec)
        records.append(merged)
        records.sort(key=lambda r: (r.n, r.status, r.value))
        doc["records"] = [r.to_json_dict() for r in records]
        path = self._path(doc["patternKey"])
        tmp = path.with_suffix(".tmp")
        try:
            tmp.write_text(json.dumps(doc, sort_keys=True, indent=1))
            os.replace(tmp, path)
        except OSError as exc:
            raise CacheError(f"cannot write cache file {path}: {exc}") from exc
        return merged

    def _verify(self, pattern: ZeroOneMatrix, rec: ExtremalRecord) -> None:
        key = canonical_key(pattern)
        problems = []
        if rec.pattern_key != key:
            problems.append("pattern key mismatch")
        if rec.witness.rows != rec.n or rec.witness.cols != rec.n:
            problems.append(f"witness is {rec.witness.rows}x{rec.witness.cols}, expected {rec.n}x{rec.n}")
        if rec.witness.weight != rec.value:
            problems.append(f"witness weight {rec.witness.weight} != value {rec.value}")
        if pattern.weight > 0 and find_embedding(rec.witness, pattern) is not None:
            problems.append("witness contains the pattern")
        if rec.status not in ("exact", "lowerBound"):
            problems.append(f"unknown status {rec.status!r}")
        if problems:
            raise CacheError(
                "invalid cache record for n="
                f"{rec.n}: {'; '.join(problems)}; delete {self._path(key)} to rebuild"
            )
