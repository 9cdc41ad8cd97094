"""On-disk memo of depth reports, one JSON file per (ideal, field, engine version)."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .depth import ENGINE_VERSION, DepthReport, depth_quotient
from .monomials import MonomialIdeal


def cache_key(I: MonomialIdeal, field: str, version: str = ENGINE_VERSION) -> str:
    payload = json.dumps([version, field, I.canonical()], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


class ReportCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> DepthReport | None:
        p = self.path(key)
        try:
            with open(p) as fh:
                return DepthReport.from_json(json.load(fh))
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, KeyError):
            return None  # torn or foreign file: recompute and overwrite

    def put(self, key: str, report: DepthReport) -> None:
        p = self.path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(report.to_json(), fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def cached_depth(I: MonomialIdeal, field: str, t: int = 1, cache: ReportCache | None = None,
                 **caps) -> DepthReport:
    """``depth_quotient`` through the cache; the stored ``t`` is replaced by the caller's."""
    if cache is None:
        return depth_quotient(I, field, t, **caps)
    key = cache_key(I, field)
    hit = cache.get(key)
    if hit is not None:
        cache.hits += 1
        hit.t = t
        return hit
    cache.misses += 1
    report = depth_quotient(I, field, t, **caps)
    cache.put(key, report)
    return report
