from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from gwrecon.schemas import CACHE_SCHEMA_VERSION, CacheFile


logger = logging.getLogger(__name__)


class LocalCacheStorage:
    """Invariant cache as one JSON file; writes go through `<name>.tmp` and an atomic replace."""

    def __init__(self, *, path: str) -> None:
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def exists(self) -> bool:
        return self._path.exists()

    def load(self) -> CacheFile | None:
        if not self._path.exists():
            return None
        try:
            raw = json.loads(self._path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            logger.warning("ignoring unreadable invariant cache %s: %s", self._path, exc)
            return None
        if not isinstance(raw, dict) or raw.get("schema_version") != CACHE_SCHEMA_VERSION:
            version = raw.get("schema_version") if isinstance(raw, dict) else None
            logger.warning("ignoring stale invariant cache %s (schema_version=%r)", self._path, version)
            return None
        try:
            cache = CacheFile.model_validate(raw)
        except ValidationError as exc:
            logger.warning("ignoring invalid invariant cache %s: %s", self._path, exc)
            return None
        logger.info("loaded %d cached invariants from %s", len(cache.entries), self._path)
        return cache

    def save(self, cache: CacheFile) -> None:
        self._path.parent.mkdir(parents=True, exist_ok=True)
        tmp_path = self._path.with_name(self._path.name + ".tmp")
        payload = json.dumps(cache.model_dump(mode="json"), ensure_ascii=True, indent=2, sort_keys=True)
        _ = tmp_path.write_text(payload + "\n", encoding="utf-8")
        _ = tmp_path.replace(self._path)
        logger.info("saved %d invariants to %s", len(cache.entries), self._path)

    def clear(self) -> bool:
        if not self._path.exists():
            return False
        self._path.unlink()
        return True
