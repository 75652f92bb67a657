"""Memo table of primary invariants with provenance, shared by every evaluation path.

Readers and writers go through one lock; re-inserting a key with the same value is a
no-op and a different value is fatal.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction

from gwrecon.errors import IntegrityError
from gwrecon.gwcore.keys import InvariantKey
from gwrecon.schemas import CACHE_SCHEMA_VERSION, CacheEntry, CacheFile, Provenance, format_rational, parse_rational
from gwrecon.validators import parse_grassmannian


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TableEntry:
    value: Fraction
    provenance: Provenance


class InvariantTable:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._entries: dict[InvariantKey, TableEntry] = {}
        self._dirty = False

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    @property
    def dirty(self) -> bool:
        return self._dirty

    def get(self, key: InvariantKey) -> TableEntry | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: InvariantKey, value: Fraction, provenance: Provenance) -> TableEntry:
        value = Fraction(value)
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None:
                if existing.value != value:
                    raise IntegrityError(
                        f"{key.label}: table holds {existing.value} ({existing.provenance}), "
                        f"{provenance} produced {value}"
                    )
                return existing
            entry = TableEntry(value, provenance)
            self._entries[key] = entry
            self._dirty = True
            return entry

    def items(self) -> list[tuple[InvariantKey, TableEntry]]:
        with self._lock:
            return sorted(self._entries.items(), key=lambda kv: kv[0].sort_key())

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for _, entry in self.items():
            out[entry.provenance] = out.get(entry.provenance, 0) + 1
        return out

    def to_cache_file(self) -> CacheFile:
        entries = [
            CacheEntry(
                target=key.target.label,
                degree=key.degree,
                insertions=[[p for p in lam if p] for lam in key.insertions],
                value=format_rational(entry.value),
                provenance=entry.provenance,
            )
            for key, entry in self.items()
        ]
        return CacheFile(schema_version=CACHE_SCHEMA_VERSION, entries=entries)

    def load_cache_file(self, cache: CacheFile) -> int:
        loaded = 0
        for item in cache.entries:
            g = parse_grassmannian(item.target)
            key = InvariantKey.of(g, item.degree, item.insertions)
            self.put(key, parse_rational(item.value), item.provenance)
            loaded += 1
        self._dirty = False
        logger.debug("table loaded %d entries", loaded)
        return loaded
