from __future__ import annotations

import re
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field, field_validator


Provenance = Literal["oracle", "recursion", "provider", "axiom"]

CACHE_SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def format_rational(value: Fraction | int) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(raw: str) -> Fraction:
    text = (raw or "").strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational number: {raw!r}")
    value = Fraction(text)
    if format_rational(value) != text:
        raise ValueError(f"rational {raw!r} is not in lowest terms")
    return value


class CacheEntry(BaseModel):
    target: str = Field(min_length=1)
    degree: int = Field(ge=0)
    insertions: list[list[int]] = Field(default_factory=list)
    value: str
    provenance: Provenance

    @field_validator("value")
    @classmethod
    def _check_value(cls, v: str) -> str:
        _ = parse_rational(v)
        return v


class CacheFile(BaseModel):
    schema_version: int = CACHE_SCHEMA_VERSION
    entries: list[CacheEntry] = Field(default_factory=list)


class AuditRecord(BaseModel):
    relation: str
    target: str
    n: int
    degree: int
    monomial: str
    lhs: str
    rhs: str
    passed: bool


class CatalogItem(BaseModel):
    name: str
    kind: str
    parameters: dict[str, int | str] = Field(default_factory=dict)


class LedgerRecord(BaseModel):
    name: str
    d: int
    values: dict[str, int] = Field(default_factory=dict)
    expected: int
    passed: bool
