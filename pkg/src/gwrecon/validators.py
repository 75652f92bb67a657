from __future__ import annotations

import re

from gwrecon.domain.schubert import FlagDescriptor, Grassmannian, SchubertPartition
from gwrecon.errors import DomainError

_PR_RE = re.compile(r"^pr:(\d+)$")
_G_RE = re.compile(r"^g:(\d+),(\d+)$")
_FLAG_RE = re.compile(r"^flag:(\d+(?:,\d+)*)@(\d+)$")
_PART_RE = re.compile(r"^\d+(,\d+)*$")


def parse_target(value: str) -> FlagDescriptor:
    """"pr:<r>" | "g:<k>,<N>" | "flag:<m1,...,ml>@<N>"."""

    text = (value or "").strip()
    if m := _PR_RE.match(text):
        return Grassmannian.projective(int(m.group(1))).flag()
    if m := _G_RE.match(text):
        return Grassmannian(int(m.group(1)), int(m.group(2))).flag()
    if m := _FLAG_RE.match(text):
        dims = tuple(int(x) for x in m.group(1).split(","))
        return FlagDescriptor(N=int(m.group(2)), subspace_dims=dims)
    raise DomainError(f"target must be pr:<r>, g:<k>,<N> or flag:<m1,...>@<N>, got {value!r}")


def parse_grassmannian(value: str) -> Grassmannian:
    flag = parse_target(value)
    if flag.l != 1:
        raise DomainError(f"{value!r} is not a Grassmannian or projective space")
    return Grassmannian(flag.subspace_dims[0], flag.N)


def parse_partition(g: Grassmannian, value: str) -> SchubertPartition:
    text = value.strip()
    if not _PART_RE.match(text):
        raise DomainError(f"partition must be comma-separated integers, got {value!r}")
    return g.normalize(int(x) for x in text.split(","))


def parse_class_list(g: Grassmannian, value: str) -> list[SchubertPartition]:
    """"2|1,1|2,2" -> [(2,0), (1,1), (2,2)]; "0" is the empty partition."""

    text = (value or "").strip()
    if not text:
        return []
    return [parse_partition(g, part) for part in text.split("|")]


def parse_int_list(value: str, field_name: str) -> tuple[int, ...]:
    text = (value or "").strip()
    if not text:
        return ()
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise DomainError(f"{field_name} must be comma-separated integers") from exc
    if any(x < 0 for x in out):
        raise DomainError(f"{field_name} entries must be non-negative")
    return out
