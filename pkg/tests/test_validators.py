from __future__ import annotations

from fractions import Fraction

import pytest

from gwrecon.domain.schubert import FlagDescriptor, Grassmannian
from gwrecon.errors import DomainError
from gwrecon.schemas import format_rational, parse_rational
from gwrecon.validators import (
    parse_class_list,
    parse_grassmannian,
    parse_int_list,
    parse_partition,
    parse_target,
)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "projective", "raw": "pr:2", "want": FlagDescriptor(N=3, subspace_dims=(1,))},
        {"name": "grassmannian", "raw": " g:2,4 ", "want": FlagDescriptor(N=4, subspace_dims=(2,))},
        {"name": "flag", "raw": "flag:1,2@3", "want": FlagDescriptor(N=3, subspace_dims=(1, 2))},
    ],
    ids=lambda c: c["name"],
)
def test_parse_target(case: dict[str, object]):
    assert parse_target(case["raw"]) == case["want"]  # type: ignore[arg-type]


@pytest.mark.parametrize("raw", ["", "P2", "pr:0", "g:4,4", "g:2", "flag:2,1@4", "flag:1@"])
def test_parse_target_rejects(raw: str):
    with pytest.raises(DomainError):
        parse_target(raw)


def test_parse_grassmannian():
    assert parse_grassmannian("g:2,5") == Grassmannian(2, 5)
    assert parse_grassmannian("pr:3") == Grassmannian.projective(3)
    with pytest.raises(DomainError) as excinfo:
        parse_grassmannian("flag:1,2@3")
    assert "not a Grassmannian" in str(excinfo.value)


def test_parse_class_list(g24: Grassmannian):
    assert parse_class_list(g24, "2|1,1|2,2") == [(2, 0), (1, 1), (2, 2)]
    assert parse_class_list(g24, "0|1") == [(0, 0), (1, 0)]
    assert parse_class_list(g24, "") == []
    with pytest.raises(DomainError):
        parse_class_list(g24, "3")
    with pytest.raises(DomainError):
        parse_partition(g24, "a,b")


def test_parse_int_list():
    assert parse_int_list("1, 2,3", "deg") == (1, 2, 3)
    assert parse_int_list("", "deg") == ()
    with pytest.raises(DomainError) as excinfo:
        parse_int_list("1,x", "deg")
    assert "deg" in str(excinfo.value)
    with pytest.raises(DomainError):
        parse_int_list("1,-1", "deg")


def test_rationals():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4"
    assert parse_rational("-7/3") == Fraction(-7, 3)
    for bad in ("2/4", "1/1", "x", "1.5", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)
