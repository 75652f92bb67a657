from __future__ import annotations

import pytest

from gwrecon.config import settings
from gwrecon.domain.fixedloci import (
    FixedGraph,
    betti_transfer_check,
    deligne_complex_p1,
    h4_ledger_p1,
    p1_graph_census,
    p1_two_negative_count,
)
from gwrecon.errors import DomainError, ResourceLimitError, UnsupportedError


@pytest.mark.parametrize(
    "case",
    [
        {"name": "d2", "d": 2, "want": (1, 1, 1)},
        {"name": "d3", "d": 3, "want": (1, 1, 2)},
        {"name": "d4", "d": 4, "want": (1, 1, 4)},
        {"name": "d8", "d": 8, "want": (1, 1, 6)},
    ],
    ids=lambda c: c["name"],
)
def test_p1_census_buckets(case: dict[str, int]):
    census = p1_graph_census(case["d"])
    assert census.buckets == case["want"]
    assert len(census.graphs[2]) == case["want"][2]


def test_p1_census_closed_count_up_to_bound():
    for d in range(4, settings.census_max_degree + 1):
        assert p1_graph_census(d).buckets == (1, 1, p1_two_negative_count(d))


def test_p1_census_bounds(monkeypatch: pytest.MonkeyPatch):
    with pytest.raises(DomainError):
        p1_graph_census(1)
    monkeypatch.setattr(settings, "census_max_degree", 5)
    with pytest.raises(ResourceLimitError) as excinfo:
        p1_graph_census(6)
    assert "CENSUS_MAX_DEGREE" in str(excinfo.value)


def test_fixed_graph_validation():
    with pytest.raises(DomainError):
        FixedGraph((0, 0), ((0, 1, 1),))
    with pytest.raises(DomainError):
        FixedGraph((0, 1), ((0, 1, 0),))
    with pytest.raises(DomainError):
        FixedGraph((0, 1, 0), ((0, 1, 1), (1, 2, 1), (0, 2, 1)))
    line = FixedGraph((0, 1), ((0, 1, 2),))
    assert line.degree == 2


@pytest.mark.parametrize(
    "case",
    [
        {"name": "d4", "d": 4, "want": (0, 0, 4, 4)},
        {"name": "d6", "d": 6, "want": (2, 2, 5, 9)},
        {"name": "d8", "d": 8, "want": (6, 4, 6, 16)},
    ],
    ids=lambda c: c["name"],
)
def test_h4_ledger_examples(case: dict[str, object]):
    out = h4_ledger_p1(case["d"])  # type: ignore[arg-type]
    assert (out.count_bijl, out.h2_term, out.two_neg, out.total) == case["want"]
    assert out.passed


def test_h4_ledger_holds_for_all_even_degrees():
    for d in range(2, settings.ledger_max_degree + 1, 2):
        k = d // 2
        out = h4_ledger_p1(d)
        assert out.total == k * k
        assert out.count_bijl == (k - 1) * (k - 2)


def test_h4_ledger_rejections():
    with pytest.raises(UnsupportedError):
        h4_ledger_p1(5)
    with pytest.raises(ResourceLimitError) as excinfo:
        h4_ledger_p1(14)
    assert "LEDGER_MAX_DEGREE" in str(excinfo.value)


def test_deligne_complex_matches_ledger():
    for d in range(2, settings.ledger_max_degree + 1, 2):
        k = d // 2
        out = deligne_complex_p1(d)
        assert out.first == (k - 1) ** 2
        assert out.gap == k * k
        assert out.gap == h4_ledger_p1(d).total


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_betti_transfer(d: int):
    out = betti_transfer_check(d)
    assert out.passed, out.failures
    assert out.gap0 == d + 3
    assert out.gap1 == 2 * d + 3
    assert out.a2_diff == 1
    assert (out.a4_diff, out.abar4_diff) == (4, 5)


def test_betti_transfer_five_graph_bound():
    assert betti_transfer_check(2).five_graph_bound is None
    assert betti_transfer_check(3).five_graph_bound == 6


def test_betti_transfer_range():
    with pytest.raises(ResourceLimitError) as excinfo:
        betti_transfer_check(settings.transfer_max_degree + 1)
    assert "TRANSFER_MAX_DEGREE" in str(excinfo.value)
