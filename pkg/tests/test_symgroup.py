from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from gwrecon.config import settings
from gwrecon.domain.symgroup import (
    CycleType,
    PermProfile,
    bracket_plus,
    cycle_types,
    identity_sums,
    invariant_dim,
    invariant_dim_oracle,
    product_identity_sums,
    trace_h1_open,
    trace_h2,
)
from gwrecon.errors import DomainError, ResourceLimitError


def test_cycle_types_small_groups():
    assert [(t.parts, t.class_size) for t in cycle_types(0)] == [((), 1)]
    assert [t.class_size for t in cycle_types(3)] == [1, 3, 2]
    assert [t.class_size for t in cycle_types(4)] == [1, 6, 3, 8, 6]


@pytest.mark.parametrize("k", [1, 5, 7])
def test_cycle_type_class_sizes_sum_to_group_order(k: int):
    types = cycle_types(k)
    assert sum(t.class_size for t in types) == factorial(k)
    for t in types:
        assert sum(j * t.n(j) for j in set(t.parts)) == k


def test_cycle_types_respects_bound(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(settings, "cycle_type_bound", 4)
    with pytest.raises(ResourceLimitError) as excinfo:
        cycle_types(5)
    assert "CYCLE_TYPE_BOUND" in str(excinfo.value)


def test_representative_has_the_cycle_type():
    ct = CycleType((3, 2, 1))
    perm = ct.representative()
    assert sorted(perm) == list(range(6))
    assert perm[0:3] == (1, 2, 0)
    assert perm[3:5] == (4, 3)
    assert perm[5] == 5


def test_bracket_plus():
    assert bracket_plus(3) == 3
    assert bracket_plus(Fraction(5, 2)) == 3
    with pytest.raises(DomainError):
        bracket_plus(Fraction(1, 3))


def test_profile_rejects_inconsistent_statistics():
    with pytest.raises(DomainError):
        PermProfile(k=3, n1=2, n2=1, c=3, all_even=False)
    with pytest.raises(DomainError):
        PermProfile(k=4, n1=1, n2=0, c=2, all_even=True)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "identity on five points", "n_fixed": 5, "parts": [], "want": 5},
        {"name": "double transposition", "n_fixed": 0, "parts": [(2, 2)], "want": 1},
        {"name": "four-cycle", "n_fixed": 0, "parts": [(4,)], "want": 1},
    ],
    ids=lambda c: c["name"],
)
def test_trace_h2(case: dict[str, object]):
    profiles = [CycleType(p).profile() for p in case["parts"]]  # type: ignore[attr-defined]
    assert trace_h2(case["n_fixed"], profiles) == case["want"]  # type: ignore[arg-type]


def test_trace_h1_open():
    assert trace_h1_open([PermProfile.identity(4)], 0) == 2
    assert trace_h1_open([PermProfile.identity(3)], 0) == 0
    assert trace_h1_open([CycleType((2,)).profile()], 2) == 0


def test_traces_need_three_points():
    with pytest.raises(DomainError):
        trace_h2(2, [])
    with pytest.raises(DomainError):
        trace_h1_open([PermProfile.identity(1)], 1)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "n0 a4", "n": 0, "a": (4,), "want": 1},
        {"name": "n2 a1", "n": 2, "a": (1,), "want": 0},
        {"name": "n3 a2", "n": 3, "a": (2,), "want": 4},
        {"name": "n0 a5", "n": 0, "a": (5,), "want": 1},
    ],
    ids=lambda c: c["name"],
)
def test_invariant_dim_examples(case: dict[str, object]):
    assert invariant_dim(case["n"], case["a"]) == case["want"]  # type: ignore[arg-type]
    assert invariant_dim_oracle(case["n"], case["a"]) == case["want"]  # type: ignore[arg-type]


def _tuples(total: int, length: int) -> list[tuple[int, ...]]:
    if length == 0:
        return [()] if total == 0 else []
    return [(x,) + rest for x in range(1, total + 1) for rest in _tuples(total - x, length - 1)]


def test_invariant_dim_matches_oracle_on_small_grid():
    checked = 0
    for size in range(3, 9):
        for n in range(0, size + 1):
            for length in range(0, 4):
                for a in _tuples(size - n, length):
                    assert invariant_dim(n, a) == invariant_dim_oracle(n, a), (n, a)
                    checked += 1
    assert checked > 100


def test_invariant_dim_rejects_bad_input():
    with pytest.raises(DomainError):
        invariant_dim(2, (0,))
    with pytest.raises(DomainError):
        invariant_dim(1, (1,))


def test_invariant_dim_oracle_bound(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(settings, "oracle_points_bound", 5)
    with pytest.raises(ResourceLimitError) as excinfo:
        invariant_dim_oracle(3, (3,))
    assert "ORACLE_POINTS_BOUND" in str(excinfo.value)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "S2", "k": 2, "want": (6, 1, 2, 2)},
        {"name": "S3", "k": 3, "want": (24, 0, 6, 6)},
        {"name": "S4", "k": 4, "want": (120, 12, 24, 24)},
    ],
    ids=lambda c: c["name"],
)
def test_identity_sums(case: dict[str, object]):
    out = identity_sums(case["k"])  # type: ignore[arg-type]
    assert (out.cy, out.even, out.n1, out.n2) == case["want"]


def test_identity_sums_closed_values_up_to_eight():
    for k in range(2, 9):
        out = identity_sums(k)
        assert out.cy == factorial(k + 1)
        assert out.n1 == factorial(k)
        assert out.n2 == factorial(k)
        assert out.n1g == factorial(k)
        assert out.n1n1 == 0


def test_product_identity_sums():
    for a in [(1, 1), (2, 3), (1, 2, 2), (3, 3, 2)]:
        out = product_identity_sums(a)
        order = 1
        for x in a:
            order *= factorial(x)
        l = len(a)
        assert out.order == order
        assert out.n1g == l * order
        assert out.n1n1 == l * (l - 1) // 2 * order


@pytest.mark.parametrize(
    "case",
    [
        {"name": "n1 a1", "n": 1, "a": (1,), "want": 0},
        {"name": "n0 a11", "n": 0, "a": (1, 1), "want": 0},
    ],
    ids=lambda c: c["name"],
)
def test_invariant_dim_below_the_stable_range(case: dict[str, object]):
    assert invariant_dim(case["n"], case["a"], require_stable=False) == case["want"]  # type: ignore[arg-type]
