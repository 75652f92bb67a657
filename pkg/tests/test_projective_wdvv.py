from __future__ import annotations

import pytest

from gwrecon.config import settings
from gwrecon.errors import DomainError, ResourceLimitError
from gwrecon.gwcore.projective import km_recursion_pr, kontsevich_closed_form, projective_invariant


KONTSEVICH = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304, 6: 26312976}


def test_kontsevich_closed_form():
    assert kontsevich_closed_form(6) == KONTSEVICH


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_wdvv_gives_kontsevich_numbers(d: int):
    assert projective_invariant(2, d, (2,) * (3 * d - 1)) == KONTSEVICH[d]


def test_km_table_for_p2_checks_the_closed_form():
    table = km_recursion_pr(2, 4)
    assert table.kontsevich == {d: KONTSEVICH[d] for d in range(1, 5)}
    assert table.invariants[(3, (2,) * 8)] == 12


@pytest.mark.parametrize(
    "case",
    [
        {"name": "line through two points", "d": 1, "codims": (3, 3), "want": 1},
        {"name": "lines meeting four lines", "d": 1, "codims": (2, 2, 2, 2), "want": 2},
        {"name": "line through a point meeting two lines", "d": 1, "codims": (2, 2, 3), "want": 1},
        {"name": "conics meeting eight lines", "d": 2, "codims": (2,) * 8, "want": 92},
        {"name": "divisor axiom", "d": 2, "codims": (1,) + (2,) * 8, "want": 184},
        {"name": "gate", "d": 1, "codims": (2, 2, 2), "want": 0},
    ],
    ids=lambda c: c["name"],
)
def test_p3_invariants(case: dict[str, object]):
    assert projective_invariant(3, case["d"], case["codims"]) == case["want"]  # type: ignore[arg-type]


def test_p3_table_has_no_kontsevich_column():
    table = km_recursion_pr(3, 2)
    assert table.kontsevich == {}
    assert table.invariants[(1, (2, 2, 2, 2))] == 2


def test_degree_zero_is_the_triple_intersection():
    assert projective_invariant(2, 0, (0, 1, 1)) == 1
    assert projective_invariant(2, 0, (0, 0, 2)) == 1
    assert projective_invariant(2, 0, (1, 1)) == 0


def test_rejections(monkeypatch: pytest.MonkeyPatch):
    with pytest.raises(DomainError):
        km_recursion_pr(4, 1)
    with pytest.raises(DomainError):
        km_recursion_pr(1, 1)
    with pytest.raises(DomainError):
        projective_invariant(0, 1, ())
    monkeypatch.setattr(settings, "km_max_degree", 2)
    with pytest.raises(ResourceLimitError) as excinfo:
        km_recursion_pr(2, 3)
    assert "KM_MAX_DEGREE" in str(excinfo.value)
