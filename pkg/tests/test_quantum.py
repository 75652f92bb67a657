from __future__ import annotations

from fractions import Fraction

import pytest

from gwrecon.config import settings
from gwrecon.domain.schubert import CohClass, Grassmannian
from gwrecon.errors import ResourceLimitError
from gwrecon.gwcore.quantum import (
    associativity_failures,
    quantum_multiply,
    quantum_product_3pt,
    rim_hook_reduce,
    three_point,
)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "s2 * s11 = q", "lam": (2,), "mu": (1, 1), "want": {((0, 0), 1): 1}},
        {"name": "s2 * s2 = s22", "lam": (2,), "mu": (2,), "want": {((2, 2), 0): 1}},
        {"name": "s1 * s21 = s22 + q", "lam": (1,), "mu": (2, 1), "want": {((2, 2), 0): 1, ((0, 0), 1): 1}},
        {"name": "s22 * s22 = q^2", "lam": (2, 2), "mu": (2, 2), "want": {((0, 0), 2): 1}},
    ],
    ids=lambda c: c["name"],
)
def test_quantum_products_on_g24(case: dict[str, object], g24: Grassmannian):
    got = quantum_product_3pt(g24, case["lam"], case["mu"])  # type: ignore[arg-type]
    assert got == {k: Fraction(v) for k, v in case["want"].items()}  # type: ignore[attr-defined]


def test_rim_hook_reduce(g24: Grassmannian):
    assert rim_hook_reduce(g24, (2, 1)) == (1, (2, 1), 0)
    assert rim_hook_reduce(g24, (3, 1)) == (1, (0, 0), 1)
    assert rim_hook_reduce(g24, (4, 0)) == (-1, (0, 0), 1)
    assert rim_hook_reduce(g24, (3, 0)) == (0, None, 0)
    assert rim_hook_reduce(g24, (1, 1, 1)) == (0, None, 0)


@pytest.mark.parametrize("N", [4, 5])
def test_quantum_product_is_associative(N: int):
    assert associativity_failures(Grassmannian(2, N)) == []


def test_quantum_multiply_tracks_q_powers(g24: Grassmannian):
    x = {((1, 0), 1): Fraction(1)}
    y = {((2, 1), 0): Fraction(2)}
    assert quantum_multiply(g24, x, y) == {((0, 0), 2): Fraction(2), ((2, 2), 1): Fraction(2)}


def test_three_point_reads_structure_constants(g24: Grassmannian):
    s = lambda *p: CohClass.schubert(g24, p)  # noqa: E731
    assert three_point(g24, s(2), s(1, 1), s(2, 2), 1) == 1
    assert three_point(g24, s(2), s(2), s(2, 2), 1) == 0
    assert three_point(g24, s(2), s(2), s(0), 0) == 1
    # lines in P^2 through two points
    p2 = Grassmannian.projective(2)
    pt = CohClass.schubert(p2, (2,))
    assert three_point(p2, pt, pt, CohClass.schubert(p2, (1,)), 1) == 1


def test_quantum_product_bounds(monkeypatch: pytest.MonkeyPatch, g24: Grassmannian):
    monkeypatch.setattr(settings, "quantum_max_N", 3)
    with pytest.raises(ResourceLimitError) as excinfo:
        quantum_product_3pt(g24, (1,), (1,))
    assert "QUANTUM_MAX_N" in str(excinfo.value)
