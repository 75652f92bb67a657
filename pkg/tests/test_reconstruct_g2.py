from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from gwrecon.domain.schubert import Grassmannian, Monomial
from gwrecon.errors import DomainError, UnsupportedError
from gwrecon.gwcore.keys import InvariantKey, expected_dim_gate
from gwrecon.gwcore.localization import oracle_eval
from gwrecon.gwcore.providers import OracleProvider, base_provider_vanishing, vanishing_rule
from gwrecon.gwcore.reconstruct import G2Reconstructor, reconstruct_g2


def _keys(g: Grassmannian, d: int, n: int) -> list[InvariantKey]:
    out: list[InvariantKey] = []
    for ins in combinations_with_replacement(g.partitions(), n):
        key = InvariantKey(g, d, ins)
        if expected_dim_gate(key) and all(any(lam) for lam in ins):
            out.append(key)
    return out


@pytest.mark.parametrize(
    "case",
    [
        {"name": "G24 d1 n4", "N": 4, "d": 1, "n": 4},
        {"name": "G24 d1 n5", "N": 4, "d": 1, "n": 5},
        {"name": "G24 d2 n4", "N": 4, "d": 2, "n": 4},
        {"name": "G25 d1 n4", "N": 5, "d": 1, "n": 4},
        {"name": "G24 d2 n5", "N": 4, "d": 2, "n": 5},
        {"name": "G25 d1 n5", "N": 5, "d": 1, "n": 5},
        {"name": "G25 d2 n4", "N": 5, "d": 2, "n": 4},
        pytest.param({"name": "G25 d2 n5", "N": 5, "d": 2, "n": 5}, marks=pytest.mark.slow, id="G25 d2 n5"),
    ],
    ids=lambda c: c["name"],
)
def test_reconstruction_matches_the_oracle(case: dict[str, int]):
    g = Grassmannian(2, case["N"])
    engine = G2Reconstructor(g, OracleProvider(g))
    keys = _keys(g, case["d"], case["n"])
    assert keys
    for key in keys:
        assert engine.evaluate(key) == oracle_eval(key), key.label


def test_reconstruct_examples(g24: Grassmannian):
    provider = OracleProvider(g24)
    assert reconstruct_g2(InvariantKey.of(g24, 1, [(1,), (2,), (2,), (2, 2)]), provider) == 0
    assert reconstruct_g2(InvariantKey.of(g24, 1, [(1,), (2,), (1, 1), (2, 2)]), provider) == 1
    assert reconstruct_g2(InvariantKey.of(g24, 1, [(1,), (1,)]), provider) == 0


def test_reconstruct_rejects_a_foreign_engine(g24: Grassmannian):
    engine = G2Reconstructor(g24, OracleProvider(g24))
    with pytest.raises(DomainError):
        reconstruct_g2(InvariantKey.of(g24, 1, [(2,), (1, 1), (2, 2)]), OracleProvider(g24), engine=engine)
    with pytest.raises(DomainError):
        engine.evaluate(InvariantKey.of(Grassmannian(2, 5), 1, [(3, 3), (3, 3), (1,)]))


def test_reconstruction_needs_k2():
    with pytest.raises(UnsupportedError):
        G2Reconstructor(Grassmannian(3, 6), OracleProvider(Grassmannian(2, 4)))
    with pytest.raises(UnsupportedError):
        OracleProvider(Grassmannian.projective(3))


@pytest.mark.parametrize(
    "case",
    [
        {"name": "N7 n4 d3", "N": 7, "n": 4, "d": 3, "want": True},
        {"name": "N4 n6 d2", "N": 4, "n": 6, "d": 2, "want": False},
        {"name": "N3 n10 d3", "N": 3, "n": 10, "d": 3, "want": False},
        {"name": "N4 n10 d4", "N": 4, "n": 10, "d": 4, "want": True},
    ],
    ids=lambda c: c["name"],
)
def test_vanishing_rule(case: dict[str, object]):
    assert vanishing_rule(case["N"], case["n"], case["d"]) is case["want"]  # type: ignore[arg-type]


def test_vanishing_provider_short_circuits():
    calls: list[tuple[Monomial, Monomial, int, int]] = []

    def fallback(beta1: Monomial, beta2: Monomial, c2_count: int, degree: int) -> Fraction:
        calls.append((beta1, beta2, c2_count, degree))
        return Fraction(7)

    provider = base_provider_vanishing(7, fallback)
    assert provider((1, 0), (0, 1), 2, 3) == 0
    assert provider((1, 0), (0, 1), 2, 1) == 7
    assert calls == [((1, 0), (0, 1), 2, 1)]


def test_vanishing_provider_agrees_with_the_oracle_on_g24(g24: Grassmannian):
    provider = base_provider_vanishing(4, OracleProvider(g24))
    engine = G2Reconstructor(g24, provider)
    for key in _keys(g24, 2, 3):
        assert engine.evaluate(key) == oracle_eval(key), key.label
