from __future__ import annotations

from fractions import Fraction

import pytest

from gwrecon.domain.schubert import (
    CohClass,
    FlagDescriptor,
    Grassmannian,
    chern_q,
    dual,
    flag_betti,
    format_partition,
    integrate,
    monomial_class,
    monomials_to_schubert,
    pieri,
    product,
    schubert_to_monomials,
)
from gwrecon.errors import DomainError, UnsupportedError


G24 = Grassmannian(2, 4)


def s(g: Grassmannian, *parts: int) -> CohClass:
    return CohClass.schubert(g, parts)


@pytest.mark.parametrize(
    "case",
    [
        {"name": "s1 s1", "lam": (1,), "i": 1, "want": {(2, 0): 1, (1, 1): 1}},
        {"name": "s21 s1", "lam": (2, 1), "i": 1, "want": {(2, 2): 1}},
        {"name": "s22 s1 overflows", "lam": (2, 2), "i": 1, "want": {}},
        {"name": "s1 s2", "lam": (1,), "i": 2, "want": {(2, 1): 1}},
    ],
    ids=lambda c: c["name"],
)
def test_pieri_g24(case: dict[str, object]):
    got = pieri(G24, case["lam"], case["i"])  # type: ignore[arg-type]
    assert got == CohClass.from_mapping(G24, case["want"])  # type: ignore[arg-type]


def test_pieri_index_out_of_range():
    with pytest.raises(DomainError) as excinfo:
        pieri(G24, (1,), 3)
    assert "Pieri index" in str(excinfo.value)


def test_products_on_g24():
    assert product(G24, s(G24, 2), s(G24, 2)) == s(G24, 2, 2)
    assert product(G24, s(G24, 2), s(G24, 1, 1)).is_zero
    x = s(G24, 2, 1) + s(G24, 1).scale(3)
    assert CohClass.one(G24) * x == x


def test_product_rejects_mixed_targets():
    with pytest.raises(DomainError):
        product(G24, s(G24, 1), s(Grassmannian(2, 5), 1))


def test_products_are_commutative_on_g25():
    g = Grassmannian(2, 5)
    basis = [CohClass.schubert(g, lam) for lam in g.partitions()]
    for x in basis:
        for y in basis:
            assert x * y == y * x


def test_integrate():
    assert integrate(G24, s(G24, 2, 2)) == 1
    assert integrate(G24, s(G24, 1) ** 4) == 2
    assert integrate(G24, s(G24, 1)) == 0
    # deg G(2,5) = 5
    assert integrate(Grassmannian(2, 5), s(Grassmannian(2, 5), 1) ** 6) == 5


def test_dual():
    assert dual(G24, (2, 2)) == (0, 0)
    assert dual(G24, (1,)) == (2, 1)
    assert dual(G24, (2,)) == (2, 0)
    for lam in G24.partitions():
        for mu in G24.partitions():
            pairing = integrate(G24, s(G24, *lam) * s(G24, *mu))
            assert pairing == (1 if mu == dual(G24, lam) else 0)


def test_chern_classes_of_q():
    assert chern_q(G24, 2) == s(G24, 2)
    assert chern_q(G24, 1) ** 2 == s(G24, 2) + s(G24, 1, 1)
    assert chern_q(G24, 3).is_zero


@pytest.mark.parametrize("N", [4, 5, 6])
def test_monomial_basis_round_trip(N: int):
    g = Grassmannian(2, N)
    for lam in g.partitions():
        x = CohClass.schubert(g, lam)
        assert monomials_to_schubert(g, schubert_to_monomials(g, x)) == x


def test_monomial_class_examples():
    assert monomial_class(G24, 0, 1) == s(G24, 2)
    assert monomial_class(G24, 2, 0) - monomial_class(G24, 0, 1) == s(G24, 1, 1)
    assert schubert_to_monomials(G24, s(G24, 1, 1)) == {(2, 0): Fraction(1), (0, 1): Fraction(-1)}


def test_monomial_basis_needs_k2():
    with pytest.raises(UnsupportedError):
        monomial_class(Grassmannian(3, 6), 1, 0)


def test_partition_validation():
    with pytest.raises(DomainError):
        Grassmannian(2, 2)
    with pytest.raises(DomainError) as excinfo:
        G24.normalize((3,))
    assert "box" in str(excinfo.value)
    with pytest.raises(DomainError):
        G24.normalize((1, 2))
    with pytest.raises(DomainError):
        G24.normalize((1, 1, 1))
    assert G24.normalize((2,)) == (2, 0)
    assert format_partition((2, 1)) == "2,1"
    assert format_partition((0, 0)) == "0"


@pytest.mark.parametrize(
    "case",
    [
        {"name": "P3", "flag": FlagDescriptor(N=4, subspace_dims=(1,)), "dim": 3, "h2": 1, "h4": 1},
        {"name": "G24", "flag": FlagDescriptor(N=4, subspace_dims=(2,)), "dim": 4, "h2": 1, "h4": 2},
        {"name": "full flag of C3", "flag": FlagDescriptor(N=3, subspace_dims=(1, 2)), "dim": 3, "h2": 2, "h4": 2},
    ],
    ids=lambda c: c["name"],
)
def test_flag_betti(case: dict[str, object]):
    out = flag_betti(case["flag"])  # type: ignore[arg-type]
    assert (out.dim, out.h2, out.h4) == (case["dim"], case["h2"], case["h4"])
    assert sum(out.kernel_ranks) == case["flag"].N  # type: ignore[attr-defined]


def test_flag_descriptor_validation():
    with pytest.raises(DomainError):
        FlagDescriptor(N=4, subspace_dims=(2, 2))
    with pytest.raises(DomainError):
        FlagDescriptor(N=4, subspace_dims=(4,))
    f = FlagDescriptor(N=5, subspace_dims=(1, 3))
    assert f.dual() == FlagDescriptor(N=5, subspace_dims=(2, 4))
    assert f.c1_pairings == (3, 4)
