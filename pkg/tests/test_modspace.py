from __future__ import annotations

from fractions import Fraction

import pytest

from gwrecon.domain.fixedloci import flag_family_counts
from gwrecon.domain.modspace import (
    SpaceSignature,
    bidegree_relation,
    boundary_divisor_count,
    boundary_divisors,
    codim2_catalog,
    dim_h2,
    flageq_coefficients,
    h2_generators,
)
from gwrecon.domain.schubert import FlagDescriptor, Grassmannian
from gwrecon.domain.symgroup import invariant_dim
from gwrecon.errors import DomainError, UnsupportedError


G24 = Grassmannian(2, 4)
FULL3 = FlagDescriptor(N=3, subspace_dims=(1, 2))


@pytest.mark.parametrize(
    "case",
    [
        {"name": "P2 n0 d2", "sig": SpaceSignature.projective(2, 0, 2), "want": 1},
        {"name": "P2 n3 d1", "sig": SpaceSignature.projective(2, 3, 1), "want": 4},
        {"name": "two-step flag n0 d11", "sig": SpaceSignature(FULL3, 0, (1, 1)), "want": 1},
        {"name": "P1 n3 d0", "sig": SpaceSignature.projective(1, 3, 0), "want": 0},
    ],
    ids=lambda c: c["name"],
)
def test_boundary_divisors_examples(case: dict[str, object]):
    sig = case["sig"]
    splits = boundary_divisors(sig)  # type: ignore[arg-type]
    assert len(splits) == case["want"]
    assert boundary_divisor_count(sig) == case["want"]  # type: ignore[arg-type]


def test_boundary_divisors_two_step_split_is_the_expected_one():
    (split,) = boundary_divisors(SpaceSignature(FULL3, 0, (1, 1)))
    assert {split.first.degree, split.second.degree} == {(1, 0), (0, 1)}
    assert not split.symmetric


def test_boundary_count_matches_enumeration_on_grid():
    flags = [
        FlagDescriptor(N=3, subspace_dims=(1,)),
        FlagDescriptor(N=4, subspace_dims=(2,)),
        FULL3,
        FlagDescriptor(N=4, subspace_dims=(1, 2, 3)),
    ]
    checked = 0
    for flag in flags:
        for n in range(0, 6):
            for total in range(0, 5):
                for degs in _compositions(total, flag.l):
                    sig = SpaceSignature(flag, n, degs)
                    if sig.degree == 0 and n < 3:
                        continue
                    # boundary_divisors raises IntegrityError on a mismatch with the formula
                    assert len(boundary_divisors(sig)) == boundary_divisor_count(sig)
                    checked += 1
    assert checked > 100


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    return [(x,) + rest for x in range(total + 1) for rest in _compositions(total - x, parts - 1)]


def test_empty_space_is_rejected():
    with pytest.raises(DomainError) as excinfo:
        boundary_divisors(SpaceSignature.projective(2, 2, 0))
    assert "empty" in str(excinfo.value)


def test_signature_validation():
    with pytest.raises(DomainError):
        SpaceSignature(FULL3, 0, (1,))
    with pytest.raises(DomainError):
        SpaceSignature.projective(2, -1, 1)
    assert SpaceSignature.for_grassmannian(G24, 0, 2).dim == 4 + 8 - 3


@pytest.mark.parametrize(
    "case",
    [
        {"name": "G24 n0 d2", "sig": SpaceSignature.for_grassmannian(G24, 0, 2), "want": 3},
        {"name": "P1 n0 d2", "sig": SpaceSignature.projective(1, 0, 2), "want": 1},
        {"name": "P2 n0 d3", "sig": SpaceSignature.projective(2, 0, 3), "want": 2},
        {"name": "P5 n0 d3", "sig": SpaceSignature.projective(5, 0, 3), "want": 2},
        {"name": "P2 n1 d2", "sig": SpaceSignature.projective(2, 1, 2), "want": 3},
    ],
    ids=lambda c: c["name"],
)
def test_dim_h2_examples(case: dict[str, object]):
    assert dim_h2(case["sig"]) == case["want"]  # type: ignore[arg-type]
    assert h2_generators(case["sig"]).net == case["want"]  # type: ignore[arg-type]


def test_h2_generators_g24():
    catalog = h2_generators(SpaceSignature.for_grassmannian(G24, 0, 2))
    assert len(catalog.generators) == 4
    assert catalog.relations == ("flageq",)
    assert "kappa(c2(K0))" in catalog.names()
    assert "kappa(c2(K1))" in catalog.names()


def test_h2_generators_p1_has_no_kappa_classes():
    catalog = h2_generators(SpaceSignature.projective(1, 0, 2))
    assert [g.kind for g in catalog.generators] == ["boundary"]
    assert catalog.relations == ()


def test_family_counts_assemble_dim_h2_on_grid():
    flags = [
        FlagDescriptor(N=3, subspace_dims=(1,)),
        FlagDescriptor(N=4, subspace_dims=(1,)),
        FlagDescriptor(N=4, subspace_dims=(2,)),
        FULL3,
        FlagDescriptor(N=4, subspace_dims=(1, 3)),
        FlagDescriptor(N=4, subspace_dims=(1, 2, 3)),
    ]
    for flag in flags:
        for n in range(0, 6):
            for total in range(flag.l, 5):
                for degs in _compositions(total, flag.l):
                    if 0 in degs:
                        continue
                    counts = flag_family_counts(SpaceSignature(flag, n, degs))
                    assert counts.passed, (flag.label, n, degs, counts)


def test_family_counts_examples():
    out = flag_family_counts(SpaceSignature.for_grassmannian(G24, 0, 2))
    assert (out.big_locus, out.a, out.b, out.cde, out.total) == (0, 0, 1, 2, 3)
    out = flag_family_counts(SpaceSignature.projective(3, 1, 2))
    assert (out.big_locus, out.a, out.b, out.cde, out.total) == (0, 1, 1, 1, 3)


def test_flageq_coefficients():
    assert flageq_coefficients(SpaceSignature.projective(2, 0, 2))["kappa(c1(Q1)^2)"] == -1
    two_step = flageq_coefficients(SpaceSignature(FULL3, 0, (1, 1)))
    assert two_step["kappa(c1(Q1)^2)"] == Fraction(-1, 2)
    assert two_step["kappa(c1(Q2)^2)"] == Fraction(-1, 2)
    skewed = flageq_coefficients(SpaceSignature(FULL3, 0, (2, 1)))
    assert skewed["kappa(c1(Q1)^2)"] == Fraction(-3, 4)
    assert skewed["kappa(c1(Q2)^2)"] == 0
    with pytest.raises(DomainError):
        flageq_coefficients(SpaceSignature(FULL3, 0, (0, 1)))


def test_bidegree_relation():
    assert bidegree_relation(2, 1) == {(0, 1): Fraction(1), (1, 0): Fraction(1, 4)}
    square = bidegree_relation(2, 2)
    assert square[(1, 1)] == 0
    assert square[(1, 0)] == Fraction(1, 4)
    with pytest.raises(DomainError):
        bidegree_relation(0, 1)


def test_codim2_catalog_p1_degree_4():
    catalog = codim2_catalog(Grassmannian.projective(1), 0, 4)
    assert catalog.count("A.1") == 2
    assert catalog.count("A.2.1") == 2
    assert catalog.net == 4


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_codim2_catalog_transfer_gaps(d: int):
    g = Grassmannian(3, 6)
    p3 = Grassmannian.projective(3)
    assert codim2_catalog(g, 0, d).net - codim2_catalog(p3, 0, d).net == d + 3
    assert codim2_catalog(g, 1, d).net - codim2_catalog(p3, 1, d).net == 2 * d + 3


def test_codim2_catalog_rejections():
    with pytest.raises(DomainError):
        codim2_catalog(Grassmannian.projective(2), 0, 1)
    with pytest.raises(UnsupportedError):
        codim2_catalog(Grassmannian.projective(2), 3, 2)
    with pytest.raises(UnsupportedError) as excinfo:
        codim2_catalog(G24, 0, 2)
    assert "min(k, N-k)" in str(excinfo.value)
    with pytest.raises(UnsupportedError):
        codim2_catalog(Grassmannian(3, 6), 2, 2)


def test_family_counts_below_the_stable_range():
    out = flag_family_counts(SpaceSignature(FULL3, 0, (1, 1)))
    assert out.big_locus == invariant_dim(0, (1, 1), require_stable=False)
    assert out.passed
