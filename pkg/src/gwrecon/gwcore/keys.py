from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from gwrecon.domain.schubert import CohClass, Grassmannian, SchubertPartition, format_partition
from gwrecon.errors import DomainError


@dataclass(frozen=True)
class InvariantKey:
    """⟨σ_λ₁, …, σ_λₙ⟩_d on a Grassmannian; insertions are kept sorted."""

    target: Grassmannian
    degree: int
    insertions: tuple[SchubertPartition, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise DomainError("curve degree must be non-negative")
        normalized = tuple(sorted(self.target.normalize(lam) for lam in self.insertions))
        object.__setattr__(self, "insertions", normalized)

    @classmethod
    def of(cls, target: Grassmannian, degree: int, insertions: Iterable[Iterable[int]]) -> InvariantKey:
        return cls(target, degree, tuple(tuple(lam) for lam in insertions))

    @property
    def n(self) -> int:
        return len(self.insertions)

    @property
    def total_codim(self) -> int:
        return sum(sum(lam) for lam in self.insertions)

    @property
    def label(self) -> str:
        classes = "|".join(format_partition(lam) for lam in self.insertions)
        return f"{self.target.label}|d={self.degree}|{classes}"

    def sort_key(self) -> tuple[int, int, int, tuple[SchubertPartition, ...]]:
        return (self.target.k, self.target.N, self.degree, self.insertions)


def expected_dimension(target: Grassmannian, degree: int, n: int) -> int:
    return target.dim + degree * target.c1_degree + n - 3


def expected_dim_gate(key: InvariantKey) -> bool:
    return key.total_codim == expected_dimension(key.target, key.degree, key.n)


def expand_insertions(
    target: Grassmannian, degree: int, classes: Sequence[CohClass]
) -> Iterator[tuple[Fraction, InvariantKey]]:
    """Multilinear expansion of ⟨x₁, …, xₙ⟩_d into Schubert keys; gate failures are skipped."""

    for x in classes:
        if x.grassmannian != target:
            raise DomainError(f"insertion lives on {x.grassmannian.label}, target is {target.label}")
    wanted = expected_dimension(target, degree, len(classes))
    for combo in product(*(x.terms for x in classes)):
        if sum(sum(lam) for lam, _ in combo) != wanted:
            continue
        coeff = Fraction(1)
        for _, v in combo:
            coeff *= v
        yield coeff, InvariantKey(target, degree, tuple(lam for lam, _ in combo))
