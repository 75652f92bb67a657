"""Schubert calculus on G(k, N) and Betti numbers of SL flag varieties.

Subspace convention: G(k, N) parametrizes k-planes, Q is the rank N-k quotient and
σ_(i) = c_i(Q). ℙʳ is G(1, r+1) with H = σ_(1).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import comb

from sympy.combinatorics import Permutation

from gwrecon.errors import DomainError, UnsupportedError


# Padded to exactly k parts.
SchubertPartition = tuple[int, ...]
Monomial = tuple[int, int]


@dataclass(frozen=True)
class Grassmannian:
    k: int
    N: int

    def __post_init__(self) -> None:
        if not (1 <= self.k < self.N):
            raise DomainError(f"G({self.k},{self.N}) needs 1 <= k < N")

    @classmethod
    def projective(cls, r: int) -> Grassmannian:
        if r < 1:
            raise DomainError("projective space needs r >= 1")
        return cls(1, r + 1)

    @property
    def width(self) -> int:
        return self.N - self.k

    @property
    def dim(self) -> int:
        return self.k * (self.N - self.k)

    @property
    def c1_degree(self) -> int:
        """∫_line c₁(TX)."""
        return self.N

    @property
    def is_projective(self) -> bool:
        return self.k == 1

    @property
    def label(self) -> str:
        if self.is_projective:
            return f"pr:{self.N - 1}"
        return f"g:{self.k},{self.N}"

    @property
    def point(self) -> SchubertPartition:
        return (self.width,) * self.k

    @property
    def empty(self) -> SchubertPartition:
        return (0,) * self.k

    def normalize(self, parts: Iterable[int]) -> SchubertPartition:
        raw = [int(p) for p in parts if int(p) != 0]
        if any(p < 0 for p in raw):
            raise DomainError(f"negative part in {tuple(raw)}")
        if len(raw) > self.k:
            raise DomainError(f"partition {tuple(raw)} has more than {self.k} parts")
        if any(raw[i] < raw[i + 1] for i in range(len(raw) - 1)):
            raise DomainError(f"partition {tuple(raw)} is not non-increasing")
        if raw and raw[0] > self.width:
            raise DomainError(f"partition {tuple(raw)} does not fit the {self.k}x{self.width} box")
        return tuple(raw) + (0,) * (self.k - len(raw))

    def partitions(self, codim: int | None = None) -> list[SchubertPartition]:
        out = [lam for lam in _box_partitions(self.k, self.width) if codim in (None, sum(lam))]
        out.sort(key=lambda lam: (sum(lam), lam))
        return out

    def flag(self) -> FlagDescriptor:
        return FlagDescriptor(N=self.N, subspace_dims=(self.k,))


def _box_partitions(rows: int, width: int) -> Iterator[SchubertPartition]:
    if rows == 0:
        yield ()
        return
    for first in range(width, -1, -1):
        for rest in _box_partitions(rows - 1, first):
            yield (first,) + rest


def codim(lam: SchubertPartition) -> int:
    return sum(lam)


def format_partition(lam: SchubertPartition) -> str:
    parts = [str(p) for p in lam if p]
    return ",".join(parts) if parts else "0"


@dataclass(frozen=True)
class CohClass:
    grassmannian: Grassmannian
    # Sorted (partition, coefficient) pairs with nonzero coefficients.
    terms: tuple[tuple[SchubertPartition, Fraction], ...] = ()

    @classmethod
    def from_mapping(
        cls, g: Grassmannian, mapping: Mapping[SchubertPartition, Fraction | int]
    ) -> CohClass:
        clean = {g.normalize(lam): Fraction(v) for lam, v in mapping.items() if v != 0}
        return cls(g, tuple(sorted(clean.items())))

    @classmethod
    def schubert(cls, g: Grassmannian, lam: Iterable[int], coeff: Fraction | int = 1) -> CohClass:
        return cls.from_mapping(g, {g.normalize(lam): coeff})

    @classmethod
    def one(cls, g: Grassmannian) -> CohClass:
        return cls.schubert(g, ())

    @classmethod
    def zero(cls, g: Grassmannian) -> CohClass:
        return cls(g)

    @cached_property
    def as_dict(self) -> dict[SchubertPartition, Fraction]:
        return dict(self.terms)

    def coefficient(self, lam: Iterable[int]) -> Fraction:
        return self.as_dict.get(self.grassmannian.normalize(lam), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(lam) for lam, _ in self.terms}

    def homogeneous_codim(self) -> int:
        """Codimension of a homogeneous nonzero class."""
        degs = self.degrees()
        if len(degs) != 1:
            raise DomainError(f"class is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def component(self, degree: int) -> CohClass:
        return CohClass(self.grassmannian, tuple(t for t in self.terms if sum(t[0]) == degree))

    def _check_same(self, other: CohClass) -> None:
        if other.grassmannian != self.grassmannian:
            raise DomainError(
                f"classes live on {self.grassmannian.label} and {other.grassmannian.label}"
            )

    def __add__(self, other: CohClass) -> CohClass:
        self._check_same(other)
        acc = dict(self.terms)
        for lam, v in other.terms:
            acc[lam] = acc.get(lam, Fraction(0)) + v
        return CohClass.from_mapping(self.grassmannian, acc)

    def __neg__(self) -> CohClass:
        return self.scale(-1)

    def __sub__(self, other: CohClass) -> CohClass:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> CohClass:
        f = Fraction(factor)
        return CohClass.from_mapping(self.grassmannian, {lam: v * f for lam, v in self.terms})

    def __mul__(self, other: CohClass | Fraction | int) -> CohClass:
        if isinstance(other, CohClass):
            return product(self.grassmannian, self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CohClass:
        out = CohClass.one(self.grassmannian)
        for _ in range(exponent):
            out = out * self
        return out


def _horizontal_strips(g: Grassmannian, lam: SchubertPartition, i: int) -> Iterator[SchubertPartition]:
    k = g.k

    def extend(row: int, remaining: int, prefix: tuple[int, ...]) -> Iterator[SchubertPartition]:
        if row == k:
            if remaining == 0:
                yield prefix
            return
        upper = g.width if row == 0 else lam[row - 1]
        for add in range(0, min(remaining, upper - lam[row]) + 1):
            yield from extend(row + 1, remaining - add, prefix + (lam[row] + add,))

    if i < 0:
        return
    yield from extend(0, i, ())


def _pieri_raw(g: Grassmannian, x: Mapping[SchubertPartition, Fraction], i: int) -> dict[SchubertPartition, Fraction]:
    out: dict[SchubertPartition, Fraction] = {}
    if i < 0:
        return out
    for lam, v in x.items():
        for mu in _horizontal_strips(g, lam, i):
            out[mu] = out.get(mu, Fraction(0)) + v
    return out


def pieri(g: Grassmannian, lam: Iterable[int], i: int) -> CohClass:
    """σ_λ · σ_(i) by horizontal strips inside the box."""

    if not (1 <= i <= g.width):
        raise DomainError(f"Pieri index {i} outside 1..{g.width} on {g.label}")
    base = g.normalize(lam)
    return CohClass.from_mapping(g, _pieri_raw(g, {base: Fraction(1)}, i))


def jacobi_trudi_words(lam: SchubertPartition) -> list[tuple[int, tuple[int, ...]]]:
    """s_λ = Σ sign · h_{w_1} ⋯ h_{w_ℓ}; words with a negative index are dropped."""

    parts = [p for p in lam if p]
    ell = len(parts)
    words: list[tuple[int, tuple[int, ...]]] = []
    for perm in permutations(range(ell)):
        word = tuple(parts[i] - i + perm[i] for i in range(ell))
        if any(h < 0 for h in word):
            continue
        sign = Permutation(list(perm)).signature() if ell > 1 else 1
        words.append((sign, word))
    return words


def product(g: Grassmannian, x: CohClass, y: CohClass) -> CohClass:
    if x.grassmannian != g or y.grassmannian != g:
        raise DomainError("product of classes from different Grassmannians")
    acc: dict[SchubertPartition, Fraction] = {}
    for lam, coeff in y.terms:
        for sign, word in jacobi_trudi_words(lam):
            current: dict[SchubertPartition, Fraction] = {mu: v * coeff * sign for mu, v in x.terms}
            for h in word:
                if not current:
                    break
                current = _pieri_raw(g, current, h)
            for mu, v in current.items():
                acc[mu] = acc.get(mu, Fraction(0)) + v
    return CohClass.from_mapping(g, acc)


def integrate(g: Grassmannian, x: CohClass) -> Fraction:
    if x.grassmannian != g:
        raise DomainError("integrating a class from another Grassmannian")
    return x.as_dict.get(g.point, Fraction(0))


def dual(g: Grassmannian, lam: Iterable[int]) -> SchubertPartition:
    base = g.normalize(lam)
    return tuple(g.width - base[g.k - 1 - i] for i in range(g.k))


def chern_q(g: Grassmannian, i: int) -> CohClass:
    """c_i(Q); zero above the rank of Q."""

    if i < 0:
        raise DomainError("Chern class index must be non-negative")
    if i > g.width:
        return CohClass.zero(g)
    return CohClass.schubert(g, (i,) if i else ())


def _require_k2(g: Grassmannian) -> None:
    if g.k != 2:
        raise UnsupportedError(f"Chern monomial basis is implemented for k=2 only, got {g.label}")


def monomial_class(g: Grassmannian, a: int, b: int) -> CohClass:
    """c₁ᵃ c₂ᵇ as a Schubert combination."""

    _require_k2(g)
    if a < 0 or b < 0:
        raise DomainError("monomial exponents must be non-negative")
    return chern_q(g, 1) ** a * chern_q(g, 2) ** b


MonomialPoly = dict[Monomial, Fraction]


def _poly_mul(x: MonomialPoly, y: MonomialPoly) -> MonomialPoly:
    out: MonomialPoly = {}
    for (a1, b1), v1 in x.items():
        for (a2, b2), v2 in y.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, Fraction(0)) + v1 * v2
    return {m: v for m, v in out.items() if v}


def _poly_add(x: MonomialPoly, y: MonomialPoly, scale: Fraction | int = 1) -> MonomialPoly:
    out = dict(x)
    for m, v in y.items():
        out[m] = out.get(m, Fraction(0)) + v * scale
    return {m: v for m, v in out.items() if v}


_C1: MonomialPoly = {(1, 0): Fraction(1)}
# σ₁₁ = c₁² - c₂
_SIGMA11: MonomialPoly = {(2, 0): Fraction(1), (0, 1): Fraction(-1)}


def _giambelli_row(m: int) -> MonomialPoly:
    # σ_m = c₁ σ_{m-1} - σ₁₁ σ_{m-2}
    prev: MonomialPoly = {(0, 0): Fraction(1)}
    if m == 0:
        return prev
    cur: MonomialPoly = dict(_C1)
    for _ in range(m - 1):
        prev, cur = cur, _poly_add(_poly_mul(_C1, cur), _poly_mul(_SIGMA11, prev), -1)
    return cur


def schubert_to_monomials(g: Grassmannian, x: CohClass) -> MonomialPoly:
    """Express a class in c₁ᵃc₂ᵇ monomials via σ_(p,q) = σ₁₁^q · σ_(p-q)."""

    _require_k2(g)
    out: MonomialPoly = {}
    for (p, q), coeff in x.terms:
        term = _giambelli_row(p - q)
        for _ in range(q):
            term = _poly_mul(term, _SIGMA11)
        out = _poly_add(out, term, coeff)
    return out


def monomials_to_schubert(g: Grassmannian, poly: Mapping[Monomial, Fraction | int]) -> CohClass:
    out = CohClass.zero(g)
    for (a, b), coeff in poly.items():
        if coeff:
            out = out + monomial_class(g, a, b).scale(coeff)
    return out


@dataclass(frozen=True)
class FlagDescriptor:
    N: int
    subspace_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(m) for m in self.subspace_dims)
        object.__setattr__(self, "subspace_dims", dims)
        if not dims:
            raise DomainError("flag needs at least one step")
        if dims[0] <= 0 or dims[-1] >= self.N:
            raise DomainError(f"flag dimensions must lie strictly between 0 and N={self.N}")
        if any(dims[i] >= dims[i + 1] for i in range(len(dims) - 1)):
            raise DomainError("flag dimensions must be strictly increasing")

    @property
    def l(self) -> int:
        return len(self.subspace_dims)

    @property
    def kernel_ranks(self) -> tuple[int, ...]:
        """rank K_i = rank Q_i - rank Q_{i+1}, i = 0..l."""
        marks = (0,) + self.subspace_dims + (self.N,)
        return tuple(marks[i + 1] - marks[i] for i in range(self.l + 1))

    @property
    def quotient_ranks(self) -> tuple[int, ...]:
        return tuple(self.N - m for m in self.subspace_dims)

    @property
    def dim(self) -> int:
        r = self.kernel_ranks
        return sum(r[i] * r[j] for i in range(len(r)) for j in range(i + 1, len(r)))

    @property
    def h2(self) -> int:
        return self.l

    @property
    def h4(self) -> int:
        big = sum(1 for r in self.kernel_ranks if r >= 2)
        return comb(self.l + 1, 2) + big - 1

    @property
    def c1_pairings(self) -> tuple[int, ...]:
        """∫_{β_i} c₁(TX) = m_{i+1} - m_{i-1} with m_0 = 0, m_{l+1} = N."""
        marks = (0,) + self.subspace_dims + (self.N,)
        return tuple(marks[i + 1] - marks[i - 1] for i in range(1, self.l + 1))

    @property
    def label(self) -> str:
        return "flag:" + ",".join(str(m) for m in self.subspace_dims) + f"@{self.N}"

    def dual(self) -> FlagDescriptor:
        """The flag of annihilators; step i becomes step l+1-i."""
        return FlagDescriptor(N=self.N, subspace_dims=tuple(self.N - m for m in reversed(self.subspace_dims)))


@dataclass(frozen=True)
class FlagBetti:
    dim: int
    h2: int
    h4: int
    kernel_ranks: tuple[int, ...]


def flag_betti(f: FlagDescriptor) -> FlagBetti:
    return FlagBetti(dim=f.dim, h2=f.h2, h4=f.h4, kernel_ranks=f.kernel_ranks)
