"""Cycle-type combinatorics for S_k acting on the cohomology of M̄₀,ₘ.

- Pure functions, exact integers/Fractions only.
- Closed formulas plus brute-force oracles that never share code paths.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import comb, factorial, prod

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions

from gwrecon.config import settings
from gwrecon.errors import DomainError, IntegrityError, ResourceLimitError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PermProfile:
    k: int
    n1: int
    n2: int
    c: int
    all_even: bool

    def __post_init__(self) -> None:
        if self.k < 0 or self.n1 < 0 or self.n2 < 0 or self.c < 0:
            raise DomainError("profile statistics must be non-negative")
        if self.n1 + 2 * self.n2 > self.k:
            raise DomainError("n1 + 2*n2 exceeds k")
        if self.c < self.n1 + self.n2 or self.c > self.k:
            raise DomainError("cycle count inconsistent with n1, n2, k")
        if self.all_even and (self.n1 != 0 or self.k == 0):
            raise DomainError("all_even profile needs k > 0 and no fixed points")

    @classmethod
    def identity(cls, k: int) -> PermProfile:
        return cls(k=k, n1=k, n2=0, c=k, all_even=False)


@dataclass(frozen=True)
class CycleType:
    # Sorted non-increasing.
    parts: tuple[int, ...]
    _counts: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.parts):
            raise DomainError("cycle lengths must be positive")
        ordered = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", ordered)
        counts: dict[int, int] = {}
        for p in ordered:
            counts[p] = counts.get(p, 0) + 1
        object.__setattr__(self, "_counts", counts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def c(self) -> int:
        return len(self.parts)

    def n(self, j: int) -> int:
        return self._counts.get(j, 0)

    @cached_property
    def class_size(self) -> int:
        denom = prod(j ** m * factorial(m) for j, m in self._counts.items())
        return factorial(self.k) // denom

    def profile(self) -> PermProfile:
        all_even = self.k > 0 and all(p % 2 == 0 for p in self.parts)
        return PermProfile(k=self.k, n1=self.n(1), n2=self.n(2), c=self.c, all_even=all_even)

    def representative(self) -> tuple[int, ...]:
        """Array form of one permutation with this cycle type (cycles on consecutive points)."""
        cycles: list[list[int]] = []
        start = 0
        for p in self.parts:
            if p > 1:
                cycles.append(list(range(start, start + p)))
            start += p
        if not cycles:
            return tuple(range(self.k))
        return tuple(Permutation(cycles, size=self.k).array_form)


@dataclass(frozen=True)
class HalfBracket:
    value: Fraction

    @property
    def plus(self) -> int:
        return bracket_plus(self.value)


def bracket_plus(x: Fraction | int) -> int:
    """[x]⁺: x for integers, x + 1/2 for half-integers."""

    q = Fraction(x)
    if q.denominator == 1:
        return q.numerator
    if q.denominator == 2:
        return int(q + Fraction(1, 2))
    raise DomainError(f"[x]+ is defined only on half-integers, got {q}")


def cycle_types(k: int) -> list[CycleType]:
    if k < 0:
        raise DomainError("k must be non-negative")
    if k > settings.cycle_type_bound:
        raise ResourceLimitError(f"cycle_types({k}) too large", bound="CYCLE_TYPE_BOUND")
    out: list[CycleType] = []
    # partitions() reuses its dict between yields.
    for part in partitions(k):
        parts = [j for j, m in dict(part).items() for _ in range(m)]
        out.append(CycleType(tuple(parts)))
    out.sort(key=lambda t: (-t.c, t.parts))
    return out


def _combined(n_fixed: int, profiles: Sequence[PermProfile]) -> tuple[int, int, int, int, bool]:
    if n_fixed < 0:
        raise DomainError("n_fixed must be non-negative")
    m = n_fixed + sum(p.k for p in profiles)
    if m < 3:
        raise DomainError(f"M̄₀,{m} does not exist (need at least 3 points)")
    n1 = n_fixed + sum(p.n1 for p in profiles)
    n2 = sum(p.n2 for p in profiles)
    c = n_fixed + sum(p.c for p in profiles)
    nonempty = [p for p in profiles if p.k > 0]
    all_even = n_fixed == 0 and bool(nonempty) and all(p.all_even for p in nonempty)
    return m, n1, n2, c, all_even


def trace_h2(n_fixed: int, profiles: Sequence[PermProfile]) -> int:
    _, n1, n2, c, all_even = _combined(n_fixed, profiles)
    delta = 2 ** (c - 1) if all_even else 0
    return 2 ** (c - 1) - 1 - n2 - comb(n1, 2) + delta


def trace_h1_open(profiles: Sequence[PermProfile], n_fixed: int) -> int:
    _, n1, n2, _, _ = _combined(n_fixed, profiles)
    return n2 + (n1 * n1 - 3 * n1) // 2


def _check_marks(n: int, a: Sequence[int], *, require_stable: bool = True) -> tuple[int, ...]:
    if n < 0:
        raise DomainError("n must be non-negative")
    if any(x <= 0 for x in a):
        raise DomainError("every a_i must be a positive integer")
    if require_stable and n + sum(a) < 3:
        raise DomainError("need n + sum(a) >= 3")
    return tuple(a)


def invariant_dim(n: int, a: Sequence[int], *, require_stable: bool = True) -> int:
    """Closed form; with require_stable=False it is also evaluated below the stable range."""

    a = _check_marks(n, a, require_stable=require_stable)
    l = len(a)
    frak_a = sum(1 for x in a if x == 1)
    head = bracket_plus(Fraction(2**n * prod(x + 1 for x in a), 2))
    return head - 1 - comb(n, 2) - l * n - comb(l + 1, 2) + frak_a


def _count_stable_bipartitions(perm: Sequence[int]) -> int:
    """Unordered splits {A, B}, |A|,|B| >= 2, with perm(A) in {A, B}."""

    m = len(perm)
    full = (1 << m) - 1
    count = 0
    # A always contains point 0 so each unordered split is seen once.
    for rest in range(1 << (m - 1)):
        mask = 1 | (rest << 1)
        size = mask.bit_count()
        if size < 2 or m - size < 2:
            continue
        image = 0
        for i in range(m):
            if mask >> i & 1:
                image |= 1 << perm[i]
        if image == mask or image == full ^ mask:
            count += 1
    return count


def invariant_dim_oracle(n: int, a: Sequence[int]) -> int:
    a = _check_marks(n, a)
    m = n + sum(a)
    if m > settings.oracle_points_bound:
        raise ResourceLimitError(f"invariant_dim_oracle on {m} points", bound="ORACLE_POINTS_BOUND")

    total = 0
    for combo in product(*(cycle_types(x) for x in a)):
        perm: list[int] = list(range(n))
        offset = n
        for ct in combo:
            perm.extend(offset + i for i in ct.representative())
            offset += ct.k
        weight = prod(ct.class_size for ct in combo)
        h1 = trace_h1_open([ct.profile() for ct in combo], n)
        total += weight * (_count_stable_bipartitions(perm) - h1)

    order = prod(factorial(x) for x in a)
    avg = Fraction(total, order)
    if avg.denominator != 1:
        raise IntegrityError(f"non-integral invariant dimension {avg} for n={n}, a={a}")
    logger.debug("invariant_dim_oracle n=%s a=%s -> %s", n, a, avg)
    return avg.numerator


@dataclass(frozen=True)
class IdentitySums:
    cy: int
    even: int
    n1: int
    n2: int
    n1g: int
    n1n1: int


@dataclass(frozen=True)
class ProductIdentitySums:
    order: int
    n1g: int
    n1n1: int


def _identity_bound(k: int) -> None:
    if k > settings.identity_sums_bound:
        raise ResourceLimitError(f"identity sums over S_{k}", bound="IDENTITY_SUMS_BOUND")


def identity_sums(k: int) -> IdentitySums:
    if k < 1:
        raise DomainError("identity sums need k >= 1")
    _identity_bound(k)

    cy = even = n1 = n2 = 0
    for ct in cycle_types(k):
        p = ct.profile()
        cy += ct.class_size * 2**ct.c
        if p.all_even:
            even += ct.class_size * 2 ** (ct.c - 1)
        n1 += ct.class_size * p.n1
        n2 += ct.class_size * (p.n2 + comb(p.n1, 2))
    single = product_identity_sums((k,))
    out = IdentitySums(cy=cy, even=even, n1=n1, n2=n2, n1g=single.n1g, n1n1=single.n1n1)

    f = factorial(k)
    expected = (
        ("cy", out.cy, factorial(k + 1)),
        ("even", out.even, f // 2 if k % 2 == 0 else 0),
        ("n1", out.n1, f),
    )
    for name, got, want in expected:
        if got != want:
            raise IntegrityError(f"identity {name} fails for k={k}: {got} != {want}")
    if k >= 2 and out.n2 != f:
        raise IntegrityError(f"identity n2 fails for k={k}: {out.n2} != {f}")
    return out


def product_identity_sums(a: Iterable[int]) -> ProductIdentitySums:
    a = tuple(a)
    if not a or any(x <= 0 for x in a):
        raise DomainError("product identity sums need positive a_i")
    _identity_bound(sum(a))

    per_factor: list[list[tuple[int, int]]] = [
        [(ct.class_size, ct.n(1)) for ct in cycle_types(x)] for x in a
    ]
    order = prod(factorial(x) for x in a)
    n1g = 0
    n1n1 = 0
    for combo in product(*per_factor):
        weight = prod(w for w, _ in combo)
        fixed = [f for _, f in combo]
        n1g += weight * sum(fixed)
        n1n1 += weight * sum(
            fixed[i] * fixed[j] for i in range(len(fixed)) for j in range(i + 1, len(fixed))
        )

    l = len(a)
    if n1g != l * order or n1n1 != comb(l, 2) * order:
        raise IntegrityError(f"product identities fail for a={a}: ({n1g}, {n1n1})")
    return ProductIdentitySums(order=order, n1g=n1g, n1n1=n1n1)
