"""Primary genus-0 invariants of ℙʳ by WDVV recursion.

Insertions are powers of the hyperplane class, recorded by their codimensions. The
recursion peels one H off the smallest insertion and moves it onto the largest one;
every correction term has a divisor insertion or a smaller degree.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb

from gwrecon.config import settings
from gwrecon.errors import AlgorithmError, DomainError, IntegrityError, ResourceLimitError


logger = logging.getLogger(__name__)

CodimKey = tuple[int, tuple[int, ...]]


def _sub_multisets(items: Counter[int]) -> Iterator[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """(multiplicity, chosen, rest) over sub-multisets."""
    values = sorted(items)
    for picks in product(*(range(items[v] + 1) for v in values)):
        weight = 1
        chosen: list[int] = []
        rest: list[int] = []
        for v, p in zip(values, picks):
            weight *= comb(items[v], p)
            chosen.extend([v] * p)
            rest.extend([v] * (items[v] - p))
        yield weight, tuple(chosen), tuple(rest)


class _WDVVEngine:
    def __init__(self, r: int) -> None:
        self.r = r
        self._memo: dict[CodimKey, Fraction] = {}
        self._active: list[CodimKey] = []

    def value(self, d: int, codims: Iterable[int]) -> Fraction:
        key: CodimKey = (d, tuple(sorted(codims)))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise AlgorithmError(
                f"WDVV recursion on P^{self.r} revisited a key",
                chain=[f"d={k[0]}:{k[1]}" for k in self._active + [key]],
            )
        self._active.append(key)
        try:
            result = self._compute(*key)
        finally:
            self._active.pop()
        self._memo[key] = result
        return result

    def _compute(self, d: int, codims: tuple[int, ...]) -> Fraction:
        r = self.r
        n = len(codims)
        if any(a < 0 or a > r for a in codims):
            return Fraction(0)
        if sum(codims) != r + (r + 1) * d + n - 3:
            return Fraction(0)
        if d == 0:
            return Fraction(1) if n == 3 else Fraction(0)
        if 0 in codims:
            return Fraction(0)
        if 1 in codims:
            rest = list(codims)
            rest.remove(1)
            return d * self.value(d, rest)
        if n <= 2:
            # only ⟨pt, pt⟩₁ survives the gate
            return Fraction(1)

        a, l, c = codims[0], codims[1], codims[-1]
        spectators = Counter(codims[2:-1])
        main = self.value(d, (a - 1, c + 1, l) + codims[2:-1])
        correction = Fraction(0)
        for d1 in range(1, d + 1):
            d2 = d - d1
            for weight, s1, s2 in _sub_multisets(spectators):
                for e in range(r + 1):
                    rhs = self.value(d1, (1, c, e) + s1) * self.value(d2, (r - e, a - 1, l) + s2)
                    lhs = self.value(d1, (1, a - 1, e) + s1) * self.value(d2, (r - e, c, l) + s2)
                    correction += weight * (rhs - lhs)
        return main + correction


@lru_cache(maxsize=8)
def _engine(r: int) -> _WDVVEngine:
    return _WDVVEngine(r)


def projective_invariant(r: int, d: int, codims: Iterable[int]) -> Fraction:
    """⟨H^{a₁}, …, H^{aₙ}⟩_d on ℙʳ."""

    if r < 1:
        raise DomainError("projective space needs r >= 1")
    if d < 0:
        raise DomainError("curve degree must be non-negative")
    if d > settings.km_max_degree:
        raise ResourceLimitError(f"WDVV recursion in degree {d}", bound="KM_MAX_DEGREE")
    return _engine(r).value(d, codims)


def kontsevich_closed_form(d: int) -> dict[int, int]:
    """N₁..N_d from Kontsevich's quadratic recursion."""

    if d < 1:
        raise DomainError("Kontsevich numbers start at degree 1")
    out: dict[int, int] = {1: 1}
    for e in range(2, d + 1):
        total = 0
        for d1 in range(1, e):
            d2 = e - d1
            total += out[d1] * out[d2] * d1 * d1 * d2 * (
                d2 * comb(3 * e - 4, 3 * d1 - 2) - d1 * comb(3 * e - 4, 3 * d1 - 1)
            )
        out[e] = total
    return out


@dataclass(frozen=True)
class ProjectiveTable:
    r: int
    max_degree: int
    # (d, codimensions >= 2) -> invariant; divisor and fundamental insertions are implied.
    invariants: dict[CodimKey, Fraction] = field(default_factory=dict)
    kontsevich: dict[int, int] = field(default_factory=dict)


def _reduced_keys(r: int, d: int) -> Iterator[tuple[int, ...]]:
    top = r + (r + 1) * d - 3
    for n in range(0, top + 1):
        wanted = top + n
        if wanted < 2 * n or wanted > r * n:
            continue
        for codims in combinations_with_replacement(range(2, r + 1), n):
            if sum(codims) == wanted:
                yield codims


def km_recursion_pr(r: int, d: int) -> ProjectiveTable:
    if r not in (2, 3):
        raise DomainError(f"WDVV tables are produced for P^2 and P^3, got P^{r}")
    if d < 1:
        raise DomainError("table degree must be at least 1")
    if d > settings.km_max_degree:
        raise ResourceLimitError(f"WDVV table up to degree {d}", bound="KM_MAX_DEGREE")

    invariants: dict[CodimKey, Fraction] = {}
    for e in range(1, d + 1):
        for codims in _reduced_keys(r, e):
            invariants[(e, codims)] = projective_invariant(r, e, codims)

    kontsevich: dict[int, int] = {}
    if r == 2:
        closed = kontsevich_closed_form(d)
        for e in range(1, d + 1):
            value = invariants[(e, (2,) * (3 * e - 1))]
            if value != closed[e]:
                raise IntegrityError(f"N_{e}: WDVV gives {value}, closed form gives {closed[e]}")
            kontsevich[e] = int(value)
    logger.debug("P^%d table up to degree %d: %d invariants", r, d, len(invariants))
    return ProjectiveTable(r=r, max_degree=d, invariants=invariants, kontsevich=kontsevich)
