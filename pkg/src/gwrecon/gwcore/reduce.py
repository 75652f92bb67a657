"""Integrals of tautological monomials on M̄₀,ₙ(G(k, N), d).

Pure reduction to primary invariants:

- κ(α₁, …, α_p) becomes p extra markings carrying α₁, …, α_p.
- ψᵢ becomes a sum of boundary divisors (two other markings fixed on the far side).
- a boundary stratum splits at its nodes over dual Schubert pairs.

Primary invariants come from a caller-supplied source.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import replace
from fractions import Fraction
from itertools import combinations, product
from math import prod

from gwrecon.domain.modspace import DecoratedClass, Side, SpaceSignature, monomial_codim
from gwrecon.domain.schubert import CohClass, Grassmannian, dual, chern_q
from gwrecon.errors import DomainError, UnsupportedError


logger = logging.getLogger(__name__)

InvariantSource = Callable[[Grassmannian, int, Sequence[CohClass]], Fraction]


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for size in range(len(items) + 1):
        yield from combinations(items, size)


class _Reducer:
    def __init__(self, g: Grassmannian, source: InvariantSource) -> None:
        self.g = g
        self.source = source

    def integrate(self, n: int, d: int, factors: tuple[DecoratedClass, ...]) -> Fraction:
        psis = [f for f in factors if f.kind == "psi"]
        strata = [f for f in factors if f.kind == "boundary"]
        if len(strata) > 1:
            raise UnsupportedError("monomials with two boundary factors")
        if len(psis) > 1 or (psis and strata):
            raise UnsupportedError("psi classes multiplied by another psi or a boundary class")
        if psis:
            psi = psis[0]
            if not 1 <= psi.marking <= n:
                raise DomainError(f"psi class at marking {psi.marking} on a space with {n} markings")
            rest = tuple(f for f in factors if f is not psi)
            if n >= 3:
                return self._psi_folklore(n, d, psi.marking, rest)
            if d == 0:
                raise UnsupportedError("psi class on fewer than three markings in degree 0")
            return self._psi_lift(n, d, psi.marking, rest)
        if strata:
            stratum = strata[0]
            return self._stratum(n, d, stratum, tuple(f for f in factors if f is not stratum))
        return self._primary(n, d, factors)

    def _psi_lift(self, n: int, d: int, i: int, rest: tuple[DecoratedClass, ...]) -> Fraction:
        # ∫ψᵢZ = (1/d)∫(ψᵢ - D₀({i, x} | rest))·ev_x*σ₁·Z on the space with one more marking
        x = n + 1
        marker = DecoratedClass.ev(x, chern_q(self.g, 1))
        others = tuple(m for m in range(1, n + 1) if m != i)
        ghost = DecoratedClass.boundary((Side.of((i, x), 0), Side.of(others, d)))
        with_psi = self.integrate(x, d, (DecoratedClass.psi(i), marker) + rest)
        with_ghost = self.integrate(x, d, (ghost, marker) + rest)
        return (with_psi - with_ghost) / d

    def _psi_folklore(self, n: int, d: int, i: int, rest: tuple[DecoratedClass, ...]) -> Fraction:
        others = [m for m in range(1, n + 1) if m != i]
        anchored, free = others[:2], others[2:]
        total = Fraction(0)
        for near in _subsets(free):
            far = tuple(anchored) + tuple(m for m in free if m not in near)
            for a in range(d + 1):
                s1, s2 = Side.of((i,) + near, a), Side.of(far, d - a)
                if not (s1.stable() and s2.stable()):
                    continue
                total += self._stratum(n, d, DecoratedClass.boundary((s1, s2)), rest)
        return total

    def _ev_classes(self, n: int, factors: Sequence[DecoratedClass]) -> dict[int, CohClass]:
        out = {m: CohClass.one(self.g) for m in range(1, n + 1)}
        for f in factors:
            if f.kind == "ev":
                if not 1 <= f.marking <= n:
                    raise DomainError(f"ev class at marking {f.marking} on a space with {n} markings")
                out[f.marking] = out[f.marking] * f.classes[0]
        return out

    @staticmethod
    def _kappa_points(factors: Sequence[DecoratedClass]) -> list[CohClass]:
        return [a for f in factors if f.kind == "kappa" for a in f.classes]

    def _primary(self, n: int, d: int, factors: tuple[DecoratedClass, ...]) -> Fraction:
        ev = self._ev_classes(n, factors)
        classes = [ev[m] for m in range(1, n + 1)] + self._kappa_points(factors)
        return self.source(self.g, d, classes)

    def _stratum(self, n: int, d: int, stratum: DecoratedClass, rest: tuple[DecoratedClass, ...]) -> Fraction:
        comps = stratum.components
        marks = sorted(m for c in comps for m in c.markings)
        if marks != list(range(1, n + 1)):
            raise DomainError(f"boundary stratum {stratum.label()} does not carry markings 1..{n}")
        if sum(c.d for c in comps) != d:
            raise DomainError(f"boundary stratum {stratum.label()} has degrees summing to {sum(c.d for c in comps)}, not {d}")

        ev = self._ev_classes(n, rest)
        extra = self._kappa_points(rest)
        base: list[list[CohClass]] = []
        for idx, c in enumerate(comps):
            base.append([ev[m] for m in c.markings] + list(stratum.decorations[idx]))

        basis = self.g.partitions()
        total = Fraction(0)
        for placement in product(range(len(comps)), repeat=len(extra)):
            loaded = [list(cl) for cl in base]
            for point, comp in zip(extra, placement):
                loaded[comp].append(point)
            for mus in product(basis, repeat=len(comps) - 1):
                sides = [list(cl) for cl in loaded]
                for t, mu in enumerate(mus):
                    left = CohClass.schubert(self.g, mu)
                    node = stratum.node_classes[t]
                    if node is not None:
                        left = left * node
                    sides[t].append(left)
                    sides[t + 1].append(CohClass.schubert(self.g, dual(self.g, mu)))
                term = Fraction(1)
                for c, classes in zip(comps, sides):
                    term *= self.source(self.g, c.d, classes)
                    if not term:
                        break
                total += term
        return total / stratum.automorphisms


def reduce_integral(
    sig: SpaceSignature, monomial: Sequence[DecoratedClass], source: InvariantSource
) -> Fraction:
    """∫ over M̄₀,ₙ(X, d) of a product of ev, κ, ψ and boundary factors."""

    sig.require_nonempty()
    g = sig.grassmannian
    factors = tuple(monomial)
    total = monomial_codim(factors)
    if total != sig.dim:
        raise DomainError(f"monomial of codimension {total} on {sig.label} of dimension {sig.dim}")
    coeff = prod((f.coeff for f in factors), start=Fraction(1))
    if not coeff:
        return Fraction(0)
    plain = tuple(replace(f, coeff=Fraction(1)) for f in factors)
    value = _Reducer(g, source).integrate(sig.n, sig.degree, plain)
    logger.debug("integral on %s of %s = %s", sig.label, " ".join(f.label() for f in factors), coeff * value)
    return coeff * value
