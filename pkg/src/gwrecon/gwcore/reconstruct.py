"""Reconstruction of genus-0 invariants of G(2, N) from ⟨β₁, β₂, c₂, …, c₂⟩_d.

Insertions are c₁ᵃc₂ᵇ monomials ("slots"). After the gate, the fundamental class and
divisor axioms, and the 3-point layer, one slot `acc` of largest codimension among the
slots different from c₂ absorbs factors from another slot j:

- c₁ moves by WDVV with the pair (c₁, δ) against (γ_acc, γ_l), where γⱼ = c₁δ.
- c₂ moves by the two-point c₂ relation integrated against the other slots, with ψⱼ
  expanded by boundary divisors that keep acc and another non-c₂ slot l together.

With t the number of slots different from c₂ and x the codimension of acc, every
same-degree, same-length child has smaller 2t - x; the rest have smaller degree or
fewer slots. Keys with at most two slots different from c₂ go to the base provider.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import combinations, product
from math import prod

from gwrecon.domain.schubert import (
    CohClass,
    Grassmannian,
    Monomial,
    MonomialPoly,
    dual,
    integrate,
    monomial_class,
    schubert_to_monomials,
)
from gwrecon.errors import AlgorithmError, DomainError, UnsupportedError
from gwrecon.gwcore.keys import InvariantKey, expected_dim_gate
from gwrecon.gwcore.providers import BaseProvider
from gwrecon.gwcore.quantum import three_point


logger = logging.getLogger(__name__)

C1: Monomial = (1, 0)
C2: Monomial = (0, 1)
ONE: Monomial = (0, 0)

SlotKey = tuple[int, tuple[Monomial, ...]]


def _codim(m: Monomial) -> int:
    return m[0] + 2 * m[1]


def _mul(x: Monomial, y: Monomial) -> Monomial:
    return (x[0] + y[0], x[1] + y[1])


def _measure(slots: Sequence[Monomial]) -> int:
    free = [s for s in slots if s != C2]
    return 2 * len(free) - max((_codim(s) for s in free), default=0)


def _splits(items: Sequence[Monomial]) -> Iterator[tuple[list[Monomial], list[Monomial]]]:
    idx = range(len(items))
    for size in range(len(items) + 1):
        for chosen in combinations(idx, size):
            yield [items[i] for i in chosen], [items[i] for i in idx if i not in chosen]


def _label(key: SlotKey) -> str:
    d, slots = key
    return f"d={d}:" + ",".join(f"c1^{a}c2^{b}" for a, b in slots)


class G2Reconstructor:
    def __init__(self, target: Grassmannian, provider: BaseProvider) -> None:
        if target.k != 2:
            raise UnsupportedError(f"reconstruction is implemented for G(2, N), got {target.label}")
        self.target = target
        self.provider = provider
        self._memo: dict[SlotKey, Fraction] = {}
        self._active: list[SlotKey] = []
        self._diagonal: list[tuple[MonomialPoly, MonomialPoly]] = [
            (
                schubert_to_monomials(target, CohClass.schubert(target, mu)),
                schubert_to_monomials(target, CohClass.schubert(target, dual(target, mu))),
            )
            for mu in target.partitions()
        ]

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def evaluate(self, key: InvariantKey) -> Fraction:
        if key.target != self.target:
            raise DomainError(f"key on {key.target.label} sent to the {self.target.label} reconstructor")
        if not expected_dim_gate(key):
            return Fraction(0)
        polys = [schubert_to_monomials(self.target, CohClass.schubert(self.target, lam)) for lam in key.insertions]
        return self.poly_value(key.degree, polys)

    def poly_value(self, d: int, polys: Sequence[MonomialPoly]) -> Fraction:
        wanted = self.target.dim + d * self.target.N + len(polys) - 3
        total = Fraction(0)
        for combo in product(*(p.items() for p in polys)):
            if sum(_codim(m) for m, _ in combo) != wanted:
                continue
            coeff = prod((v for _, v in combo), start=Fraction(1))
            total += coeff * self.value(d, tuple(m for m, _ in combo))
        return total

    def value(self, d: int, slots: Sequence[Monomial]) -> Fraction:
        key: SlotKey = (d, tuple(sorted(slots)))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise AlgorithmError("reconstruction revisited a key", chain=[_label(k) for k in self._active + [key]])
        self._active.append(key)
        try:
            result = self._compute(*key)
        finally:
            self._active.pop()
        self._memo[key] = result
        return result

    def _child(self, d: int, parent: Sequence[Monomial], child: Sequence[Monomial]) -> Fraction:
        if len(child) == len(parent) and _measure(child) >= _measure(parent):
            raise AlgorithmError(
                "reconstruction measure did not decrease",
                chain=[_label((d, tuple(sorted(parent)))), _label((d, tuple(sorted(child))))],
            )
        return self.value(d, child)

    def _mixed(self, d: int, slots: Sequence[Monomial], poly: MonomialPoly) -> Fraction:
        return self.poly_value(d, [{s: Fraction(1)} for s in slots] + [poly])

    def _compute(self, d: int, slots: tuple[Monomial, ...]) -> Fraction:
        g = self.target
        n = len(slots)
        if any(_codim(s) > g.dim for s in slots):
            return Fraction(0)
        if sum(_codim(s) for s in slots) != g.dim + d * g.N + n - 3:
            return Fraction(0)
        if d == 0:
            if n != 3:
                return Fraction(0)
            return integrate(g, prod((monomial_class(g, *s) for s in slots), start=CohClass.one(g)))
        if ONE in slots:
            return Fraction(0)
        if n < 3:
            return self.value(d, slots + (C1,)) / d
        if n == 3:
            x, y, z = (monomial_class(g, *s) for s in slots)
            return three_point(g, x, y, z, d)
        if C1 in slots:
            rest = list(slots)
            rest.remove(C1)
            return d * self.value(d, rest)

        free = [i for i, s in enumerate(slots) if s != C2]
        if len(free) <= 2:
            betas = sorted([slots[i] for i in free] + [C2] * (2 - len(free)))
            return self.provider(betas[0], betas[1], n - 2, d)

        acc = max(free, key=lambda i: (_codim(slots[i]), slots[i]))
        others = [i for i in free if i != acc]
        movable = [i for i in others if slots[i][0] >= 1]
        if movable:
            j = movable[0]
            l = next(i for i in range(n) if i not in (acc, j))
            return self._move_c1(d, slots, acc, j, l)
        return self._move_c2(d, slots, acc, others[0], others[1])

    def _move_c1(self, d: int, slots: tuple[Monomial, ...], acc: int, j: int, l: int) -> Fraction:
        # WDVV on (c₁, δ | γ_acc, γ_l) with γⱼ = c₁δ; degree-0 first factors vanish unless trivial
        delta = (slots[j][0] - 1, slots[j][1])
        g_acc, g_l = slots[acc], slots[l]
        rest = [s for i, s in enumerate(slots) if i not in (acc, j, l)]
        main = list(slots)
        main[j] = delta
        main[acc] = _mul(g_acc, C1)
        total = self._child(d, slots, main)
        for d1 in range(1, d + 1):
            d2 = d - d1
            for s1, s2 in _splits(rest):
                for mu, mu_dual in self._diagonal:
                    right = self._mixed(d1, [C1, g_acc] + s1, mu)
                    if right:
                        total += right * self._mixed(d2, [delta, g_l] + s2, mu_dual)
                    left = self._mixed(d1, [C1, delta] + s1, mu)
                    if left:
                        total -= left * self._mixed(d2, [g_acc, g_l] + s2, mu_dual)
        return total

    def _merged(self, alpha: Sequence[Monomial], p: int, q: int) -> list[Monomial]:
        out = [s for i, s in enumerate(alpha) if i not in (p, q)]
        return out + [_mul(alpha[p], alpha[q]), C2]

    def _move_c2(self, d: int, slots: tuple[Monomial, ...], acc: int, j: int, l: int) -> Fraction:
        # γⱼ = c₂^b with b >= 2; l is another slot different from c₂
        alpha = list(slots)
        alpha[j] = (slots[j][0], slots[j][1] - 1)
        main = list(alpha)
        main[acc] = _mul(alpha[acc], C2)
        total = self._child(d, slots, main)
        total += self._child(d, slots, self._merged(alpha, j, l))
        total -= self._child(d, slots, self._merged(alpha, acc, l))

        n = len(slots)
        loose = [alpha[i] for i in range(n) if i not in (acc, j)]
        spare = [alpha[i] for i in range(n) if i not in (acc, j, l)]
        for a in range(1, d):
            b = d - a
            for s1, s2 in _splits(loose):
                for mu, mu_dual in self._diagonal:
                    near = self._mixed(a, [alpha[acc], C2] + s1, mu)
                    if near:
                        total += near * self._mixed(b, [alpha[j]] + s2, mu_dual)
            for s1, s2 in _splits(spare):
                for mu, mu_dual in self._diagonal:
                    first = self._mixed(a, [alpha[j], C2] + s1, mu)
                    if first:
                        total -= first * self._mixed(b, [alpha[acc], alpha[l]] + s2, mu_dual)
                    second = self._mixed(a, [alpha[j]] + s1, mu)
                    if second:
                        total -= second * self._mixed(b, [alpha[acc], alpha[l], C2] + s2, mu_dual)
        return total


def reconstruct_g2(key: InvariantKey, provider: BaseProvider, *, engine: G2Reconstructor | None = None) -> Fraction:
    if engine is None:
        engine = G2Reconstructor(key.target, provider)
    elif engine.provider is not provider:
        raise DomainError("engine was built with a different base provider")
    value = engine.evaluate(key)
    logger.debug("reconstructed %s = %s (%d memo entries)", key.label, value, engine.memo_size)
    return value
