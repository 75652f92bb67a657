"""Small quantum cohomology of G(k, N) by rim-hook reduction.

- Classical products are taken in a Grassmannian wide enough that nothing is truncated.
- Each length-N border strip removed costs one power of q and a sign (-1)^(k - height).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from fractions import Fraction
from functools import lru_cache

from gwrecon.config import settings
from gwrecon.domain.schubert import CohClass, Grassmannian, SchubertPartition, dual, product
from gwrecon.errors import DomainError, ResourceLimitError


logger = logging.getLogger(__name__)

QuantumClass = dict[tuple[SchubertPartition, int], Fraction]


def _require_supported(g: Grassmannian) -> None:
    if g.k > settings.quantum_max_k:
        raise ResourceLimitError(f"quantum product on {g.label}", bound="QUANTUM_MAX_K")
    if g.N > settings.quantum_max_N:
        raise ResourceLimitError(f"quantum product on {g.label}", bound="QUANTUM_MAX_N")


def rim_hook_reduce(g: Grassmannian, nu: Iterable[int]) -> tuple[int, SchubertPartition | None, int]:
    """Reduce a partition with at most k rows to the k x (N-k) box.

    Returns (sign, partition, q-power); partition is None when the class vanishes.
    """

    parts = list(nu)
    k, N = g.k, g.N
    if len(parts) > k:
        if any(parts[k:]):
            return 0, None, 0
        parts = parts[:k]
    parts += [0] * (k - len(parts))
    beta = [parts[i] + k - 1 - i for i in range(k)]
    sign, q = 1, 0
    while max(beta) >= N:
        top = max(beta)
        new = top - N
        if new in beta:
            return 0, None, 0
        if new < 0:
            return 0, None, 0
        jumped = sum(1 for b in beta if new < b < top)
        sign *= -1 if (k - 1 - jumped) % 2 else 1
        beta[beta.index(top)] = new
        q += 1
    beta.sort(reverse=True)
    return sign, tuple(beta[i] - (k - 1 - i) for i in range(k)), q


@lru_cache(maxsize=4096)
def _product_cached(g: Grassmannian, lam: SchubertPartition, mu: SchubertPartition) -> tuple[tuple[tuple[SchubertPartition, int], Fraction], ...]:
    width = max(sum(lam) + sum(mu), g.width)
    big = Grassmannian(g.k, g.k + width)
    classical = product(big, CohClass.schubert(big, lam), CohClass.schubert(big, mu))
    out: QuantumClass = {}
    for nu, coeff in classical.terms:
        sign, reduced, q = rim_hook_reduce(g, nu)
        if reduced is None:
            continue
        key = (reduced, q)
        out[key] = out.get(key, Fraction(0)) + sign * coeff
    return tuple(sorted((key, v) for key, v in out.items() if v))


def quantum_product_3pt(g: Grassmannian, lam: Iterable[int], mu: Iterable[int]) -> QuantumClass:
    """σ_λ ⋆ σ_μ = Σ ⟨σ_λ, σ_μ, σ_ν^∨⟩_d q^d σ_ν."""

    _require_supported(g)
    a, b = g.normalize(lam), g.normalize(mu)
    if b < a:
        a, b = b, a
    return dict(_product_cached(g, a, b))


def quantum_multiply(g: Grassmannian, x: QuantumClass, y: QuantumClass) -> QuantumClass:
    out: QuantumClass = {}
    for (lam, p), u in x.items():
        for (mu, q), v in y.items():
            for (nu, r), w in quantum_product_3pt(g, lam, mu).items():
                key = (nu, p + q + r)
                out[key] = out.get(key, Fraction(0)) + u * v * w
    return {key: v for key, v in sorted(out.items()) if v}


def three_point(g: Grassmannian, x: CohClass, y: CohClass, z: CohClass, degree: int) -> Fraction:
    """⟨x, y, z⟩_d read off the structure constants."""

    if degree < 0:
        raise DomainError("curve degree must be non-negative")
    total = Fraction(0)
    for lam, u in x.terms:
        for mu, v in y.terms:
            for (nu, q), w in quantum_product_3pt(g, lam, mu).items():
                if q != degree:
                    continue
                c = z.as_dict.get(dual(g, nu))
                if c:
                    total += u * v * w * c
    return total


def associativity_failures(g: Grassmannian) -> list[tuple[SchubertPartition, SchubertPartition, SchubertPartition]]:
    """Basis triples where (a⋆b)⋆c ≠ a⋆(b⋆c)."""

    basis = g.partitions()
    failures: list[tuple[SchubertPartition, SchubertPartition, SchubertPartition]] = []
    for a in basis:
        for b in basis:
            ab = quantum_multiply(g, {(a, 0): Fraction(1)}, {(b, 0): Fraction(1)})
            for c in basis:
                left = quantum_multiply(g, ab, {(c, 0): Fraction(1)})
                bc = quantum_multiply(g, {(b, 0): Fraction(1)}, {(c, 0): Fraction(1)})
                right = quantum_multiply(g, {(a, 0): Fraction(1)}, bc)
                if left != right:
                    failures.append((a, b, c))
    logger.debug("associativity on %s: %d failures", g.label, len(failures))
    return failures
