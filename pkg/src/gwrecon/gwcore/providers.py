from __future__ import annotations

import logging
from fractions import Fraction
from typing import Protocol

from gwrecon.domain.schubert import Grassmannian, Monomial, chern_q, monomial_class
from gwrecon.errors import UnsupportedError
from gwrecon.gwcore.localization import oracle_eval_classes


logger = logging.getLogger(__name__)


class BaseProvider(Protocol):
    """⟨β₁, β₂, c₂, …, c₂⟩_d with c2_count copies of c₂; β's are c₁ᵃc₂ᵇ exponents."""

    def __call__(self, beta1: Monomial, beta2: Monomial, c2_count: int, degree: int) -> Fraction: ...


class OracleProvider:
    def __init__(self, target: Grassmannian) -> None:
        if target.k != 2:
            raise UnsupportedError(f"base invariants are provided for G(2, N), got {target.label}")
        self.target = target

    def __call__(self, beta1: Monomial, beta2: Monomial, c2_count: int, degree: int) -> Fraction:
        g = self.target
        classes = [monomial_class(g, *beta1), monomial_class(g, *beta2)] + [chern_q(g, 2)] * c2_count
        return oracle_eval_classes(g, degree, classes)


def vanishing_rule(N: int, n: int, d: int) -> bool:
    """True when N > (n - 3)/(d - 2); degrees 1 and 2 never vanish by this rule."""
    if d <= 2:
        return False
    return N * (d - 2) > n - 3


class VanishingProvider:
    def __init__(self, N: int, fallback: BaseProvider) -> None:
        self.N = N
        self.fallback = fallback

    def __call__(self, beta1: Monomial, beta2: Monomial, c2_count: int, degree: int) -> Fraction:
        if vanishing_rule(self.N, c2_count + 2, degree):
            return Fraction(0)
        return self.fallback(beta1, beta2, c2_count, degree)


def base_provider_vanishing(N: int, fallback: BaseProvider) -> VanishingProvider:
    return VanishingProvider(N, fallback)
