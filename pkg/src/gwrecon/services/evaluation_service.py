"""Routing of primary invariants to their sources, memoized in one InvariantTable.

- ℙʳ with r <= 3: WDVV recursion from the 3-point layer.
- 3-point keys on G(k, N): rim-hook structure constants.
- Everything else: the certified localization oracle.
- G(2, N) keys can also be rebuilt by the reconstruction algorithm from base invariants.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Sequence
from fractions import Fraction

from gwrecon.domain.schubert import CohClass, Grassmannian, Monomial, chern_q, integrate, monomial_class
from gwrecon.domain.schubert import product as classical_product
from gwrecon.errors import UnsupportedError
from gwrecon.gwcore.keys import InvariantKey, expand_insertions, expected_dim_gate
from gwrecon.gwcore.localization import oracle_eval
from gwrecon.gwcore.projective import projective_invariant
from gwrecon.gwcore.providers import base_provider_vanishing
from gwrecon.gwcore.quantum import three_point
from gwrecon.gwcore.reconstruct import G2Reconstructor
from gwrecon.gwcore.reduce import InvariantSource
from gwrecon.integrations.storage.local_storage import LocalCacheStorage
from gwrecon.schemas import Provenance
from gwrecon.services.invariant_table import InvariantTable


logger = logging.getLogger(__name__)

_WDVV_MAX_R = 3


def _primary_value(key: InvariantKey) -> tuple[Fraction, Provenance]:
    g = key.target
    if not expected_dim_gate(key):
        return Fraction(0), "axiom"
    if key.degree == 0:
        if key.n != 3:
            return Fraction(0), "axiom"
        x, y, z = (CohClass.schubert(g, lam) for lam in key.insertions)
        return integrate(g, classical_product(g, classical_product(g, x, y), z)), "axiom"
    if g.is_projective and g.N - 1 <= _WDVV_MAX_R:
        codims = [sum(lam) for lam in key.insertions]
        return projective_invariant(g.N - 1, key.degree, codims), "recursion"
    if key.n == 3:
        x, y, z = (CohClass.schubert(g, lam) for lam in key.insertions)
        return three_point(g, x, y, z, key.degree), "axiom"
    return oracle_eval(key), "oracle"


class EvaluationService:
    def __init__(self, table: InvariantTable | None = None, *, storage: LocalCacheStorage | None = None) -> None:
        self.table = table if table is not None else InvariantTable()
        self.storage = storage
        self._engines: dict[tuple[Grassmannian, bool], G2Reconstructor] = {}
        self._engines_lock = threading.Lock()
        self._loaded = False

    def load_cache(self) -> int:
        if self._loaded or self.storage is None:
            return 0
        self._loaded = True
        cache = self.storage.load()
        if cache is None:
            return 0
        return self.table.load_cache_file(cache)

    def save_cache(self) -> bool:
        if self.storage is None or not self.table.dirty:
            return False
        self.storage.save(self.table.to_cache_file())
        return True

    def primary(self, key: InvariantKey) -> Fraction:
        self.load_cache()
        hit = self.table.get(key)
        if hit is not None:
            return hit.value
        value, provenance = _primary_value(key)
        return self.table.put(key, value, provenance).value

    def oracle(self, key: InvariantKey) -> Fraction:
        """Localization value, bypassing the WDVV and rim-hook routes; checked against the table."""

        self.load_cache()
        if not expected_dim_gate(key):
            return Fraction(0)
        return self.table.put(key, oracle_eval(key), "oracle").value

    def classes(self, target: Grassmannian, degree: int, classes: Sequence[CohClass]) -> Fraction:
        total = Fraction(0)
        for coeff, key in expand_insertions(target, degree, classes):
            total += coeff * self.primary(key)
        return total

    def source(self) -> InvariantSource:
        return self.classes

    def _engine(self, target: Grassmannian, *, vanishing: bool) -> G2Reconstructor:
        with self._engines_lock:
            engine = self._engines.get((target, vanishing))
            if engine is None:
                provider = _TableProvider(self, target)
                engine = G2Reconstructor(target, base_provider_vanishing(target.N, provider) if vanishing else provider)
                self._engines[(target, vanishing)] = engine
            return engine

    def reconstruct(self, key: InvariantKey, *, vanishing: bool = False) -> Fraction:
        self.load_cache()
        value = self._engine(key.target, vanishing=vanishing).evaluate(key)
        # a disagreement with an oracle or axiom value already in the table is fatal
        self.table.put(key, value, "recursion")
        logger.debug("reconstructed %s = %s", key.label, value)
        return value


class _TableProvider:
    def __init__(self, service: EvaluationService, target: Grassmannian) -> None:
        if target.k != 2:
            raise UnsupportedError(f"base invariants are provided for G(2, N), got {target.label}")
        self.service = service
        self.target = target

    def __call__(self, beta1: Monomial, beta2: Monomial, c2_count: int, degree: int) -> Fraction:
        g = self.target
        classes = [monomial_class(g, *beta1), monomial_class(g, *beta2)] + [chern_q(g, 2)] * c2_count
        total = Fraction(0)
        for coeff, key in expand_insertions(g, degree, classes):
            hit = self.service.table.get(key)
            if hit is None:
                hit = self.service.table.put(key, oracle_eval(key), "provider")
            total += coeff * hit.value
        return total
