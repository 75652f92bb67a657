"""Independent n-point oracle: torus localization on M̄₀,ₙ(G(k, N), d).

Fixed loci are indexed by trees whose vertices sit at coordinate k-planes and whose
edges are degree-d_e covers of coordinate lines. Labelled trees come from Prüfer
sequences; dividing by V! accounts for relabelling. Markings factor out vertex by
vertex, so each graph is stored once per degree and reused for every key.
"""

from __future__ import annotations

import logging
import random
import threading
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import factorial, prod

import networkx as nx

from gwrecon.config import settings
from gwrecon.domain.schubert import (
    CohClass,
    Grassmannian,
    SchubertPartition,
    integrate,
    jacobi_trudi_words,
)
from gwrecon.domain.schubert import product as classical_product
from gwrecon.errors import DomainError, IntegrityError, ResourceLimitError, UnsupportedError
from gwrecon.gwcore.keys import InvariantKey, expand_insertions, expected_dim_gate
from gwrecon.gwcore.quantum import three_point


logger = logging.getLogger(__name__)

_MAX_RESEEDS = 8


class _DegenerateWeights(Exception):
    pass


@dataclass(frozen=True)
class _GraphTerm:
    weight: Fraction
    # (fixed point index, Σ 1/ω over the flags at the vertex)
    vertices: tuple[tuple[int, Fraction], ...]


def torus_weights(N: int, seed: int) -> tuple[int, ...]:
    return tuple(random.Random(seed).sample(range(-997, 998), N))


def _elementary(values: Sequence[int], top: int) -> list[int]:
    e = [1] + [0] * top
    for v in values:
        for m in range(top, 0, -1):
            e[m] += e[m - 1] * v
    return e


def _labeled_trees(V: int) -> list[tuple[tuple[int, int], ...]]:
    if V == 2:
        return [((0, 1),)]
    out: list[tuple[tuple[int, int], ...]] = []
    for seq in product(range(V), repeat=V - 2):
        tree = nx.from_prufer_sequence(list(seq))
        out.append(tuple(tuple(sorted(e)) for e in tree.edges()))
    return out


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _section_weights(u: Fraction, u_end: Fraction, deg: int) -> Fraction:
    """Π of the weights of H⁰(O(deg)) with fibre weights u, u_end at the two poles."""
    return prod((u - m * (u - u_end) / deg for m in range(deg + 1)), start=Fraction(1))


class LocalizationOracle:
    def __init__(self, target: Grassmannian, weights: Sequence[int]) -> None:
        if target.k > 2:
            raise UnsupportedError(f"localization oracle supports k <= 2, got {target.label}")
        self.target = target
        self._points: list[tuple[int, ...]] = [tuple(p) for p in combinations(range(target.N), target.k)]
        self._index = {p: i for i, p in enumerate(self._points)}
        self._memo: dict[InvariantKey, Fraction] = {}
        self._lock = threading.RLock()
        self._set_weights(weights)

    def _set_weights(self, weights: Sequence[int]) -> None:
        w = tuple(int(x) for x in weights)
        if len(w) != self.target.N or len(set(w)) != len(w):
            raise DomainError("torus weights must be N distinct integers")
        self.weights = w
        self._graphs: dict[int, tuple[_GraphTerm, ...]] = {}
        self._restrictions: dict[SchubertPartition, tuple[Fraction, ...]] = {}
        self._edges: dict[tuple[int, int, int, int], Fraction] = {}
        self._tangent = [
            Fraction(prod(w[j] - w[i] for i in p for j in range(self.target.N) if j not in p))
            for p in self._points
        ]

    def _neighbors(self, p_idx: int) -> Iterator[tuple[int, int, int]]:
        """(neighbour index, i leaving, j entering) along the T-invariant lines through p."""
        point = self._points[p_idx]
        for i in point:
            for j in range(self.target.N):
                if j in point:
                    continue
                other = tuple(sorted([x for x in point if x != i] + [j]))
                yield self._index[other], i, j

    def restriction(self, lam: SchubertPartition) -> tuple[Fraction, ...]:
        """Equivariant σ_λ = det(c_{λᵢ-i+j}(Q)) restricted to each fixed point."""
        hit = self._restrictions.get(lam)
        if hit is not None:
            return hit
        N, width = self.target.N, self.target.width
        words = jacobi_trudi_words(lam)
        out: list[Fraction] = []
        for point in self._points:
            e = _elementary([self.weights[j] for j in range(N) if j not in point], width)
            total = 0
            for sign, word in words:
                if any(h > width for h in word):
                    continue
                total += sign * prod(e[h] for h in word)
            out.append(Fraction(total))
        vec = tuple(out)
        self._restrictions[lam] = vec
        return vec

    def _edge_factor(self, p_idx: int, i: int, j: int, deg: int) -> Fraction:
        hit = self._edges.get((p_idx, i, j, deg))
        if hit is not None:
            return hit
        w = [Fraction(x) for x in self.weights]
        point = self._points[p_idx]
        kept = [x for x in point if x != i]
        rest = [q for q in range(self.target.N) if q not in point and q != j]
        total = Fraction(1)
        for p in kept:
            for q in rest:
                total *= w[q] - w[p]
        for p in kept:
            total *= _section_weights(w[j] - w[p], w[i] - w[p], deg)
        for q in rest:
            total *= _section_weights(w[q] - w[i], w[q] - w[j], deg)
        alpha = w[j] - w[i]
        for m in range(2 * deg + 1):
            if m != deg:
                total *= alpha * Fraction(deg - m, deg)
        if total == 0:
            raise _DegenerateWeights
        factor = 1 / (deg * total)
        self._edges[(p_idx, i, j, deg)] = factor
        return factor

    def _assignments(
        self, order: list[int], parent: dict[int, int]
    ) -> Iterator[tuple[dict[int, int], dict[int, tuple[int, int]]]]:
        """Fixed points per vertex plus (i, j) per child vertex; adjacent vertices differ by one swap."""

        def extend(pos: int, points: dict[int, int], moves: dict[int, tuple[int, int]]) -> Iterator[
            tuple[dict[int, int], dict[int, tuple[int, int]]]
        ]:
            if pos == len(order):
                yield dict(points), dict(moves)
                return
            v = order[pos]
            for nb, i, j in self._neighbors(points[parent[v]]):
                points[v] = nb
                moves[v] = (i, j)
                yield from extend(pos + 1, points, moves)
            points.pop(v, None)
            moves.pop(v, None)

        for root in range(len(self._points)):
            yield from extend(1, {order[0]: root}, {})

    def _build_graphs(self, d: int) -> tuple[_GraphTerm, ...]:
        terms: list[_GraphTerm] = []
        w = self.weights
        for V in range(2, d + 2):
            scale = Fraction(1, factorial(V))
            for edges in _labeled_trees(V):
                tree = nx.Graph(list(edges))
                order = list(nx.bfs_tree(tree, 0).nodes())
                parent = {child: par for par, child in nx.bfs_edges(tree, 0)}
                for degs in _compositions(d, V - 1):
                    deg_of = {child: degs[idx] for idx, child in enumerate(order[1:])}
                    for points, moves in self._assignments(order, parent):
                        weight = scale
                        flags: dict[int, list[Fraction]] = {v: [] for v in order}
                        for child in order[1:]:
                            i, j = moves[child]
                            de = deg_of[child]
                            weight *= self._edge_factor(points[parent[child]], i, j, de)
                            flags[parent[child]].append(Fraction(w[j] - w[i], de))
                            flags[child].append(Fraction(w[i] - w[j], de))
                        vertices: list[tuple[int, Fraction]] = []
                        for v in order:
                            omegas = flags[v]
                            val = len(omegas)
                            s_v = sum((1 / om for om in omegas), start=Fraction(0))
                            if s_v == 0 and val < 3:
                                raise _DegenerateWeights
                            weight *= self._tangent[points[v]] ** (val - 1)
                            weight /= prod(omegas, start=Fraction(1))
                            weight *= s_v ** (val - 3)
                            vertices.append((points[v], s_v))
                        if weight:
                            terms.append(_GraphTerm(weight, tuple(vertices)))
        return tuple(terms)

    def _graphs_for(self, d: int) -> tuple[_GraphTerm, ...]:
        hit = self._graphs.get(d)
        if hit is not None:
            return hit
        seed = settings.oracle_weight_seed
        for attempt in range(_MAX_RESEEDS):
            try:
                built = self._build_graphs(d)
            except _DegenerateWeights:
                seed += 1000 + attempt
                logger.warning("degenerate torus weights %s on %s; reseeding", self.weights, self.target.label)
                self._set_weights(torus_weights(self.target.N, seed))
                continue
            self._graphs[d] = built
            logger.debug("localization graphs on %s, d=%d: %d", self.target.label, d, len(built))
            return built
        raise IntegrityError(f"no generic torus weights found for {self.target.label} in degree {d}")

    def evaluate(self, key: InvariantKey) -> Fraction:
        if key.target != self.target:
            raise DomainError(f"key on {key.target.label} sent to the {self.target.label} oracle")
        if not expected_dim_gate(key):
            return Fraction(0)
        with self._lock:
            hit = self._memo.get(key)
            if hit is not None:
                return hit
            value = self._evaluate(key)
            self._memo[key] = value
            return value

    def _evaluate(self, key: InvariantKey) -> Fraction:
        d = key.degree
        if d == 0:
            if key.n != 3:
                return Fraction(0)
            vecs = [self.restriction(lam) for lam in key.insertions]
            return sum(
                (prod((v[p] for v in vecs), start=Fraction(1)) / self._tangent[p] for p in range(len(self._points))),
                start=Fraction(0),
            )
        graphs = self._graphs_for(d)
        vecs = [self.restriction(lam) for lam in key.insertions]
        total = Fraction(0)
        for term in graphs:
            value = term.weight
            for vec in vecs:
                value *= sum((s_v * vec[p] for p, s_v in term.vertices), start=Fraction(0))
                if not value:
                    break
            total += value
        return total


def _check_bounds(target: Grassmannian, n: int, d: int) -> None:
    if target.k > 2:
        raise UnsupportedError(f"localization oracle supports k <= 2, got {target.label}")
    if target.N > settings.oracle_max_N:
        raise ResourceLimitError(f"oracle on {target.label}", bound="ORACLE_MAX_N")
    if n > settings.oracle_max_points:
        raise ResourceLimitError(f"oracle with {n} insertions", bound="ORACLE_MAX_POINTS")
    if d > settings.oracle_max_degree:
        raise ResourceLimitError(f"oracle in degree {d}", bound="ORACLE_MAX_DEGREE")


def certify(oracle: LocalizationOracle) -> int:
    """Compare with classical and quantum 3-point numbers and a second weight vector."""

    g = oracle.target
    checked = 0
    lifted: list[InvariantKey] = []
    for triple in combinations_with_replacement(g.partitions(), 3):
        for d in (0, 1):
            key = InvariantKey(g, d, triple)
            if not expected_dim_gate(key):
                continue
            x, y, z = (CohClass.schubert(g, lam) for lam in triple)
            expected = integrate(g, classical_product(g, classical_product(g, x, y), z)) if d == 0 else three_point(g, x, y, z, 1)
            got = oracle.evaluate(key)
            if got != expected:
                raise IntegrityError(f"oracle certification failed on {key.label}: {got} != {expected}")
            checked += 1
            if d == 1 and len(lifted) < 3:
                lifted.append(key)

    other = LocalizationOracle(g, torus_weights(g.N, settings.oracle_weight_seed + 1))
    for key in lifted:
        with_divisor = InvariantKey(g, 1, key.insertions + (g.normalize((1,)),))
        got = other.evaluate(with_divisor)
        if got != oracle.evaluate(key):
            raise IntegrityError(f"oracle certification failed on {with_divisor.label}: divisor axiom")
        checked += 1
    logger.debug("certified localization oracle on %s with %d checks", g.label, checked)
    return checked


_oracles: dict[Grassmannian, LocalizationOracle] = {}
_oracles_lock = threading.Lock()


def certified_oracle(target: Grassmannian) -> LocalizationOracle:
    with _oracles_lock:
        hit = _oracles.get(target)
        if hit is not None:
            return hit
        _check_bounds(target, 3, 1)
        oracle = LocalizationOracle(target, torus_weights(target.N, settings.oracle_weight_seed))
        certify(oracle)
        _oracles[target] = oracle
        return oracle


def oracle_eval(key: InvariantKey) -> Fraction:
    if not expected_dim_gate(key):
        return Fraction(0)
    _check_bounds(key.target, key.n, key.degree)
    return certified_oracle(key.target).evaluate(key)


def oracle_eval_classes(target: Grassmannian, degree: int, classes: Sequence[CohClass]) -> Fraction:
    total = Fraction(0)
    for coeff, key in expand_insertions(target, degree, classes):
        total += coeff * oracle_eval(key)
    return total
