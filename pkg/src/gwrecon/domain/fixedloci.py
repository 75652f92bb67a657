"""Torus-fixed graph censuses and Betti-number ledgers.

- ℙ¹: fixed graphs of M̄₀,₀(ℙ¹, d) bucketed by their negative-weight count d - 𝔲 + 𝔰.
- H⁴ ledgers and Deligne-complex bookkeeping for M̄₀,₀(ℙ¹, 2k).
- Flag targets: the family counts A..E that assemble dim H².
- ℙ³ vs G: the Betti transfer identities checked against the codimension-2 catalogs.

Ledger functions never raise on a failed identity; they return a record with `passed`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from gwrecon.config import settings
from gwrecon.domain.modspace import SpaceSignature, codim2_catalog, dim_h2
from gwrecon.domain.schubert import Grassmannian
from gwrecon.domain.symgroup import invariant_dim
from gwrecon.errors import DomainError, IntegrityError, ResourceLimitError, UnsupportedError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FixedGraph:
    labels: tuple[int, ...]
    # (u, v, degree) with u < v.
    edges: tuple[tuple[int, int, int], ...]
    legs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        g = self.graph()
        if not nx.is_tree(g):
            raise DomainError("fixed graph must be a tree")
        for u, v, e in self.edges:
            if e < 1:
                raise DomainError("edge degrees must be positive")
            if self.labels[u] == self.labels[v]:
                raise DomainError("adjacent vertices must carry distinct fixed points")

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.labels)))
        g.add_edges_from((u, v, {"degree": e}) for u, v, e in self.edges)
        return g

    @property
    def degree(self) -> int:
        return sum(e for _, _, e in self.edges)

    def _flags(self, vertex: int) -> int:
        return sum(1 for u, v, _ in self.edges if vertex in (u, v)) + self.legs.count(vertex)

    @property
    def s_count(self) -> int:
        """Vertices over fixed point 1 with at least three flags."""
        return sum(1 for i, lab in enumerate(self.labels) if lab == 1 and self._flags(i) >= 3)

    @property
    def u_count(self) -> int:
        """Vertices over fixed point 1 with exactly one flag."""
        return sum(1 for i, lab in enumerate(self.labels) if lab == 1 and self._flags(i) == 1)

    @property
    def negative_weights(self) -> int:
        return self.degree - self.u_count + self.s_count

    def canonical(self) -> str:
        return _canonical_form(self.graph(), self.labels, self.legs)


def _encode(g: nx.Graph, labels: tuple[int, ...], legs: tuple[int, ...], root: int, parent: int | None) -> str:
    children: list[str] = []
    for nb in g.neighbors(root):
        if nb == parent:
            continue
        children.append(f"{g.edges[root, nb]['degree']}:" + _encode(g, labels, legs, nb, root))
    children.sort()
    leg_mark = "L" * legs.count(root)
    return f"{labels[root]}{leg_mark}(" + ",".join(children) + ")"


def _canonical_form(g: nx.Graph, labels: tuple[int, ...], legs: tuple[int, ...] = ()) -> str:
    return min(_encode(g, labels, legs, c, None) for c in nx.center(g))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _p1_graphs(d: int) -> Iterator[FixedGraph]:
    for n_edges in range(1, d + 1):
        for tree in nx.nonisomorphic_trees(n_edges + 1):
            coloring = nx.bipartite.color(tree)
            base_edges = sorted((min(u, v), max(u, v)) for u, v in tree.edges())
            for flip in (0, 1):
                labels = tuple(coloring[i] ^ flip for i in range(n_edges + 1))
                for degs in _compositions(d, n_edges):
                    yield FixedGraph(labels, tuple((u, v, e) for (u, v), e in zip(base_edges, degs)))


@dataclass(frozen=True)
class P1Census:
    d: int
    buckets: tuple[int, ...]
    graphs: dict[int, list[FixedGraph]] = field(default_factory=dict, compare=False)


def p1_two_negative_count(d: int) -> int:
    """2 + [d/2] for d >= 4; the small degrees lose graphs that need two leaves."""
    if d >= 4:
        return 2 + d // 2
    return {2: 1, 3: 2}[d]


def p1_graph_census(d: int, max_neg: int = 2) -> P1Census:
    if d < 2:
        raise DomainError("the ℙ¹ census starts at d = 2")
    if d > settings.census_max_degree:
        raise ResourceLimitError(f"p1_graph_census(d={d})", bound="CENSUS_MAX_DEGREE")
    if max_neg < 0:
        raise DomainError("max_neg must be non-negative")

    seen: dict[str, FixedGraph] = {}
    for graph in _p1_graphs(d):
        if graph.negative_weights > max_neg:
            continue
        seen.setdefault(graph.canonical(), graph)
    by_neg: dict[int, list[FixedGraph]] = {k: [] for k in range(max_neg + 1)}
    for key in sorted(seen):
        graph = seen[key]
        by_neg[graph.negative_weights].append(graph)
    buckets = tuple(len(by_neg[k]) for k in range(max_neg + 1))
    logger.debug("p1_graph_census d=%s buckets=%s", d, buckets)
    if max_neg >= 2 and buckets[:3] != (1, 1, p1_two_negative_count(d)):
        raise IntegrityError(f"ℙ¹ census for d={d} gave {buckets[:3]}")
    return P1Census(d=d, buckets=buckets, graphs=by_neg)


def _require_even(d: int, bound: int, bound_name: str) -> int:
    if d < 2:
        raise DomainError("ledger needs d >= 2")
    if d % 2:
        raise UnsupportedError("odd-degree H⁴ ledgers are not implemented")
    if d > bound:
        raise ResourceLimitError(f"ledger for d={d}", bound=bound_name)
    return d // 2


@dataclass(frozen=True)
class H4Ledger:
    d: int
    count_bijl: int
    h2_term: int
    two_neg: int
    total: int
    expected: int

    @property
    def passed(self) -> bool:
        k = self.d // 2
        return self.total == self.expected and self.count_bijl == (k - 1) * (k - 2)


def h4_ledger_p1(d: int) -> H4Ledger:
    """h⁴(M̄₀,₀(ℙ¹, 2k)) = #B_{ijl} + h²(M̄₀,_{d-1})^{S_{d-2}} + #two-negative graphs = k²."""

    k = _require_even(d, settings.ledger_max_degree, "LEDGER_MAX_DEGREE")
    count_bijl = sum(
        1 for i in range(2, d) for l in range(i, d) for j in range(1, d) if i + j + l == d
    )
    h2_term = invariant_dim(1, (d - 2,)) if d >= 4 else 0
    if d <= settings.census_max_degree:
        two_neg = p1_graph_census(d).buckets[2]
    else:
        two_neg = p1_two_negative_count(d)
    total = count_bijl + h2_term + two_neg
    out = H4Ledger(d=d, count_bijl=count_bijl, h2_term=h2_term, two_neg=two_neg, total=total, expected=k * k)
    if not out.passed:
        logger.warning("h4 ledger fails for d=%s: %s", d, out)
    return out


@dataclass(frozen=True)
class DeligneComplex:
    d: int
    first: int
    middle: int
    gap: int
    expected: int

    @property
    def passed(self) -> bool:
        k = self.d // 2
        return self.gap == self.expected and self.first == (k - 1) ** 2


def _divisor_h2(target: Grassmannian, n_left: int, a: int, n_right: int, b: int) -> int:
    """h² of a fibred product M̄₀,{S∪•}(X, a) ×_X M̄₀,{T∪•}(X, b)."""
    left = dim_h2(SpaceSignature.for_grassmannian(target, n_left + 1, a))
    right = dim_h2(SpaceSignature.for_grassmannian(target, n_right + 1, b))
    return left + right - target.flag().h2


def _middle_term(target: Grassmannian, d: int, n: int) -> int:
    """Σ h²(D_i) over boundary divisors of M̄₀,ₙ(X, d), n ∈ {0, 1}; D_k of n = 0 enters by its invariant part."""

    h2x = target.flag().h2
    total = 0
    if n == 0:
        for a in range(1, d // 2 + 1):
            h = _divisor_h2(target, 0, a, 0, d - a)
            if 2 * a == d:
                h = (h - h2x) // 2 + h2x
            total += h
        return total
    for a in range(1, d):
        total += _divisor_h2(target, 1, a, 0, d - a)
    return total


def deligne_complex_p1(d: int) -> DeligneComplex:
    k = _require_even(d, settings.ledger_max_degree, "LEDGER_MAX_DEGREE")
    first = sum(1 for i in range(1, d) for l in range(i + 1, d) if d - i - l >= 1)
    middle = _middle_term(Grassmannian.projective(1), d, 0)
    out = DeligneComplex(d=d, first=first, middle=middle, gap=middle - first, expected=k * k)
    if not out.passed:
        logger.warning("Deligne complex bookkeeping fails for d=%s: %s", d, out)
    return out


@dataclass(frozen=True)
class FlagFamilyCounts:
    big_locus: int
    a: int
    b: int
    cde: int
    total: int
    dim_h2: int

    @property
    def passed(self) -> bool:
        return self.total == self.dim_h2


def flag_family_counts(sig: SpaceSignature) -> FlagFamilyCounts:
    if any(x == 0 for x in sig.degrees):
        raise DomainError("family counts need every dᵢ >= 1")
    l = sig.flag.l
    frak_a = sum(1 for x in sig.degrees if x == 1)
    big = invariant_dim(sig.n, sig.degrees, require_stable=False)
    a = sig.n * l
    b = l - frak_a
    cde = sig.flag.h4
    out = FlagFamilyCounts(big_locus=big, a=a, b=b, cde=cde, total=big + a + b + cde, dim_h2=dim_h2(sig))
    if not out.passed:
        logger.warning("family counts do not assemble dim H² for %s: %s", sig.label, out)
    return out


@dataclass(frozen=True)
class TransferCheck:
    d: int
    a2_diff: int
    middle0_diff: int
    a4_diff: int
    abar4_diff: int
    middle1_diff: int
    gap0: int
    gap1: int
    gap1_from_complex: int
    five_graph_bound: int | None
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


# Grassmannian with min(k, N-k) >= 3 used for the comparison with ℙ³.
TRANSFER_GRASSMANNIAN = Grassmannian(3, 6)


def betti_transfer_check(d: int) -> TransferCheck:
    if not (2 <= d <= settings.transfer_max_degree):
        raise ResourceLimitError(f"betti_transfer_check(d={d}) outside 2..{settings.transfer_max_degree}", bound="TRANSFER_MAX_DEGREE")
    p3 = Grassmannian.projective(3)
    g = TRANSFER_GRASSMANNIAN

    def h2(target: Grassmannian) -> int:
        return dim_h2(SpaceSignature.for_grassmannian(target, 0, d))

    a2_diff = h2(g) - h2(p3)
    middle0_diff = _middle_term(g, d, 0) - _middle_term(p3, d, 0)
    gap0 = codim2_catalog(g, 0, d).net - codim2_catalog(p3, 0, d).net
    # The codimension-2 strata indices agree for both targets, so a₄ moves by the H⁴ gap minus the middle gap.
    a4_diff = gap0 - middle0_diff
    # P(M₀,₁) = (q² + 1) P(M₀,₀).
    abar4_diff = a4_diff + a2_diff
    middle1_diff = _middle_term(g, d, 1) - _middle_term(p3, d, 1)
    gap1 = codim2_catalog(g, 1, d).net - codim2_catalog(p3, 1, d).net
    gap1_from_complex = abar4_diff + middle1_diff
    five = invariant_dim(1, (d - 1,)) + 2 + 1 + 1 + 2 if d >= 3 else None

    failures: list[str] = []
    checks = [
        ("a2_diff", a2_diff, 1),
        ("a4_diff", a4_diff, 4),
        ("abar4_diff", abar4_diff, 5),
        ("gap0", gap0, d + 3),
        ("gap1", gap1, 2 * d + 3),
        ("gap1_from_complex", gap1_from_complex, gap1),
    ]
    if five is not None:
        checks.append(("five_graph_bound", five, d + 3))
    for name, got, want in checks:
        if got != want:
            failures.append(f"{name}: {got} != {want}")
    out = TransferCheck(
        d=d,
        a2_diff=a2_diff,
        middle0_diff=middle0_diff,
        a4_diff=a4_diff,
        abar4_diff=abar4_diff,
        middle1_diff=middle1_diff,
        gap0=gap0,
        gap1=gap1,
        gap1_from_complex=gap1_from_complex,
        five_graph_bound=five,
        failures=tuple(failures),
    )
    if failures:
        logger.warning("Betti transfer check fails for d=%s: %s", d, "; ".join(failures))
    return out
