"""Tautological relations on M̄₀,ₙ(X, d) and their numerical audits.

Two-marking relations live on n = 2 (one marking for `strange`) and are pulled back
along the map forgetting markings 3..n:

- π*ψᵢ = ψᵢ - Σ_{∅≠T} D₀({i} ∪ T | rest)
- π*Δ(S₁, S₂) = Σ_{A⊔B} Δ(S₁ ∪ A, S₂ ∪ B)

`marked` and `1mb` assert that a class lies in the span of a boundary family; they are
audited by exact rank comparison over a grid of test monomials.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Literal

from sympy import Matrix, Rational

from gwrecon.config import settings
from gwrecon.domain.modspace import (
    DecoratedClass,
    Generator,
    Monomial,
    Side,
    SpaceSignature,
    c2_split_family,
    marked_boundary_family,
    monomial_codim,
)
from gwrecon.domain.schubert import CohClass, Grassmannian, chern_q
from gwrecon.errors import DomainError, ResourceLimitError, UnsupportedError
from gwrecon.gwcore.reduce import InvariantSource, reduce_integral


logger = logging.getLogger(__name__)

RELATIONS = ("diff", "psisum", "strange", "evsum", "marked", "2m", "re2", "1mb")
SPAN_RELATIONS = ("marked", "1mb")
SPAN_KAPPA_WIDENING = 2

RelationKind = Literal["identity", "span"]


@dataclass(frozen=True)
class RelationInstance:
    name: str
    sig: SpaceSignature
    kind: RelationKind
    codim: int
    lhs: tuple[Monomial, ...]
    # empty for span relations; the fitted boundary combination plays its role
    rhs: tuple[Monomial, ...] = ()
    family: tuple[Generator, ...] = ()


@dataclass(frozen=True)
class SpanAudit:
    relation: str
    sig: SpaceSignature
    monomials: tuple[Monomial, ...]
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]
    coefficients: dict[str, Fraction] = field(default_factory=dict)
    passed: bool = False
    rank: int = 0
    inconclusive: bool = False


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def _extra(n: int, base: Sequence[int]) -> list[int]:
    return [m for m in range(1, n + 1) if m not in base]


def _delta(
    n: int,
    base: Sequence[int],
    first: Sequence[int],
    second: Sequence[int],
    a: int,
    b: int,
    coeff: Fraction | int,
    *,
    c1: CohClass | None = None,
) -> list[Monomial]:
    out: list[Monomial] = []
    extra = _extra(n, base)
    for near in _subsets(extra):
        far = tuple(m for m in extra if m not in near)
        s1, s2 = Side.of(tuple(first) + near, a), Side.of(tuple(second) + far, b)
        if s1.stable() and s2.stable():
            out.append((DecoratedClass.delta(s1, s2, c1=c1, coeff=coeff),))
    return out


def _psi(n: int, d: int, base: Sequence[int], i: int, coeff: Fraction | int, tail: Monomial = ()) -> list[Monomial]:
    out: list[Monomial] = [(DecoratedClass.psi(i, coeff),) + tail]
    extra = _extra(n, base)
    for ghosts in _subsets(extra):
        if not ghosts:
            continue
        near = (i,) + ghosts
        far = tuple(m for m in range(1, n + 1) if m not in near)
        ghost = DecoratedClass.delta(Side.of(near, 0), Side.of(far, d), coeff=-Fraction(coeff))
        out.append((ghost,) + tail)
    return out


def _splits(d: int) -> list[tuple[int, int]]:
    return [(a, d - a) for a in range(1, d)]


def _nonzero(*monomials: Monomial) -> list[Monomial]:
    return [m for m in monomials if all(not (f.kind in ("ev", "kappa") and any(c.is_zero for c in f.classes)) for f in m)]


def _require(sig: SpaceSignature, name: str, markings: int) -> tuple[Grassmannian, int, int]:
    g = sig.grassmannian
    n, d = sig.n, sig.degree
    if d < 1:
        raise DomainError(f"relation {name} needs degree >= 1")
    if n < markings:
        raise DomainError(f"relation {name} needs at least {markings} markings, got {n}")
    return g, n, d


def build_relation(name: str, sig: SpaceSignature, alpha: CohClass | None = None) -> RelationInstance:
    """The relation `name` on sig, as lhs = rhs (identity) or lhs ∈ span(family)."""

    if name not in RELATIONS:
        raise DomainError(f"unknown relation {name!r}; expected one of {', '.join(RELATIONS)}")

    if name in SPAN_RELATIONS:
        return _span_relation(name, sig)

    if name == "strange":
        g, n, d = _require(sig, name, 1)
        h = chern_q(g, 1)
        base = (1,)
        lhs = _psi(n, d, base, 1, 1)
        lhs += _nonzero((DecoratedClass.ev(1, h, Fraction(2, d)),), (DecoratedClass.kappa(h * h, coeff=Fraction(-1, d * d)),))
        rhs: list[Monomial] = []
        for a, b in _splits(d):
            rhs += _delta(n, base, (1,), (), a, b, Fraction(b * b, d * d))
        return RelationInstance(name, sig, "identity", 1, tuple(lhs), tuple(rhs))

    g, n, d = _require(sig, name, 2)
    h = chern_q(g, 1)
    base = (1, 2)

    if name == "diff":
        lhs = [(DecoratedClass.ev(1, h),), (DecoratedClass.ev(2, h, -1),)]
        rhs = _psi(n, d, base, 2, d)
        for a, b in _splits(d):
            rhs += _delta(n, base, (1,), (2,), a, b, -a)
        return RelationInstance(name, sig, "identity", 1, tuple(lhs), tuple(rhs))

    if name == "psisum":
        lhs = _psi(n, d, base, 1, 1) + _psi(n, d, base, 2, 1)
        rhs = []
        for a, b in _splits(d):
            rhs += _delta(n, base, (1,), (2,), a, b, 1)
        return RelationInstance(name, sig, "identity", 1, tuple(lhs), tuple(rhs))

    if name == "evsum":
        lhs = [(DecoratedClass.ev(1, h),), (DecoratedClass.ev(2, h),)]
        rhs = _nonzero((DecoratedClass.kappa(h * h, coeff=Fraction(1, d)),))
        for a, b in _splits(d):
            rhs += _delta(n, base, (1,), (2,), a, b, Fraction(-a * b, d))
        for a in range(0, d):
            b = d - a
            rhs += _delta(n, base, (1, 2), (), a, b, Fraction(b * b, d))
        return RelationInstance(name, sig, "identity", 1, tuple(lhs), tuple(rhs))

    # 2m and re2: evᵢα - evⱼα - ψⱼκ(α) = -Σ Δ(S ∋ i, T ∋ j | α, •)
    if name == "2m":
        alpha = h * h
    elif alpha is None:
        alpha = chern_q(g, 2)
    if alpha.is_zero or alpha.homogeneous_codim() != 2:
        raise DomainError(f"relation {name} needs a nonzero codimension-2 class")
    kappa = DecoratedClass.kappa(alpha)
    lhs = [(DecoratedClass.ev(1, alpha),), (DecoratedClass.ev(2, alpha, -1),)]
    lhs += _psi(n, d, base, 2, -1, (kappa,))
    rhs = []
    for a, b in _splits(d):
        rhs += _delta(n, base, (1,), (2,), a, b, -1, c1=alpha)
    return RelationInstance(name, sig, "identity", 2, tuple(lhs), tuple(rhs))


def _span_relation(name: str, sig: SpaceSignature) -> RelationInstance:
    g, n, d = _require(sig, name, 1)
    if n != 1:
        raise DomainError(f"relation {name} lives on one-pointed spaces, got n={n}")
    if name == "marked":
        h = chern_q(g, 1)
        h2 = h * h
        if h2.is_zero:
            raise DomainError("relation marked needs a target of dimension at least 2")
        lhs = _nonzero(
            (DecoratedClass.ev(1, h2),),
            (DecoratedClass.ev(1, h, Fraction(-1, d)), DecoratedClass.kappa(h2)),
            (DecoratedClass.kappa(h2, h2, coeff=Fraction(1, d * d)),),
            (DecoratedClass.kappa(h2 * h, coeff=Fraction(-1, d)),),
        )
        family = tuple(marked_boundary_family(g, d, h))
        return RelationInstance(name, sig, "span", 2, tuple(lhs), family=family)

    if g.k != 2:
        raise UnsupportedError(f"relation 1mb is stated for G(2, N), got {g.label}")
    c1, c2 = chern_q(g, 1), chern_q(g, 2)
    lhs = _nonzero(
        (DecoratedClass.ev(1, c2),),
        (DecoratedClass.ev(1, c1, Fraction(-1, d)), DecoratedClass.kappa(c2)),
        (DecoratedClass.kappa(c1 * c1, c2, coeff=Fraction(1, d * d)),),
        (DecoratedClass.kappa(c1 * c2, coeff=Fraction(-1, d)),),
    )
    family = tuple(c2_split_family(g, d, n=1)) + tuple(marked_boundary_family(g, d, c1))
    return RelationInstance(name, sig, "span", 2, tuple(lhs), family=family)


def audit_monomials(sig: SpaceSignature, codim: int, *, limit: int | None = None, max_kappa: int | None = None) -> list[Monomial]:
    """ψ-free monomials in ev and κ classes of the given codimension, evenly sampled."""

    g = sig.grassmannian
    limit = settings.audit_grid_limit if limit is None else limit
    max_kappa = settings.audit_max_kappa if max_kappa is None else max_kappa
    basis = g.partitions()
    kappa_classes = [lam for lam in basis if sum(lam) >= 2]
    found: list[Monomial] = []
    for count in range(max_kappa + 1):
        for kappas in combinations_with_replacement(kappa_classes, count):
            kappa_codim = sum(sum(lam) - 1 for lam in kappas)
            if kappa_codim > codim:
                continue
            for evs in product(basis, repeat=sig.n):
                if kappa_codim + sum(sum(lam) for lam in evs) != codim:
                    continue
                factors = [DecoratedClass.ev(m + 1, CohClass.schubert(g, lam)) for m, lam in enumerate(evs) if any(lam)]
                factors += [DecoratedClass.kappa(CohClass.schubert(g, lam)) for lam in kappas]
                found.append(tuple(factors))
    if len(found) <= limit:
        return found
    step = len(found) / limit
    return [found[int(i * step)] for i in range(limit)]


def _integral(sig: SpaceSignature, terms: Sequence[Monomial], test: Monomial, source: InvariantSource) -> Fraction:
    return sum((reduce_integral(sig, term + test, source) for term in terms), start=Fraction(0))


def _span_fit(relation: RelationInstance, source: InvariantSource, grid: list[Monomial]) -> SpanAudit:
    sig = relation.sig
    lhs = [_integral(sig, relation.lhs, m, source) for m in grid]
    columns = [[_integral(sig, (gen.factors,), m, source) for m in grid] for gen in relation.family]

    A = Matrix(len(grid), len(columns), lambda r, c: Rational(columns[c][r].numerator, columns[c][r].denominator))
    b = Matrix(len(grid), 1, lambda r, _c: Rational(lhs[r].numerator, lhs[r].denominator))
    rank = A.rank()
    consistent = rank == A.row_join(b).rank()
    coefficients: dict[str, Fraction] = {}
    fitted = [Fraction(0)] * len(grid)
    if consistent and columns:
        solution, params = A.gauss_jordan_solve(b)
        solution = solution.subs({p: 0 for p in params})
        coefficients = {
            gen.name: Fraction(int(Rational(x).p), int(Rational(x).q))
            for gen, x in zip(relation.family, solution)
            if x != 0
        }
        fitted_matrix = A * solution
        fitted = [Fraction(int(Rational(x).p), int(Rational(x).q)) for x in fitted_matrix]
    # a family of full row rank fits any lhs, so the grid decides nothing
    inconclusive = rank == len(grid)
    return SpanAudit(
        relation.name, sig, tuple(grid), tuple(lhs), tuple(fitted), coefficients,
        passed=consistent and not inconclusive, rank=rank, inconclusive=inconclusive,
    )


def span_audit(
    relation: RelationInstance,
    source: InvariantSource,
    monomials: Sequence[Monomial] | None = None,
    *,
    limit: int | None = None,
    include: Sequence[Monomial] = (),
) -> SpanAudit:
    """Fit lhs against the boundary family over a grid of test monomials.

    Without an explicit grid the κ range is widened, up to AUDIT_MAX_KAPPA + SPAN_KAPPA_WIDENING,
    until the family no longer spans the grid. A result that still fits everything is reported
    as inconclusive and never as passed.
    """

    if relation.kind != "span":
        raise DomainError(f"relation {relation.name} is not a span relation")
    sig = relation.sig
    codim = sig.dim - relation.codim

    def with_included(grid: list[Monomial]) -> list[Monomial]:
        return grid + [tuple(m) for m in include if tuple(m) not in grid]

    if monomials is not None:
        audit = _span_fit(relation, source, with_included(list(monomials)))
    else:
        max_kappa = settings.audit_max_kappa
        grid = with_included(audit_monomials(sig, codim, limit=limit, max_kappa=max_kappa))
        audit = _span_fit(relation, source, grid)
        for extra in range(1, SPAN_KAPPA_WIDENING + 1):
            if not audit.inconclusive:
                break
            grid = with_included(audit_monomials(sig, codim, limit=limit, max_kappa=max_kappa + extra))
            if tuple(grid) == audit.monomials:
                continue
            try:
                audit = _span_fit(relation, source, grid)
            except (ResourceLimitError, UnsupportedError) as exc:
                logger.info("span audit %s on %s: widening stopped: %s", relation.name, sig.label, exc)
                break
    logger.debug(
        "span audit %s on %s: %d monomials, rank %d, passed=%s, inconclusive=%s",
        relation.name, sig.label, len(audit.monomials), audit.rank, audit.passed, audit.inconclusive,
    )
    return audit


def relation_audit(
    relation: str | RelationInstance,
    sig: SpaceSignature,
    test_monomial: Sequence[DecoratedClass],
    source: InvariantSource,
) -> tuple[Fraction, Fraction]:
    """(∫ lhs · M, ∫ rhs · M); span relations report the fitted boundary combination as rhs."""

    inst = relation if isinstance(relation, RelationInstance) else build_relation(relation, sig)
    test = tuple(test_monomial)
    wanted = sig.dim - inst.codim
    if monomial_codim(test) != wanted:
        raise DomainError(f"test monomial has codimension {monomial_codim(test)}, relation {inst.name} needs {wanted}")
    if inst.kind == "span":
        audit = span_audit(inst, source, include=(test,))
        if audit.inconclusive:
            raise UnsupportedError(
                f"relation {inst.name} on {sig.label}: the boundary family spans every test monomial"
            )
        at = audit.monomials.index(test)
        return audit.lhs[at], audit.rhs[at]
    return _integral(sig, inst.lhs, test, source), _integral(sig, inst.rhs, test, source)
