"""Boundary strata and generator catalogs on M̄₀,ₙ(X, β).

- X is an SL flag variety (ℙʳ and G(k, N) included), β = Σ dᵢβᵢ.
- Everything here is pure enumeration; nothing is integrated.
- Decorated classes are the shared vocabulary of the relation auditor and the integral reducer.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Literal

from gwrecon.domain.schubert import CohClass, FlagDescriptor, Grassmannian, chern_q
from gwrecon.domain.symgroup import bracket_plus
from gwrecon.errors import DomainError, IntegrityError, UnsupportedError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpaceSignature:
    flag: FlagDescriptor
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degs = tuple(int(x) for x in self.degrees)
        object.__setattr__(self, "degrees", degs)
        if self.n < 0:
            raise DomainError("number of markings must be non-negative")
        if len(degs) != self.flag.l:
            raise DomainError(f"multidegree {degs} has {len(degs)} entries, target needs {self.flag.l}")
        if any(x < 0 for x in degs):
            raise DomainError("multidegree entries must be non-negative")

    @classmethod
    def for_grassmannian(cls, g: Grassmannian, n: int, d: int) -> SpaceSignature:
        return cls(flag=g.flag(), n=n, degrees=(d,))

    @classmethod
    def projective(cls, r: int, n: int, d: int) -> SpaceSignature:
        return cls.for_grassmannian(Grassmannian.projective(r), n, d)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    @property
    def grassmannian(self) -> Grassmannian:
        if self.flag.l != 1:
            raise UnsupportedError(f"{self.flag.label} is not a Grassmannian")
        return Grassmannian(self.flag.subspace_dims[0], self.flag.N)

    @property
    def dim(self) -> int:
        pair = sum(d * c for d, c in zip(self.degrees, self.flag.c1_pairings))
        return self.flag.dim + pair + self.n - 3

    @property
    def label(self) -> str:
        degs = ",".join(str(x) for x in self.degrees)
        return f"M(0,{self.n})[{self.flag.label};{degs}]"

    def require_nonempty(self) -> None:
        if self.degree == 0 and self.n < 3:
            raise DomainError(f"{self.label} is empty: zero multidegree needs n >= 3")


@dataclass(frozen=True, order=True)
class Side:
    markings: tuple[int, ...]
    degree: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "markings", tuple(sorted(self.markings)))
        object.__setattr__(self, "degree", tuple(self.degree))

    @classmethod
    def of(cls, markings: Iterable[int], d: int) -> Side:
        return cls(tuple(markings), (d,))

    @property
    def d(self) -> int:
        return sum(self.degree)

    def stable(self, nodes: int = 1) -> bool:
        return self.d > 0 or len(self.markings) + nodes >= 3

    def label(self) -> str:
        marks = ",".join(str(m) for m in self.markings)
        degs = ",".join(str(x) for x in self.degree)
        return f"{{{marks}}}:{degs}"


@dataclass(frozen=True, order=True)
class BoundarySplit:
    first: Side
    second: Side

    @classmethod
    def of(cls, a: Side, b: Side) -> BoundarySplit:
        lo, hi = (a, b) if a <= b else (b, a)
        return cls(lo, hi)

    @property
    def symmetric(self) -> bool:
        return self.first == self.second

    @property
    def stable(self) -> bool:
        return self.first.stable() and self.second.stable()

    def label(self) -> str:
        return f"D[{self.first.label()}|{self.second.label()}]"


def boundary_divisor_count(sig: SpaceSignature) -> int:
    """[2^{n-1}∏(dᵢ+1)]⁺ - 1 - n."""

    sig.require_nonempty()
    head = Fraction(2**sig.n * prod(x + 1 for x in sig.degrees), 2)
    return bracket_plus(head) - 1 - sig.n


def _side_candidates(sig: SpaceSignature) -> Iterator[tuple[Side, Side]]:
    marks = range(1, sig.n + 1)
    for mask in range(1 << sig.n):
        s1 = tuple(m for m in marks if mask >> (m - 1) & 1)
        s2 = tuple(m for m in marks if not mask >> (m - 1) & 1)
        for e in product(*(range(x + 1) for x in sig.degrees)):
            rest = tuple(x - y for x, y in zip(sig.degrees, e))
            yield Side(s1, tuple(e)), Side(s2, rest)


def boundary_divisors(sig: SpaceSignature) -> list[BoundarySplit]:
    sig.require_nonempty()
    found: set[BoundarySplit] = set()
    for a, b in _side_candidates(sig):
        split = BoundarySplit.of(a, b)
        if split.stable:
            found.add(split)
    out = sorted(found)
    expected = boundary_divisor_count(sig)
    if len(out) != expected:
        raise IntegrityError(f"{sig.label}: enumerated {len(out)} boundary divisors, formula gives {expected}")
    return out


def dim_h2(sig: SpaceSignature) -> int:
    sig.require_nonempty()
    if sig.degree == 0:
        raise DomainError("dim_h2 needs a nonzero multidegree")
    l = sig.flag.l
    head = Fraction(2**sig.n * prod(x + 1 for x in sig.degrees), 2)
    return bracket_plus(head) - 1 - comb(sig.n, 2) + sig.flag.h4 - comb(l, 2)


DecoratedKind = Literal["ev", "kappa", "psi", "boundary"]


@dataclass(frozen=True)
class DecoratedClass:
    """One factor of a tautological monomial.

    boundary: chain of components c0 - c1 (- c2); decorations[i] are κ-insertions on
    component i, node_classes[i] the class imposed at the node between c_i and c_{i+1}.
    """

    kind: DecoratedKind
    marking: int = 0
    classes: tuple[CohClass, ...] = ()
    components: tuple[Side, ...] = ()
    decorations: tuple[tuple[CohClass, ...], ...] = ()
    node_classes: tuple[CohClass | None, ...] = ()
    coeff: Fraction = field(default=Fraction(1))

    @classmethod
    def ev(cls, marking: int, alpha: CohClass, coeff: Fraction | int = 1) -> DecoratedClass:
        if marking < 1:
            raise DomainError("markings are numbered from 1")
        return cls("ev", marking=marking, classes=(alpha,), coeff=Fraction(coeff))

    @classmethod
    def kappa(cls, *alphas: CohClass, coeff: Fraction | int = 1) -> DecoratedClass:
        if not alphas:
            raise DomainError("kappa needs at least one class")
        return cls("kappa", classes=tuple(alphas), coeff=Fraction(coeff))

    @classmethod
    def psi(cls, marking: int, coeff: Fraction | int = 1) -> DecoratedClass:
        if marking < 1:
            raise DomainError("markings are numbered from 1")
        return cls("psi", marking=marking, coeff=Fraction(coeff))

    @classmethod
    def boundary(
        cls,
        components: Sequence[Side],
        decorations: Sequence[Sequence[CohClass]] | None = None,
        node_classes: Sequence[CohClass | None] | None = None,
        coeff: Fraction | int = 1,
    ) -> DecoratedClass:
        comps = tuple(components)
        if len(comps) not in (2, 3):
            raise UnsupportedError("boundary strata with two or three components only")
        decs = tuple(tuple(x) for x in decorations) if decorations is not None else ((),) * len(comps)
        nodes = tuple(node_classes) if node_classes is not None else (None,) * (len(comps) - 1)
        if len(decs) != len(comps) or len(nodes) != len(comps) - 1:
            raise DomainError("decorations/node classes do not match the chain length")
        seen: set[int] = set()
        for c in comps:
            if seen & set(c.markings):
                raise DomainError("a marking sits on two components")
            seen |= set(c.markings)
        for i, c in enumerate(comps):
            nodes_here = 1 if i in (0, len(comps) - 1) else 2
            if not c.stable(nodes_here):
                raise DomainError(f"unstable component {c.label()} in boundary stratum")
        return cls("boundary", components=comps, decorations=decs, node_classes=nodes, coeff=Fraction(coeff))

    @classmethod
    def delta(
        cls,
        first: Side,
        second: Side,
        c1: CohClass | None = None,
        c2: CohClass | None = None,
        node: CohClass | None = None,
        coeff: Fraction | int = 1,
    ) -> DecoratedClass:
        """Δ(S₁, S₂ | C₁, C₂), optionally with the node mapping to a cycle."""
        decs = ((c1,) if c1 is not None else (), (c2,) if c2 is not None else ())
        return cls.boundary((first, second), decs, (node,), coeff)

    @property
    def codim(self) -> int:
        if self.kind == "ev":
            return self.classes[0].homogeneous_codim()
        if self.kind == "kappa":
            return sum(a.homogeneous_codim() - 1 for a in self.classes)
        if self.kind == "psi":
            return 1
        total = len(self.components) - 1
        for decs in self.decorations:
            total += sum(a.homogeneous_codim() - 1 for a in decs)
        total += sum(a.homogeneous_codim() for a in self.node_classes if a is not None)
        return total

    @property
    def automorphisms(self) -> int:
        """Order of the chain-reversal symmetry of a boundary stratum (1 or 2)."""
        if self.kind != "boundary":
            return 1
        mirrored = (
            self.components[::-1] == self.components
            and self.decorations[::-1] == self.decorations
            and self.node_classes[::-1] == self.node_classes
        )
        return 2 if mirrored else 1

    @property
    def markings(self) -> tuple[int, ...]:
        if self.kind in ("ev", "psi"):
            return (self.marking,)
        return tuple(m for c in self.components for m in c.markings)

    def scaled(self, factor: Fraction | int) -> DecoratedClass:
        return DecoratedClass(
            self.kind,
            self.marking,
            self.classes,
            self.components,
            self.decorations,
            self.node_classes,
            self.coeff * Fraction(factor),
        )

    def label(self) -> str:
        if self.kind == "ev":
            return f"ev{self.marking}({_class_label(self.classes[0])})"
        if self.kind == "kappa":
            return "kappa(" + ";".join(_class_label(a) for a in self.classes) + ")"
        if self.kind == "psi":
            return f"psi{self.marking}"
        parts: list[str] = []
        for i, c in enumerate(self.components):
            dec = ";".join(_class_label(a) for a in self.decorations[i])
            parts.append(c.label() + (f"<{dec}>" if dec else ""))
            if i < len(self.node_classes):
                node = self.node_classes[i]
                parts.append("-" if node is None else f"-[{_class_label(node)}]-")
        return "D(" + "".join(parts) + ")"


def _class_label(a: CohClass) -> str:
    out: list[str] = []
    for lam, v in a.terms:
        name = "s" + "".join(str(p) for p in lam if p) if any(lam) else "1"
        out.append(name if v == 1 else f"{v}*{name}")
    return "+".join(out) if out else "0"


Monomial = tuple[DecoratedClass, ...]


def monomial_codim(monomial: Sequence[DecoratedClass]) -> int:
    return sum(f.codim for f in monomial)


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    parameters: tuple[tuple[str, int | str], ...] = ()
    factors: Monomial = ()


@dataclass(frozen=True)
class GeneratorCatalog:
    generators: tuple[Generator, ...]
    relations: tuple[str, ...] = ()

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    @property
    def net(self) -> int:
        return len(self.generators) - self.relation_count

    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def count(self, prefix: str) -> int:
        return sum(1 for g in self.generators if g.name == prefix or g.name.startswith(prefix + "["))


def _params_label(prefix: str, params: Sequence[tuple[str, int | str]]) -> str:
    if not params:
        return prefix
    return prefix + "[" + ",".join(f"{k}={v}" for k, v in params) + "]"


def _gen(prefix: str, kind: str, params: Sequence[tuple[str, int | str]] = (), factors: Monomial = ()) -> Generator:
    return Generator(name=_params_label(prefix, params), kind=kind, parameters=tuple(params), factors=factors)


def h2_generators(sig: SpaceSignature) -> GeneratorCatalog:
    """Boundary divisors, κ(c₁(Qᵢ)²), κ(c₂(Kᵢ)) and for n ∈ {1, 2} one evaluation class."""

    expected = dim_h2(sig)
    gens: list[Generator] = []
    for split in boundary_divisors(sig):
        gens.append(Generator(name=split.label(), kind="boundary"))
    f = sig.flag
    curve = f.dim == 1
    if not curve:
        for i in range(1, f.l + 1):
            gens.append(_gen(f"kappa(c1(Q{i})^2)", "kappa"))
    for i, r in enumerate(f.kernel_ranks):
        if r >= 2:
            gens.append(_gen(f"kappa(c2(K{i}))", "kappa"))
    if sig.n in (1, 2):
        gens.append(_gen("ev1*(c1(Q1))", "ev"))

    relations: list[str] = [] if curve else ["flageq"]
    keel = sig.n * (sig.n - 3) // 2 if sig.n >= 3 else 0
    relations.extend(f"keel[{i}]" for i in range(1, keel + 1))
    catalog = GeneratorCatalog(tuple(gens), tuple(relations))
    if catalog.net != expected:
        raise IntegrityError(f"{sig.label}: generator net {catalog.net} != dim_h2 {expected}")
    return catalog


def flageq_coefficients(sig: SpaceSignature) -> dict[str, Fraction]:
    """Σᵢ κ(c₂(Kᵢ)) + Σᵢ ((d_{i-1}+d_{i+1})/(2dᵢ) - 1) κ(c₁(Qᵢ)²) ≡ 0 modulo boundaries."""

    degs = sig.degrees
    if any(x == 0 for x in degs):
        raise DomainError("flageq needs every dᵢ >= 1")
    f = sig.flag
    padded = (0,) + degs + (0,)
    out: dict[str, Fraction] = {}
    for i, r in enumerate(f.kernel_ranks):
        if r >= 2:
            out[f"kappa(c2(K{i}))"] = Fraction(1)
    for i in range(1, f.l + 1):
        out[f"kappa(c1(Q{i})^2)"] = Fraction(padded[i - 1] + padded[i + 1], 2 * padded[i]) - 1
    return out


def bidegree_relation(d: int, e: int) -> dict[tuple[int, int], Fraction]:
    """Weights of D_{i,j} in κ((H₁/d - H₂/e)²) = ½ Σ D_{i,j}(i/d - j/e)².

    Keys are the canonical representative min((i, j), (d-i, e-j)); the ½ is absorbed
    by summing over unordered divisors.
    """

    if d < 1 or e < 1:
        raise DomainError("bidegree relation needs d, e >= 1")
    out: dict[tuple[int, int], Fraction] = {}
    for i in range(d + 1):
        for j in range(e + 1):
            if (i, j) in ((0, 0), (d, e)):
                continue
            key = min((i, j), (d - i, e - j))
            out[key] = (Fraction(i, d) - Fraction(j, e)) ** 2
    return dict(sorted(out.items()))


# Codimension-2 catalogs.


def chains(n: int, d: int) -> list[tuple[Side, Side, Side]]:
    """Three-component chains c0 - c1 - c2 up to reversal, stable with markings 1..n."""

    found: set[tuple[Side, Side, Side]] = set()
    for degs in product(range(d + 1), repeat=3):
        if sum(degs) != d:
            continue
        for place in product(range(3), repeat=n):
            comps = tuple(
                Side.of((m for m in range(1, n + 1) if place[m - 1] == c), degs[c]) for c in range(3)
            )
            if not (comps[0].stable(1) and comps[1].stable(2) and comps[2].stable(1)):
                continue
            found.add(min(comps, comps[::-1]))
    return sorted(found)


def two_sided(n_marked_first: Sequence[int], d: int, *, first_min: int = 1) -> list[tuple[Side, Side]]:
    """Ordered splits (S₁ = given markings, degree a) | (rest unmarked, degree d - a), both stable."""
    out: list[tuple[Side, Side]] = []
    for a in range(first_min, d):
        s1 = Side.of(n_marked_first, a)
        s2 = Side.of((), d - a)
        if s1.stable() and s2.stable():
            out.append((s1, s2))
    return out


def _chain_gen(prefix: str, comps: tuple[Side, Side, Side]) -> Generator:
    params: list[tuple[str, int | str]] = [("i", comps[0].d), ("j", comps[1].d), ("l", comps[2].d)]
    for idx, c in enumerate(comps):
        if c.markings:
            params.append((f"S{idx}", "".join(str(m) for m in c.markings)))
    return _gen(prefix, "chain", params, (DecoratedClass.boundary(comps),))


def marked_boundary_family(g: Grassmannian, d: int, h: CohClass | None = None) -> list[Generator]:
    """Boundary classes on M̄₀,₁(X, d) built from a hyperplane-type class h (default c₁(Q)).

    Chains, ev₁*h on two-component maps, and splits with a component meeting h².
    """
    h = h if h is not None else chern_q(g, 1)
    gens = [_chain_gen("B.1", comps) for comps in chains(1, d)]
    for s1, s2 in two_sided((1,), d):
        gens.append(
            _gen("B.2.1", "decorated", (("a", s1.d), ("b", s2.d)), (DecoratedClass.ev(1, h), DecoratedClass.delta(s1, s2)))
        )
    h2 = h * h
    if not h2.is_zero:
        for s1, s2 in two_sided((1,), d):
            params = (("a", s1.d), ("b", s2.d))
            gens.append(_gen("B.2.2", "decorated", params + (("on", "a"),), (DecoratedClass.delta(s1, s2, c1=h2),)))
            gens.append(_gen("B.2.2", "decorated", params + (("on", "b"),), (DecoratedClass.delta(s1, s2, c2=h2),)))
    return gens


def c2_split_family(g: Grassmannian, d: int, n: int = 1) -> list[Generator]:
    """Two-component maps, one component meeting a cycle in class c₂(Q)."""
    c2 = chern_q(g, 2)
    prefix = "E.2" if n == 1 else "D.2"
    gens: list[Generator] = []
    if c2.is_zero:
        return gens
    if n == 0:
        for a in range(1, d):
            s1, s2 = Side.of((), a), Side.of((), d - a)
            gens.append(_gen(prefix, "decorated", (("a", a), ("b", d - a)), (DecoratedClass.delta(s1, s2, c1=c2),)))
        return gens
    for s1, s2 in two_sided(tuple(range(1, n + 1)), d):
        params = (("a", s1.d), ("b", s2.d))
        gens.append(_gen(prefix, "decorated", params + (("on", "a"),), (DecoratedClass.delta(s1, s2, c1=c2),)))
        gens.append(_gen(prefix, "decorated", params + (("on", "b"),), (DecoratedClass.delta(s1, s2, c2=c2),)))
    return gens


def _unmarked_family(prefix: str, d: int, h: CohClass) -> list[Generator]:
    gens = [_chain_gen(f"{prefix}.1", comps) for comps in chains(0, d)]
    for a in range(1, d // 2 + 1):
        s1, s2 = Side.of((), a), Side.of((), d - a)
        gens.append(_gen(f"{prefix}.2.1", "nodal", (("a", a), ("b", d - a)), (DecoratedClass.delta(s1, s2, node=h),)))
    h2 = h * h
    if not h2.is_zero:
        for a in range(1, d):
            s1, s2 = Side.of((), a), Side.of((), d - a)
            gens.append(_gen(f"{prefix}.2.2", "decorated", (("a", a), ("b", d - a)), (DecoratedClass.delta(s1, s2, c1=h2),)))
        gens.append(_gen(f"{prefix}.3.1", "interior", (), (DecoratedClass.kappa(h2, h2),)))
    h3 = h2 * h
    if not h3.is_zero:
        gens.append(_gen(f"{prefix}.3.2", "interior", (), (DecoratedClass.kappa(h3),)))
    return gens


def _one_marked_interior(prefix: str, h: CohClass) -> list[Generator]:
    h2 = h * h
    h3 = h2 * h
    gens: list[Generator] = []
    if h2.is_zero:
        return gens
    gens.append(_gen(f"{prefix}.3.1", "interior", (), (DecoratedClass.ev(1, h2),)))
    gens.append(_gen(f"{prefix}.3.2", "interior", (), (DecoratedClass.ev(1, h), DecoratedClass.kappa(h2))))
    gens.append(_gen(f"{prefix}.3.3", "interior", (), (DecoratedClass.kappa(h2, h2),)))
    if not h3.is_zero:
        gens.append(_gen(f"{prefix}.3.4", "interior", (), (DecoratedClass.kappa(h3),)))
    return gens


def _two_marked_family(d: int, h: CohClass) -> list[Generator]:
    h2 = h * h
    gens = [_chain_gen("C.1", comps) for comps in chains(2, d)]
    apart = [(Side.of((1,), a), Side.of((2,), d - a)) for a in range(1, d)]
    if not h2.is_zero:
        for s1, s2 in apart:
            params = (("a", s1.d), ("b", s2.d))
            gens.append(_gen("C.2.1", "decorated", params + (("on", "a"),), (DecoratedClass.delta(s1, s2, c1=h2),)))
            gens.append(_gen("C.2.1", "decorated", params + (("on", "b"),), (DecoratedClass.delta(s1, s2, c2=h2),)))
    for s1, s2 in apart:
        gens.append(_gen("C.2.2", "nodal", (("a", s1.d), ("b", s2.d)), (DecoratedClass.delta(s1, s2, node=h),)))
    ghost = (Side.of((1, 2), 0), Side.of((), d))
    gens.append(_gen("C.2.3", "decorated", (), (DecoratedClass.ev(1, h), DecoratedClass.delta(*ghost))))
    if not h2.is_zero:
        for a in range(0, d):
            s1, s2 = Side.of((1, 2), a), Side.of((), d - a)
            gens.append(_gen("C.2.4", "decorated", (("a", a), ("b", d - a)), (DecoratedClass.delta(s1, s2, c2=h2),)))
        gens.append(_gen("C.3", "interior", (("mark", 1),), (DecoratedClass.ev(1, h2),)))
        gens.append(_gen("C.3", "interior", (("mark", 2),), (DecoratedClass.ev(2, h2),)))
    return gens


def codim2_catalog(g: Grassmannian, n: int, d: int) -> GeneratorCatalog:
    if d < 2:
        raise DomainError("codimension-2 catalogs are listed for d >= 2 only")
    if n not in (0, 1, 2):
        raise UnsupportedError(f"codimension-2 catalog with n={n} markings")
    small = min(g.k, g.width)
    if small == 1:
        proj = Grassmannian.projective(g.N - 1)
        h = chern_q(proj, 1)
        r = g.N - 1
        if n == 0:
            return GeneratorCatalog(tuple(_unmarked_family("A", d, h)))
        if n == 1:
            gens = marked_boundary_family(proj, d, h) + _one_marked_interior("B", h)
            return GeneratorCatalog(tuple(gens), ("marked",) if r >= 2 else ())
        return GeneratorCatalog(tuple(_two_marked_family(d, h)))
    if small < 3:
        raise UnsupportedError(f"Grassmannian catalogs need min(k, N-k) >= 3, got {g.label}")
    if n == 2:
        raise UnsupportedError("two-marking catalogs are implemented for projective targets only")

    c1, c2, c3 = chern_q(g, 1), chern_q(g, 2), chern_q(g, 3)
    if n == 0:
        gens = _unmarked_family("D.1", d, c1) + c2_split_family(g, d, n=0)
        gens += [
            _gen("D.3.1", "interior", (), (DecoratedClass.kappa(c2, c2),)),
            _gen("D.3.2", "interior", (), (DecoratedClass.kappa(c1 * c1, c2),)),
            _gen("D.3.3", "interior", (), (DecoratedClass.kappa(c1 * c2),)),
            _gen("D.3.4", "interior", (), (DecoratedClass.kappa(c3),)),
        ]
        return GeneratorCatalog(tuple(gens))

    e1 = [
        Generator(name="E.1/" + gen.name, kind=gen.kind, parameters=gen.parameters, factors=gen.factors)
        for gen in marked_boundary_family(g, d, c1) + _one_marked_interior("B", c1)
    ]
    gens = e1 + c2_split_family(g, d, n=1)
    gens += [
        _gen("E.3.1", "interior", (), (DecoratedClass.ev(1, c2),)),
        _gen("E.3.2", "interior", (), (DecoratedClass.ev(1, c1), DecoratedClass.kappa(c2))),
        _gen("E.3.3", "interior", (), (DecoratedClass.kappa(c2, c2),)),
        _gen("E.3.4", "interior", (), (DecoratedClass.kappa(c1 * c1, c2),)),
        _gen("E.3.5", "interior", (), (DecoratedClass.kappa(c1 * c2),)),
        _gen("E.3.6", "interior", (), (DecoratedClass.kappa(c3),)),
    ]
    return GeneratorCatalog(tuple(gens), ("marked", "1mb"))
