"""gwrecon command line.

Every subcommand prints one JSON document (or CSV rows) on stdout; diagnostics go to stderr.

Exit codes:
  0  success
  1  integrity or algorithm failure (a cross-check disagreed, a recursion cycled)
  2  invalid input, unsupported case or a configured bound exceeded
  3  an audit or ledger identity failed; the failing rows are still printed
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from gwrecon import __version__
from gwrecon.config import settings
from gwrecon.domain.fixedloci import (
    betti_transfer_check,
    deligne_complex_p1,
    flag_family_counts,
    h4_ledger_p1,
    p1_graph_census,
)
from gwrecon.domain.modspace import (
    SpaceSignature,
    boundary_divisor_count,
    boundary_divisors,
    codim2_catalog,
    dim_h2,
)
from gwrecon.domain.schubert import CohClass, Grassmannian, format_partition
from gwrecon.domain.schubert import product as classical_product
from gwrecon.domain.symgroup import (
    identity_sums,
    invariant_dim,
    invariant_dim_oracle,
    product_identity_sums,
)
from gwrecon.errors import (
    AlgorithmError,
    DomainError,
    IntegrityError,
    ResourceLimitError,
    UnsupportedError,
)
from gwrecon.gwcore.keys import InvariantKey
from gwrecon.gwcore.projective import km_recursion_pr
from gwrecon.gwcore.quantum import quantum_product_3pt
from gwrecon.gwcore.relations import (
    RELATIONS,
    SPAN_RELATIONS,
    audit_monomials,
    build_relation,
    relation_audit,
    span_audit,
)
from gwrecon.integrations.storage.local_storage import LocalCacheStorage
from gwrecon.schemas import AuditRecord, CatalogItem, LedgerRecord, format_rational
from gwrecon.services.evaluation_service import EvaluationService
from gwrecon.validators import (
    parse_class_list,
    parse_grassmannian,
    parse_int_list,
    parse_partition,
    parse_target,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_FAILED = 3

_CSV_HELP = """CSV output writes one row per record (divisors, catalog items, graphs, audit rows,
table entries, product terms); columns are the record's fields in sorted order. Commands with a
single record emit one row of its scalar fields."""


@dataclass
class CommandResult:
    payload: dict[str, Any]
    rows: list[dict[str, Any]] = field(default_factory=list)
    passed: bool = True


def _q(value: Fraction | int) -> str:
    return format_rational(value)


def _signature(args: argparse.Namespace) -> SpaceSignature:
    flag = parse_target(args.target)
    degrees = parse_int_list(args.deg, "--deg")
    return SpaceSignature(flag=flag, n=args.n, degrees=degrees)


def _service(args: argparse.Namespace) -> EvaluationService:
    path = settings.cache_path or (args.cache or "")
    storage = LocalCacheStorage(path=path) if path else None
    return EvaluationService(storage=storage)


# ---- dimension formulas and censuses ----


def cmd_dims_h2(args: argparse.Namespace) -> CommandResult:
    sig = _signature(args)
    value = dim_h2(sig)
    return CommandResult({"dim_h2": value}, [{"signature": sig.label, "dim_h2": value}])


def cmd_dims_invariant(args: argparse.Namespace) -> CommandResult:
    a = parse_int_list(args.a, "--a")
    value = invariant_dim(args.n, a)
    payload: dict[str, Any] = {"invariant_dim": value}
    passed = True
    if args.oracle:
        brute = invariant_dim_oracle(args.n, a)
        passed = brute == value
        payload.update({"oracle": brute, "agree": passed})
    return CommandResult(payload, [dict(payload, n=args.n, a=args.a)], passed)


def cmd_boundary(args: argparse.Namespace) -> CommandResult:
    sig = _signature(args)
    splits = boundary_divisors(sig)
    formula = boundary_divisor_count(sig)
    rows = [{"divisor": s.label(), "symmetric": s.symmetric} for s in splits]
    payload = {
        "signature": sig.label,
        "count": len(splits),
        "formula": formula,
        "divisors": [r["divisor"] for r in rows],
    }
    return CommandResult(payload, rows, len(splits) == formula)


def cmd_catalog_codim2(args: argparse.Namespace) -> CommandResult:
    g = parse_grassmannian(args.target)
    catalog = codim2_catalog(g, args.n, args.d)
    items = [CatalogItem(name=gen.name, kind=gen.kind, parameters=dict(gen.parameters)) for gen in catalog.generators]
    payload = {
        "target": g.label,
        "n": args.n,
        "d": args.d,
        "generators": [item.model_dump() for item in items],
        "relations": list(catalog.relations),
        "net": catalog.net,
    }
    return CommandResult(payload, [{"name": i.name, "kind": i.kind} for i in items])


def cmd_census_p1(args: argparse.Namespace) -> CommandResult:
    census = p1_graph_census(args.d, args.max_neg)
    rows = [
        {"negative_weights": neg, "graph": graph.canonical()}
        for neg, graphs in sorted(census.graphs.items())
        for graph in graphs
    ]
    payload: dict[str, Any] = {"d": census.d, "buckets": list(census.buckets)}
    if args.graphs:
        payload["graphs"] = {str(neg): [g.canonical() for g in graphs] for neg, graphs in census.graphs.items()}
    return CommandResult(payload, rows)


def cmd_census_flag(args: argparse.Namespace) -> CommandResult:
    sig = _signature(args)
    counts = flag_family_counts(sig)
    payload = dict(asdict(counts), signature=sig.label, passed=counts.passed)
    return CommandResult(payload, [payload], counts.passed)


def _ledger(name: str, d: int, values: dict[str, int], expected: int, passed: bool) -> LedgerRecord:
    return LedgerRecord(name=name, d=d, values=values, expected=expected, passed=passed)


def _h4_record(d: int) -> LedgerRecord:
    out = h4_ledger_p1(d)
    values = {"count_bijl": out.count_bijl, "h2_term": out.h2_term, "two_neg": out.two_neg, "total": out.total}
    return _ledger("h4_ledger_p1", d, values, out.expected, out.passed)


def _deligne_record(d: int) -> LedgerRecord:
    out = deligne_complex_p1(d)
    return _ledger("deligne_complex_p1", d, {"first": out.first, "middle": out.middle, "gap": out.gap}, out.expected, out.passed)


def _transfer_record(d: int) -> LedgerRecord:
    out = betti_transfer_check(d)
    values = {k: v for k, v in asdict(out).items() if isinstance(v, int) and k != "d"}
    if out.failures:
        logger.warning("transfer check d=%s: %s", d, "; ".join(out.failures))
    return _ledger("betti_transfer_check", d, values, d + 3, out.passed)


def _ledger_result(record: LedgerRecord) -> CommandResult:
    payload = record.model_dump()
    return CommandResult(payload, [dict(record.values, name=record.name, d=record.d, passed=record.passed)], record.passed)


def cmd_ledger_h4(args: argparse.Namespace) -> CommandResult:
    return _ledger_result(_h4_record(args.d))


def cmd_deligne(args: argparse.Namespace) -> CommandResult:
    return _ledger_result(_deligne_record(args.d))


def cmd_transfer(args: argparse.Namespace) -> CommandResult:
    return _ledger_result(_transfer_record(args.d))


def cmd_identities(args: argparse.Namespace) -> CommandResult:
    if args.a:
        out = asdict(product_identity_sums(parse_int_list(args.a, "--a")))
    elif args.k is not None:
        out = asdict(identity_sums(args.k))
    else:
        raise DomainError("identities needs --k or --a")
    return CommandResult(out, [out])


# ---- Schubert calculus and invariants ----


def cmd_schubert_mult(args: argparse.Namespace) -> CommandResult:
    g = parse_grassmannian(args.target)
    lam, mu = parse_partition(g, args.lam), parse_partition(g, args.mu)
    prod_class = classical_product(g, CohClass.schubert(g, lam), CohClass.schubert(g, mu))
    rows = [{"class": format_partition(nu), "coeff": _q(c)} for nu, c in prod_class.terms]
    return CommandResult({"target": g.label, "product": rows}, rows)


def cmd_quantum(args: argparse.Namespace) -> CommandResult:
    g = parse_grassmannian(args.target)
    terms = quantum_product_3pt(g, parse_partition(g, args.lam), parse_partition(g, args.mu))
    rows = [
        {"class": format_partition(nu), "q": q, "coeff": _q(c)}
        for (nu, q), c in sorted(terms.items(), key=lambda kv: (kv[0][1], sum(kv[0][0]), kv[0][0]))
    ]
    return CommandResult({"target": g.label, "product": rows}, rows)


def cmd_gw_eval(args: argparse.Namespace) -> CommandResult:
    g = parse_grassmannian(args.target)
    key = InvariantKey(g, args.d, tuple(parse_class_list(g, args.classes)))
    service = _service(args)
    payload: dict[str, Any] = {}
    passed = True
    if args.method == "primary":
        payload["value"] = _q(service.primary(key))
        entry = service.table.get(key)
        payload["provenance"] = entry.provenance if entry is not None else "axiom"
    if args.method in ("oracle", "both"):
        payload["oracle"] = _q(service.oracle(key))
    if args.method in ("reconstruct", "both"):
        payload["reconstruct"] = _q(service.reconstruct(key, vanishing=args.vanishing))
    if args.method == "both":
        passed = payload["oracle"] == payload["reconstruct"]
        payload["agree"] = passed
    _ = service.save_cache()
    return CommandResult(payload, [dict(payload, key=key.label)], passed)


def cmd_gw_kontsevich(args: argparse.Namespace) -> CommandResult:
    table = km_recursion_pr(args.r, args.d)
    if args.r == 2:
        numbers = {str(e): str(v) for e, v in sorted(table.kontsevich.items())}
        return CommandResult({"N": numbers}, [{"d": e, "N": v} for e, v in numbers.items()])
    rows = [
        {"d": d, "codims": ",".join(str(c) for c in codims) or "-", "value": _q(v)}
        for (d, codims), v in sorted(table.invariants.items())
    ]
    return CommandResult({"r": args.r, "invariants": rows}, rows)


# ---- audits ----


def _grid_limit(raw: str) -> int:
    if raw == "default":
        return settings.audit_grid_limit
    try:
        limit = int(raw)
    except ValueError as exc:
        raise DomainError("--grid must be 'default' or a positive integer") from exc
    if limit <= 0:
        raise DomainError("--grid must be positive")
    return limit


def _audit_case(
    service: EvaluationService, name: str, sig: SpaceSignature, alpha: CohClass | None, limit: int
) -> list[AuditRecord]:
    relation = build_relation(name, sig, alpha)
    source = service.source()
    target = sig.grassmannian.label
    records: list[AuditRecord] = []

    def record(m: Sequence[Any], lhs: Fraction, rhs: Fraction) -> AuditRecord:
        label = " ".join(f.label() for f in m) or "1"
        return AuditRecord(
            relation=name, target=target, n=sig.n, degree=sig.degree, monomial=label,
            lhs=_q(lhs), rhs=_q(rhs), passed=lhs == rhs,
        )

    if name in SPAN_RELATIONS:
        audit = span_audit(relation, source, limit=limit)
        if audit.inconclusive:
            raise UnsupportedError(
                f"{name} on {sig.label}: the boundary family spans all {len(audit.monomials)} test monomials"
            )
        for m, lhs, rhs in zip(audit.monomials, audit.lhs, audit.rhs):
            records.append(record(m, lhs, rhs))
        if not audit.passed:
            logger.warning("%s on %s is not in the span of its boundary family", name, sig.label)
        return records
    for m in audit_monomials(sig, sig.dim - relation.codim, limit=limit):
        lhs, rhs = relation_audit(relation, sig, m, source)
        records.append(record(m, lhs, rhs))
    return records


def _default_audit_cases() -> list[tuple[str, SpaceSignature]]:
    targets = (Grassmannian.projective(2), Grassmannian(2, 4))
    cases: list[tuple[str, SpaceSignature]] = []
    for name in RELATIONS:
        for g in targets:
            if name == "1mb" and g.k != 2:
                continue
            for d in (1, 2):
                markings = (1,) if name in SPAN_RELATIONS else (3, 4)
                for n in markings:
                    cases.append((name, SpaceSignature.for_grassmannian(g, n, d)))
    return cases


def cmd_audit(args: argparse.Namespace) -> CommandResult:
    limit = _grid_limit(args.grid)
    service = _service(args)
    records: list[AuditRecord] = []
    skipped: list[dict[str, Any]] = []
    ledgers: list[LedgerRecord] = []

    if args.all:
        for name, sig in _default_audit_cases():
            try:
                records += _audit_case(service, name, sig, None, limit)
            except (ResourceLimitError, UnsupportedError) as exc:
                logger.warning("skipping %s on %s: %s", name, sig.label, exc)
                skipped.append({"relation": name, "signature": sig.label, "reason": str(exc)})
        for d in range(2, settings.ledger_max_degree + 1, 2):
            ledgers += [_h4_record(d), _deligne_record(d)]
        for d in range(2, min(6, settings.transfer_max_degree) + 1):
            ledgers.append(_transfer_record(d))
    else:
        if not (args.relation and args.target and args.deg):
            raise DomainError("audit needs --all or --relation, --target, --n and --deg")
        sig = _signature(args)
        alpha = None
        if args.alpha:
            g = sig.grassmannian
            alpha = CohClass.schubert(g, parse_partition(g, args.alpha))
        records = _audit_case(service, args.relation, sig, alpha, limit)

    _ = service.save_cache()
    passed = all(r.passed for r in records) and all(r.passed for r in ledgers)
    payload = {
        "passed": passed,
        "audits": [r.model_dump() for r in records],
        "ledgers": [r.model_dump() for r in ledgers],
        "skipped": skipped,
    }
    rows = [r.model_dump() for r in records] + [
        {"relation": r.name, "degree": r.d, "rhs": str(r.expected), "passed": r.passed}
        for r in ledgers
    ]
    return CommandResult(payload, rows, passed)


# ---- cache ----


def cmd_cache(args: argparse.Namespace) -> CommandResult:
    service = _service(args)
    if service.storage is None:
        raise DomainError("no cache configured; pass --cache or set GWRECON_CACHE")
    storage = service.storage
    if args.action == "clear":
        cleared = storage.clear()
        return CommandResult({"path": str(storage.path), "cleared": cleared})
    loaded = service.load_cache()
    rows = [
        {"key": key.label, "value": _q(entry.value), "provenance": entry.provenance}
        for key, entry in service.table.items()
    ]
    payload = {
        "path": str(storage.path),
        "exists": storage.exists(),
        "entries": loaded,
        "by_provenance": service.table.counts(),
    }
    return CommandResult(payload, rows)


# ---- plumbing ----


def _add_target(p: argparse.ArgumentParser, *, required: bool = True) -> None:
    p.add_argument("--target", required=required, help="pr:<r> | g:<k>,<N> | flag:<m1,...,ml>@<N>")


def _add_signature(p: argparse.ArgumentParser, *, required: bool = True) -> None:
    _add_target(p, required=required)
    p.add_argument("--n", type=int, default=0, help="number of markings")
    p.add_argument("--deg", required=required, help="multidegree, comma separated (one entry per flag step)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwrecon",
        description="Exact dimension formulas, censuses and genus-0 invariants of Grassmannians and SL flags.",
        epilog=_CSV_HELP,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    parser.add_argument("--cache", default="", help="invariant cache file (GWRECON_CACHE takes precedence)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], CommandResult], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=_CSV_HELP)
        p.set_defaults(handler=handler)
        return p

    p = add("dims-h2", cmd_dims_h2, "dimension of H^2 of the moduli space of stable maps")
    _add_signature(p)

    p = add("dims-invariant", cmd_dims_invariant, "dimension of the invariant part of H^2(M_{0,n+sum a})")
    p.add_argument("--n", type=int, required=True, help="fixed markings")
    p.add_argument("--a", default="", help="sizes of the permuted blocks, comma separated")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force trace average")

    p = add("boundary", cmd_boundary, "boundary divisors, enumerated and counted by formula")
    _add_signature(p)

    p = add("catalog-codim2", cmd_catalog_codim2, "generators of H^4 for projective spaces and Grassmannians")
    _add_target(p)
    p.add_argument("--n", type=int, default=0, help="markings (0, 1 or 2)")
    p.add_argument("--d", type=int, required=True, help="degree (>= 2)")

    p = add("census-p1", cmd_census_p1, "fixed graphs of M_{0,0}(P^1, d) by negative-weight count")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-neg", type=int, default=2)
    p.add_argument("--graphs", action="store_true", help="list canonical graph forms in the JSON output")

    p = add("census-flag", cmd_census_flag, "graph-family contributions to dim H^2 on an SL flag")
    _add_signature(p)

    p = add("ledger-h4", cmd_ledger_h4, "H^4 ledger of M_{0,0}(P^1, d) for even d")
    p.add_argument("--d", type=int, required=True)

    p = add("deligne", cmd_deligne, "Deligne complex bookkeeping for M_{0,0}(P^1, d), even d")
    p.add_argument("--d", type=int, required=True)

    p = add("transfer", cmd_transfer, "H^4 transfer between G(3,6) and P^3")
    p.add_argument("--d", type=int, required=True)

    p = add("identities", cmd_identities, "symmetric-group character sums")
    p.add_argument("--k", type=int, default=None, help="sum over S_k")
    p.add_argument("--a", default="", help="sum over S_a1 x ... x S_al")

    p = add("schubert-mult", cmd_schubert_mult, "classical product of two Schubert classes")
    _add_target(p)
    p.add_argument("--lam", required=True, help="partition, e.g. 2,1")
    p.add_argument("--mu", required=True)

    p = add("quantum", cmd_quantum, "small quantum product of two Schubert classes")
    _add_target(p)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)

    p = add("gw-eval", cmd_gw_eval, "one genus-0 primary invariant")
    _add_target(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--classes", required=True, help='insertions joined by "|", e.g. "2|1,1|2,2"; "0" is the unit')
    p.add_argument("--method", choices=("primary", "oracle", "reconstruct", "both"), default="primary")
    p.add_argument("--vanishing", action="store_true", help="apply the large-N vanishing rule to base invariants")

    p = add("gw-kontsevich", cmd_gw_kontsevich, "WDVV tables of P^2 (Kontsevich numbers) and P^3")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, choices=(2, 3), default=2)

    p = add("audit", cmd_audit, "relation audits and ledger identities")
    _add_signature(p, required=False)
    p.add_argument("--relation", choices=RELATIONS, default=None)
    p.add_argument("--alpha", default="", help="codimension-2 partition for re2 (default c2)")
    p.add_argument("--all", action="store_true", help="run the full default grid")
    p.add_argument("--grid", default="default", help="'default' or test monomials per case")

    p = add("cache", cmd_cache, "inspect or clear the invariant cache")
    p.add_argument("action", choices=("inspect", "clear"))

    return parser


def _emit(result: CommandResult, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(result.payload, ensure_ascii=True, indent=2, sort_keys=True))
        return
    rows = result.rows or [{k: v for k, v in result.payload.items() if not isinstance(v, (list, dict))}]
    columns = sorted({k for row in rows for k in row})
    writer = csv.DictWriter(sys.stdout, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in columns})


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=settings.log_level.strip().upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        result = args.handler(args)
    except (DomainError, ResourceLimitError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (IntegrityError, AlgorithmError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INTERNAL

    _emit(result, args.format)
    if not result.passed:
        logger.error("%s: check failed", args.command)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
