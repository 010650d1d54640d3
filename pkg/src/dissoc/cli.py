"""Command-line surface: analyze, enumerate, verify, extremal, gen-trees.

Exit codes: 0 success, 1 usage or input error, 2 guard exceeded,
3 a checked fact failed on some tree (a counterexample). Data output is
deterministic and goes to stdout; runtime statistics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import sys
import time
from pathlib import Path
from typing import Iterator, Sequence

from .dissociation import alpha3_count_dp, enumerate_mds
from .errors import EnumerationCapExceeded, GuardExceeded, ParseError, TheoremViolation
from .extremal import exhaustive_extremal_check, generate_extremal_family, max_mds_formula
from .forest import (
    Forest,
    canonical_code,
    normalize_indices,
    parse_edge_list,
    serialize_edge_list,
)
from .kpath import alpha_k_brute, greedy_cover_matching, verify_certificate
from .structure import (
    ENUMERATION_CAP,
    classify_vertices,
    critical_edges_alpha3,
    critical_edges_mu3,
    critical_structure,
    verify_structure_theorems,
)
from .treegen import free_trees

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2
EXIT_VIOLATION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        raise _UsageError(message)


def _parse_k_list(text: str) -> list[int]:
    try:
        ks = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad k list {text!r}") from exc
    if not ks or any(k < 2 for k in ks):
        raise _UsageError("k values must be integers >= 2")
    return ks


def _load_forest(path: str) -> Forest:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def _labels(forest: Forest, vertices) -> list[str]:
    return [forest.label(v) for v in sorted(vertices)]


def _analysis_document(forest: Forest, k_values: Sequence[int], cap: int) -> dict:
    res = alpha3_count_dp(forest)
    cls = classify_vertices(forest)
    checks = verify_structure_theorems(forest, enumeration_cap=cap)
    crit = critical_edges_alpha3(forest)
    try:
        struct = critical_structure(forest)
        insulated = [[forest.label(u), forest.label(v)] for u, v in struct.insulated_edges]
        triples = [[forest.label(a), forest.label(b), forest.label(c)]
                   for a, b, c in struct.critical_triples]
        eta = struct.eta
    except TheoremViolation:
        insulated, triples, eta = None, None, len(crit)
    kke = {}
    for k in k_values:
        cert = greedy_cover_matching(forest, k)
        alpha = res.alpha3 if k == 3 else alpha_k_brute(forest, k)
        mu = len(cert.matching.paths)
        kke[str(k)] = {"alpha_k": alpha, "mu_k": mu, "holds": alpha + mu == forest.n}
    violations = sorted(
        f"{name}: {cr.witness}" for name, cr in checks.items() if cr.status == "fail"
    )
    return {
        "n": forest.n,
        "alpha3": res.alpha3,
        "mds_count": str(res.count),
        "eta": eta,
        "critical_edges": [[forest.label(u), forest.label(v)] for u, v in crit],
        "insulated_edges": insulated,
        "critical_triples": triples,
        "flexible": _labels(forest, cls.flexible),
        "static_included": _labels(forest, cls.static_included),
        "static_excluded": _labels(forest, cls.static_excluded),
        "theorem_checks": {name: cr.status for name, cr in checks.items()},
        "violations": violations,
        "kke": kke,
    }


def _cmd_analyze(args) -> int:
    forest = _load_forest(args.file)
    doc = _analysis_document(forest, _parse_k_list(args.k), args.enumerate_cap)
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_VIOLATION if doc["violations"] else EXIT_OK


def _cmd_enumerate(args) -> int:
    forest = _load_forest(args.file)
    try:
        for vs in enumerate_mds(forest, cap=args.limit):
            print(" ".join(forest.label(v) for v in sorted(vs)))
    except EnumerationCapExceeded as exc:
        print(f"truncated at {exc.cap} sets", file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


def _check_tree(payload) -> tuple[int, tuple[str, ...]]:
    """Per-tree verification work unit; returns (mds count, failure notes)."""
    n, edges, k_list, cap = payload
    tree = Forest.from_edges(n, edges)
    failures: list[str] = []
    for name, cr in verify_structure_theorems(tree, enumeration_cap=cap).items():
        if cr.status == "fail":
            failures.append(f"{name}: {cr.witness}")
    try:
        if set(critical_edges_alpha3(tree)) != set(critical_edges_mu3(tree)):
            failures.append("critical_edge_sets_coincide: alpha3 and mu3 sets differ")
    except TheoremViolation as exc:
        failures.append(f"criticality: {exc.witness}")
    res = alpha3_count_dp(tree)
    for k in k_list:
        cert = greedy_cover_matching(tree, k)
        for problem in verify_certificate(tree, cert):
            failures.append(f"certificate k={k}: {problem}")
        alpha = res.alpha3 if k == 3 else alpha_k_brute(tree, k)
        if alpha + len(cert.matching.paths) != n:
            failures.append(
                f"kke k={k}: alpha_k={alpha} mu_k={len(cert.matching.paths)} n={n}"
            )
    return res.count, tuple(failures)


def _scan_trees(n: int, k_list, cap: int, jobs: int) -> Iterator[tuple[int, tuple[str, ...]]]:
    payloads = ((t.n, t.edges, tuple(k_list), cap) for t in free_trees(n))
    if jobs <= 1:
        for p in payloads:
            yield _check_tree(p)
        return
    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap(_check_tree, payloads, chunksize=16)


def _cmd_verify(args) -> int:
    k_list = _parse_k_list(args.k_list)
    rows = []
    total_trees = 0
    total_failures = 0
    for n in range(1, args.n_max + 1):
        started = time.perf_counter()
        trees = 0
        failures = []
        best = -1
        for count, notes in _scan_trees(n, k_list, args.enumerate_cap, args.jobs):
            trees += 1
            best = max(best, count)
            failures.extend(notes)
        formula = max_mds_formula(n)
        match = best == formula
        print(
            f"n={n} trees={trees} failures={len(failures)} "
            f"max_count={best} formula={formula} match={str(match).lower()}"
        )
        for note in failures:
            print(f"  counterexample at n={n}: {note}")
        print(f"n={n} done in {time.perf_counter() - started:.2f}s", file=sys.stderr)
        rows.append(
            {"n": n, "trees": trees, "max_count": best, "formula": formula,
             "match": match, "failures": len(failures)}
        )
        total_trees += trees
        total_failures += len(failures)
    print(f"total trees={total_trees} failures={total_failures}")
    if args.csv:
        _write_csv(args.csv, rows)
    return EXIT_VIOLATION if total_failures else EXIT_OK


def _write_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["n", "trees", "max_count", "formula", "match", "failures"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _cmd_extremal(args) -> int:
    if args.sweep:
        report = exhaustive_extremal_check(args.n, jobs=args.jobs)
        doc = {
            "n": report.n,
            "formula_value": str(report.formula_value),
            "characterized": report.characterized,
            "predicted_codes": [c.text() for c in report.predicted_codes],
            "observed_max": str(report.observed_max),
            "extremal_codes": [c.text() for c in report.extremal_codes],
            "match": report.match,
            "trees_scanned": report.trees_scanned,
            "note": report.note,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        if args.csv:
            _write_csv(args.csv, [{
                "n": report.n, "trees": report.trees_scanned,
                "max_count": report.observed_max, "formula": report.formula_value,
                "match": report.match, "failures": 0 if report.match else 1,
            }])
        return EXIT_OK if report.match else EXIT_VIOLATION
    family = generate_extremal_family(args.n)
    doc = {
        "n": args.n,
        "formula_value": str(max_mds_formula(args.n)),
        "family_size": len(family),
        "predicted_codes": [canonical_code(t).text() for t in family],
        "family_edge_lists": [serialize_edge_list(normalize_indices(t)) for t in family],
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_gen_trees(args) -> int:
    if args.count_only:
        print(sum(1 for _ in free_trees(args.n)))
        return EXIT_OK
    for i, tree in enumerate(free_trees(args.n)):
        if i:
            print()
        print(f"# tree {i} n={args.n}")
        print(serialize_edge_list(normalize_indices(tree)), end="")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="dissoc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for one forest")
    p.add_argument("file")
    p.add_argument("--k", default="3", help="comma-separated k values (default 3)")
    p.add_argument("--enumerate-cap", type=int, default=ENUMERATION_CAP)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("enumerate", help="stream all maximum dissociation sets")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive checks over all trees up to an order")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-list", default="2,3,4,5")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.add_argument("--enumerate-cap", type=int, default=ENUMERATION_CAP)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("extremal", help="record formula, family, and optional sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_extremal)

    p = sub.add_parser("gen-trees", help="emit every tree of one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_gen_trees)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except TheoremViolation as exc:
        print(f"counterexample: {exc.witness}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
