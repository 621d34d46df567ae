"""Command-line interface.

Exit codes: 0 success, 1 a verify suite has failing rows, 2 usage or parse
error, 3 runtime error (I/O, malformed input file, invariant violation).
Standard output carries only deterministic documents; timings and search
statistics go to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds, constructions, harness, search
from .berge import contains
from .family import FamilySpecError, FamilySyntaxError, parse
from .hypergraph import Hypergraph, HypergraphError

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def parse_params(text: str) -> dict:
    """``"n=8,l=4,r=3"`` -> dict. Integers are converted; ``lengths=3:3``
    stays a string (bounds accepts it, constructions get a list)."""
    out = {}
    if not text:
        return out
    for i, item in enumerate(text.split(",")):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError(f"--params entry {i + 1} ({item!r}) is not key=value", EXIT_USAGE)
        key, value = (s.strip() for s in item.split("=", 1))
        try:
            out[key] = int(value)
        except ValueError:
            out[key] = value
    return out


def _forest(text: str):
    try:
        return parse(text)
    except FamilySyntaxError as exc:
        raise CliError(f"{exc}\n{exc.caret()}", EXIT_USAGE) from None
    except FamilySpecError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def load_hypergraph(path: str) -> Hypergraph:
    """Read a hypergraph file; construction reports are accepted too."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_RUNTIME) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}", EXIT_RUNTIME) from None
    if isinstance(doc, dict) and isinstance(doc.get("hypergraph"), dict):
        doc = doc["hypergraph"]
    try:
        return Hypergraph.from_dict(doc)
    except HypergraphError as exc:
        raise CliError(f"{path}: {exc}", EXIT_RUNTIME) from None


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_RUNTIME) from None


def cmd_construct(args) -> int:
    params = parse_params(args.params)
    if "lengths" in params:
        params["lengths"] = [int(x) for x in str(params["lengths"]).replace("/", ":").split(":") if x]
    try:
        rep = constructions.build(args.family, params)
    except constructions.BadParameters as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    except constructions.ConstructionError as exc:
        raise CliError(str(exc), EXIT_RUNTIME) from None
    if args.out:
        _write(args.out, rep.hypergraph.to_json() + "\n")
    _emit(rep.to_dict())
    return EXIT_OK


def cmd_check(args) -> int:
    spec = _forest(args.forest)
    h = load_hypergraph(args.infile)
    w = contains(h, spec)
    doc = {"contains": w is not None}
    if args.witness and w is not None:
        doc["witness"] = w.to_dict()
    _emit(doc)
    return EXIT_OK


def cmd_bound(args) -> int:
    params = parse_params(args.params)
    try:
        res = bounds.eval_bound(args.theorem, params, check_regime=not args.no_regime_check)
    except bounds.BoundError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    _emit(res.to_dict())
    return EXIT_OK


def cmd_turan(args) -> int:
    spec = _forest(args.forest)
    seed = load_hypergraph(args.seed_construction) if args.seed_construction else None
    try:
        opts = search.SearchOptions(workers=args.workers, time_limit=args.time_limit, seed=seed,
                                    symmetry=not args.no_symmetry, iso_pruning=args.iso_pruning,
                                    rng_seed=args.rng_seed, iterations=args.iterations)
        if args.heuristic:
            out = search.local_lower_bound(args.n, args.r, spec, opts)
        elif args.connected:
            out = search.turan_connected(args.n, args.r, spec, opts)
        else:
            out = search.turan_exact(args.n, args.r, spec, opts)
    except search.BadParameters as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    if contains(out.witness, spec) is not None:
        raise CliError("internal error: witness contains the forbidden family", EXIT_RUNTIME)
    _emit(out.to_dict(include_stats=False))
    if args.stats:
        print(json.dumps(out.stats.to_dict(), sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        rows = harness.verify_suite(args.suite, args.grid, rng_seed=args.rng_seed, time_limit=args.time_limit)
    except harness.UnknownSuite as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    except harness.GridError as exc:
        raise CliError(f"--grid: {exc}", EXIT_USAGE) from None
    lines = harness.to_json_lines(rows)
    table = harness.summary_table(rows)
    if args.report:
        _write(args.report, lines)
        sys.stdout.write(table + "\n")
    else:
        sys.stdout.write(lines)
        print(table, file=sys.stderr)
    return EXIT_OK if harness.suite_passed(rows) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bergeforest", description="Berge hypergraph containment, constructions, "
                                "Turán bounds and exact small-case search.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    c = sub.add_parser("construct", help="build an extremal construction")
    c.add_argument("--family", required=True, choices=sorted(constructions.GENERATORS))
    c.add_argument("--params", default="", help="k=v,... (lengths as 3:3)")
    c.add_argument("--out", help="also write the hypergraph to FILE")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", help="test a hypergraph file for a Berge copy of a forest")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--forest", required=True)
    c.add_argument("--witness", action="store_true", help="include the embedding when one exists")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("bound", help="evaluate a Turán bound formula")
    c.add_argument("--theorem", required=True, help="one of: " + ", ".join(bounds.theorem_ids()))
    c.add_argument("--params", default="")
    c.add_argument("--no-regime-check", action="store_true", help="evaluate outside the stated regime")
    c.set_defaults(func=cmd_bound)

    c = sub.add_parser("turan", help="exact Turán number by exhaustive search")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--forest", required=True)
    c.add_argument("--connected", action="store_true")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    c.add_argument("--seed-construction", metavar="FILE")
    c.add_argument("--heuristic", action="store_true", help="randomized lower bound instead of exact search")
    c.add_argument("--iterations", type=int, default=200)
    c.add_argument("--rng-seed", type=int, default=harness.DEFAULT_RNG_SEED)
    c.add_argument("--no-symmetry", action="store_true")
    c.add_argument("--iso-pruning", action="store_true")
    c.add_argument("--stats", action="store_true", help="print search statistics to stderr")
    c.set_defaults(func=cmd_turan)

    c = sub.add_parser("verify", help="run a cross-check suite")
    c.add_argument("--suite", required=True, help="one of: " + ", ".join(harness.SUITES))
    c.add_argument("--grid", help='e.g. "n=5..8;r=3;forest=P2|S2"')
    c.add_argument("--report", help="write JSON lines to FILE; summary goes to stdout")
    c.add_argument("--rng-seed", type=int, default=harness.DEFAULT_RNG_SEED)
    c.add_argument("--time-limit", type=float, default=60.0, help="per search, seconds")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "workers", 1) < 1:
        print("bergeforest: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"bergeforest: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
