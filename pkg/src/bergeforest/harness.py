"""Cross-check harness: constructions, star thresholds, bounds and search
checked against each other over parameter grids.

Every suite returns a list of row dicts ``{suite, inputs, expected,
observed, verdict}`` with verdict ``pass``, ``fail`` or ``report`` (a
comparison shown for information; it never fails a run).
"""
from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter

from . import constructions as cons
from .berge import check_witness, contains, find_berge_star
from .bounds import eval_bound, star_degree_threshold
from .family import FamilySpec, Path, Star, matching, parse
from .hypergraph import bits_of, from_masks, is_connected
from .search import SearchOptions, turan_exact

DEFAULT_RNG_SEED = 20240101


class UnknownSuite(KeyError):
    def __str__(self):
        return f"unknown suite {self.args[0]!r}; known: {', '.join(SUITES)}"


class GridError(ValueError):
    pass


def parse_grid(text: str | None) -> dict:
    """Parse ``"n=5..12;l=1..3;k=2,3;forest=P2|S2"`` into lists per key.

    Ranges are inclusive. Values that are not integers stay strings; a
    ``|`` separates string alternatives that may themselves contain commas.
    """
    grid: dict = {}
    if not text:
        return grid
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise GridError(f"grid entry {part!r} is not key=values")
        key, raw = (s.strip() for s in part.split("=", 1))
        grid[key] = _values(raw)
    return grid


def _values(raw: str) -> list:
    if "|" in raw:
        return [_scalar(x) for x in raw.split("|") if x.strip()]
    out = []
    for item in raw.split(","):
        item = item.strip()
        if ".." in item:
            lo, hi = item.split("..", 1)
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise GridError(f"bad range {item!r}") from None
        elif item:
            out.append(_scalar(item))
    return out


def _scalar(s: str):
    s = s.strip()
    try:
        return int(s)
    except ValueError:
        return s


def _row(suite, inputs, expected, observed, verdict, note=None) -> dict:
    row = {"suite": suite, "inputs": inputs, "expected": expected, "observed": observed, "verdict": verdict}
    if note:
        row["note"] = note
    return row


def _product(grid: dict, keys: list[str]):
    for combo in itertools.product(*(grid[k] for k in keys)):
        yield dict(zip(keys, combo))


# --- constructions ---------------------------------------------------------

CONSTRUCTION_GRIDS = {
    "hstar": {"n": list(range(5, 13)), "l": [1, 2, 3], "k": [2, 3], "r": [2, 3]},
    "hhat": {"n": list(range(6, 13)), "l1": [2, 3], "l2": [2, 3], "k": [2, 3], "r": [4, 5, 6]},
    "htilde": {"n": list(range(5, 10)), "lengths": ["1:1", "1:3", "3:3"], "r": [2, 3]},
    "clique-blocks": {"n": list(range(4, 11)), "l": [2, 3, 4, 5], "r": [2, 3]},
    "partition-regular": {"n": list(range(4, 10)), "r": [2, 3], "d": [1, 2, 3], "method": ["greedy"]},
}


def _construction_rows(grid: dict) -> list[dict]:
    families = grid.get("family", list(CONSTRUCTION_GRIDS))
    rows = []
    for fam in families:
        if fam not in CONSTRUCTION_GRIDS:
            raise GridError(f"unknown construction family {fam!r}")
        local = dict(CONSTRUCTION_GRIDS[fam])
        local.update({k: v for k, v in grid.items() if k in local})
        for params in _product(local, list(local)):
            call = dict(params)
            if fam == "htilde":
                call["lengths"] = [int(x) for x in str(params["lengths"]).split(":")]
            try:
                rep = cons.build(fam, call)
            except cons.ConstructionError as exc:
                if fam == "partition-regular" and isinstance(exc, cons.CollidingShifts):
                    rows.append(_row("constructions", {"family": fam, **params}, "constructible",
                                     str(exc), "report"))
                continue
            h = rep.hypergraph
            free = contains(h, rep.freeness_target) is None
            observed = {"edges": h.e, "free": free}
            expected = {"edges": rep.predicted_count, "free": True}
            ok = h.e == rep.predicted_count and free
            if rep.connected_claim is not None:
                expected["connected"] = rep.connected_claim
                observed["connected"] = is_connected(h)
                ok = ok and observed["connected"] == rep.connected_claim
            inputs = {"family": fam, **params, "target": str(rep.freeness_target)}
            rows.append(_row("constructions", inputs, expected, observed, "pass" if ok else "fail"))
    return rows


# --- star degree thresholds ------------------------------------------------

def _threshold_rows(grid: dict, rng_seed: int) -> list[dict]:
    count = _one(grid, "count", 200)
    n_max = _one(grid, "n_max", 8)
    r = _one(grid, "r", 3)
    sizes = grid.get("l", [2, 3, 4])
    rng = random.Random(rng_seed)
    rows = []
    for i in range(count):
        n = rng.randint(max(r, 2), n_max)
        pool = [bits_of(c) for c in itertools.combinations(range(n), r)]
        density = rng.random()
        masks = [m for m in pool if rng.random() < density]
        h = from_masks(n, r, masks)
        violations = []
        checked = 0
        for size in sizes:
            t = star_degree_threshold(size, r)
            for v in range(n):
                if h.degree(v) <= t:
                    continue
                checked += 1
                w = find_berge_star(h, v, size)
                if w is None:
                    violations.append(f"deg({v})={h.degree(v)} > {t} but no Berge-S{size}")
                    continue
                bad = check_witness(h, FamilySpec.of(Star(size)), w)
                if bad or w.vertex_map[0] != v:
                    violations.append(f"S{size} at {v}: invalid witness {bad}")
        inputs = {"index": i, "n": n, "r": r, "edges": h.e, "l": list(sizes), "vertices_checked": checked}
        rows.append(_row("star-threshold", inputs, 0, len(violations), "fail" if violations else "pass",
                         "; ".join(violations) or None))
    return rows


def _one(grid: dict, key: str, default):
    vals = grid.get(key)
    if not vals:
        return default
    if len(vals) != 1:
        raise GridError(f"{key} takes a single value")
    return vals[0]


# --- bounds versus search --------------------------------------------------

def _lower_constructions(n: int, r: int, spec: FamilySpec) -> tuple[int, str]:
    """Best edge count among library constructions that are verified free."""
    best, name = 0, "empty"
    trials = []
    for l in range(1, n + 1):
        trials.append(("clique-blocks", {"n": n, "l": l, "r": r}))
    for d in (1, 2, 3):
        trials.append(("partition-regular", {"n": n, "r": r, "d": d, "method": "greedy"}))
    for l, k in itertools.product((1, 2, 3), (2, 3)):
        trials.append(("hstar", {"n": n, "l": l, "k": k, "r": r}))
    for lengths in ([1, 1], [1, 3], [3, 3]):
        trials.append(("htilde", {"n": n, "lengths": lengths, "r": r}))
    for fam, params in trials:
        try:
            rep = cons.build(fam, params)
        except cons.ConstructionError:
            continue
        h = rep.hypergraph
        if h.e > best and contains(h, spec) is None:
            best = h.e
            name = fam + "(" + ",".join(f"{k}={v}" for k, v in params.items() if k != "method") + ")"
    return best, name


def _shape(spec: FamilySpec):
    comps = spec.components
    if all(c == Path(1) for c in comps):
        return ("matching", len(comps))
    if len(comps) == 1:
        return (type(comps[0]).__name__.lower(), comps[0].size)
    return ("other", None)


def _bound_queries(n: int, r: int, spec: FamilySpec) -> list[tuple[str, dict]]:
    kind, size = _shape(spec)
    out: list[tuple[str, dict]] = []
    if kind == "path":
        out += [("gkl-path-i", {"n": n, "l": size, "r": r}), ("gkl-path-ii", {"n": n, "l": size, "r": r})]
        if r == 2:
            out.append(("erdos-sos", {"n": n, "l": size, "tree": "path"}))
    if kind == "star" or (kind == "matching" and size == 1):
        out.append(("star-free", {"n": n, "l": spec.size, "r": r}))
    if kind == "matching":
        out.append(("berge-matching", {"n": n, "k": size, "r": r}))
    comps = spec.components
    stars = [c for c in comps if isinstance(c, Star) or c == Path(1)]
    if len(comps) >= 2 and len(stars) == len(comps) - 1:
        head = comps[0]
        l = head.size
        if all(c.size == l for c in stars) and (isinstance(head, Path) or head == Path(1)):
            out.append(("tree-stars", {"n": n, "l": l, "k": len(comps), "r": r, "tree": "path"}))
    if len(comps) >= 2 and isinstance(comps[0], Star) and all(c == Path(1) for c in comps[1:]):
        out.append(("star-matching", {"n": n, "l": comps[0].size, "k": len(comps), "r": r}))
    return out


BOUNDS_GRID = {
    "n": [4, 5, 6, 7],
    "r": [2, 3],
    "forest": ["P1", "P2", "P3", "S2", "S3", "M2", "P2+S2", "M1+S2"],
}


def _bounds_rows(grid: dict, time_limit: float) -> list[dict]:
    local = dict(BOUNDS_GRID)
    local.update({k: v for k, v in grid.items() if k in local})
    rows = []
    for n, r, text in itertools.product(local["n"], local["r"], local["forest"]):
        if n < r:
            continue
        spec = parse(str(text))
        inputs = {"n": n, "r": r, "forest": str(spec)}
        out = turan_exact(n, r, spec, SearchOptions(time_limit=time_limit))
        if out.status != "exact":
            rows.append(_row("bounds-vs-search", inputs, "exact value", out.status, "report",
                             f"search did not finish within {time_limit}s"))
            continue
        lower, lower_name = _lower_constructions(n, r, spec)
        uppers = {"C(n,r)": math.comb(n, r)}
        equalities = {}
        for tid, params in _bound_queries(n, r, spec):
            res = eval_bound(tid, params)
            if not res.applicable:
                continue
            if res.all_n and res.kind in ("upper", "conditional_exact"):
                uppers[tid] = math.floor(res.value)
            if res.kind == "conditional_exact":
                equalities[tid] = {"value": str(res.value), "equal": res.value == out.value,
                                   "hypotheses": list(res.hypotheses)}
        upper_name = min(uppers, key=lambda k: uppers[k])
        ok = lower <= out.value <= uppers[upper_name] and contains(out.witness, spec) is None
        expected = {"lower": lower, "lower_from": lower_name, "upper": uppers[upper_name],
                    "upper_from": upper_name}
        observed = {"exact": out.value}
        if equalities:
            observed["equalities"] = equalities
        rows.append(_row("bounds-vs-search", inputs, expected, observed, "pass" if ok else "fail"))
    return rows


# --- F + M_(k-1) spot checks -----------------------------------------------

PLUS_MATCHING_GRID = {"n": [5, 6, 7], "r": [3], "forest": ["S2", "S3", "P2"], "k": [2]}


def _plus_matching_rows(grid: dict, time_limit: float) -> list[dict]:
    local = dict(PLUS_MATCHING_GRID)
    local.update({k: v for k, v in grid.items() if k in local})
    rows = []
    for n, r, text, k in itertools.product(local["n"], local["r"], local["forest"], local["k"]):
        if n < r:
            continue
        base = parse(str(text))
        bigger = base + matching(k - 1) if k >= 2 else base
        opts = SearchOptions(time_limit=time_limit)
        a = turan_exact(n, r, base, opts)
        b = turan_exact(n, r, bigger, opts)
        inputs = {"n": n, "r": r, "forest": str(base), "k": k, "extended": str(bigger)}
        expected = {"ex(F)": a.value, "status": a.status}
        observed = {"ex(F+M)": b.value, "status": b.status, "equal": a.value == b.value}
        rows.append(_row("forest-plus-matching", inputs, expected, observed, "report"))
    return rows


SUITES = ("constructions", "star-threshold", "bounds-vs-search", "forest-plus-matching")
REPORT_ONLY = frozenset({"forest-plus-matching"})


def verify_suite(suite_id: str, grid: dict | str | None = None, rng_seed: int = DEFAULT_RNG_SEED,
                 time_limit: float = 60.0) -> list[dict]:
    if suite_id not in SUITES:
        raise UnknownSuite(suite_id)
    if isinstance(grid, str) or grid is None:
        grid = parse_grid(grid)
    if suite_id == "constructions":
        return _construction_rows(grid)
    if suite_id == "star-threshold":
        return _threshold_rows(grid, rng_seed)
    if suite_id == "bounds-vs-search":
        return _bounds_rows(grid, time_limit)
    return _plus_matching_rows(grid, time_limit)


def suite_passed(rows: list[dict]) -> bool:
    return all(r["verdict"] != "fail" for r in rows)


def to_json_lines(rows: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def summary_table(rows: list[dict]) -> str:
    by_suite: dict[str, Counter] = {}
    for r in rows:
        by_suite.setdefault(r["suite"], Counter())[r["verdict"]] += 1
    lines = [f"{'suite':<18} {'rows':>5} {'pass':>5} {'fail':>5} {'report':>6}"]
    for name, c in by_suite.items():
        lines.append(f"{name:<18} {sum(c.values()):>5} {c['pass']:>5} {c['fail']:>5} {c['report']:>6}")
    if not rows:
        lines.append("(no rows)")
    return "\n".join(lines)
