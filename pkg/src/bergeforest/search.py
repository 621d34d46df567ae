"""Exact Turán numbers at desk scale by exhaustive canonical-order search.

Nodes of the search tree are Berge-F-free edge sets, grown only by edges
later (in canonical order) than the last one added. Because freeness survives
edge deletion, every node carries the list of later edges that keep it free;
a child only re-tests edges from its parent's list, and only for copies
through the newly added edge.
"""
from __future__ import annotations

import itertools
import math
import multiprocessing as mp
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .berge import BergeMatcher, FamilyLike, as_family
from .hypergraph import Hypergraph, bits_of, edge_key, from_masks, is_connected, vertices_of

STATUSES = ("exact", "lower_bound_only", "timeout")


class SearchError(ValueError):
    pass


class BadParameters(SearchError):
    pass


@dataclass
class SearchOptions:
    workers: int = 1
    time_limit: float | None = None
    symmetry: bool = True
    iso_pruning: bool = False
    seed: Hypergraph | None = None
    split_depth: int = 3
    rng_seed: int = 0
    iterations: int = 200

    def __post_init__(self):
        if self.workers < 1:
            raise BadParameters("worker count must be >= 1")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: dict = field(default_factory=lambda: {"bound": 0, "berge": 0, "iso_hits": 0})
    wall_time: float = 0.0
    tasks: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        for k, v in other.prunes.items():
            self.prunes[k] = self.prunes.get(k, 0) + v

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "prunes": dict(self.prunes), "wall_time": round(self.wall_time, 6),
                "tasks": self.tasks}


@dataclass
class SearchOutcome:
    value: int
    status: str
    witness: Hypergraph
    stats: SearchStats
    connected: bool = False
    infeasible: bool = False
    history: list[int] | None = None

    def to_dict(self, include_stats: bool = True) -> dict:
        doc = {
            "value": self.value,
            "status": self.status,
            "connected": self.connected,
            "infeasible": self.infeasible,
            "witness": self.witness.to_dict(),
        }
        if self.history is not None:
            doc["history"] = list(self.history)
        if include_stats:
            doc["stats"] = self.stats.to_dict()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "SearchOutcome":
        st = doc.get("stats") or {}
        stats = SearchStats(st.get("nodes", 0), dict(st.get("prunes", {})), st.get("wall_time", 0.0),
                            st.get("tasks", 0))
        return cls(doc["value"], doc["status"], Hypergraph.from_dict(doc["witness"]), stats,
                   doc.get("connected", False), doc.get("infeasible", False), doc.get("history"))


def canonical_form(n: int, masks) -> tuple | None:
    """Exact canonical form via degree refinement plus permutations inside
    colour classes; ``None`` when the classes are too large to enumerate."""
    edges = [vertices_of(m) for m in masks]
    incident = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            incident[v].append(e)
    colour = [len(incident[v]) for v in range(n)]
    while True:
        sigs = [
            (colour[v], tuple(sorted(tuple(sorted(colour[w] for w in e if w != v)) for e in incident[v])))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refined = [ranks[s] for s in sigs]
        if len(set(refined)) == len(set(colour)):
            colour = refined
            break
        colour = refined
    classes = [[v for v in range(n) if colour[v] == c] for c in sorted(set(colour))]
    if math.prod(math.factorial(len(c)) for c in classes) > 5040:
        return None
    best = None
    for orders in itertools.product(*(itertools.permutations(c) for c in classes)):
        label = {}
        for v in itertools.chain.from_iterable(orders):
            label[v] = len(label)
        form = tuple(sorted(tuple(sorted(label[v] for v in e)) for e in edges))
        if best is None or form < best:
            best = form
    return (tuple(sorted(colour)), best)


class _Timeout(Exception):
    pass


class _Found(Exception):
    def __init__(self, edges):
        self.edges = edges


class _DFS:
    def __init__(self, n, r, spec, connected, symmetry, iso, deadline=None, shared=None):
        self.n, self.r = n, r
        self.matcher = BergeMatcher(spec)
        self.connected = connected
        self.symmetry = symmetry
        self.iso = {} if iso else None
        self.deadline = deadline
        self.shared = shared
        self.cands = [bits_of(c) for c in itertools.combinations(range(n), r)]
        first = self.cands[0] if self.cands else 0
        self.second_reps = set()
        for i in range(r):
            if 2 * r - i <= n:
                self.second_reps.add(bits_of(list(range(i)) + list(range(r, 2 * r - i))))
        self.first = first
        self.best = -1
        self.best_edges: tuple[int, ...] = ()
        self.stats = SearchStats()
        self.stop_at: int | None = None

    def free_with(self, edges: tuple[int, ...]) -> bool:
        """``edges[-1]`` is new; the rest is known to be free."""
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout()
        if self.iso is not None:
            key = canonical_form(self.n, edges)
            if key is not None:
                hit = self.iso.get(key)
                if hit is not None:
                    self.stats.prunes["iso_hits"] += 1
                    return hit
                verdict = self.matcher.find(self.n, edges, len(edges) - 1) is None
                self.iso[key] = verdict
                return verdict
        return self.matcher.find(self.n, edges, len(edges) - 1) is None

    def current_best(self) -> int:
        if self.shared is not None and self.stats.nodes % 32 == 0:
            shared = self.shared.value
            if shared > self.best:
                self.best = shared
        return self.best

    def record(self, edges):
        c = len(edges)
        if self.stop_at is not None:
            if c == self.stop_at and (not self.connected or is_connected(Hypergraph(self.n, self.r, edges))):
                raise _Found(edges)
            return
        if c > self.best and (not self.connected or is_connected(Hypergraph(self.n, self.r, edges))):
            self.best = c
            self.best_edges = edges
            if self.shared is not None:
                with self.shared.get_lock():
                    if self.shared.value < c:
                        self.shared.value = c

    def root(self):
        """(edges, candidate list) of the empty hypergraph."""
        return (), [m for m in self.cands if self.free_with((m,))]

    def allowed(self, depth: int, m: int) -> bool:
        if not self.symmetry:
            return True
        if depth == 0:
            return m == self.first
        if depth == 1:
            return m in self.second_reps
        return True

    def children(self, edges, cands):
        """Yield (child edges, child candidates); applies bound and Berge pruning."""
        depth = len(edges)
        for idx, m in enumerate(cands):
            if not self.allowed(depth, m):
                continue
            rest = cands[idx + 1:]
            if depth + 1 + len(rest) <= self.current_best():
                self.stats.prunes["bound"] += 1
                break
            child = edges + (m,)
            kids = [x for x in rest if self.free_with(child + (x,))]
            self.stats.prunes["berge"] += len(rest) - len(kids)
            yield child, kids

    def dfs(self, edges, cands):
        self.stats.nodes += 1
        self.record(edges)
        for child, kids in self.children(edges, cands):
            self.dfs(child, kids)

    def frontier(self, edges, cands, depth: int, out: list):
        self.stats.nodes += 1
        self.record(edges)
        if len(edges) == depth:
            self.stats.nodes -= 1
            out.append((edges, cands))
            return
        for child, kids in self.children(edges, cands):
            self.frontier(child, kids, depth, out)


_WORKER: dict = {}


def _init_worker(n, r, spec, connected, symmetry, iso, deadline, shared):
    _WORKER["args"] = (n, r, spec, connected, symmetry, iso, deadline, shared)


def _run_task(task):
    n, r, spec, connected, symmetry, iso, deadline, shared = _WORKER["args"]
    dfs = _DFS(n, r, spec, connected, symmetry, iso, deadline, shared)
    dfs.best = shared.value
    edges, cands = task
    timed_out = False
    try:
        dfs.dfs(edges, cands)
    except _Timeout:
        timed_out = True
    own = dfs.best_edges if len(dfs.best_edges) == dfs.best else None
    return own, dfs.stats, timed_out


def _validate(n: int, r: int):
    if r < 2 or n < r:
        raise BadParameters(f"need r >= 2 and n >= r (got n={n}, r={r})")


def _seed_best(dfs: _DFS, seed: Hypergraph | None, connected: bool, spec) -> None:
    if seed is None:
        return
    if seed.n != dfs.n or seed.r != dfs.r:
        raise BadParameters(f"seed has n={seed.n}, r={seed.r}; search has n={dfs.n}, r={dfs.r}")
    if dfs.matcher.find(seed.n, seed.edges) is not None:
        raise BadParameters(f"seed hypergraph contains a Berge-{spec}")
    if connected and not is_connected(seed):
        raise BadParameters("seed hypergraph is not connected")
    if seed.e > dfs.best:
        dfs.best = seed.e
        dfs.best_edges = seed.edges


def _search(n: int, r: int, f: FamilyLike, opts: SearchOptions | None, connected: bool) -> SearchOutcome:
    _validate(n, r)
    opts = opts or SearchOptions()
    spec = as_family(f)
    start = time.monotonic()
    deadline = start + opts.time_limit if opts.time_limit is not None else None
    main = _DFS(n, r, spec, connected, opts.symmetry, opts.iso_pruning, deadline)
    if not connected or n <= 1:
        main.record(())
    _seed_best(main, opts.seed, connected, spec)
    timed_out = False
    try:
        edges, cands = main.root()
        if opts.workers == 1:
            main.dfs(edges, cands)
        else:
            tasks: list = []
            main.frontier(edges, cands, max(opts.split_depth, 2 if opts.symmetry else 0), tasks)
            main.stats.tasks = len(tasks)
            timed_out = _run_parallel(main, tasks, n, r, spec, connected, opts, deadline)
    except _Timeout:
        timed_out = True

    value = max(main.best, 0)
    witness_edges = main.best_edges if main.best >= 0 else ()
    if opts.workers > 1 and not timed_out and main.best > 0:
        witness_edges = _first_witness(n, r, spec, connected, opts.symmetry, main.best)
    infeasible = connected and main.best < 0
    if timed_out:
        status = "lower_bound_only" if main.best > 0 else "timeout"
    else:
        status = "exact"
    main.stats.wall_time = time.monotonic() - start
    witness = from_masks(n, r, witness_edges)
    return SearchOutcome(value, status, witness, main.stats, connected, infeasible)


def _run_parallel(main: _DFS, tasks, n, r, spec, connected, opts, deadline) -> bool:
    ctx = mp.get_context("fork")
    shared = ctx.Value("i", main.best)
    timed_out = False
    with ProcessPoolExecutor(
        max_workers=opts.workers,
        mp_context=ctx,
        initializer=_init_worker,
        initargs=(n, r, spec, connected, opts.symmetry, opts.iso_pruning, deadline, shared),
    ) as pool:
        for own, stats, hit_deadline in pool.map(_run_task, tasks, chunksize=1):
            main.stats.merge(stats)
            timed_out |= hit_deadline
            if own is not None and len(own) > main.best:
                main.best = len(own)
                main.best_edges = own
    return timed_out


def _first_witness(n, r, spec, connected, symmetry, value) -> tuple[int, ...]:
    """First hypergraph of ``value`` edges in canonical search order."""
    dfs = _DFS(n, r, spec, connected, symmetry, False)
    dfs.best = value - 1
    dfs.stop_at = value
    try:
        edges, cands = dfs.root()
        dfs.dfs(edges, cands)
    except _Found as hit:
        return hit.edges
    raise SearchError(f"no free hypergraph with {value} edges on re-derivation")


def turan_exact(n: int, r: int, f: FamilyLike, opts: SearchOptions | None = None) -> SearchOutcome:
    """ex_r(n, Berge-F) by exhaustive search (exact unless the time limit hits)."""
    return _search(n, r, f, opts, connected=False)


def turan_connected(n: int, r: int, f: FamilyLike, opts: SearchOptions | None = None) -> SearchOutcome:
    """Connected variant; ``infeasible`` is set when no connected free r-graph exists."""
    return _search(n, r, f, opts, connected=True)


def local_lower_bound(n: int, r: int, f: FamilyLike, opts: SearchOptions | None = None) -> SearchOutcome:
    """Randomized greedy fill plus remove-and-refill moves; never exact.

    ``history[t]`` is the best value after iteration ``t`` and never decreases.
    """
    _validate(n, r)
    opts = opts or SearchOptions()
    spec = as_family(f)
    matcher = BergeMatcher(spec)
    rng = random.Random(opts.rng_seed)
    start = time.monotonic()
    deadline = start + opts.time_limit if opts.time_limit is not None else None
    all_edges = [bits_of(c) for c in itertools.combinations(range(n), r)]
    stats = SearchStats()

    current: set[int] = set()
    if opts.seed is not None:
        if opts.seed.n != n or opts.seed.r != r:
            raise BadParameters("seed dimensions do not match")
        if matcher.find(n, opts.seed.edges) is not None:
            raise BadParameters(f"seed hypergraph contains a Berge-{spec}")
        current = set(opts.seed.edges)

    def fill(base: set[int]) -> set[int]:
        pool = [m for m in all_edges if m not in base]
        rng.shuffle(pool)
        edges = set(base)
        for m in pool:
            trial = tuple(sorted(edges | {m}, key=edge_key))
            stats.nodes += 1
            if matcher.find(n, trial, trial.index(m)) is None:
                edges.add(m)
            else:
                stats.prunes["berge"] += 1
        return edges

    current = fill(current)
    best = set(current)
    history = [len(best)]
    for _ in range(opts.iterations):
        if deadline is not None and time.monotonic() > deadline:
            break
        if not current:
            history.append(len(best))
            continue
        drop = set(rng.sample(sorted(current), min(len(current), rng.choice((1, 2)))))
        trial = fill(current - drop)
        if len(trial) >= len(current):
            current = trial
        if len(current) > len(best):
            best = set(current)
        history.append(len(best))
    stats.wall_time = time.monotonic() - start
    return SearchOutcome(len(best), "lower_bound_only", from_masks(n, r, best), stats, history=history)
