"""Berge containment: does an r-graph contain a Berge copy of a graph family?

A Berge copy of F is an injective placement of F's vertices on host vertices
together with distinct host edges, one per edge of F, each containing the
images of that edge's endpoints. The search places skeleton vertices one at a
time and keeps a maximum matching between the skeleton edges touched so far
and host edges that could still carry them; a partial placement dies as soon
as that matching stops covering every touched edge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .family import FamilySpec, Path, SkeletonGraph, Star, parse, skeleton_graph
from .hypergraph import Hypergraph, VertexOutOfRange, vertices_of
from .matching import _bits, max_matching

FamilyLike = Union[FamilySpec, str]


@dataclass(frozen=True)
class BergeWitness:
    """``vertex_map[u]`` is the host vertex of skeleton vertex ``u``;
    ``edge_map[i]`` is the host edge index carrying skeleton edge ``i``."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "vertex_map": [[u, v] for u, v in enumerate(self.vertex_map)],
            "edge_map": [[i, j] for i, j in enumerate(self.edge_map)],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "BergeWitness":
        vm = dict(doc["vertex_map"])
        em = dict(doc["edge_map"])
        return cls(tuple(vm[u] for u in range(len(vm))), tuple(em[i] for i in range(len(em))))


def as_family(f: FamilyLike) -> FamilySpec:
    return parse(f) if isinstance(f, str) else f


def check_witness(h: Hypergraph, f: FamilyLike, w: BergeWitness) -> list[str]:
    """Independent validation of a witness; returns the list of violations."""
    sk = skeleton_graph(as_family(f))
    problems = []
    if len(w.vertex_map) != sk.order:
        problems.append(f"vertex_map has {len(w.vertex_map)} entries, skeleton has {sk.order} vertices")
    if len(w.edge_map) != sk.size:
        problems.append(f"edge_map has {len(w.edge_map)} entries, skeleton has {sk.size} edges")
    if problems:
        return problems
    if len(set(w.vertex_map)) != len(w.vertex_map):
        problems.append("vertex_map is not injective")
    if len(set(w.edge_map)) != len(w.edge_map):
        problems.append("edge_map is not injective")
    for v in w.vertex_map:
        if not 0 <= v < h.n:
            problems.append(f"host vertex {v} out of range")
    for i, (a, b) in enumerate(sk.edges):
        j = w.edge_map[i]
        if not 0 <= j < h.e:
            problems.append(f"host edge index {j} out of range")
            continue
        edge = set(vertices_of(h.edges[j]))
        if w.vertex_map[a] not in edge or w.vertex_map[b] not in edge:
            problems.append(f"skeleton edge {a}-{b} not inside host edge {sorted(edge)}")
    return problems


class _Plan:
    """Static search plan: vertex order, constraints and touched-edge layout."""

    def __init__(self, spec: FamilySpec, sk: SkeletonGraph, pin_edge: int | None):
        self.sk = sk
        adj: list[list[tuple[int, int]]] = [[] for _ in range(sk.order)]
        for k, (a, b) in enumerate(sk.edges):
            adj[a].append((b, k))
            adj[b].append((a, k))
        deg = [len(x) for x in adj]
        self.deg = deg

        pin_comp = None
        if pin_edge is not None:
            pin_comp = next(ci for ci, (_, _, e0, e1) in enumerate(sk.components) if e0 <= pin_edge < e1)

        comp_order = list(range(len(sk.components)))
        if pin_comp is not None:
            comp_order.remove(pin_comp)
            comp_order.insert(0, pin_comp)

        order: list[int] = []
        starts = {}
        for ci in comp_order:
            v0, v1, _, _ = sk.components[ci]
            members = set(range(v0, v1))
            placed: list[int] = []
            if ci == pin_comp:
                a, b = sk.edges[pin_edge]
                placed = [a, b]
            while len(placed) < len(members):
                done = set(placed)
                rest = [u for u in sorted(members) if u not in done]
                best = max(rest, key=lambda u: (sum(1 for w, _ in adj[u] if w in done), deg[u], -u))
                placed.append(best)
            starts[ci] = placed[0]
            order.extend(placed)
        self.order = order
        pos = {u: i for i, u in enumerate(order)}

        less: list[tuple[int, int]] = []
        for ci, comp in enumerate(spec.components):
            if ci == pin_comp:
                continue
            v0, v1, _, _ = sk.components[ci]
            if isinstance(comp, Path):
                less.append((v0, v1 - 1))
            elif isinstance(comp, Star):
                less.extend((u, u + 1) for u in range(v0 + 1, v1 - 1))
        groups: dict[object, list[int]] = {}
        for ci, comp in enumerate(spec.components):
            if ci != pin_comp:
                groups.setdefault(comp, []).append(ci)
        for members in groups.values():
            for c1, c2 in zip(members, members[1:]):
                less.append((starts[c1], starts[c2]))

        self.after: list[list[int]] = [[] for _ in order]
        self.before: list[list[int]] = [[] for _ in order]
        for x, y in less:
            if pos[x] < pos[y]:
                self.after[pos[y]].append(x)
            else:
                self.before[pos[x]].append(y)

        self.placed_nbrs: list[list[int]] = []
        self.touched: list[list[tuple[int, int, int]]] = []
        seen_edges: dict[int, int] = {}
        for d, u in enumerate(order):
            self.placed_nbrs.append([w for w, _ in adj[u] if pos[w] < d])
            for w, k in adj[u]:
                seen_edges[k] = w if pos[w] < d else -1
            self.touched.append([])
            # rows are (edge, endpoint a, endpoint b or -1) for every edge touched by depth d
            for k in sorted(seen_edges, key=lambda k: (min(pos[x] for x in sk.edges[k]), k)):
                a, b = sk.edges[k]
                if pos[a] <= d and pos[b] <= d:
                    self.touched[d].append((k, a, b))
                else:
                    self.touched[d].append((k, a if pos[a] <= d else b, -1))
        self.pin_edge = pin_edge
        self.pin_ends = set(sk.edges[pin_edge]) if pin_edge is not None else set()


def _pin_representatives(spec: FamilySpec, sk: SkeletonGraph) -> list[int]:
    reps = []
    seen = set()
    for ci, comp in enumerate(spec.components):
        if comp in seen:
            continue
        seen.add(comp)
        _, _, e0, e1 = sk.components[ci]
        if isinstance(comp, Path):
            reps.extend(range(e0, e0 + (comp.length + 1) // 2))
        elif isinstance(comp, Star):
            reps.append(e0)
        else:
            reps.extend(range(e0, e1))
    return reps


class BergeMatcher:
    """Reusable containment engine for one family (plans are cached)."""

    def __init__(self, f: FamilyLike):
        self.spec = as_family(f)
        self.sk = skeleton_graph(self.spec)
        self._plans: dict[int | None, _Plan] = {}
        self.pin_reps = _pin_representatives(self.spec, self.sk)

    def plan(self, pin_edge: int | None) -> _Plan:
        p = self._plans.get(pin_edge)
        if p is None:
            p = self._plans[pin_edge] = _Plan(self.spec, self.sk, pin_edge)
        return p

    def find(self, n: int, edges: tuple[int, ...], must_use: int | None = None) -> BergeWitness | None:
        if len(edges) < self.sk.size or n < self.sk.order:
            return None
        inc = [0] * n
        nbr = [0] * n
        for j, m in enumerate(edges):
            bit = 1 << j
            for v in _bits(m):
                inc[v] |= bit
                nbr[v] |= m
        if must_use is None:
            return _Search(self.plan(None), n, edges, inc, nbr, None).run()
        for k in self.pin_reps:
            w = _Search(self.plan(k), n, edges, inc, nbr, must_use).run()
            if w is not None:
                return w
        return None

    def contains(self, h: Hypergraph) -> BergeWitness | None:
        return self.find(h.n, h.edges)

    def contains_using(self, h: Hypergraph, must_use: int) -> BergeWitness | None:
        if not 0 <= must_use < h.e:
            raise IndexError(f"edge index {must_use} out of range 0..{h.e - 1}")
        return self.find(h.n, h.edges, must_use)


class _Search:
    def __init__(self, plan: _Plan, n: int, edges, inc, nbr, pin_host: int | None):
        self.p = plan
        self.edges = edges
        self.inc = inc
        self.nbr = nbr
        self.phi = [-1] * plan.sk.order
        deg_ok = [0] * (max(plan.deg, default=0) + 1)
        for v in range(n):
            d = inc[v].bit_count()
            for t in range(min(d, len(deg_ok) - 1) + 1):
                deg_ok[t] |= 1 << v
        self.deg_ok = deg_ok
        self.pin_host = pin_host
        if pin_host is not None:
            self.pin_vertices = edges[pin_host]
            self.not_pin = ~(1 << pin_host)
        self.full = (1 << n) - 1

    def run(self) -> BergeWitness | None:
        found = self._place(0, 0, {})
        if found is None:
            return None
        return BergeWitness(tuple(self.phi), tuple(found[k] for k in range(self.p.sk.size)))

    def _rows(self, d: int) -> tuple[list[int], list[int]]:
        inc, phi = self.inc, self.phi
        keys, rows = [], []
        pin_edge = self.p.pin_edge
        for k, a, b in self.p.touched[d]:
            if b >= 0:
                row = inc[phi[a]] & inc[phi[b]]
            else:
                row = inc[phi[a]]
            if self.pin_host is not None:
                row = (row & (1 << self.pin_host)) if k == pin_edge else (row & self.not_pin)
            keys.append(k)
            rows.append(row)
        return keys, rows

    def _place(self, d: int, used: int, matched: dict[int, int]):
        p = self.p
        if d == len(p.order):
            return matched
        u = p.order[d]
        phi = self.phi
        cand = self.full & ~used & self.deg_ok[p.deg[u]]
        for w in p.placed_nbrs[d]:
            cand &= self.nbr[phi[w]]
        if u in p.pin_ends:
            cand &= self.pin_vertices
        for x in p.after[d]:
            cand &= ~((2 << phi[x]) - 1)
        for y in p.before[d]:
            cand &= (1 << phi[y]) - 1
        for hv in _bits(cand):
            phi[u] = hv
            keys, rows = self._rows(d)
            seed = {i: matched[k] for i, k in enumerate(keys) if k in matched}
            m = max_matching(rows, seed)
            if len(m) == len(rows):
                found = self._place(d + 1, used | (1 << hv), {keys[i]: j for i, j in m.items()})
                if found is not None:
                    return found
        phi[u] = -1
        return None


@lru_cache(maxsize=64)
def _matcher(spec: FamilySpec) -> BergeMatcher:
    return BergeMatcher(spec)


def contains(h: Hypergraph, f: FamilyLike) -> BergeWitness | None:
    """Return a Berge-F witness in ``h`` or ``None`` if ``h`` is Berge-F-free."""
    return _matcher(as_family(f)).contains(h)


def contains_using(h: Hypergraph, f: FamilyLike, must_use: int) -> BergeWitness | None:
    """Like :func:`contains` but the copy must use host edge ``must_use``."""
    return _matcher(as_family(f)).contains_using(h, must_use)


def find_berge_star(h: Hypergraph, center: int, size: int) -> BergeWitness | None:
    """Berge star with ``size`` edges centred at ``center``, via a distinct
    representatives matching between edges at the centre and leaf vertices.

    The witness is laid out like ``skeleton_graph`` of a star: vertex 0 is the
    centre, vertices ``1..size`` are the leaves.
    """
    if not 0 <= center < h.n:
        raise VertexOutOfRange(f"vertex {center} not in 0..{h.n - 1}")
    if size < 1:
        raise ValueError("star size must be >= 1")
    bit = 1 << center
    at_center = [j for j, m in enumerate(h.edges) if m & bit]
    if len(at_center) < size:
        return None
    rows = [h.edges[j] & ~bit for j in at_center]
    m = max_matching(rows)
    if len(m) < size:
        return None
    picks = sorted(m.items())[:size]
    return BergeWitness(
        (center,) + tuple(leaf for _, leaf in picks),
        tuple(at_center[i] for i, _ in picks),
    )


def oracle_contains(h: Hypergraph, f: FamilyLike) -> bool:
    """Brute force: every injective vertex map, then every edge assignment.

    Deliberately shares no pruning with :func:`contains`; meant for tiny
    inputs (a handful of edges and skeleton vertices).
    """
    sk = skeleton_graph(as_family(f))
    edge_sets = [set(vertices_of(m)) for m in h.edges]
    for image in itertools.permutations(range(h.n), sk.order):
        options = [
            [j for j, e in enumerate(edge_sets) if image[a] in e and image[b] in e]
            for a, b in sk.edges
        ]
        if any(not o for o in options):
            continue
        for choice in itertools.product(*options):
            if len(set(choice)) == len(choice):
                return True
    return False
