"""Uniform hypergraphs on vertices ``0..n-1`` with edges stored as bit rows.

Edges are Python ints used as bitsets. The canonical edge order is
lexicographic on the ascending vertex tuple of each edge, which is also the
order of the ``edges`` array in the JSON interchange format.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_VERTICES = 64


class HypergraphError(ValueError):
    pass


class DuplicateEdge(HypergraphError):
    pass


class WrongEdgeSize(HypergraphError):
    pass


class VertexOutOfRange(HypergraphError):
    pass


class BadIntersectionSize(HypergraphError):
    pass


class TargetTooLarge(HypergraphError):
    pass


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def edge_key(mask: int) -> tuple[int, ...]:
    return vertices_of(mask)


@dataclass(frozen=True)
class Hypergraph:
    """An immutable r-uniform hypergraph.

    ``edges`` holds bit rows in canonical order. Build instances with
    :func:`new` (validating) rather than the constructor.
    """

    n: int
    r: int
    edges: tuple[int, ...]

    @property
    def e(self) -> int:
        return len(self.edges)

    def edge_sets(self) -> list[tuple[int, ...]]:
        return [vertices_of(m) for m in self.edges]

    def degree(self, v: int) -> int:
        _check_vertex(self, v)
        bit = 1 << v
        return sum(1 for m in self.edges if m & bit)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for m in self.edges:
            for v in vertices_of(m):
                deg[v] += 1
        return deg

    def index_of(self, vertices: Iterable[int]) -> int:
        mask = bits_of(vertices)
        try:
            return self.edges.index(mask)
        except ValueError:
            raise KeyError(tuple(sorted(vertices))) from None

    def add_edge(self, vertices: Iterable[int]) -> "Hypergraph":
        return new(self.n, self.r, self.edge_sets() + [tuple(vertices)])

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(t) for t in self.edge_sets()]}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "Hypergraph":
        try:
            n, r, edges = doc["n"], doc["r"], doc["edges"]
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"hypergraph document missing field: {exc}") from None
        if not isinstance(n, int) or not isinstance(r, int) or not isinstance(edges, list):
            raise HypergraphError("fields n, r must be integers and edges an array")
        for i, row in enumerate(edges):
            if not isinstance(row, list) or not all(isinstance(v, int) for v in row):
                raise HypergraphError(f"edges[{i}]: {row!r} is not an integer array")
            if any(a >= b for a, b in zip(row, row[1:])):
                raise HypergraphError(f"edges[{i}]: {row!r} is not strictly increasing")
        for i, (a, b) in enumerate(zip(edges, edges[1:])):
            if a >= b:
                raise HypergraphError(f"edges[{i + 1}]: {b!r} does not follow {a!r} in lexicographic order")
        return new(n, r, edges)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        return cls.from_dict(json.loads(text))


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":"))


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 0 <= v < h.n:
        raise VertexOutOfRange(f"vertex {v} not in 0..{h.n - 1}")


def new(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and canonicalize an edge list into a :class:`Hypergraph`."""
    if n < 0 or n > MAX_VERTICES:
        raise HypergraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    if r < 1:
        raise HypergraphError(f"uniformity must be >= 1, got {r}")
    masks = []
    seen = set()
    for edge in edges:
        verts = list(edge)
        for v in verts:
            if not 0 <= v < n:
                raise VertexOutOfRange(f"vertex {v} of edge {sorted(verts)} not in 0..{n - 1}")
        mask = bits_of(verts)
        if len(verts) != r or mask.bit_count() != r:
            raise WrongEdgeSize(f"edge {sorted(set(verts))} has {len(set(verts))} vertices, expected {r}")
        if mask in seen:
            raise DuplicateEdge(f"edge {sorted(verts)} appears twice")
        seen.add(mask)
        masks.append(mask)
    masks.sort(key=edge_key)
    return Hypergraph(n, r, tuple(masks))


def complete(n: int, r: int, vertices: Sequence[int] | None = None) -> Hypergraph:
    pool = range(n) if vertices is None else vertices
    return new(n, r, itertools.combinations(pool, r))


def from_masks(n: int, r: int, masks: Iterable[int]) -> Hypergraph:
    """Trusted constructor for internally generated rows of size ``r``."""
    return Hypergraph(n, r, tuple(sorted(masks, key=edge_key)))


def link(h: Hypergraph, v: int) -> Hypergraph:
    _check_vertex(h, v)
    if h.r < 2:
        raise HypergraphError("link of a 1-uniform hypergraph has empty edges")
    bit = 1 << v
    return from_masks(h.n, h.r - 1, (m ^ bit for m in h.edges if m & bit))


def induced(h: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    keep = bits_of(vertices)
    return Hypergraph(h.n, h.r, tuple(m for m in h.edges if m & keep == m))


def is_connected(h: Hypergraph) -> bool:
    """True iff every vertex lies in an edge and the incidence graph is connected.

    Hypergraphs on at most one vertex count as connected.
    """
    if h.n <= 1:
        return True
    full = (1 << h.n) - 1
    covered = 0
    for m in h.edges:
        covered |= m
    if covered != full:
        return False
    reached = h.edges[0]
    pending = list(h.edges[1:])
    grew = True
    while grew:
        grew = False
        rest = []
        for m in pending:
            if m & reached:
                reached |= m
                grew = True
            else:
                rest.append(m)
        pending = rest
    return reached == full


@dataclass(frozen=True)
class TraceResult:
    deduplicated: Hypergraph
    multiplicities: tuple[int, ...]


def trace(h: Hypergraph, anchor: Iterable[int], j: int) -> TraceResult:
    """Remainders ``e - A`` of the edges meeting ``A`` in exactly ``j`` vertices."""
    amask = bits_of(anchor)
    for v in vertices_of(amask):
        _check_vertex(h, v)
    if not 1 <= j <= min(h.r - 1, amask.bit_count()):
        raise BadIntersectionSize(
            f"j={j} outside 1..min(r-1, |A|) = 1..{min(h.r - 1, amask.bit_count())}"
        )
    counts: dict[int, int] = {}
    for m in h.edges:
        if (m & amask).bit_count() == j:
            rest = m & ~amask
            counts[rest] = counts.get(rest, 0) + 1
    rows = sorted(counts, key=edge_key)
    return TraceResult(Hypergraph(h.n, h.r - j, tuple(rows)), tuple(counts[m] for m in rows))


def shrink_edges(h: Hypergraph, forbidden: Iterable[int], target: int) -> tuple[Hypergraph, list[int]]:
    """Cut every edge down to an unused ``target``-subset avoiding ``forbidden``.

    Edges are visited in stored order and each takes the lexicographically
    smallest subset not yet taken. Edges with no subset left are returned as
    ``saturated`` indices and contribute nothing.
    """
    if not 1 <= target <= h.r:
        raise TargetTooLarge(f"target {target} outside 1..{h.r}")
    fmask = bits_of(forbidden)
    used: set[int] = set()
    saturated = []
    for idx, m in enumerate(h.edges):
        free = vertices_of(m & ~fmask)
        if len(free) < target:
            raise TargetTooLarge(f"edge {vertices_of(m)} keeps only {len(free)} vertices, need {target}")
        for sub in itertools.combinations(free, target):
            sm = bits_of(sub)
            if sm not in used:
                used.add(sm)
                break
        else:
            saturated.append(idx)
    return from_masks(h.n, target, used), saturated
