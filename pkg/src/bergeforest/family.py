"""Forbidden graph families and the small DSL that describes them.

    spec     := term ("+" term)*
    term     := [INT] kind
    kind     := "P" INT | "S" INT | "M" INT | "T:" edgelist | "G:" edgelist
    edgelist := pair ("," pair)*
    pair     := INT "-" INT

``P3`` and ``S3`` have three edges, ``M2`` is two disjoint edges. Whitespace
is ignored everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


class FamilySpecError(ValueError):
    pass


class FamilySyntaxError(FamilySpecError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"


class NotATree(FamilySpecError):
    pass


class ZeroSize(FamilySpecError):
    pass


class MultiEdge(FamilySpecError):
    pass


class Loop(FamilySpecError):
    pass


@dataclass(frozen=True)
class Path:
    length: int

    @property
    def size(self) -> int:
        return self.length

    @property
    def order(self) -> int:
        return self.length + 1

    def local_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(self.length))


@dataclass(frozen=True)
class Star:
    length: int

    @property
    def size(self) -> int:
        return self.length

    @property
    def order(self) -> int:
        return self.length + 1

    def local_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((0, i) for i in range(1, self.length + 1))


@dataclass(frozen=True)
class Graph:
    """An explicit simple graph on vertices ``0..order-1``."""

    edges: tuple[tuple[int, int], ...]
    order: int

    @property
    def size(self) -> int:
        return len(self.edges)

    def local_edges(self) -> tuple[tuple[int, int], ...]:
        return self.edges

    def is_tree(self) -> bool:
        return _is_tree(self.order, self.edges)


Component = Union[Path, Star, Graph]

_KIND_RANK = {Path: 0, Star: 1, Graph: 2}


def _sort_key(c: Component):
    return (-c.size, _KIND_RANK[type(c)], c.local_edges())


def _is_tree(order: int, edges) -> bool:
    if len(edges) != order - 1:
        return False
    parent = list(range(order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def make_graph(edges: Iterable[tuple[int, int]], require_tree: bool = False) -> Component:
    """Normalize an explicit edge list: relabel to a contiguous range, sort."""
    pairs = []
    seen = set()
    for a, b in edges:
        if a == b:
            raise Loop(f"loop at vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise MultiEdge(f"edge {key[0]}-{key[1]} repeated")
        seen.add(key)
        pairs.append(key)
    if not pairs:
        raise ZeroSize("explicit graph has no edges")
    used = sorted({v for p in pairs for v in p})
    relabel = {v: i for i, v in enumerate(used)}
    canon = tuple(sorted((relabel[a], relabel[b]) for a, b in pairs))
    if require_tree and not _is_tree(len(used), canon):
        raise NotATree(f"edge list {canon} is not a tree")
    if len(canon) == 1:
        return Path(1)
    return Graph(canon, len(used))


def _normalize(c: Component) -> Component:
    if isinstance(c, (Path, Star)) and c.length < 1:
        raise ZeroSize(f"{type(c).__name__}({c.length}) has no edges")
    if isinstance(c, Star) and c.length == 1:
        return Path(1)
    if isinstance(c, Graph):
        return make_graph(c.edges)
    return c


@dataclass(frozen=True)
class FamilySpec:
    components: tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(sorted((_normalize(c) for c in self.components), key=_sort_key))
        if not comps:
            raise ZeroSize("a family needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: Component) -> "FamilySpec":
        return cls(tuple(components))

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def order(self) -> int:
        return sum(c.order for c in self.components)

    def __add__(self, other: "FamilySpec") -> "FamilySpec":
        return FamilySpec(self.components + other.components)

    def __str__(self) -> str:
        return to_string(self)


def matching(s: int) -> FamilySpec:
    if s < 1:
        raise ZeroSize("M0 has no edges")
    return FamilySpec((Path(1),) * s)


def to_string(spec: FamilySpec) -> str:
    """Canonical printer; repeated components are folded into multipliers."""
    parts = []
    comps = spec.components
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        count, c = j - i, comps[i]
        if isinstance(c, Path) and c.length == 1:
            parts.append("P1" if count == 1 else f"M{count}")
        else:
            if isinstance(c, Path):
                body = f"P{c.length}"
            elif isinstance(c, Star):
                body = f"S{c.length}"
            else:
                body = ("T:" if c.is_tree() else "G:") + ",".join(f"{a}-{b}" for a, b in c.edges)
            parts.append(body if count == 1 else f"{count}{body}")
        i = j
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise FamilySyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            self.error(f"expected integer, found {found}")
        return int(self.text[start:self.pos])

    def parse(self) -> FamilySpec:
        comps = self.term()
        while self.peek() == "+":
            self.pos += 1
            comps += self.term()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return FamilySpec(tuple(comps))

    def term(self) -> list[Component]:
        count = 1
        start = self.pos
        if self.peek().isdigit():
            count = self.integer()
            if count == 0:
                raise ZeroSize(f"multiplier 0 at position {start}")
        return self.kind() * count

    def kind(self) -> list[Component]:
        ch = self.peek()
        start = self.pos
        if ch in ("P", "S", "M"):
            self.pos += 1
            size = self.integer()
            if size == 0:
                raise ZeroSize(f"{ch}0 at position {start} has no edges")
            if ch == "P":
                return [Path(size)]
            if ch == "S":
                return [Star(size)]
            return [Path(1)] * size
        if ch in ("T", "G"):
            self.pos += 1
            self.expect(":")
            pairs = [self.pair()]
            while self.peek() == ",":
                self.pos += 1
                pairs.append(self.pair())
            return [make_graph(pairs, require_tree=(ch == "T"))]
        self.error(f"expected one of P, S, M, T:, G:, found {repr(ch) if ch else 'end of input'}")

    def pair(self) -> tuple[int, int]:
        a = self.integer()
        self.expect("-")
        return a, self.integer()


def parse(text: str) -> FamilySpec:
    return _Parser(text).parse()


@dataclass(frozen=True)
class SkeletonGraph:
    """A concrete labeled copy of a family.

    ``components[i]`` is ``(first_vertex, stop_vertex, first_edge, stop_edge)``
    for the i-th component of the spec.
    """

    order: int
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, int, int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.order
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def skeleton_graph(spec: FamilySpec) -> SkeletonGraph:
    edges: list[tuple[int, int]] = []
    bounds = []
    offset = 0
    for c in spec.components:
        e0 = len(edges)
        edges.extend((a + offset, b + offset) for a, b in c.local_edges())
        bounds.append((offset, offset + c.order, e0, len(edges)))
        offset += c.order
    return SkeletonGraph(offset, tuple(edges), tuple(bounds))
