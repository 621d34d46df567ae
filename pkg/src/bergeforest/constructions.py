"""Extremal and lower-bound constructions with their predicted edge counts.

Every generator checks ``e(H) == predicted_count`` before returning. Blocks
sharing a common core are combined as a set union, so r-subsets of the core
are counted once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bounds import binom_zero, htilde_count
from .family import FamilySpec, Path, Star, parse
from .hypergraph import Hypergraph, bits_of, from_masks, is_connected


class ConstructionError(ValueError):
    pass


class BadParameters(ConstructionError):
    pass


class OddTotal(BadParameters):
    pass


class CollidingShifts(ConstructionError):
    pass


@dataclass(frozen=True)
class ConstructionReport:
    family: str
    params: dict
    in_regime: bool
    predicted_count: int
    hypergraph: Hypergraph
    freeness_target: FamilySpec
    connected_claim: bool | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "in_regime": self.in_regime,
            "predicted_count": self.predicted_count,
            "hypergraph": self.hypergraph.to_dict(),
            "freeness_target": str(self.freeness_target),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ConstructionReport":
        return cls(
            family=doc["family"],
            params=doc["params"],
            in_regime=doc["in_regime"],
            predicted_count=doc["predicted_count"],
            hypergraph=Hypergraph.from_dict(doc["hypergraph"]),
            freeness_target=parse(doc["freeness_target"]),
        )


def _report(family, params, in_regime, predicted, n, r, masks, target, connected=None):
    h = from_masks(n, r, masks)
    if h.e != predicted:
        raise ConstructionError(f"{family}{params}: generated {h.e} edges, formula predicts {predicted}")
    return ConstructionReport(family, params, in_regime, predicted, h, target, connected)


def _tree(tree, size: int) -> FamilySpec:
    if tree is None:
        return FamilySpec.of(Path(size))
    spec = parse(tree) if isinstance(tree, str) else tree
    if len(spec.components) != 1 or spec.size != size:
        raise BadParameters(f"tree {spec} must be a single component with {size} edges")
    return spec


def _complete_on(vertices, r: int):
    return {bits_of(c) for c in itertools.combinations(vertices, r)}


def hstar(n: int, l: int, k: int, r: int, tree=None) -> ConstructionReport:
    """Core of k-1 vertices joined completely to blocks of l vertices."""
    if k < 2 or l < 1 or r < 2 or n < k - 1:
        raise BadParameters(f"hstar needs k >= 2, l >= 1, r >= 2, n >= k-1 (got n={n}, l={l}, k={k}, r={r})")
    core = list(range(k - 1))
    rest = list(range(k - 1, n))
    full = len(rest) // l
    masks: set[int] = set()
    for i in range(full + 1):
        masks |= _complete_on(core + rest[i * l:(i + 1) * l], r)
    predicted = (binom_zero(l + k - 1, r) - binom_zero(k - 1, r)) * full + binom_zero(n - l * full, r)
    target = _tree(tree, l) + FamilySpec((Star(l),) * (k - 1))
    return _report("hstar", {"n": n, "l": l, "k": k, "r": r}, r <= k + l - 1, predicted, n, r, masks, target)


def hhat(n: int, l1: int, l2: int, k: int, r: int, tree=None) -> ConstructionReport:
    """Core of k-1 vertices; each block of r-k+2 vertices carries l_min-1 edges."""
    if k < 2 or l1 < 2 or l2 < 2 or r < k or n < k - 1:
        raise BadParameters(f"hhat needs k >= 2, l1, l2 >= 2, r >= k, n >= k-1 (got n={n}, l1={l1}, l2={l2}, k={k}, r={r})")
    lmin = min(l1, l2)
    block = r - k + 2
    if lmin - 1 > block:
        raise BadParameters(f"need l_min-1 = {lmin - 1} distinct {block - 1}-subsets of a {block}-set")
    core = bits_of(range(k - 1))
    rest = list(range(k - 1, n))
    full = len(rest) // block
    masks = set()
    for i in range(full):
        chunk = rest[i * block:(i + 1) * block]
        for sub in itertools.islice(itertools.combinations(chunk, block - 1), lmin - 1):
            masks.add(core | bits_of(sub))
    predicted = (lmin - 1) * full
    target = _tree(tree, l1) + FamilySpec((Star(l2),) * (k - 1))
    params = {"n": n, "l1": l1, "l2": l2, "k": k, "r": r}
    return _report("hhat", params, r >= l1 + l2 + k - 1, predicted, n, r, masks, target)


def htilde(n: int, lengths, r: int) -> ConstructionReport:
    """Core of S/2-1 vertices; every outside vertex spans a clique with the core."""
    lengths = list(lengths)
    if not lengths or any(x < 1 for x in lengths) or r < 2:
        raise BadParameters("htilde needs path lengths >= 1 and r >= 2")
    total = sum(x + 1 for x in lengths)
    if total % 2:
        raise OddTotal(f"sum of (l_i + 1) is {total}, which is odd")
    core_size = total // 2 - 1
    if n <= core_size:
        raise BadParameters(f"n = {n} must exceed the core size {core_size}")
    core = list(range(core_size))
    masks: set[int] = set()
    for u in range(core_size, n):
        masks |= _complete_on(core + [u], r)
    in_regime = len(lengths) >= 2 and all(x % 2 for x in lengths) and 3 <= r and 2 * r <= total - 14
    target = FamilySpec(tuple(Path(x) for x in lengths))
    connected = core_size >= r - 1
    return _report("htilde", {"n": n, "lengths": lengths, "r": r}, in_regime,
                   htilde_count(n, lengths, r), n, r, masks, target, connected)


def clique_blocks(n: int, l: int, r: int) -> ConstructionReport:
    """Disjoint complete r-graphs on blocks of l vertices (plus a remainder block)."""
    if l < 1 or r < 2 or n < 0:
        raise BadParameters("clique_blocks needs l >= 1, r >= 2")
    masks: set[int] = set()
    for start in range(0, n, l):
        masks |= _complete_on(range(start, min(start + l, n)), r)
    predicted = (n // l) * binom_zero(l, r) + binom_zero(n % l, r)
    return _report("clique-blocks", {"n": n, "l": l, "r": r}, l >= r + 1 > 3, predicted, n, r, masks,
                   FamilySpec.of(Path(l)))


def _greedy_partitions(n: int, r: int, d: int) -> list[list[int]] | None:
    used: set[int] = set()
    found: list[list[int]] = []

    def one_partition(free: int, blocks: list[int]):
        if not free:
            return list(blocks)
        low = (free & -free).bit_length() - 1
        others = [v for v in range(low + 1, n) if free >> v & 1]
        for rest in itertools.combinations(others, r - 1):
            m = bits_of((low,) + rest)
            if m in used:
                continue
            used.add(m)
            blocks.append(m)
            got = one_partition(free & ~m, blocks)
            if got is not None:
                return got
            blocks.pop()
            used.discard(m)
        return None

    for _ in range(d):
        part = one_partition((1 << n) - 1, [])
        if part is None:
            return None
        found.append(part)
    return found


def partition_regular(n: int, r: int, d: int, method: str = "cyclic") -> ConstructionReport:
    """d-regular r-graph made of d perfect partitions into blocks of size r.

    ``method="cyclic"`` shifts the base partition ``{0..r-1}, {r..2r-1}, ...``
    by ``j`` positions mod n for the j-th partition and refuses collisions.
    ``method="greedy"`` takes lexicographically first edge-disjoint partitions.
    """
    if r < 2 or d < 1 or n < r or n % r:
        raise BadParameters(f"partition_regular needs r >= 2, d >= 1 and r | n (got n={n}, r={r}, d={d})")
    if method == "cyclic":
        masks: set[int] = set()
        for j in range(d):
            for i in range(n // r):
                m = bits_of((i * r + t + j) % n for t in range(r))
                if m in masks:
                    raise CollidingShifts(f"shift {j} repeats an edge; adjust n or d")
                masks.add(m)
    elif method == "greedy":
        parts = _greedy_partitions(n, r, d)
        if parts is None:
            raise CollidingShifts(f"no {d} edge-disjoint perfect partitions found")
        masks = {m for part in parts for m in part}
    else:
        raise BadParameters(f"unknown method {method!r}")
    params = {"n": n, "r": r, "d": d}
    if method != "cyclic":
        params["method"] = method
    return _report("partition-regular", params, True, d * n // r, n, r, masks, FamilySpec.of(Star(d + 1)))


GENERATORS = {
    "hstar": hstar,
    "hhat": hhat,
    "htilde": htilde,
    "clique-blocks": clique_blocks,
    "partition-regular": partition_regular,
}


def build(family: str, params: dict) -> ConstructionReport:
    try:
        gen = GENERATORS[family]
    except KeyError:
        raise BadParameters(f"unknown construction {family!r}; known: {', '.join(GENERATORS)}") from None
    try:
        return gen(**params)
    except TypeError as exc:
        raise BadParameters(str(exc)) from None


def check_connected_claim(report: ConstructionReport) -> bool | None:
    if report.connected_claim is None:
        return None
    return is_connected(report.hypergraph) == report.connected_claim
