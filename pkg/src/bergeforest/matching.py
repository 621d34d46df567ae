"""Augmenting-path bipartite matching over bitmask adjacency rows."""
from __future__ import annotations

from typing import Sequence


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_matching(adj: Sequence[int], seed: dict[int, int] | None = None) -> dict[int, int]:
    """Maximum matching of left nodes ``0..len(adj)-1`` into right nodes.

    ``adj[i]`` is a bitmask of right nodes admissible for left node ``i``.
    ``seed`` is an optional partial matching (left -> right); pairs that are no
    longer admissible or clash are dropped before augmenting. Returns the
    matching as a dict left -> right.
    """
    left_of: dict[int, int] = {}
    right_of: dict[int, int] = {}
    if seed:
        for i, j in seed.items():
            if i < len(adj) and adj[i] >> j & 1 and j not in left_of:
                left_of[j] = i
                right_of[i] = j

    def augment(i: int, visited: int) -> tuple[bool, int]:
        options = adj[i] & ~visited
        for j in _bits(options):
            visited |= 1 << j
            owner = left_of.get(j)
            if owner is None:
                left_of[j] = i
                right_of[i] = j
                return True, visited
            ok, visited = augment(owner, visited)
            if ok:
                left_of[j] = i
                right_of[i] = j
                return True, visited
        return False, visited

    for i in range(len(adj)):
        if i not in right_of:
            augment(i, 0)
    return right_of


def has_perfect_left(adj: Sequence[int], seed: dict[int, int] | None = None) -> tuple[bool, dict[int, int]]:
    m = max_matching(adj, seed)
    return len(m) == len(adj), m
