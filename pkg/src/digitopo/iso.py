"""Isomorphism search between digital images.

A digital isomorphism is a continuous bijection with continuous inverse,
which for finite images is exactly a graph isomorphism of the adjacency
relations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .budget import BudgetExhaustedError, SearchBudget
from .image import DigitalImage, iter_bits


@dataclass(frozen=True)
class Isomorphism:
    forward: tuple[int, ...]
    backward: tuple[int, ...]

    @classmethod
    def from_forward(cls, forward) -> "Isomorphism":
        forward = tuple(forward)
        backward = [0] * len(forward)
        for p, v in enumerate(forward):
            backward[v] = p
        return cls(forward, tuple(backward))

    def inverse(self) -> "Isomorphism":
        return Isomorphism(self.backward, self.forward)


def _neighbor_degree_key(image: DigitalImage, p: int):
    return (image.degree(p),
            tuple(sorted(image.degree(q) for q in iter_bits(image.neighbor_masks[p]))))


def are_isomorphic(x: DigitalImage, y: DigitalImage,
                   budget: SearchBudget | None = None):
    """A witness Isomorphism, or None once exhaustive search proves none exists.

    Raises BudgetExhaustedError if the search is cut off before either proof.
    Pruning: degree sequence, neighbor-degree multisets, and most-constrained
    point first during backtracking.
    """
    budget = budget or SearchBudget()
    n = x.size
    if n != y.size or x.edge_count() != y.edge_count():
        return None
    keys_x = [_neighbor_degree_key(x, p) for p in range(n)]
    keys_y = [_neighbor_degree_key(y, p) for p in range(n)]
    if Counter(keys_x) != Counter(keys_y):
        return None

    init_cand = []
    for p in range(n):
        m = 0
        for v in range(n):
            if keys_x[p] == keys_y[v]:
                m |= 1 << v
        init_cand.append(m)

    nbr_x = x.neighbor_masks
    nbr_y = y.neighbor_masks
    full = (1 << n) - 1
    nodes = 0
    deadline_nodes = budget.max_nodes

    def dfs(cand, assigned_mask):
        nonlocal nodes
        if assigned_mask == full:
            return [c.bit_length() - 1 for c in cand]
        # most-constrained unassigned point first
        best_p, best_count = -1, n + 1
        for p in range(n):
            if assigned_mask >> p & 1:
                continue
            count = cand[p].bit_count()
            if count == 0:
                return None
            if count < best_count:
                best_p, best_count = p, count
        p = best_p
        for v in iter_bits(cand[p]):
            nodes += 1
            if nodes > deadline_nodes:
                raise BudgetExhaustedError("isomorphism search budget exhausted")
            new_cand = list(cand)
            new_cand[p] = 1 << v
            ok = True
            clear = ~(1 << v)
            for q in range(n):
                if q == p:
                    continue
                c = new_cand[q] & clear
                if nbr_x[p] >> q & 1:
                    c &= nbr_y[v]
                else:
                    c &= ~nbr_y[v]
                if c == 0:
                    ok = False
                    break
                new_cand[q] = c
            if not ok:
                continue
            result = dfs(new_cand, assigned_mask | (1 << p))
            if result is not None:
                return result
        return None

    forward = dfs(init_cand, 0)
    if forward is None:
        return None
    return Isomorphism.from_forward(forward)
