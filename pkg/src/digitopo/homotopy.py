"""Homotopy classes as connected components of the one-step-homotopy graph.

Two continuous maps are homotopic in one step exactly when they are pointwise
equal-or-adjacent and both continuous, so a homotopy class is the connected
component of a map in the graph whose vertices are the continuous maps and
whose edges are the one-step moves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .budget import BudgetExhaustedError, SearchBudget
from .image import DigitalImage, iter_bits
from .maps import DigitalMap, MapMismatchError, is_continuous
from .search import PartialConstraint, enumerate_assignments
from .spectrum import Spectrum

# Caps for materializing the full continuous-map set before the fast closure.
_MATERIALIZE_RESULTS = 500_000
_MATERIALIZE_NODES = 20_000_000

# Completed closures, keyed by the image pair; any member identifies its class.
_class_cache: dict[tuple, list[frozenset]] = {}
_CLASS_CACHE_LIMIT = 64


@dataclass(frozen=True)
class HomotopyClass:
    """All continuous maps reachable from the representative by one-step moves."""

    representative: DigitalMap
    assignments: frozenset[tuple[int, ...]]
    complete: bool

    def __len__(self):
        return len(self.assignments)

    def __contains__(self, item) -> bool:
        if isinstance(item, DigitalMap):
            return item.assign in self.assignments
        return tuple(item) in self.assignments

    def members(self):
        src, tgt = self.representative.source, self.representative.target
        for tup in sorted(self.assignments):
            yield DigitalMap(src, tgt, tup)

    def fixed_masks(self) -> set[int]:
        masks = set()
        for tup in self.assignments:
            m = 0
            for p, v in enumerate(tup):
                if p == v:
                    m |= 1 << p
            masks.add(m)
        return masks


def _require_continuous(f: DigitalMap) -> None:
    if not is_continuous(f):
        raise MapMismatchError("map is not continuous")


def _materialize_maps(source, target, budget):
    cap = SearchBudget(max_nodes=min(budget.max_nodes, _MATERIALIZE_NODES),
                       max_results=min(budget.max_results or _MATERIALIZE_RESULTS,
                                       _MATERIALIZE_RESULTS),
                       max_seconds=budget.max_seconds,
                       parallelism=budget.parallelism)
    stream = enumerate_assignments(source, target, budget=cap)
    maps = list(stream)
    return maps, stream.stats.exhausted


def _close_matrix(target: DigitalImage) -> np.ndarray:
    n = target.size
    a = np.zeros((n, n), dtype=bool)
    for u in range(n):
        for v in iter_bits(target.closed_masks[u]):
            a[u, v] = True
    return a


def _matrix_closure(all_maps, target, start_tuples, stop_tuples=None):
    """BFS over the one-step graph on a materialized map set.

    Returns (member row flags, found) where found reports whether any of
    stop_tuples was reached (early exit).
    """
    arr = np.array(all_maps, dtype=np.uint8)
    n_maps, n_pts = arr.shape
    index = {tup: i for i, tup in enumerate(all_maps)}
    close = _close_matrix(target)
    visited = np.zeros(n_maps, dtype=bool)
    frontier = np.zeros(n_maps, dtype=bool)
    for tup in start_tuples:
        frontier[index[tup]] = True
    stop_rows = None
    if stop_tuples is not None:
        stop_rows = np.zeros(n_maps, dtype=bool)
        for tup in stop_tuples:
            if tup in index:
                stop_rows[index[tup]] = True
    while frontier.any():
        visited |= frontier
        if stop_rows is not None and (visited & stop_rows).any():
            return visited, True
        if visited.all():
            break
        rows = arr[frontier]
        ok = np.ones((rows.shape[0], n_maps), dtype=bool)
        for x in range(n_pts):
            ok &= close[rows[:, x]][:, arr[:, x]]
        frontier = ok.any(axis=0) & ~visited
    return visited, False


def _incremental_closure(f, budget, stop_tuples=None):
    """Frontier BFS that enumerates one-step neighbors on demand.

    Used when the full map set is too large to materialize; returns
    (set of assignment tuples, complete, found).
    """
    source, target = f.source, f.target
    closed = target.closed_masks
    visited = {f.assign}
    frontier = [f.assign]
    stop = set(stop_tuples or ())
    budget_left = budget.max_nodes
    while frontier:
        if stop & visited:
            return visited, False, True
        nxt = []
        for g in frontier:
            allowed = [closed[v] for v in g]
            cap = SearchBudget(max_nodes=max(budget_left, 1),
                               max_seconds=budget.max_seconds, parallelism=1)
            stream = enumerate_assignments(source, target, budget=cap,
                                           extra_allowed=allowed)
            for tup in stream:
                if tup not in visited:
                    visited.add(tup)
                    nxt.append(tup)
            budget_left -= stream.stats.nodes_visited
            if not stream.stats.exhausted or budget_left <= 0:
                return visited, False, bool(stop & visited)
        frontier = nxt
    return visited, True, bool(stop & visited)


def _cache_key(f: DigitalMap):
    return (f.source.neighbor_masks, f.target.neighbor_masks)


def _closure(f: DigitalMap, budget: SearchBudget, stop_tuples=None):
    key = _cache_key(f)
    for members in _class_cache.get(key, ()):
        if f.assign in members:
            found = any(t in members for t in stop_tuples) if stop_tuples else False
            return members, True, found
    all_maps, exhausted = _materialize_maps(f.source, f.target, budget)
    if exhausted:
        visited, found = _matrix_closure(all_maps, f.target, [f.assign], stop_tuples)
        members = frozenset(all_maps[i] for i in np.flatnonzero(visited))
        complete = not found  # early exit leaves the component partially explored
    else:
        raw, complete, found = _incremental_closure(f, budget, stop_tuples)
        members = frozenset(raw)
    if complete:
        if len(_class_cache) >= _CLASS_CACHE_LIMIT:
            _class_cache.clear()
        _class_cache.setdefault(key, []).append(members)
    return members, complete, found


def homotopy_class(f: DigitalMap, budget: SearchBudget | None = None) -> HomotopyClass:
    """Breadth-first closure of {f} under one-step homotopy moves."""
    _require_continuous(f)
    budget = budget or SearchBudget()
    members, complete, _ = _closure(f, budget)
    return HomotopyClass(f, members, complete)


def are_homotopic(f: DigitalMap, g: DigitalMap,
                  budget: SearchBudget | None = None) -> bool:
    _require_continuous(f)
    _require_continuous(g)
    if f.source != g.source or f.target != g.target:
        raise MapMismatchError("maps must share source and target")
    if f.assign == g.assign:
        return True
    budget = budget or SearchBudget()
    _, complete, found = _closure(f, budget, stop_tuples=[g.assign])
    if found:
        return True
    if not complete:
        raise BudgetExhaustedError("homotopy search did not finish within budget")
    return False


def is_nullhomotopic(f: DigitalMap, budget: SearchBudget | None = None) -> bool:
    _require_continuous(f)
    budget = budget or SearchBudget()
    constants = [tuple([v] * f.source.size) for v in range(f.target.size)]
    _, complete, found = _closure(f, budget, stop_tuples=constants)
    if found:
        return True
    if not complete:
        raise BudgetExhaustedError("nullhomotopy search did not finish within budget")
    return False


def is_contractible(image: DigitalImage, budget: SearchBudget | None = None) -> bool:
    return is_nullhomotopic(DigitalMap.identity(image), budget)


def is_rigid(subject, budget: SearchBudget | None = None) -> bool:
    """A map homotopic only to itself; an image is rigid when its identity is.

    The class of f is a singleton exactly when f has no one-step neighbor
    other than itself, so only the immediate neighbors are searched.
    """
    if isinstance(subject, DigitalImage):
        f = DigitalMap.identity(subject)
    else:
        f = subject
        _require_continuous(f)
    budget = budget or SearchBudget()
    closed = f.target.closed_masks
    allowed = [closed[v] for v in f.assign]
    cap = SearchBudget(max_nodes=budget.max_nodes, max_results=2,
                       max_seconds=budget.max_seconds, parallelism=1)
    stream = enumerate_assignments(f.source, f.target, budget=cap,
                                   extra_allowed=allowed)
    found = list(stream)
    if len(found) >= 2:
        return False
    if not stream.stats.exhausted and len(found) < 2:
        raise BudgetExhaustedError("rigidity search did not finish within budget")
    return found == [f.assign]


def is_deformation_retract(image: DigitalImage, subset,
                           budget: SearchBudget | None = None) -> bool:
    """Does some retraction r onto subset satisfy i∘r homotopic to the identity?"""
    pts = sorted(set(subset))
    if not pts:
        raise MapMismatchError("subset must be non-empty")
    budget = budget or SearchBudget()
    subset_mask = 0
    for p in pts:
        image._check_point(p)
        subset_mask |= 1 << p
    constraint = PartialConstraint(required={p: p for p in pts})
    stream = enumerate_assignments(image, image, constraint, budget,
                                   extra_allowed=[subset_mask] * image.size)
    ident = DigitalMap.identity(image)
    for tup in stream:
        r = DigitalMap(image, image, tup)
        if are_homotopic(r, ident, budget):
            return True
    if not stream.stats.exhausted:
        raise BudgetExhaustedError("retraction enumeration did not finish within budget")
    return False


def class_fixed_stats(f: DigitalMap, budget: SearchBudget | None = None):
    """The per-class fixed point spectrum S(f) with its extremes MF and XF."""
    if not f.is_self_map:
        raise MapMismatchError("fixed point statistics require a self-map")
    cls = homotopy_class(f, budget)
    counts = {sum(p == v for p, v in enumerate(tup)) for tup in cls.assignments}
    spectrum = Spectrum(frozenset(counts), complete=cls.complete)
    return spectrum, min(counts), max(counts)
