"""Backtracking enumeration of continuous maps and the searches built on it.

Continuous maps X -> Y are exactly the graph homomorphisms into the reflexive
closure of Y, so the engine assigns points in index order and restricts each
point's candidates to the intersection of the closed neighborhoods of the
images of its already-assigned neighbors.  Candidate values are tried in
ascending order, so the stream is lexicographic in the assignment vector and
deterministic regardless of the worker count.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .budget import SearchBudget, SearchStats
from .image import DigitalImage, InvalidImageError, iter_bits
from .maps import DigitalMap

_CHUNK = 4096  # nodes between shared-budget checks


@dataclass(frozen=True)
class PartialConstraint:
    """Required and forbidden single-point assignments for a search."""

    required: dict[int, int] = field(default_factory=dict)
    forbidden: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        for p, v in self.required.items():
            if (p, v) in self.forbidden:
                raise ValueError(f"assignment {p}->{v} both required and forbidden")


class _NodeBudget:
    """Shared node/time allowance; safe for concurrent workers."""

    def __init__(self, budget: SearchBudget):
        self._remaining = budget.max_nodes
        self._deadline = (time.monotonic() + budget.max_seconds
                          if budget.max_seconds is not None else None)
        self._lock = threading.Lock()
        self.exceeded = False

    def take(self, k: int) -> bool:
        with self._lock:
            if self.exceeded:
                return False
            if self._deadline is not None and time.monotonic() > self._deadline:
                self.exceeded = True
                return False
            if self._remaining < k:
                self.exceeded = True
                return False
            self._remaining -= k
            return True


def _allowed_masks(source: DigitalImage, target: DigitalImage,
                   constraint: PartialConstraint | None,
                   extra_allowed=None) -> list[int]:
    full = (1 << target.size) - 1
    allowed = [full] * source.size
    if extra_allowed is not None:
        for p, m in enumerate(extra_allowed):
            allowed[p] &= m
    if constraint is not None:
        for p, v in constraint.required.items():
            source._check_point(p)
            target._check_point(v)
            allowed[p] &= 1 << v
        for p, v in constraint.forbidden:
            source._check_point(p)
            target._check_point(v)
            allowed[p] &= ~(1 << v)
    return allowed


def _earlier_neighbors(source: DigitalImage) -> list[list[int]]:
    return [[q for q in iter_bits(source.neighbor_masks[p]) if q < p]
            for p in range(source.size)]


def _dfs(source, target, allowed, node_budget, stats, first_value=None):
    """Yield continuous assignment tuples in lexicographic order."""
    n = source.size
    closed = target.closed_masks
    earlier = _earlier_neighbors(source)
    assign = [0] * n
    masks = [0] * n
    masks[0] = allowed[0] if first_value is None else allowed[0] & (1 << first_value)
    depth = 0
    local_nodes = 0
    while depth >= 0:
        m = masks[depth]
        if m == 0:
            depth -= 1
            continue
        low = m & -m
        masks[depth] = m ^ low
        assign[depth] = low.bit_length() - 1
        local_nodes += 1
        if local_nodes % _CHUNK == 0:
            if not node_budget.take(_CHUNK):
                stats.nodes_visited += local_nodes
                return False
        if depth == n - 1:
            yield tuple(assign)
        else:
            depth += 1
            c = allowed[depth]
            for j in earlier[depth]:
                c &= closed[assign[j]]
            if c == 0:
                depth -= 1
            else:
                masks[depth] = c
    stats.nodes_visited += local_nodes
    return True


class MapStream:
    """Iterable of maps (or raw assignment tuples) with final SearchStats."""

    def __init__(self, gen, stats: SearchStats):
        self._gen = gen
        self.stats = stats

    def __iter__(self):
        return self._gen


def enumerate_assignments(source: DigitalImage, target: DigitalImage,
                          constraint: PartialConstraint | None = None,
                          budget: SearchBudget | None = None,
                          extra_allowed=None) -> MapStream:
    """All continuous assignment tuples source -> target meeting the constraint."""
    budget = budget or SearchBudget()
    stats = SearchStats()
    allowed = _allowed_masks(source, target, constraint, extra_allowed)
    node_budget = _NodeBudget(budget)
    workers = budget.workers()

    def sequential():
        complete = yield from _bounded(_dfs(source, target, allowed, node_budget, stats))
        stats.finish(complete)

    def _bounded(inner):
        complete = True
        it = inner
        try:
            while True:
                tup = next(it)
                stats.results_found += 1
                yield tup
                if (budget.max_results is not None
                        and stats.results_found >= budget.max_results):
                    complete = False
                    break
        except StopIteration as stop:
            complete = stop.value is not False and not node_budget.exceeded
        return complete

    if workers <= 1 or source.size == 0 or allowed[0].bit_count() <= 1:
        return MapStream(sequential(), stats)

    # Parallel split at depth 1: one branch per candidate image of point 0,
    # merged back in ascending (canonical) order.
    def run_branch(v):
        branch_stats = SearchStats()
        out = []
        gen = _dfs(source, target, allowed, node_budget, branch_stats, first_value=v)
        complete = True
        while True:
            try:
                out.append(next(gen))
            except StopIteration as stop:
                complete = stop.value is not False
                break
        return out, branch_stats, complete

    def parallel():
        roots = list(iter_bits(allowed[0]))
        complete = True
        with ThreadPoolExecutor(max_workers=min(workers, len(roots))) as pool:
            for out, branch_stats, branch_complete in pool.map(run_branch, roots):
                stats.merge(branch_stats)
                complete = complete and branch_complete
                for tup in out:
                    stats.results_found += 1
                    yield tup
                    if (budget.max_results is not None
                            and stats.results_found >= budget.max_results):
                        stats.finish(False)
                        return
        stats.finish(complete and not node_budget.exceeded)

    return MapStream(parallel(), stats)


def enumerate_continuous_maps(source: DigitalImage, target: DigitalImage,
                              constraint: PartialConstraint | None = None,
                              budget: SearchBudget | None = None) -> MapStream:
    """Continuous maps source -> target as DigitalMap objects, each exactly once."""
    inner = enumerate_assignments(source, target, constraint, budget)

    def gen():
        for tup in inner:
            yield DigitalMap(source, target, tup)

    return MapStream(gen(), inner.stats)


def count_continuous_maps(source: DigitalImage, target: DigitalImage,
                          budget: SearchBudget | None = None) -> tuple[int, SearchStats]:
    stream = enumerate_assignments(source, target, budget=budget)
    count = sum(1 for _ in stream)
    return count, stream.stats


def _first_result(stream: MapStream):
    """First map of a stream; stats.exhausted records whether the answer is proven."""
    for tup in stream:
        # A witness settles the question even though the stream was cut short.
        stream.stats.finish(True)
        return tup
    return None


def find_retraction(image: DigitalImage, subset,
                    budget: SearchBudget | None = None):
    """A continuous self-map with range in subset fixing subset pointwise, or None.

    None with stats.exhausted=True proves the subset is not a retract.
    """
    pts = sorted(set(subset))
    if not pts:
        raise InvalidImageError("retract subset must be non-empty")
    for p in pts:
        image._check_point(p)
    subset_mask = 0
    for p in pts:
        subset_mask |= 1 << p
    constraint = PartialConstraint(required={p: p for p in pts})
    stream = enumerate_assignments(image, image, constraint, budget,
                                   extra_allowed=[subset_mask] * image.size)
    tup = _first_result(stream)
    if tup is None:
        return None, stream.stats
    return DigitalMap(image, image, tup), stream.stats


def find_fixed_point_free(image: DigitalImage,
                          budget: SearchBudget | None = None):
    """A continuous self-map with no fixed point, or None (proven when exhausted)."""
    full = (1 << image.size) - 1
    extra = [full & ~(1 << p) for p in range(image.size)]
    stream = enumerate_assignments(image, image, budget=budget, extra_allowed=extra)
    tup = _first_result(stream)
    if tup is None:
        return None, stream.stats
    return DigitalMap(image, image, tup), stream.stats


def _seed_difference_pair(image: DigitalImage, x: int):
    """Constant map plus a one-point perturbation at x: a k=1 witness pair."""
    for p in range(image.size):
        nbrs = image.neighbor_masks[p]
        if nbrs:
            q = (nbrs & -nbrs).bit_length() - 1
            a2 = [p] * image.size
            a1 = list(a2)
            a1[x] = q
            return tuple(a1), tuple(a2)
    # No adjacency at all: every function is continuous.
    a2 = [0] * image.size
    a1 = list(a2)
    a1[x] = 1
    return tuple(a1), tuple(a2)


def min_difference_pair(image: DigitalImage, x: int,
                        budget: SearchBudget | None = None):
    """Continuous self-map pair differing at x with the fewest total differences.

    Branch and bound over joint assignments y -> (f1(y), f2(y)); the running
    difference count is the bound and f1(x) < f2(x) breaks pair symmetry.
    Returns (f1, f2, k, stats); stats.exhausted=True marks an optimality proof.
    """
    if image.size <= 1:
        raise InvalidImageError("divergence needs an image with more than one point")
    image._check_point(x)
    budget = budget or SearchBudget()
    stats = SearchStats()
    node_budget = _NodeBudget(budget)

    best = _seed_difference_pair(image, x)
    best_k = sum(a != b for a, b in zip(*best))

    n = image.size
    closed = image.closed_masks
    order = [x] + [p for p in range(n) if p != x]
    pos = {p: i for i, p in enumerate(order)}
    earlier = [[q for q in iter_bits(image.neighbor_masks[p]) if pos[q] < pos[p]]
               for p in order]
    full = (1 << n) - 1

    a1 = [0] * n
    a2 = [0] * n
    nodes = 0
    aborted = False

    def dfs(depth: int, diffs: int):
        nonlocal best, best_k, nodes, aborted
        if aborted or diffs >= best_k:
            return
        if depth == n:
            best = (tuple(a1), tuple(a2))
            best_k = diffs
            return
        p = order[depth]
        c1 = full
        c2 = full
        for j in earlier[depth]:
            c1 &= closed[a1[j]]
            c2 &= closed[a2[j]]
        for v1 in iter_bits(c1):
            for v2 in iter_bits(c2):
                if depth == 0 and v1 >= v2:
                    continue  # must differ at x; order of the pair is immaterial
                nodes += 1
                if nodes % _CHUNK == 0 and not node_budget.take(_CHUNK):
                    aborted = True
                    return
                a1[p] = v1
                a2[p] = v2
                dfs(depth + 1, diffs + (v1 != v2))

    dfs(0, 0)
    stats.nodes_visited = nodes
    stats.results_found = 1
    stats.finish(not aborted)
    f1 = DigitalMap(image, image, best[0])
    f2 = DigitalMap(image, image, best[1])
    return f1, f2, best_k, stats
