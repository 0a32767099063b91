"""Shared fixtures and independent oracles used across the test suite."""

from __future__ import annotations

import itertools

import pytest

from digitopo import DigitalMap, catalog_get, digital_interval
from digitopo.image import iter_bits


@pytest.fixture(scope="session")
def c5():
    return catalog_get("cycle:5").image


@pytest.fixture(scope="session")
def cube():
    return catalog_get("cube").image


@pytest.fixture(scope="session")
def interval3():
    return digital_interval(0, 2)


@pytest.fixture(scope="session")
def fig1_entry():
    return catalog_get("fig1")


# -- independent oracles ----------------------------------------------------

def edge_continuous(source, target, assign) -> bool:
    """Plain edge check, written directly against the adjacency masks."""
    for p, q in source.edges():
        a, b = assign[p], assign[q]
        if a != b and not target.neighbor_masks[a] >> b & 1:
            return False
    return True


def brute_continuous(source, target):
    """All continuous assignments by filtering every function (oracle path)."""
    return [t for t in itertools.product(range(target.size), repeat=source.size)
            if edge_continuous(source, target, t)]


def bipartition_connected(image) -> bool:
    """Definitional connectivity: no split into two non-empty non-adjacent sets."""
    n = image.size
    full = (1 << n) - 1
    for a_mask in range(1, full):
        b_mask = full ^ a_mask
        touching = any(image.neighbor_masks[p] & b_mask for p in iter_bits(a_mask))
        if not touching:
            return False
    return True


def homotopy_partition(image):
    """Oracle homotopy classes: breadth-first over *all* functions, checking the
    homotopy conditions verbatim on each candidate time slice (continuity of the
    slice and pointwise equal-or-adjacent tracks)."""
    n = image.size
    closed = image.closed_masks
    all_funcs = list(itertools.product(range(n), repeat=n))
    continuous = [t for t in all_funcs if edge_continuous(image, image, t)]
    unassigned = set(continuous)
    classes = []
    while unassigned:
        start = min(unassigned)
        block = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for g in frontier:
                for h in all_funcs:
                    if h in block:
                        continue
                    if not all(closed[a] >> b & 1 for a, b in zip(g, h)):
                        continue
                    if not edge_continuous(image, image, h):
                        continue
                    block.add(h)
                    nxt.append(h)
            frontier = nxt
        classes.append(frozenset(block))
        unassigned -= block
    return classes


def min_difference_oracle(image, x):
    """Exhaustive scan of all ordered continuous pairs differing at x."""
    continuous = brute_continuous(image, image)
    best = None
    for t1 in continuous:
        for t2 in continuous:
            if t1[x] == t2[x]:
                continue
            k = sum(a != b for a, b in zip(t1, t2))
            if best is None or k < best:
                best = k
    return best


def spectra_oracle(image):
    """F, CS and CFS by direct enumeration over brute-forced continuous maps."""
    continuous = brute_continuous(image, image)
    fix = {sum(p == v for p, v in enumerate(t)) for t in continuous}
    cs = set()
    cfs = set()
    for t1 in continuous:
        for t2 in continuous:
            cs.add(sum(a == b for a, b in zip(t1, t2)))
            cfs.add(sum(a == b == p for p, (a, b) in enumerate(zip(t1, t2))))
    return fix, cs, cfs


def as_map(image, assign):
    return DigitalMap(image, image, assign)
