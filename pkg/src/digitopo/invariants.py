"""Headline invariants: spectra F/CS/CFS, homotopy spectra HCS/HCS*/HFS,
minimum numbers, the fixed point property, and divergence degrees."""

from __future__ import annotations

import numpy as np

from .budget import BudgetExhaustedError, SearchBudget
from .homotopy import homotopy_class
from .image import DigitalImage, InvalidImageError
from .maps import (DigitalMap, MapMismatchError, coincidence_count,
                   is_continuous)
from .search import enumerate_assignments, find_fixed_point_free, min_difference_pair
from .spectrum import Spectrum


def _full_range(n: int) -> set[int]:
    return set(range(n + 1))


def fixed_point_spectrum(image: DigitalImage,
                         budget: SearchBudget | None = None) -> Spectrum:
    """F(X): the numbers of fixed points realized by continuous self-maps."""
    n = image.size
    full = _full_range(n)
    values: set[int] = set()
    stream = enumerate_assignments(image, image, budget=budget)
    complete = False
    for tup in stream:
        values.add(sum(p == v for p, v in enumerate(tup)))
        if values == full:
            complete = True
            break
    else:
        complete = stream.stats.exhausted
    return Spectrum(frozenset(values), complete)


def _materialized_self_maps(image, budget):
    stream = enumerate_assignments(image, image, budget=budget)
    maps = list(stream)
    return maps, stream.stats.exhausted


def coincidence_spectrum(image: DigitalImage,
                         budget: SearchBudget | None = None) -> Spectrum:
    """CS(X): coincidence counts over pairs of continuous self-maps.

    #C is symmetric in the pair, so only unordered pairs are scanned; the scan
    stops early once every cardinality 0..#X has been seen.
    """
    n = image.size
    full = _full_range(n)
    maps, exhausted = _materialized_self_maps(image, budget)
    arr = np.array(maps, dtype=np.uint8)
    values: set[int] = set()
    complete = False
    for i in range(len(maps)):
        counts = (arr[i:] == arr[i]).sum(axis=1)
        values.update(int(v) for v in np.unique(counts))
        if values == full:
            complete = True
            break
    else:
        complete = exhausted
    return Spectrum(frozenset(values), complete)


def _fixed_masks(image, budget):
    """Distinct fixed point sets (as bit masks) of continuous self-maps."""
    stream = enumerate_assignments(image, image, budget=budget)
    masks: set[int] = set()
    for tup in stream:
        m = 0
        for p, v in enumerate(tup):
            if p == v:
                m |= 1 << p
        masks.add(m)
    return masks, stream.stats.exhausted


def common_fixed_spectrum(image: DigitalImage,
                          budget: SearchBudget | None = None) -> Spectrum:
    """CFS(X): CF(f1,f2) = Fix(f1) ∩ Fix(f2), so only fixed sets matter."""
    n = image.size
    full = _full_range(n)
    masks, exhausted = _fixed_masks(image, budget)
    ordered = sorted(masks)
    values: set[int] = set()
    complete = False
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            values.add((a & b).bit_count())
        if values == full:
            complete = True
            break
    else:
        complete = exhausted
    return Spectrum(frozenset(values), complete)


def homotopy_coincidence_spectrum(f1: DigitalMap, f2: DigitalMap,
                                  starred: bool = False,
                                  budget: SearchBudget | None = None) -> Spectrum:
    """HCS(f1,f2) over both classes, or HCS*(f1,f2) with f2 literally fixed."""
    if f1.source != f2.source or f1.target != f2.target:
        raise MapMismatchError("maps must share source and target")
    n = f1.source.size
    full = _full_range(n)
    cls1 = homotopy_class(f1, budget)
    values: set[int] = set()
    if starred:
        ref = f2.assign
        for tup in cls1.assignments:
            values.add(sum(a == b for a, b in zip(tup, ref)))
            if values == full:
                break
        return Spectrum(frozenset(values), cls1.complete or values == full)
    cls2 = homotopy_class(f2, budget)
    arr2 = np.array(sorted(cls2.assignments), dtype=np.uint8)
    complete = False
    for tup in cls1.assignments:
        counts = (arr2 == np.array(tup, dtype=np.uint8)).sum(axis=1)
        values.update(int(v) for v in np.unique(counts))
        if values == full:
            complete = True
            break
    else:
        complete = cls1.complete and cls2.complete
    return Spectrum(frozenset(values), complete)


def homotopy_common_fixed_spectrum(f1: DigitalMap, f2: DigitalMap,
                                   budget: SearchBudget | None = None) -> Spectrum:
    """HFS(f1,f2): common-fixed counts over the product of both classes."""
    if not (f1.is_self_map and f2.is_self_map and f1.source == f2.source):
        raise MapMismatchError("HFS requires self-maps of one image")
    n = f1.source.size
    full = _full_range(n)
    cls1 = homotopy_class(f1, budget)
    cls2 = homotopy_class(f2, budget)
    masks1 = sorted(cls1.fixed_masks())
    masks2 = sorted(cls2.fixed_masks())
    values: set[int] = set()
    complete = False
    for a in masks1:
        for b in masks2:
            values.add((a & b).bit_count())
        if values == full:
            complete = True
            break
    else:
        complete = cls1.complete and cls2.complete
    return Spectrum(frozenset(values), complete)


def min_numbers(f1: DigitalMap, f2: DigitalMap, which: str,
                budget: SearchBudget | None = None) -> int:
    """MC = min HCS, MC* = min HCS*, MCF = min HFS."""
    if which == "MC":
        spec = homotopy_coincidence_spectrum(f1, f2, starred=False, budget=budget)
    elif which == "MC_star":
        spec = homotopy_coincidence_spectrum(f1, f2, starred=True, budget=budget)
    elif which == "MCF":
        spec = homotopy_common_fixed_spectrum(f1, f2, budget=budget)
    else:
        raise ValueError(f"unknown minimum {which!r}")
    if not spec.complete:
        raise BudgetExhaustedError("spectrum incomplete; minimum not certified")
    return min(spec.values)


def has_FPP(image: DigitalImage, budget: SearchBudget | None = None) -> bool:
    """Does every continuous self-map have a fixed point?"""
    witness, stats = find_fixed_point_free(image, budget)
    if witness is not None:
        return False
    if not stats.exhausted:
        raise BudgetExhaustedError("fixed-point-free search did not finish")
    return True


def divergence_degree(image: DigitalImage, x: int,
                      budget: SearchBudget | None = None):
    """D(x): fewest non-coincidence points for continuous pairs differing at x.

    Returns (k, f1, f2, stats); stats.exhausted=True marks an optimality proof.
    """
    f1, f2, k, stats = min_difference_pair(image, x, budget)
    return k, f1, f2, stats


def restricted_divergence(image: DigitalImage, x: int, family):
    """Divergence of x over ordered pairs drawn from an explicit map family."""
    family = list(family)
    if not family:
        raise InvalidImageError("family must be non-empty")
    image._check_point(x)
    for f in family:
        if f.source != image or f.target != image:
            raise MapMismatchError("family member is not a self-map of the image")
        if not is_continuous(f):
            raise MapMismatchError("family member is not continuous")
    best = None
    for f1 in family:
        for f2 in family:
            if f1.assign[x] == f2.assign[x]:
                continue
            k = image.size - coincidence_count(f1, f2)
            if best is None or k < best[0]:
                best = (k, f1, f2)
    if best is None:
        raise InvalidImageError(f"no pair in the family differs at point {x}")
    return best
