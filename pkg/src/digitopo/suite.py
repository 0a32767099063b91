"""Automated verification of the theorem-level properties on a given image."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .budget import BudgetExhaustedError, SearchBudget
from .homotopy import class_fixed_stats, is_contractible, is_rigid
from .image import DigitalImage, iter_bits
from .invariants import (coincidence_spectrum, common_fixed_spectrum,
                         divergence_degree, fixed_point_spectrum, has_FPP,
                         homotopy_coincidence_spectrum,
                         homotopy_common_fixed_spectrum, min_numbers)
from .maps import DigitalMap, coincidence_count, coincidence_set
from .search import enumerate_assignments, find_retraction

# Exhaustive spectra get expensive fast; checks needing them bow out above this.
_SPECTRA_POINT_CAP = 10
_SAMPLE_MAP_CAP = 2000


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> list:
        return [c.to_json() for c in self.checks]


def _sample_maps(image, budget, rng, count):
    cap = SearchBudget(max_nodes=budget.max_nodes, max_results=_SAMPLE_MAP_CAP,
                       max_seconds=budget.max_seconds, parallelism=1)
    pool = list(enumerate_assignments(image, image, budget=cap))
    return [DigitalMap(image, image, rng.choice(pool)) for _ in range(count)]


def _conjugate(assign, perm, inv):
    out = [0] * len(assign)
    for p, v in enumerate(assign):
        out[perm[p]] = perm[v]
    return tuple(out)


def _check_isomorphism_invariance(image, budget, rng):
    n = image.size
    samples = _sample_maps(image, budget, rng, 6)
    for _ in range(5):
        perm = list(range(n))
        rng.shuffle(perm)
        inv = [0] * n
        for p, v in enumerate(perm):
            inv[v] = p
        relabeled = image.relabel(perm)
        for f1, f2 in itertools.combinations(samples, 2):
            g1 = DigitalMap(relabeled, relabeled, _conjugate(f1.assign, perm, inv))
            g2 = DigitalMap(relabeled, relabeled, _conjugate(f2.assign, perm, inv))
            if coincidence_count(f1, f2) != coincidence_count(g1, g2):
                return CheckResult("isomorphism-invariance", "fail", {
                    "perm": perm, "f1": list(f1.assign), "f2": list(f2.assign)})
            cf_x = len(coincidence_set(f1, f2, "common_fixed"))
            cf_y = len(coincidence_set(g1, g2, "common_fixed"))
            if cf_x != cf_y:
                return CheckResult("isomorphism-invariance", "fail", {
                    "perm": perm, "f1": list(f1.assign), "f2": list(f2.assign)})
    return CheckResult("isomorphism-invariance", "pass")


def _check_retract_monotonicity(image, budget, rng):
    if image.size > _SPECTRA_POINT_CAP:
        return CheckResult("retract-spectrum-inclusion", "skipped",
                           {"reason": "image too large for exhaustive spectra"})
    cs_x = coincidence_spectrum(image, budget)
    cfs_x = common_fixed_spectrum(image, budget)
    n = image.size
    if n <= 6:
        subset_masks = range(1, 1 << n)
    else:
        subset_masks = {rng.randrange(1, 1 << n) for _ in range(30)}
    checked = 0
    for mask in subset_masks:
        subset = list(iter_bits(mask))
        retraction, stats = find_retraction(image, subset, budget)
        if retraction is None:
            continue
        checked += 1
        sub = image.induced(subset)
        if not (coincidence_spectrum(sub, budget).values <= cs_x.values
                and common_fixed_spectrum(sub, budget).values <= cfs_x.values):
            return CheckResult("retract-spectrum-inclusion", "fail",
                               {"subset": subset})
    return CheckResult("retract-spectrum-inclusion", "pass", {"retracts": checked})


def _check_divergence_theorem(image, budget):
    if image.size <= 1:
        return CheckResult("divergence-theorem", "skipped",
                           {"reason": "needs more than one point"})
    if not image.is_connected:
        return CheckResult("divergence-theorem", "skipped",
                           {"reason": "image not connected"})
    if image.size > _SPECTRA_POINT_CAP:
        return CheckResult("divergence-theorem", "skipped",
                           {"reason": "image too large for exhaustive spectra"})
    n = image.size
    lhs = (n - 1) in coincidence_spectrum(image, budget).values
    rhs = any(divergence_degree(image, x, budget)[0] == 1 for x in range(n))
    if lhs != rhs:
        return CheckResult("divergence-theorem", "fail", {"lhs": lhs, "rhs": rhs})
    return CheckResult("divergence-theorem", "pass")


def _check_fpp(image, budget):
    expected = image.size == 1
    if has_FPP(image, budget) != expected:
        return CheckResult("fixed-point-property", "fail", {"size": image.size})
    return CheckResult("fixed-point-property", "pass")


def _check_contractible_conjecture(image, budget, rng):
    if image.size > _SPECTRA_POINT_CAP:
        return CheckResult("contractible-spectra", "skipped",
                           {"reason": "image too large for exhaustive spectra"})
    if not is_contractible(image, budget):
        return CheckResult("contractible-spectra", "skipped",
                           {"reason": "image not contractible"})
    if common_fixed_spectrum(image, budget).values != fixed_point_spectrum(image, budget).values:
        return CheckResult("contractible-spectra", "fail", {"part": "CFS != F"})
    for f in _sample_maps(image, budget, rng, 3):
        s, _, _ = class_fixed_stats(f, budget)
        if homotopy_common_fixed_spectrum(f, f, budget).values != s.values:
            return CheckResult("contractible-spectra", "fail",
                               {"part": "HFS(f,f) != S(f)", "f": list(f.assign)})
    return CheckResult("contractible-spectra", "pass")


def _check_rigid_identities(image, budget):
    if image.size > _SPECTRA_POINT_CAP:
        return CheckResult("rigid-image-identities", "skipped",
                           {"reason": "image too large"})
    if not is_rigid(image, budget):
        return CheckResult("rigid-image-identities", "skipped",
                           {"reason": "image not rigid"})
    ident = DigitalMap.identity(image)
    c = DigitalMap.constant(image, image, 0)
    s_c, mf_c, _ = class_fixed_stats(c, budget)
    if homotopy_coincidence_spectrum(ident, c, budget=budget).values != s_c.values:
        return CheckResult("rigid-image-identities", "fail", {"part": "HCS(id,c) != S(c)"})
    if min_numbers(ident, c, "MC", budget) != mf_c:
        return CheckResult("rigid-image-identities", "fail", {"part": "MC(id,c) != MF(c)"})
    return CheckResult("rigid-image-identities", "pass")


def property_suite(image: DigitalImage, budget: SearchBudget | None = None,
                   seed: int = 0) -> SuiteReport:
    """Run every feasible theorem-level check on the image.

    Failures are report entries carrying a machine-checkable counterexample;
    infeasible checks are labeled skipped with a reason.
    """
    budget = budget or SearchBudget()
    rng = random.Random(seed)
    checks = []
    named = (
        ("isomorphism-invariance", lambda: _check_isomorphism_invariance(image, budget, rng)),
        ("retract-spectrum-inclusion", lambda: _check_retract_monotonicity(image, budget, rng)),
        ("divergence-theorem", lambda: _check_divergence_theorem(image, budget)),
        ("fixed-point-property", lambda: _check_fpp(image, budget)),
        ("contractible-spectra", lambda: _check_contractible_conjecture(image, budget, rng)),
        ("rigid-image-identities", lambda: _check_rigid_identities(image, budget)),
    )
    for name, fn in named:
        try:
            checks.append(fn())
        except BudgetExhaustedError as exc:
            checks.append(CheckResult(name, "skipped", {"reason": str(exc)}))
    return SuiteReport(tuple(checks))
