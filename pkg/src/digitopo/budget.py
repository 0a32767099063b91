"""Resource limits and counters shared by every exhaustive search."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field


class BudgetExhaustedError(RuntimeError):
    """Raised by decision procedures that could not finish within budget."""


@dataclass(frozen=True)
class SearchBudget:
    """Caps applied to a single search invocation."""

    max_nodes: int = 10**9
    max_results: int | None = None
    max_seconds: float | None = None
    parallelism: int | None = None  # None = hardware count

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.max_results is not None and self.max_results <= 0:
            raise ValueError("max_results must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")
        if self.parallelism is not None and self.parallelism <= 0:
            raise ValueError("parallelism must be positive")

    def workers(self) -> int:
        if self.parallelism is not None:
            return self.parallelism
        return os.cpu_count() or 1


@dataclass
class SearchStats:
    """Counters reported by a search; exhausted=True means the whole space was covered."""

    nodes_visited: int = 0
    results_found: int = 0
    exhausted: bool = False
    elapsed: float = 0.0
    _start: float = field(default_factory=time.monotonic, repr=False)

    def finish(self, exhausted: bool) -> "SearchStats":
        self.exhausted = exhausted
        self.elapsed = time.monotonic() - self._start
        return self

    def merge(self, other: "SearchStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.results_found += other.results_found
