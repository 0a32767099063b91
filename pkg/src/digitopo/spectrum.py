"""The spectrum type shared by the fixed-point and coincidence invariants."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Spectrum:
    """A set of achievable cardinalities; complete=True means exhaustively computed."""

    values: frozenset[int]
    complete: bool = True

    def sorted(self) -> list[int]:
        return sorted(self.values)

    def __contains__(self, k: int) -> bool:
        return k in self.values

    def __le__(self, other: "Spectrum") -> bool:
        return self.values <= other.values

    def to_json(self) -> dict:
        return {"values": self.sorted(), "complete": self.complete}

    def __repr__(self):
        tail = "" if self.complete else ", partial"
        return f"Spectrum({self.sorted()}{tail})"
