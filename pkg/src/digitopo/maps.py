"""Maps between digital images: continuity, coincidence and fixed point sets."""

from __future__ import annotations

from .image import DigitalImage, InvalidImageError, iter_bits

CONTINUITY_ORACLE_CAP = 12


class MapMismatchError(ValueError):
    """Source/target images do not line up for the requested operation."""


class DigitalMap:
    """A total assignment from source points to target points.

    Continuity is a checked predicate, not a construction-time requirement;
    search engines build candidate maps and validate incrementally.
    """

    __slots__ = ("source", "target", "assign")

    def __init__(self, source: DigitalImage, target: DigitalImage, assign):
        assign = tuple(assign)
        if len(assign) != source.size:
            raise MapMismatchError(
                f"assignment has {len(assign)} entries for {source.size} points")
        for v in assign:
            if not (0 <= v < target.size):
                raise MapMismatchError(f"assignment value {v} outside target")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assign", assign)

    def __setattr__(self, key, value):
        raise AttributeError("DigitalMap is immutable")

    @classmethod
    def identity(cls, image: DigitalImage) -> "DigitalMap":
        return cls(image, image, range(image.size))

    @classmethod
    def constant(cls, source: DigitalImage, target: DigitalImage, value: int) -> "DigitalMap":
        target._check_point(value)
        return cls(source, target, [value] * source.size)

    def __call__(self, p: int) -> int:
        return self.assign[p]

    @property
    def is_self_map(self) -> bool:
        return self.source == self.target

    def __eq__(self, other):
        return (isinstance(other, DigitalMap) and self.source == other.source
                and self.target == other.target and self.assign == other.assign)

    def __hash__(self):
        return hash(self.assign)

    def __repr__(self):
        return f"DigitalMap{self.assign}"

    def to_json(self, inline_images: bool = True) -> dict:
        out = {"assign": list(self.assign)}
        if inline_images:
            out["image"] = self.source.to_json()
            if self.target != self.source:
                out["target"] = self.target.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, source=None, target=None) -> "DigitalMap":
        if not isinstance(data, dict) or "assign" not in data:
            raise MapMismatchError("map JSON must be an object with an 'assign' field")
        if source is None:
            if "image" not in data:
                raise MapMismatchError("map JSON has no source image")
            source = DigitalImage.from_json(data["image"])
        if target is None:
            target = DigitalImage.from_json(data["target"]) if "target" in data else source
        return cls(source, target, [int(v) for v in data["assign"]])


def is_continuous(f: DigitalMap) -> bool:
    """Adjacency criterion: every source edge lands on equal or adjacent points."""
    closed = f.target.closed_masks
    assign = f.assign
    for p in range(f.source.size):
        fp_closed = closed[assign[p]]
        for q in iter_bits(f.source.neighbor_masks[p] >> (p + 1) << (p + 1)):
            if not fp_closed >> assign[q] & 1:
                return False
    return True


def connected_subset_masks(image: DigitalImage):
    """All connected non-empty subsets of image, as bit masks.

    Grows connected sets from each seed point; duplicates avoided by only ever
    adding points larger than the seed and banning re-use of rejected points.
    """
    nbr = image.neighbor_masks

    def grow(current: int, frontier: int, seed: int):
        yield current
        banned = 0
        for v in iter_bits(frontier):
            new_frontier = (frontier | nbr[v]) & ~current & ~banned & ~(1 << v)
            new_frontier &= ~((1 << (seed + 1)) - 1)
            yield from grow(current | (1 << v), new_frontier, seed)
            banned |= 1 << v
        return

    for s in range(image.size):
        above = ~((1 << (s + 1)) - 1)
        yield from grow(1 << s, nbr[s] & above, s)


def continuity_oracle(f: DigitalMap) -> bool:
    """Rosenfeld definition checked literally: images of connected subsets are connected."""
    if f.source.size > CONTINUITY_ORACLE_CAP:
        raise InvalidImageError(
            f"continuity oracle limited to {CONTINUITY_ORACLE_CAP} points")
    assign = f.assign
    for mask in connected_subset_masks(f.source):
        image_mask = 0
        for p in iter_bits(mask):
            image_mask |= 1 << assign[p]
        if not f.target.subset_connected(image_mask):
            return False
    return True


def compose(g: DigitalMap, f: DigitalMap) -> DigitalMap:
    """g after f; continuity of both implies continuity of the composite."""
    if f.target != g.source:
        raise MapMismatchError("target of f does not match source of g")
    return DigitalMap(f.source, g.target, [g.assign[v] for v in f.assign])


def fixed_point_set(f: DigitalMap) -> frozenset[int]:
    if not f.is_self_map:
        raise MapMismatchError("fixed points require a self-map")
    return frozenset(p for p, v in enumerate(f.assign) if v == p)


def fixed_mask(f: DigitalMap) -> int:
    if not f.is_self_map:
        raise MapMismatchError("fixed points require a self-map")
    m = 0
    for p, v in enumerate(f.assign):
        if v == p:
            m |= 1 << p
    return m


def coincidence_set(f1: DigitalMap, f2: DigitalMap, mode: str = "coincidence") -> frozenset[int]:
    """Points where the maps agree, agree-and-fix, or disagree.

    mode: "coincidence" -> {x | f1(x)=f2(x)};
          "common_fixed" -> {x | f1(x)=f2(x)=x} (self-maps only);
          "complement"   -> {x | f1(x)!=f2(x)}.
    """
    if f1.source != f2.source or f1.target != f2.target:
        raise MapMismatchError("coincidence needs maps with equal source and target")
    pairs = zip(f1.assign, f2.assign)
    if mode == "coincidence":
        return frozenset(x for x, (a, b) in enumerate(pairs) if a == b)
    if mode == "complement":
        return frozenset(x for x, (a, b) in enumerate(pairs) if a != b)
    if mode == "common_fixed":
        if not f1.is_self_map:
            raise MapMismatchError("common fixed points require self-maps")
        return frozenset(x for x, (a, b) in enumerate(pairs) if a == b == x)
    raise ValueError(f"unknown mode {mode!r}")


def coincidence_count(f1: DigitalMap, f2: DigitalMap) -> int:
    if f1.source != f2.source or f1.target != f2.target:
        raise MapMismatchError("coincidence needs maps with equal source and target")
    return sum(a == b for a, b in zip(f1.assign, f2.assign))


def pointwise_close(f: DigitalMap, g: DigitalMap) -> bool:
    """One-step homotopy relation: f(x) equal or adjacent to g(x) for every x."""
    if f.source != g.source or f.target != g.target:
        raise MapMismatchError("maps must share source and target")
    closed = f.target.closed_masks
    return all(closed[a] >> b & 1 for a, b in zip(f.assign, g.assign))
