"""Finite digital images: lattice-based kappa(t,n) images and arbitrary graph images.

Points are identified by their index in the construction order (the canonical
order); adjacency is stored per point as a bit mask over indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

DEFAULT_MAX_POINTS = 64


class InvalidImageError(ValueError):
    """Malformed image description (duplicate points, self-loops, bad ranges)."""


def iter_bits(mask: int):
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def kappa_count(t: int, n: int) -> int:
    """Number of lattice points adjacent to a given point of Z^n under kappa(t,n)."""
    if not (1 <= t <= n):
        raise InvalidImageError(f"need 1 <= t <= n, got t={t}, n={n}")
    return sum(2**i * comb(n, i) for i in range(1, t + 1))


@dataclass(frozen=True)
class LatticeSpec:
    """A finite subset of Z^dim together with the adjacency parameter t."""

    dim: int
    t: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidImageError("dim must be positive")
        if not (1 <= self.t <= self.dim):
            raise InvalidImageError(f"need 1 <= t <= dim, got t={self.t}")
        if not self.points:
            raise InvalidImageError("empty point set")
        seen = set()
        for p in self.points:
            if len(p) != self.dim:
                raise InvalidImageError(f"point {p} has wrong dimension")
            if p in seen:
                raise InvalidImageError(f"duplicate point {p}")
            seen.add(p)

    def adjacent(self, p: tuple[int, ...], q: tuple[int, ...]) -> bool:
        """kappa(t,n)-adjacency: at most t coordinates differ by +-1, the rest agree."""
        if p == q:
            return False
        differing = 0
        for a, b in zip(p, q):
            if a == b:
                continue
            if abs(a - b) != 1:
                return False
            differing += 1
            if differing > self.t:
                return False
        return True


class DigitalImage:
    """A finite point set with a symmetric antireflexive adjacency relation.

    Immutable after construction; safe to share across concurrent searches.
    """

    __slots__ = ("size", "neighbor_masks", "closed_masks", "lattice", "name")

    def __init__(self, neighbor_masks, lattice=None, name=None,
                 max_points=DEFAULT_MAX_POINTS):
        n = len(neighbor_masks)
        if n == 0:
            raise InvalidImageError("empty point set")
        if n > max_points:
            raise InvalidImageError(f"image has {n} points, cap is {max_points}")
        masks = tuple(neighbor_masks)
        full = (1 << n) - 1
        for p, m in enumerate(masks):
            if m & ~full:
                raise InvalidImageError(f"adjacency of point {p} references invalid ids")
            if m >> p & 1:
                raise InvalidImageError(f"self-loop at point {p}")
            for q in iter_bits(m):
                if not masks[q] >> p & 1:
                    raise InvalidImageError(f"adjacency not symmetric at ({p},{q})")
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "neighbor_masks", masks)
        object.__setattr__(self, "closed_masks", tuple(m | (1 << p) for p, m in enumerate(masks)))
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("DigitalImage is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_lattice(cls, spec: LatticeSpec, name=None, max_points=DEFAULT_MAX_POINTS):
        n = len(spec.points)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if spec.adjacent(spec.points[i], spec.points[j]):
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return cls(masks, lattice=spec, name=name, max_points=max_points)

    @classmethod
    def from_graph(cls, size: int, edges, name=None, max_points=DEFAULT_MAX_POINTS):
        if size < 1:
            raise InvalidImageError("empty point set")
        masks = [0] * size
        for u, v in edges:
            if not (0 <= u < size and 0 <= v < size):
                raise InvalidImageError(f"edge ({u},{v}) references invalid ids")
            if u == v:
                raise InvalidImageError(f"self-loop edge at {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(masks, name=name, max_points=max_points)

    # -- basic queries ------------------------------------------------------

    def _check_point(self, p: int) -> None:
        if not (0 <= p < self.size):
            raise InvalidImageError(f"invalid point id {p}")

    def adjacent(self, p: int, q: int) -> bool:
        self._check_point(p)
        self._check_point(q)
        return bool(self.neighbor_masks[p] >> q & 1)

    def close(self, p: int, q: int) -> bool:
        """The reflexive closure of adjacency: p equals or is adjacent to q."""
        self._check_point(p)
        self._check_point(q)
        return bool(self.closed_masks[p] >> q & 1)

    def neighborhood(self, p: int, deleted: bool = False) -> frozenset[int]:
        """N(p) (with p) or the deleted neighborhood N*(p) (without p)."""
        self._check_point(p)
        mask = self.neighbor_masks[p] if deleted else self.closed_masks[p]
        return frozenset(iter_bits(mask))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for p in range(self.size):
            for q in iter_bits(self.neighbor_masks[p] >> (p + 1) << (p + 1)):
                out.append((p, q))
        return out

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.neighbor_masks) // 2

    def degree(self, p: int) -> int:
        self._check_point(p)
        return self.neighbor_masks[p].bit_count()

    # -- connectivity -------------------------------------------------------

    def component_masks(self) -> list[int]:
        """Connected components as bit masks, ordered by smallest member."""
        seen = 0
        comps = []
        for start in range(self.size):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = 1 << start
            while frontier:
                nxt = 0
                for p in iter_bits(frontier):
                    nxt |= self.neighbor_masks[p]
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            seen |= comp
        return comps

    def connectivity(self) -> tuple[bool, list[frozenset[int]]]:
        comps = self.component_masks()
        return len(comps) == 1, [frozenset(iter_bits(c)) for c in comps]

    @property
    def is_connected(self) -> bool:
        return len(self.component_masks()) == 1

    def subset_connected(self, mask: int) -> bool:
        """Is the sub-point-set given by mask connected under the induced adjacency?"""
        if mask == 0:
            return True
        start = (mask & -mask).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for p in iter_bits(frontier):
                nxt |= self.neighbor_masks[p] & mask
            frontier = nxt & ~comp
            comp |= frontier
        return comp == mask

    def is_path(self, seq) -> bool:
        """Is seq a digital path: consecutive entries equal or adjacent?"""
        seq = list(seq)
        if not seq:
            raise InvalidImageError("empty sequence")
        for p in seq:
            self._check_point(p)
        return all(self.close(a, b) for a, b in zip(seq, seq[1:]))

    # -- derived images -----------------------------------------------------

    def induced(self, points, name=None) -> "DigitalImage":
        """The subimage on the given points, in ascending order of old index."""
        pts = sorted(set(points))
        if not pts:
            raise InvalidImageError("empty point set")
        for p in pts:
            self._check_point(p)
        index = {p: i for i, p in enumerate(pts)}
        masks = [0] * len(pts)
        for p in pts:
            for q in iter_bits(self.neighbor_masks[p]):
                if q in index:
                    masks[index[p]] |= 1 << index[q]
        lattice = None
        if self.lattice is not None:
            lattice = LatticeSpec(self.lattice.dim, self.lattice.t,
                                  tuple(self.lattice.points[p] for p in pts))
        return DigitalImage(masks, lattice=lattice, name=name)

    def relabel(self, perm, name=None) -> "DigitalImage":
        """The image with point p renamed to perm[p]; perm must be a permutation."""
        if sorted(perm) != list(range(self.size)):
            raise InvalidImageError("perm is not a permutation of the point ids")
        masks = [0] * self.size
        for p in range(self.size):
            for q in iter_bits(self.neighbor_masks[p]):
                masks[perm[p]] |= 1 << perm[q]
        return DigitalImage(masks, name=name)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        if self.lattice is not None:
            out = {"kind": "lattice", "dim": self.lattice.dim, "t": self.lattice.t,
                   "points": [list(p) for p in self.lattice.points]}
        else:
            out = {"kind": "graph", "size": self.size, "edges": [list(e) for e in self.edges()]}
        if self.name is not None:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict, max_points=DEFAULT_MAX_POINTS) -> "DigitalImage":
        if not isinstance(data, dict):
            raise InvalidImageError("image JSON must be an object")
        kind = data.get("kind")
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise InvalidImageError("name must be a string")
        if kind == "lattice":
            allowed = {"kind", "name", "dim", "t", "points"}
            if set(data) - allowed:
                raise InvalidImageError(f"unknown fields: {sorted(set(data) - allowed)}")
            try:
                spec = LatticeSpec(int(data["dim"]), int(data["t"]),
                                   tuple(tuple(int(c) for c in p) for p in data["points"]))
            except KeyError as exc:
                raise InvalidImageError(f"missing field {exc}") from exc
            return cls.from_lattice(spec, name=name, max_points=max_points)
        if kind == "graph":
            allowed = {"kind", "name", "size", "edges"}
            if set(data) - allowed:
                raise InvalidImageError(f"unknown fields: {sorted(set(data) - allowed)}")
            try:
                return cls.from_graph(int(data["size"]),
                                      [(int(u), int(v)) for u, v in data["edges"]],
                                      name=name, max_points=max_points)
            except KeyError as exc:
                raise InvalidImageError(f"missing field {exc}") from exc
        raise InvalidImageError(f"unknown image kind {kind!r}")

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, DigitalImage)
                and self.neighbor_masks == other.neighbor_masks)

    def __hash__(self):
        return hash(self.neighbor_masks)

    def __repr__(self):
        label = self.name or "image"
        return f"<DigitalImage {label}: {self.size} points, {self.edge_count()} edges>"


def build_image(spec, name=None) -> DigitalImage:
    """Build from a LatticeSpec or a (size, edges) pair."""
    if isinstance(spec, LatticeSpec):
        return DigitalImage.from_lattice(spec, name=name)
    size, edges = spec
    return DigitalImage.from_graph(size, edges, name=name)


def digital_interval(a: int, b: int, name=None) -> DigitalImage:
    """The digital interval [a,b] with 2-adjacency; requires a < b."""
    if a >= b:
        raise InvalidImageError(f"digital interval needs a < b, got [{a},{b}]")
    spec = LatticeSpec(1, 1, tuple((k,) for k in range(a, b + 1)))
    return DigitalImage.from_lattice(spec, name=name or f"interval[{a},{b}]")
