"""Built-in images and bundled maps used throughout the test and CLI surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .image import DigitalImage, InvalidImageError, LatticeSpec, digital_interval
from .maps import DigitalMap

# Two-bar grid: labels 1..7 on the top bar (y=2, x=0..6), 8..11 on the middle
# row (y=1, x=0,2,4,6), 12..18 on the bottom bar (y=0, x=0..6).  Point ids are
# the labels minus one.
_FIG1_COORDS = tuple([(x, 2) for x in range(7)]
                     + [(x, 1) for x in (0, 2, 4, 6)]
                     + [(x, 0) for x in range(7)])

_CUBE_COORDS = ((0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1),
                (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1))

STANDARD_KEYS = ("point", "interval:0:1", "interval:0:2", "interval:0:3",
                 "cycle:4", "cycle:5", "cube", "fig1", "fig2")


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    image: DigitalImage
    maps: dict[str, DigitalMap] = field(default_factory=dict)


def _coord_index():
    return {c: i for i, c in enumerate(_FIG1_COORDS)}


def _fig1_map_from_transform(image, transform):
    index = _coord_index()
    return DigitalMap(image, image,
                      [index[transform(c)] for c in _FIG1_COORDS])


def _fig1_map_from_moves(image, moves: dict[int, int]):
    """moves uses the figure's 1-based labels; unlisted labels stay fixed."""
    assign = list(range(18))
    for label, target in moves.items():
        assign[label - 1] = target - 1
    return DigitalMap(image, image, assign)


def _fig1_maps(image):
    top_to_bottom = {k: k + 11 for k in range(1, 8)}
    bottom_to_top = {k: k - 11 for k in range(12, 19)}
    g1 = {7: 5, 11: 10, 18: 16}
    g2 = {1: 3, 8: 9, 12: 14}
    return {
        "f": _fig1_map_from_transform(image, lambda c: (6 - c[0], 2 - c[1])),
        "p_v": _fig1_map_from_transform(image, lambda c: (c[0], 2 - c[1])),
        "p_h": _fig1_map_from_transform(image, lambda c: (6 - c[0], c[1])),
        "g1": _fig1_map_from_moves(image, g1),
        "g2": _fig1_map_from_moves(image, g2),
        "g3": _fig1_map_from_moves(image, g1 | g2),
        "h1": _fig1_map_from_moves(image, top_to_bottom),
        "h2": _fig1_map_from_moves(image, bottom_to_top),
    }


def cycle_image(n: int) -> DigitalImage:
    if n < 3:
        raise InvalidImageError("cycles need at least 3 points")
    return DigitalImage.from_graph(n, [(i, (i + 1) % n) for i in range(n)],
                                   name=f"cycle:{n}")


def rotation(image: DigitalImage, k: int) -> DigitalMap:
    """Rotation by k steps of a cycle image (points in cyclic order)."""
    n = image.size
    return DigitalMap(image, image, [(i + k) % n for i in range(n)])


def catalog_get(key: str) -> CatalogEntry:
    if key == "point":
        return CatalogEntry(key, DigitalImage.from_graph(1, [], name="point"))
    if key == "fig1" or key == "fig2":
        t = 1 if key == "fig1" else 2
        image = DigitalImage.from_lattice(LatticeSpec(2, t, _FIG1_COORDS), name=key)
        maps = _fig1_maps(image) if key == "fig1" else {}
        return CatalogEntry(key, image, maps)
    if key == "cube":
        image = DigitalImage.from_lattice(LatticeSpec(3, 1, _CUBE_COORDS), name="cube")
        return CatalogEntry(key, image)
    parts = key.split(":")
    if parts[0] == "interval" and len(parts) == 3:
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise InvalidImageError(f"bad interval key {key!r}") from None
        return CatalogEntry(key, digital_interval(a, b))
    if parts[0] == "cycle" and len(parts) == 2:
        try:
            n = int(parts[1])
        except ValueError:
            raise InvalidImageError(f"bad cycle key {key!r}") from None
        return CatalogEntry(key, cycle_image(n))
    raise InvalidImageError(f"unknown catalog key {key!r}")


def standard_entries():
    """The fixed roster of catalog entries used by the verification suites."""
    return [catalog_get(k) for k in STANDARD_KEYS]
