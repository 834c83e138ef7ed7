"""Complementary regions of a diagram, traced as faces of its combinatorial map."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagram import Corner, Diagram, face_orbits


class RegionKind(str, Enum):
    DISK = "DISK"
    ANNULUS = "ANNULUS"
    OTHER = "OTHER"


def kind_for(punctures: int) -> RegionKind:
    # Capped faces are disks, so the puncture count fixes the topology.
    if punctures == 0:
        return RegionKind.DISK
    if punctures == 1:
        return RegionKind.ANNULUS
    return RegionKind.OTHER


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple[Corner, ...]
    boundary_edges: tuple[int, ...]  # boundary_edges[i] follows corners[i]
    punctures: int

    @property
    def kind(self) -> RegionKind:
        return kind_for(self.punctures)

    @property
    def euler(self) -> int:
        return 1 - self.punctures

    def __len__(self):
        return len(self.corners)


@dataclass(frozen=True)
class RegionMap:
    regions: tuple[Region, ...]
    corner_to_region: tuple[int, ...]   # indexed by corner id 4*c + j
    position: tuple[int, ...]           # index of each corner within its region
    edge_sides: tuple[tuple[int, int], ...]
    puncture_regions: tuple[int, ...]   # region of each puncture mark, in input order

    def region_of(self, corner) -> int:
        return self.corner_to_region[4 * corner[0] + corner[1]]

    def kind(self, r: int) -> RegionKind:
        return self.regions[r].kind

    def is_annulus(self, r: int) -> bool:
        return self.regions[r].punctures == 1

    def __len__(self):
        return len(self.regions)


def trace_regions(d: Diagram) -> RegionMap:
    """Trace faces and attach puncture counts.

    Walking a face, side ``k`` (the edge leaving along dart ``k``) follows
    corner ``k``, so an edge ``{a, b}`` has side ``a`` in the region of corner
    ``a`` and side ``b`` in the region of corner ``b``.
    """
    orbits = face_orbits(d)
    corner_to_region = [0] * d.n_darts
    position = [0] * d.n_darts
    for r, orbit in enumerate(orbits):
        for i, k in enumerate(orbit):
            corner_to_region[k] = r
            position[k] = i

    counts = [0] * len(orbits)
    puncture_regions = []
    for p in d.punctures:
        r = corner_to_region[4 * p.crossing + p.index]
        counts[r] += 1
        puncture_regions.append(r)

    edge_of = d.edge_of
    regions = tuple(
        Region(
            id=r,
            corners=tuple(Corner(k >> 2, k & 3) for k in orbit),
            boundary_edges=tuple(edge_of[k] for k in orbit),
            punctures=counts[r],
        )
        for r, orbit in enumerate(orbits)
    )
    edge_sides = tuple(
        (corner_to_region[a], corner_to_region[b])
        for a, b in (d.edge_darts(e) for e in range(d.n_edges))
    )
    return RegionMap(regions, tuple(corner_to_region), tuple(position), edge_sides,
                     tuple(puncture_regions))


def opposite_corner_regions(d: Diagram, rm: RegionMap, c: int, axis: int):
    """Regions at the corners a curve through crossing ``c`` would use.

    Returns ``(traversed, blocked)``: the regions at corners ``axis`` and
    ``axis+2`` and those at the other two corners.
    """
    if not 0 <= c < d.n_crossings:
        raise ValueError(f"crossing {c} out of range")
    base = 4 * c
    ctr = rm.corner_to_region
    traversed = (ctr[base + axis], ctr[base + axis + 2])
    blocked = (ctr[base + axis + 1], ctr[base + (axis + 3) % 4])
    return traversed, blocked


def adjacent_region_pairs(rm: RegionMap) -> list[tuple[int, int, int]]:
    """One ``(region, region, edge)`` entry per edge, self-pairs included."""
    return [(a, b, e) for e, (a, b) in enumerate(rm.edge_sides)]


def _between(a, b, x) -> bool:
    if a < b:
        return a < x < b
    return x > a or x < b


def chords_cross(a, b, c, d) -> bool:
    """Whether chords (a, b) and (c, d) of a cyclically ordered boundary interleave.

    Endpoints are comparable keys; the four must be distinct.
    """
    return _between(a, b, c) != _between(a, b, d)
