import pytest

from tgcheck.diagram import Corner
from tgcheck.families import curl, grid, twist
from tgcheck.fixtures import load
from tgcheck.regions import (
    RegionKind,
    adjacent_region_pairs,
    chords_cross,
    kind_for,
    opposite_corner_regions,
    trace_regions,
)


def test_trefoil_regions():
    rm = trace_regions(twist(3))
    assert [len(r) for r in rm.regions] == [2, 3, 2, 3, 2]
    assert all(r.kind is RegionKind.DISK for r in rm.regions)
    # every edge borders a bigon, the two triangles never touch
    for a, b, _ in adjacent_region_pairs(rm):
        assert 2 in (len(rm.regions[a]), len(rm.regions[b]))


def test_corner_partition_and_positions():
    for d in (twist(5), grid(2, 4), curl()):
        rm = trace_regions(d)
        seen = set()
        for r in rm.regions:
            for i, c in enumerate(r.corners):
                k = 4 * c.crossing + c.index
                assert rm.corner_to_region[k] == r.id
                assert rm.position[k] == i
                seen.add(k)
        assert seen == set(range(d.n_darts))


def test_boundary_edges_follow_corners():
    d = twist(4)
    rm = trace_regions(d)
    for r in rm.regions:
        for c, e in zip(r.corners, r.boundary_edges):
            assert d.edge_of[4 * c.crossing + c.index] == e


def test_puncture_counts_and_kinds():
    d = load("trefoil_outer_outer")
    rm = trace_regions(d)
    assert rm.regions[3].punctures == 2
    assert rm.kind(3) is RegionKind.OTHER
    assert rm.puncture_regions == (3, 3)
    d2 = load("trefoil_two_bigons")
    rm2 = trace_regions(d2)
    assert [r.kind for r in rm2.regions].count(RegionKind.ANNULUS) == 2
    assert rm2.is_annulus(0) and rm2.is_annulus(2)


def test_kind_for():
    assert kind_for(0) is RegionKind.DISK
    assert kind_for(1) is RegionKind.ANNULUS
    assert kind_for(5) is RegionKind.OTHER


def test_opposite_corner_regions():
    d = twist(3)
    rm = trace_regions(d)
    traversed, blocked = opposite_corner_regions(d, rm, 0, 0)
    assert traversed == (0, 2)  # two bigons
    assert blocked == (1, 3)    # inner and outer triangles
    with pytest.raises(ValueError):
        opposite_corner_regions(d, rm, 5, 0)


def test_curl_single_region_self_adjacent():
    rm = trace_regions(curl())
    assert len(rm) == 1
    assert rm.edge_sides == ((0, 0), (0, 0))
    assert sorted(rm.regions[0].corners) == [Corner(0, j) for j in range(4)]


def test_chords_cross():
    assert chords_cross(0, 2, 1, 3)
    assert not chords_cross(0, 1, 2, 3)
    assert not chords_cross(0, 3, 1, 2)
    assert chords_cross(3, 1, 0, 2)   # endpoints given in either order
    assert not chords_cross((0, 0), (2, 1), (2, 2), (4, 0))
