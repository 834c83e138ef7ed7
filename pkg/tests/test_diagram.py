import random

import pytest
from hypothesis import given, settings, strategies as st

from tgcheck.diagram import (
    Diagram,
    DiagramError,
    SKDSyntaxError,
    capped_genus,
    check_alternating,
    euler_characteristic,
    face_orbits,
    handlebody_genus,
    is_connected,
    mirror,
    parse_diagram,
    relabel,
    reverse_orientation,
    serialize_diagram,
    solve_alternating_axes,
    trace_link_components,
    validate_structure,
)
from tgcheck.families import curl, grid, twist
from tgcheck.fixtures import load, names

TREFOIL_TEXT = """\
# standard trefoil
crossings 3
edge (0,0) (1,1)
edge (0,3) (2,2)
edge (1,2) (2,1)
edge (1,3) (2,0)
edge (1,0) (0,1)
edge (2,3) (0,2)
over 0 0
over 1 0
over 2 0
"""


def random_diagram(rng, n, punctures=0):
    darts = [(c, s) for c in range(n) for s in range(4)]
    rng.shuffle(darts)
    edges = tuple((darts[2 * i], darts[2 * i + 1]) for i in range(2 * n))
    over = tuple(rng.randrange(2) for _ in range(n))
    pts = tuple((rng.randrange(n), rng.randrange(4)) for _ in range(punctures))
    return Diagram(n, edges, over, pts)


def test_parse_trefoil():
    d = parse_diagram(TREFOIL_TEXT)
    assert d.n_crossings == 3
    assert d.n_edges == 6
    assert d.punctures == ()
    assert check_alternating(d)
    assert sorted(len(f) for f in face_orbits(d)) == [2, 2, 2, 3, 3]


def test_round_trip_fixtures():
    for name in names():
        d = load(name)
        assert parse_diagram(serialize_diagram(d)) == d


@pytest.mark.parametrize("text, msg, line", [
    ("", "missing 'crossings N'", 1),
    ("edge (0,0) (0,1)\n", "expected 'crossings N'", 1),
    ("crossings 0\n", "positive integer", 1),
    ("crossings x\n", "positive integer", 1),
    ("crossings 1\ncrossings 1\n", "duplicate 'crossings'", 2),
    ("crossings 1\nedge (0,0) (0,0)\n", "dart paired with itself", 2),
    ("crossings 1\nedge (0,0) (1,1)\n", "crossing index 1 out of range", 2),
    ("crossings 1\nedge (0,0) (0,4)\n", "slot 4 out of range", 2),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,1) (0,2)\n", "referenced twice", 3),
    ("crossings 1\nedge (0,0) (0,1)\nover 0 0\n", "dart (0, 2) unreferenced", 4),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\n", "missing over-axis", 4),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 2\n", "over axis must be 0 or 1", 4),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 0\nover 0 1\n", "duplicate over-axis", 5),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 0\npuncture (0,4)\n", "corner index 4", 5),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 0\npuncture (3,0)\n", "crossing index 3", 5),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 0\nflip 0\n", "unknown directive", 5),
    ("crossings 1\nedge (0,0)\n", "malformed edge", 2),
    ("crossings 1\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0\n", "malformed over", 4),
])
def test_parse_errors(text, msg, line):
    with pytest.raises(SKDSyntaxError) as info:
        parse_diagram(text)
    assert msg in str(info.value)
    assert info.value.line == line


def test_error_column_points_at_bad_dart():
    with pytest.raises(SKDSyntaxError) as info:
        parse_diagram("crossings 1\n  edge (0,0) (0,7)\n")
    assert info.value.column == 17


def test_comments_and_blank_lines():
    text = "\n# hi\ncrossings 1   # one\n\nedge (0,0) (0,1)\nedge (0,2) (0,3)\nover 0 0\n"
    d = parse_diagram(text)
    assert d.n_crossings == 1


def test_constructor_validation():
    with pytest.raises(DiagramError, match="unreferenced"):
        Diagram(1, (((0, 0), (0, 1)),), (0,))
    with pytest.raises(DiagramError, match="referenced twice"):
        Diagram(1, (((0, 0), (0, 1)), ((0, 1), (0, 2))), (0,))
    with pytest.raises(DiagramError, match="over axis"):
        Diagram(1, (((0, 0), (0, 1)), ((0, 2), (0, 3))), (3,))
    with pytest.raises(DiagramError, match="puncture"):
        Diagram(1, (((0, 0), (0, 1)), ((0, 2), (0, 3))), (0,), ((0, 9),))


def test_validation_report_trefoil_variants():
    t = twist(3)
    r = validate_structure(t)
    assert r.ok and r.capped_genus == 0 and r.n_boundary == 0 and not r.surface_is_disk
    r1 = validate_structure(t.with_punctures([(0, 3)]))
    assert r1.surface_is_disk
    r2 = validate_structure(t.with_punctures([(0, 3), (0, 1)]))
    assert not r2.surface_is_disk and r2.n_boundary == 2


def test_curl_is_torus_but_not_alternating():
    c = curl()
    r = validate_structure(c)
    assert r.capped_genus == 1
    assert r.connected
    assert not r.alternating
    assert len(trace_link_components(c)) == 2


def test_no_alternating_one_crossing_torus_map():
    for pairing in ([(0, 1), (2, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]):
        edges = [((0, a), (0, b)) for a, b in pairing]
        axes = solve_alternating_axes(1, edges)
        genus = capped_genus(Diagram(1, tuple(edges), (0,)))
        assert axes is None or genus == 0


def test_disconnected_detected():
    one = [((0, 0), (0, 1)), ((0, 2), (0, 3))]
    two = [((1, 0), (1, 1)), ((1, 2), (1, 3))]
    d = Diagram(2, tuple(one + two), (0, 0))
    assert not is_connected(d)
    r = validate_structure(d)
    assert not r.connected and not r.ok
    assert capped_genus(d) == 0


def test_knot_components():
    assert len(trace_link_components(twist(3))) == 1
    assert len(trace_link_components(twist(4))) == 1
    assert len(trace_link_components(twist(2, "torus"))) == 2
    assert len(trace_link_components(grid(2, 2))) == 4
    for comp in trace_link_components(twist(5)):
        assert comp.alternates


def test_handlebody_genus():
    assert handlebody_genus(0, 2) == 1
    assert handlebody_genus(1, 1) == 2
    assert handlebody_genus(2, 3) == 6
    with pytest.raises(ValueError):
        handlebody_genus(0, 0)


def test_relabel_preserves_faces_and_alternation():
    rng = random.Random(3)
    for d in (twist(5), grid(2, 4), twist(4).with_punctures([(0, 0), (1, 2)])):
        n = d.n_crossings
        perm = list(range(n))
        rng.shuffle(perm)
        rot = [rng.randrange(4) for _ in range(n)]
        e = relabel(d, perm, rot)
        assert sorted(map(len, face_orbits(e))) == sorted(map(len, face_orbits(d)))
        assert check_alternating(e)
        assert capped_genus(e) == capped_genus(d)


def test_mirror_and_reverse():
    d = twist(4).with_punctures([(0, 0)])
    assert check_alternating(mirror(d))
    assert mirror(mirror(d)) == d
    r = reverse_orientation(d)
    assert check_alternating(r)
    assert reverse_orientation(r) == d
    assert sorted(map(len, face_orbits(r))) == sorted(map(len, face_orbits(d)))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7), st.integers(0, 3), st.randoms(use_true_random=False))
def test_random_maps_round_trip_and_euler(n, k, rng):
    d = random_diagram(rng, n, k)
    assert parse_diagram(serialize_diagram(d)) == d
    faces = face_orbits(d)
    corners = sorted(x for f in faces for x in f)
    assert corners == list(range(4 * n))
    assert sum(len(f) for f in faces) == 2 * d.n_edges
    if is_connected(d):
        assert euler_characteristic(d) == 2 - 2 * capped_genus(d)
