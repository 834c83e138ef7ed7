import pytest

from oracles import oracle_condition_iv
from tgcheck.conditions import (
    CurveArc,
    CurveWitness,
    Passage,
    build_passage_graph,
    check_condition_ii,
    check_condition_iii,
    check_condition_iv,
    cycle_filter,
    verify_curve_witness,
)
from tgcheck.diagram import Corner, mirror
from tgcheck.families import curl, grid, twist
from tgcheck.fixtures import load, names
from tgcheck.regions import trace_regions


def setup(name):
    d = load(name)
    return d, trace_regions(d)


def test_condition_ii():
    assert check_condition_ii(setup("trefoil_two_bigons")[1]) is None
    assert check_condition_ii(setup("trefoil_outer_outer")[1]) == 3
    assert check_condition_ii(setup("trefoil")[1]) is None


def test_condition_iii():
    assert check_condition_iii(setup("trefoil_inner_outer")[1]) is None
    w = check_condition_iii(setup("trefoil_bigon_inner")[1])
    assert w is not None and {w.region_a, w.region_b} == {0, 1} and not w.self_adjacent
    c = check_condition_iii(trace_regions(curl()))
    assert c is not None and c.self_adjacent and c.edge == 0
    assert c.to_json()["self_adjacent"] is True


def test_passage_graph_counts():
    d, rm = setup("trefoil_inner_outer")
    g = build_passage_graph(d, rm)
    assert len(g) == 3
    assert {p.crossing for p in g.nodes} == {0, 1, 2}
    d, rm = setup("trefoil_two_bigons")
    g = build_passage_graph(d, rm)
    assert g.nodes == (Passage(0, 1),)  # the staked bigons 0 and 2 only face each other at crossing 0
    d, rm = setup("trefoil")
    assert len(build_passage_graph(d, rm)) == 0


def test_passage_graph_connections_cover_nodes():
    for name in names():
        d, rm = setup(name)
        g = build_passage_graph(d, rm)
        listed = {(k, p) for entries in g.connections.values() for _, k, p in entries}
        for p in g.nodes:
            for k in p.corners():
                assert (k, p) in listed
        for r, entries in g.connections.items():
            assert [e[0] for e in entries] == sorted(e[0] for e in entries)


def test_trefoil_inner_outer_curve():
    d, rm = setup("trefoil_inner_outer")
    res = check_condition_iv(d, rm)
    assert not res.passed
    w = res.witness
    assert len(w.passages) == 3
    assert sorted(p.crossing for p in w.passages) == [0, 1, 2]
    assert {a.region for a in w.arcs} == {0, 2, 4}  # the three bigons
    assert verify_curve_witness(d, rm, w)
    js = w.to_json()
    assert js["passages"][0] == {"crossing": 0, "axis": 0}
    assert set(js["arcs"][0]) == {"region", "from_corner", "to_corner"}


def test_trefoil_two_bigons_passes():
    d, rm = setup("trefoil_two_bigons")
    res = check_condition_iv(d, rm)
    assert res.passed and res.filtered


def test_no_punctures_passes():
    d, rm = setup("trefoil")
    assert check_condition_iv(d, rm).passed


def test_verify_rejects_broken_witnesses():
    d, rm = setup("trefoil_inner_outer")
    w = check_condition_iv(d, rm).witness
    flipped = CurveWitness(
        (Passage(w.passages[0].crossing, 1 - w.passages[0].axis),) + w.passages[1:], w.arcs)
    assert not verify_curve_witness(d, rm, flipped)
    repeated = CurveWitness(w.passages[:2] + (w.passages[0],), w.arcs)
    assert not verify_curve_witness(d, rm, repeated)
    assert not verify_curve_witness(d, rm, CurveWitness((), ()))
    wrong_region = CurveWitness(w.passages, (CurveArc(1, *w.arcs[0][1:]),) + w.arcs[1:])
    assert not verify_curve_witness(d, rm, wrong_region)


def test_single_passage_curve_on_curl():
    d = curl()
    rm = trace_regions(d)
    res = check_condition_iv(d, rm)
    assert not res.passed
    assert len(res.witness.passages) == 1
    assert verify_curve_witness(d, rm, res.witness)


def test_interleaving_chords_rejected():
    # in a single 4-gon, chords 0-2 and 1-3 cross
    d = curl()
    rm = trace_regions(d)
    region = rm.corner_to_region[0]
    w = CurveWitness(
        (Passage(0, 0),),
        (CurveArc(region, Corner(0, 2), Corner(0, 0)),),
    )
    assert verify_curve_witness(d, rm, w)
    d2 = grid(2, 2).with_punctures([(0, 0), (3, 0)])
    rm2 = trace_regions(d2)
    res = check_condition_iv(d2, rm2)
    assert res.passed == oracle_condition_iv(d2)


def test_budget_exhaustion():
    d, rm = setup("trefoil_inner_outer")
    res = check_condition_iv(d, rm, budget=1)
    assert res.exhausted and not res.passed and res.witness is None


def test_filter_soundness_and_oracle_on_fixtures():
    for name in names():
        d, rm = setup(name)
        res = check_condition_iv(d, rm)
        assert res.passed == oracle_condition_iv(d), name
        if not cycle_filter(rm, build_passage_graph(d, rm)):
            assert res.passed
        if res.witness is not None:
            assert verify_curve_witness(d, rm, res.witness)


def test_mirror_invariance():
    for name in names():
        d, rm = setup(name)
        m = mirror(d)
        mrm = trace_regions(m)
        assert build_passage_graph(d, rm).nodes == build_passage_graph(m, mrm).nodes
        assert check_condition_iv(d, rm).passed == check_condition_iv(m, mrm).passed
        assert check_condition_ii(rm) == check_condition_ii(mrm)
        assert check_condition_iii(rm) == check_condition_iii(mrm)


def test_deterministic_witness():
    d, rm = setup("trefoil_inner_outer")
    assert check_condition_iv(d, rm).witness == check_condition_iv(d, rm).witness


@pytest.mark.parametrize("k", [3, 4, 5])
def test_torus_chain_all_bigon_axes(k):
    # poles in both k-gons make every crossing's bigon axis eligible; the chain of bigons closes up
    d = twist(k, "torus")
    rm = trace_regions(d)
    big = [r.id for r in rm.regions if len(r) == k and k > 2]
    staked = d.with_punctures([rm.regions[r].corners[0] for r in big])
    srm = trace_regions(staked)
    res = check_condition_iv(staked, srm)
    assert not res.passed
    assert len(res.witness.passages) == k
