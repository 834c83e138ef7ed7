"""Region conditions and the search for a simple closed curve through crossings.

A curve meeting the diagram only at crossings alternates between passing
straight through a crossing (entering at one corner, leaving at the
opposite one) and crossing a region along a chord between two corners.
Chords in one region are realizable disjointly iff their endpoints do not
interleave around the region boundary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .diagram import Corner, Diagram
from .regions import RegionKind, RegionMap, chords_cross, opposite_corner_regions

DEFAULT_BUDGET = 10 ** 7


class Passage(NamedTuple):
    crossing: int
    axis: int   # traversed corners are axis and axis + 2

    def corners(self) -> tuple[int, int]:
        return 4 * self.crossing + self.axis, 4 * self.crossing + self.axis + 2


@dataclass(frozen=True)
class EdgeWitness:
    region_a: int
    region_b: int
    edge: int

    @property
    def self_adjacent(self) -> bool:
        return self.region_a == self.region_b

    def to_json(self):
        return {"regions": [self.region_a, self.region_b], "edge": self.edge,
                "self_adjacent": self.self_adjacent}


def check_condition_ii(rm: RegionMap) -> int | None:
    """Smallest region with two or more punctures, or None."""
    for r in rm.regions:
        if r.kind is RegionKind.OTHER:
            return r.id
    return None


def check_condition_iii(rm: RegionMap) -> EdgeWitness | None:
    """Smallest edge with an annulus on both sides (possibly the same annulus), or None."""
    for e, (a, b) in enumerate(rm.edge_sides):
        if rm.is_annulus(a) and rm.is_annulus(b):
            return EdgeWitness(a, b, e)
    return None


@dataclass(frozen=True)
class PassageGraph:
    nodes: tuple[Passage, ...]
    # region -> sorted (position, corner id, passage) for each eligible traversed corner
    connections: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.nodes)


def is_eligible(d: Diagram, rm: RegionMap, p: Passage) -> bool:
    _, blocked = opposite_corner_regions(d, rm, p.crossing, p.axis)
    return rm.is_annulus(blocked[0]) and rm.is_annulus(blocked[1])


def build_passage_graph(d: Diagram, rm: RegionMap) -> PassageGraph:
    nodes = []
    conn: dict[int, list] = {}
    for c in range(d.n_crossings):
        for axis in (0, 1):
            p = Passage(c, axis)
            if not is_eligible(d, rm, p):
                continue
            nodes.append(p)
            for k in p.corners():
                conn.setdefault(rm.corner_to_region[k], []).append((rm.position[k], k, p))
    for r in conn:
        conn[r].sort()
    return PassageGraph(tuple(nodes), conn)


def cycle_filter(rm: RegionMap, graph: PassageGraph) -> bool:
    """Necessary condition for a curve: the region multigraph of passages has a cycle.

    Self-loops and parallel edges count.
    """
    parent = list(range(len(rm)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in graph.nodes:
        a, b = (rm.corner_to_region[k] for k in p.corners())
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


class CurveArc(NamedTuple):
    region: int
    from_corner: Corner
    to_corner: Corner


@dataclass(frozen=True)
class CurveWitness:
    passages: tuple[Passage, ...]
    arcs: tuple[CurveArc, ...]   # arcs[i] leaves passage i and enters passage i+1

    def to_json(self):
        return {
            "passages": [{"crossing": p.crossing, "axis": p.axis} for p in self.passages],
            "arcs": [{"region": a.region, "from_corner": list(a.from_corner),
                      "to_corner": list(a.to_corner)} for a in self.arcs],
        }


@dataclass(frozen=True)
class ConditionIVResult:
    witness: CurveWitness | None
    exhausted: bool = False     # budget ran out before the search finished
    nodes: int = 0
    filtered: bool = False      # decided by the cycle filter alone

    @property
    def passed(self) -> bool:
        return self.witness is None and not self.exhausted


class _Budget(Exception):
    pass


def check_condition_iv(d: Diagram, rm: RegionMap, budget: int = DEFAULT_BUDGET) -> ConditionIVResult:
    """Exact search for an admissible closed curve.

    Only curves meeting each region in one chord are enumerated: if a curve
    meets a region twice, closing the stretch between two consecutive visits
    with a new chord in that region gives a shorter admissible curve, so some
    admissible curve exists iff one of this kind does.  Cycles are rooted at
    their smallest crossing and followed in one direction.
    """
    graph = build_passage_graph(d, rm)
    if not cycle_filter(rm, graph):
        return ConditionIVResult(None, filtered=True)

    ctr = rm.corner_to_region
    conn = graph.connections
    by_crossing: dict[int, list[Passage]] = {}
    for p in graph.nodes:
        by_crossing.setdefault(p.crossing, []).append(p)

    visited: set[int] = set()
    used: set[int] = set()
    path: list[tuple[Passage, int, int]] = []   # (passage, entry corner, exit corner)
    count = 0

    def reachable(start_region, target, floor):
        seen = {start_region}
        queue = deque([start_region])
        while queue:
            r = queue.popleft()
            for _, k, p in conn.get(r, ()):
                if p.crossing <= floor or p.crossing in used:
                    continue
                a, b = p.corners()
                other = ctr[b] if k == a else ctr[a]
                if other == target:
                    return True
                if other not in seen and other not in visited:
                    seen.add(other)
                    queue.append(other)
        return False

    def dfs(exit_corner, start_entry, floor):
        nonlocal count
        count += 1
        if count > budget:
            raise _Budget
        r = ctr[exit_corner]
        target = ctr[start_entry]
        if r == target:
            return start_entry
        if not reachable(r, target, floor):
            return None
        visited.add(r)
        for _, k, p in conn.get(r, ()):
            if p.crossing <= floor or p.crossing in used:
                continue
            c0, c2 = p.corners()
            out = c2 if k == c0 else c0
            if ctr[out] in visited and ctr[out] != target:
                continue
            used.add(p.crossing)
            path.append((p, k, out))
            found = dfs(out, start_entry, floor)
            if found is not None:
                return found
            path.pop()
            used.discard(p.crossing)
        visited.discard(r)
        return None

    try:
        for c in sorted(by_crossing):
            for p in by_crossing[c]:
                entry, out = p.corners()
                used.add(c)
                visited.add(ctr[entry])
                path.append((p, entry, out))
                found = dfs(out, entry, c)
                if found is not None:
                    return ConditionIVResult(_witness(path, found, ctr), nodes=count)
                path.pop()
                visited.discard(ctr[entry])
                used.discard(c)
    except _Budget:
        return ConditionIVResult(None, exhausted=True, nodes=count)
    return ConditionIVResult(None, nodes=count)


def _corner(k: int) -> Corner:
    return Corner(k >> 2, k & 3)


def _witness(path, closing, ctr) -> CurveWitness:
    passages = tuple(p for p, _, _ in path)
    arcs = []
    for i, (_, _, out) in enumerate(path):
        nxt = path[i + 1][1] if i + 1 < len(path) else closing
        arcs.append(CurveArc(ctr[out], _corner(out), _corner(nxt)))
    return CurveWitness(passages, tuple(arcs))


def verify_curve_witness(d: Diagram, rm: RegionMap, w: CurveWitness) -> bool:
    """Re-check every witness invariant from scratch."""
    n = len(w.passages)
    if n == 0 or len(w.arcs) != n:
        return False
    if len({p.crossing for p in w.passages}) != n:
        return False
    per_region: dict[int, list] = {}
    for i, p in enumerate(w.passages):
        if not (0 <= p.crossing < d.n_crossings and p.axis in (0, 1)):
            return False
        if not is_eligible(d, rm, p):
            return False
        arc, prev = w.arcs[i], w.arcs[i - 1]
        k_in = 4 * prev.to_corner[0] + prev.to_corner[1]
        k_out = 4 * arc.from_corner[0] + arc.from_corner[1]
        if set((k_in, k_out)) != set(p.corners()) or k_in == k_out:
            return False
    for arc in w.arcs:
        ends = [4 * arc.from_corner[0] + arc.from_corner[1], 4 * arc.to_corner[0] + arc.to_corner[1]]
        if any(rm.corner_to_region[k] != arc.region for k in ends):
            return False
        per_region.setdefault(arc.region, []).append(tuple(rm.position[k] for k in ends))
    for chords in per_region.values():
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                if chords_cross(*chords[i], *chords[j]):
                    return False
    return True
