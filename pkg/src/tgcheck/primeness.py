"""Reducedness and weak primeness via circles meeting the diagram in one or two points.

A candidate circle is a cyclic list of arcs.  Each arc is a chord of one
region between two boundary points; consecutive arcs meet either at a cut
point in the interior of an edge (two-point circles) or at a crossing the
circle passes straight through (one-point circles).  Cutting the capped
surface along the circle and counting cells on each side decides whether a
side is a disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .diagram import Diagram, _face_orbits, _partner
from .regions import RegionMap, chords_cross


class MalformedCircleError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BoundaryPoint:
    """A point on a region boundary.

    ``cut == 0``: the corner with id ``dart``.  ``cut in (1, 2)``: the cut
    point on the edge side of ``dart``; cut points are numbered along the
    edge starting from its first dart.
    """
    dart: int
    cut: int = 0

    @property
    def at_corner(self) -> bool:
        return self.cut == 0

    def to_json(self):
        kind = "corner" if self.cut == 0 else "side"
        out = {"kind": kind, "crossing": self.dart >> 2, "slot": self.dart & 3}
        if self.cut:
            out["cut"] = self.cut
        return out


@dataclass(frozen=True)
class CutArc:
    region: int
    start: BoundaryPoint
    end: BoundaryPoint


@dataclass(frozen=True)
class CutCircle:
    arcs: tuple[CutArc, ...]
    through: int | None = None            # crossing passed through (one-point circles)
    cut_edges: tuple[int, ...] = ()       # edges crossed, in order
    routing: tuple[tuple[int, int], ...] = ()  # (puncture index, side); side 0 = left

    def with_routing(self, routing) -> "CutCircle":
        return CutCircle(self.arcs, self.through, self.cut_edges, tuple(routing))

    def to_json(self):
        return {
            "through_crossing": self.through,
            "cut_edges": list(self.cut_edges),
            "arcs": [
                {"region": a.region, "from": a.start.to_json(), "to": a.end.to_json()}
                for a in self.arcs
            ],
            "routing": [{"puncture": i, "side": "left" if s == 0 else "right"}
                        for i, s in self.routing],
        }


@dataclass(frozen=True)
class SideClassification:
    euler: int
    punctures_inside: int
    genus: int
    crossings_inside: frozenset
    is_disk: bool

    def to_json(self):
        return {
            "euler": self.euler,
            "punctures_inside": self.punctures_inside,
            "genus": self.genus,
            "crossings_inside": sorted(self.crossings_inside),
            "is_disk": self.is_disk,
        }


@dataclass(frozen=True)
class TwoCutWitness:
    circle: CutCircle
    disk_side: SideClassification

    def to_json(self):
        return {"circle": self.circle.to_json(), "disk_side": self.disk_side.to_json()}


@dataclass(frozen=True)
class ReducedWitness:
    crossing: int
    circle: CutCircle
    disk_side: SideClassification

    def to_json(self):
        return {"crossing": self.crossing, "circle": self.circle.to_json(),
                "disk_side": self.disk_side.to_json()}


# --- cutting ---------------------------------------------------------------------

@dataclass(frozen=True)
class _Piece:
    chi: int                 # Euler characteristic of the piece of the capped surface
    crossings: frozenset


@dataclass(frozen=True)
class _CutGeometry:
    pieces: tuple[_Piece, ...]
    arc_left: tuple[int, ...]          # piece index left of each arc
    arc_right: tuple[int, ...]
    region_piece: dict                 # untraversed region -> piece index
    first_arc: dict                    # traversed region -> index of its first arc

    @property
    def separating(self) -> bool:
        return len(self.pieces) == 2


@lru_cache(maxsize=8)
def _face_index(n: int, edges: tuple):
    faces = _face_orbits(n, edges)
    region = [0] * (4 * n)
    position = [0] * (4 * n)
    for r, orbit in enumerate(faces):
        for i, k in enumerate(orbit):
            region[k] = r
            position[k] = i
    first = [0] * (2 * n)
    edge_of = [0] * (4 * n)
    for e, (a, b) in enumerate(edges):
        first[e] = 4 * a[0] + a[1]
        edge_of[4 * a[0] + a[1]] = e
        edge_of[4 * b[0] + b[1]] = e
    return faces, region, position, first, edge_of


def _key(point: BoundaryPoint, position, first, edge_of) -> tuple[int, int]:
    # Sort key of a boundary point within its region.  Side k runs from
    # crossing(k) to crossing(partner k), so cut order flips on the second dart.
    pos = position[point.dart]
    if point.cut == 0:
        return (2 * pos, 0)
    own = first[edge_of[point.dart]] == point.dart
    return (2 * pos + 1, point.cut if own else 3 - point.cut)


@lru_cache(maxsize=65536)
def _geometry(n: int, edges: tuple, arcs: tuple, through) -> _CutGeometry:
    faces, region, position, first, edge_of = _face_index(n, edges)
    partner = _partner(n, edges)

    m = len(arcs)
    if m == 0:
        raise MalformedCircleError("a circle needs at least one arc")

    cut_points: dict[tuple[int, int], int] = {}  # (edge, cut) -> index
    split = None  # (crossing, axis)
    for i, arc in enumerate(arcs):
        for p in (arc.start, arc.end):
            if not 0 <= p.dart < 4 * n or p.cut not in (0, 1, 2):
                raise MalformedCircleError(f"bad boundary point {p}")
            if region[p.dart] != arc.region:
                raise MalformedCircleError(f"arc {i}: point {p} is not on region {arc.region}")
        nxt = arcs[(i + 1) % m]
        a, b = arc.end, nxt.start
        if a.cut and b.cut:
            if partner[a.dart] != b.dart or a.cut != b.cut:
                raise MalformedCircleError(f"arcs {i} and {(i + 1) % m} do not meet at a cut point")
            key = (edge_of[a.dart], a.cut)
            if key in cut_points:
                raise MalformedCircleError("circle crosses the same cut point twice")
            cut_points[key] = len(cut_points)
        elif not a.cut and not b.cut:
            if a.dart >> 2 != b.dart >> 2 or (a.dart - b.dart) % 4 != 2:
                raise MalformedCircleError("consecutive corners are not opposite at a crossing")
            if through is None or a.dart >> 2 != through or split is not None:
                raise MalformedCircleError("unexpected passage through a crossing")
            split = (a.dart >> 2, a.dart & 1)
        else:
            raise MalformedCircleError("arc endpoints mix a corner and an edge point")
    if through is not None and split is None:
        raise MalformedCircleError("circle marked as passing a crossing but never does")

    # Chords per region, with endpoint keys.
    by_region: dict[int, list[tuple]] = {}
    for i, arc in enumerate(arcs):
        ks = _key(arc.start, position, first, edge_of)
        ke = _key(arc.end, position, first, edge_of)
        if ks == ke:
            raise MalformedCircleError(f"arc {i} is degenerate")
        by_region.setdefault(arc.region, []).append((ks, ke, i))
    for r, chords in by_region.items():
        for x in range(len(chords)):
            for y in range(x + 1, len(chords)):
                a, b, _ = chords[x]
                c, d, _ = chords[y]
                if len({a, b, c, d}) < 4 or chords_cross(a, b, c, d):
                    raise MalformedCircleError(f"arcs cross inside region {r}")

    ncut = [0] * (2 * n)
    for (e, _cut) in cut_points:
        ncut[e] += 1

    # Elements: crossings, two halves of a split crossing, segments of cut
    # edges, sub-faces of traversed regions.  Uncut edges and untouched
    # regions are glued straight onto their crossings.
    seg_base = {}
    total = n + 2
    for e in range(2 * n):
        if ncut[e]:
            seg_base[e] = total
            total += ncut[e] + 1
    face_base = {}
    sub_count = {}
    arc_sides: list[list] = [[None, None] for _ in range(m)]
    atom_sub: dict[int, dict] = {}
    for r in by_region:
        face_base[r] = total
        subs, left_right = _split_region(faces[r], by_region[r], cut_points, split, position, first, edge_of)
        atom_sub[r] = subs
        k = 1 + max(subs.values())
        sub_count[r] = k
        for i, (lsub, rsub) in left_right.items():
            arc_sides[i] = [total + lsub, total + rsub]
        total += k

    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    if split is None:
        def crossing_elem(c, slot):
            return c
    else:
        sc, ax = split

        def crossing_elem(c, slot):
            if c != sc:
                return c
            return n if (slot - ax) % 4 in (1, 2) else n + 1

    def segment(d, portion):
        e = edge_of[d]
        return seg_base[e] + (portion if first[e] == d else ncut[e] - portion)

    # corner k touches slot j+1 (arrival) then slot j (departure)
    for r, orbit in enumerate(faces):
        subs = atom_sub.get(r)
        if subs is None:
            base = crossing_elem(orbit[0] >> 2, (orbit[0] + 1) & 3)
            for k in orbit[1:]:
                union(base, crossing_elem(k >> 2, (k + 1) & 3))
            continue
        fb = face_base[r]
        for k in orbit:
            c = k >> 2
            j = k & 3
            if ("c", k, "before") in subs:
                union(fb + subs[("c", k, "before")], crossing_elem(c, (j + 1) & 3))
                union(fb + subs[("c", k, "after")], crossing_elem(c, j))
            else:
                union(fb + subs[("c", k, None)], crossing_elem(c, (j + 1) & 3))
            e = edge_of[k]
            if ncut[e]:
                for portion in range(ncut[e] + 1):
                    union(fb + subs[("s", k, portion)], segment(k, portion))
            else:
                union(fb + subs[("s", k, 0)], crossing_elem(c, j))
    for e, (a, b) in enumerate(edges):
        if ncut[e]:
            union(seg_base[e], crossing_elem(a[0], a[1]))
            union(seg_base[e] + ncut[e], crossing_elem(b[0], b[1]))
        else:
            union(crossing_elem(a[0], a[1]), crossing_elem(b[0], b[1]))

    roots: dict[int, int] = {}
    chi: list[int] = []
    crossings: list[set] = []

    def piece(x):
        rt = find(x)
        if rt not in roots:
            roots[rt] = len(chi)
            chi.append(0)
            crossings.append(set())
        return roots[rt]

    for c in range(n):
        if split is not None and c == split[0]:
            continue
        p = piece(c)
        chi[p] += 1
        crossings[p].add(c)
    if split is not None:
        chi[piece(n)] += 1
        chi[piece(n + 1)] += 1
    for e, (a, b) in enumerate(edges):
        if not ncut[e]:
            chi[piece(crossing_elem(a[0], a[1]))] -= 1
            continue
        for s in range(ncut[e] + 1):
            chi[piece(seg_base[e] + s)] -= 1
        for s in range(ncut[e]):  # each cut point becomes one vertex on each side
            chi[piece(seg_base[e] + s)] += 1
            chi[piece(seg_base[e] + s + 1)] += 1
    region_piece = {}
    for r, orbit in enumerate(faces):
        if r in face_base:
            for s in range(sub_count[r]):
                chi[piece(face_base[r] + s)] += 1
        else:
            p = piece(crossing_elem(orbit[0] >> 2, (orbit[0] + 1) & 3))
            chi[p] += 1
            region_piece[r] = p
    arc_left, arc_right = [], []
    for lft, rgt in arc_sides:
        pl, pr = piece(lft), piece(rgt)
        chi[pl] -= 1
        chi[pr] -= 1
        arc_left.append(pl)
        arc_right.append(pr)

    first_arc = {r: chords[0][2] for r, chords in by_region.items()}
    pieces = tuple(_Piece(chi[i], frozenset(crossings[i])) for i in range(len(chi)))
    return _CutGeometry(pieces, tuple(arc_left), tuple(arc_right), region_piece, first_arc)


def _split_region(orbit, chords, cut_points, split, position, first, edge_of):
    """Assign each boundary atom of a region to a sub-face cut out by chords.

    Returns ``(atom -> sub-face index, arc index -> (left sub, right sub))``.
    """
    endpoint_keys = {}
    for ks, ke, i in chords:
        endpoint_keys[ks] = (i, "start")
        endpoint_keys[ke] = (i, "end")

    items: list = []  # atoms and ("EP", key) markers in boundary order
    for k in orbit:
        pos = position[k]
        ck = (2 * pos, 0)
        if ck in endpoint_keys:
            items += [("c", k, "before"), ("EP", ck), ("c", k, "after")]
        else:
            items.append(("c", k, None))
        e = edge_of[k]
        cuts = sorted(
            (cut if first[e] == k else 3 - cut) for (ee, cut) in cut_points if ee == e
        )
        items.append(("s", k, 0))
        for idx, t in enumerate(cuts):
            items += [("EP", (2 * pos + 1, t)), ("s", k, idx + 1)]

    ep_positions = [i for i, it in enumerate(items) if it[0] == "EP"]
    # rotate so the list starts right after an endpoint
    start = ep_positions[0] + 1
    items = items[start:] + items[:start]
    ep_positions = [i for i, it in enumerate(items) if it[0] == "EP"]
    n_ep = len(ep_positions)
    # boundary arc j runs after endpoint j-1 up to endpoint j; arc index = index of the following endpoint
    arc_of_item = {}
    j = 0
    for idx, it in enumerate(items):
        if it[0] == "EP":
            j += 1
        else:
            arc_of_item[it] = j % n_ep
    # endpoint j (the j-th EP) is followed by boundary arc j+1
    ep_index = {items[p][1]: t for t, p in enumerate(ep_positions)}
    partner_ep = {}
    for ks, ke, i in chords:
        partner_ep[ep_index[ks]] = ep_index[ke]
        partner_ep[ep_index[ke]] = ep_index[ks]

    parent = list(range(n_ep))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # arcs are numbered by the endpoint that ends them: arc t ends at EP t,
    # and the arc after EP t is arc t+1.  A sub-face walk follows arc t to
    # EP t, jumps along the chord to its partner EP u, then continues on arc u+1.
    for t in range(n_ep):
        u = partner_ep[t]
        a, b = find(t), find((u + 1) % n_ep)
        if a != b:
            parent[a] = b
    labels: dict[int, int] = {}
    sub_of_arc = {}
    for t in range(n_ep):
        rt = find(t)
        if rt not in labels:
            labels[rt] = len(labels)
        sub_of_arc[t] = labels[rt]
    subs = {atom: sub_of_arc[a] for atom, a in arc_of_item.items()}

    left_right = {}
    for ks, ke, i in chords:
        after_end = (ep_index[ke] + 1) % n_ep
        after_start = (ep_index[ks] + 1) % n_ep
        left_right[i] = (sub_of_arc[after_end], sub_of_arc[after_start])
    return subs, left_right


# --- public API ------------------------------------------------------------------

def _classify(piece: _Piece, punctures: int, separating: bool, crossings) -> SideClassification:
    euler = piece.chi - punctures
    genus = (1 - piece.chi) // 2 if separating else -piece.chi // 2
    return SideClassification(
        euler=euler,
        punctures_inside=punctures,
        genus=genus,
        crossings_inside=frozenset(crossings),
        is_disk=euler == 1 and genus == 0 and punctures == 0,
    )


def cut_and_classify(d: Diagram, rm: RegionMap, circle: CutCircle):
    """Cut the capped surface along ``circle`` and classify the two sides.

    Returns ``(left, right)`` relative to the orientation of the first arc.
    A non-separating circle leaves one piece, returned on both sides.
    Punctures of traversed regions follow ``circle.routing`` (right when
    unlisted); a crossing the circle passes through belongs to neither side.
    """
    geo = _geometry(d.n_crossings, d.edges, circle.arcs, circle.through)
    left, right = geo.arc_left[0], geo.arc_right[0]
    routed = dict(circle.routing)
    count = [0] * len(geo.pieces)
    for i, r in enumerate(rm.puncture_regions):
        if r in geo.region_piece:
            count[geo.region_piece[r]] += 1
        else:
            count[left if routed.get(i, 1) == 0 else right] += 1
    sep = geo.separating
    if not sep:
        p = geo.pieces[0]
        side = _classify(p, count[0], False, p.crossings)
        return side, side
    pl, pr = geo.pieces[left], geo.pieces[right]
    return (_classify(pl, count[left], True, pl.crossings),
            _classify(pr, count[right], True, pr.crossings))


def _traversed_punctures(rm: RegionMap, circle: CutCircle) -> list[int]:
    regions = {a.region for a in circle.arcs}
    return [i for i, r in enumerate(rm.puncture_regions) if r in regions]


def _disk_sides(d: Diagram, rm: RegionMap, circle: CutCircle):
    """Yield ``(routed circle, side)`` for each side that can be made a disk."""
    movable = _traversed_punctures(rm, circle)
    for tested in (0, 1):
        routed = circle.with_routing((i, 1 - tested) for i in movable)
        sides = cut_and_classify(d, rm, routed)
        if sides[tested].is_disk:
            yield routed, sides[tested]


def reduced_candidates(d: Diagram, rm: RegionMap) -> Iterator[CutCircle]:
    """Circles through one crossing, joining a pair of opposite corners in their common region."""
    ctr = rm.corner_to_region
    for c in range(d.n_crossings):
        for axis in (0, 1):
            a, b = 4 * c + axis, 4 * c + axis + 2
            if ctr[a] != ctr[b]:
                continue
            arc = CutArc(ctr[a], BoundaryPoint(b), BoundaryPoint(a))
            yield CutCircle((arc,), through=c)


def two_point_candidates(d: Diagram, rm: RegionMap) -> Iterator[CutCircle]:
    """Circles crossing the diagram at two edge points, in (e1, e2, routing) order."""
    ctr = rm.corner_to_region
    partner = d.partner
    for e1 in range(d.n_edges):
        a1, b1 = d.edge_darts(e1)
        for e2 in range(e1, d.n_edges):
            if e2 == e1:
                arcs = (
                    CutArc(ctr[a1], BoundaryPoint(a1, 1), BoundaryPoint(a1, 2)),
                    CutArc(ctr[b1], BoundaryPoint(b1, 2), BoundaryPoint(b1, 1)),
                )
                yield CutCircle(arcs, cut_edges=(e1, e1))
                continue
            for x2 in d.edge_darts(e2):
                y2 = partner[x2]
                if ctr[a1] != ctr[x2] or ctr[b1] != ctr[y2]:
                    continue
                arcs = (
                    CutArc(ctr[a1], BoundaryPoint(a1, 1), BoundaryPoint(x2, 1)),
                    CutArc(ctr[y2], BoundaryPoint(y2, 1), BoundaryPoint(b1, 1)),
                )
                circle = CutCircle(arcs, cut_edges=(e1, e2))
                try:
                    _geometry(d.n_crossings, d.edges, circle.arcs, None)
                except MalformedCircleError:
                    continue  # the two chords would cross inside a shared region
                yield circle


def check_reduced(d: Diagram, rm: RegionMap) -> ReducedWitness | None:
    """First one-point circle bounding a disk, or None when the diagram is reduced."""
    for circle in reduced_candidates(d, rm):
        for routed, side in _disk_sides(d, rm, circle):
            return ReducedWitness(circle.through, routed, side)
    return None


def check_weakly_prime(d: Diagram, rm: RegionMap) -> TwoCutWitness | None:
    """First two-point circle with a crossing-bearing disk side, or None."""
    for circle in two_point_candidates(d, rm):
        for routed, side in _disk_sides(d, rm, circle):
            if side.crossings_inside:
                return TwoCutWitness(routed, side)
    return None
