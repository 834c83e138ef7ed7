"""Link diagrams on closed orientable surfaces, encoded as rotation systems.

A diagram with ``N`` crossings has ``4N`` darts.  Dart ``(c, s)`` is the arm of
crossing ``c`` in counterclockwise slot ``s``; internally it is the integer
``4*c + s``.  The edges pair darts up, the cyclic slot order at each crossing is
the rotation, and together they determine a cellular embedding of the
projection graph in a closed orientable surface (the capped surface).

Puncture marks sit in face corners.  Corner ``(c, j)`` is the wedge between
slots ``j`` and ``j+1``; a mark there deletes a small disk from the face
containing that wedge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence


class Dart(NamedTuple):
    crossing: int
    slot: int


class Corner(NamedTuple):
    crossing: int
    index: int


class DiagramError(ValueError):
    """Raised for structurally invalid diagram data."""


class SKDSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def dart_id(dart: Dart) -> int:
    return 4 * dart[0] + dart[1]


def rotate_ccw(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def rotate_cw(d: int) -> int:
    return (d & ~3) | ((d - 1) & 3)


def through(d: int) -> int:
    """The dart continuing the same strand across the crossing."""
    return (d & ~3) | ((d + 2) & 3)


@dataclass(frozen=True)
class Diagram:
    n_crossings: int
    edges: tuple[tuple[Dart, Dart], ...]
    over: tuple[int, ...]
    punctures: tuple[Corner, ...] = field(default=())

    def __post_init__(self):
        n = self.n_crossings
        if not isinstance(n, int) or n < 1:
            raise DiagramError("a diagram needs at least one crossing")
        edges = tuple((Dart(*a), Dart(*b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "over", tuple(int(a) for a in self.over))
        object.__setattr__(self, "punctures", tuple(Corner(*p) for p in self.punctures))

        seen: dict[Dart, int] = {}
        for i, (a, b) in enumerate(edges):
            for dart in (a, b):
                if not (0 <= dart.crossing < n):
                    raise DiagramError(f"edge {i}: crossing index {dart.crossing} out of range")
                if not (0 <= dart.slot < 4):
                    raise DiagramError(f"edge {i}: slot {dart.slot} out of range")
            if a == b:
                raise DiagramError(f"edge {i}: dart paired with itself {tuple(a)}")
            for dart in (a, b):
                if dart in seen:
                    raise DiagramError(
                        f"dart {tuple(dart)} referenced twice (edges {seen[dart]} and {i})")
                seen[dart] = i
        if len(seen) != 4 * n:
            missing = next(Dart(c, s) for c in range(n) for s in range(4) if Dart(c, s) not in seen)
            raise DiagramError(f"dart {tuple(missing)} unreferenced")
        if len(self.over) != n or any(a not in (0, 1) for a in self.over):
            raise DiagramError("over axis must be 0 or 1 for every crossing")
        for p in self.punctures:
            if not (0 <= p.crossing < n) or not (0 <= p.index < 4):
                raise DiagramError(f"puncture corner {tuple(p)} out of range")

    @property
    def n_darts(self) -> int:
        return 4 * self.n_crossings

    @property
    def n_edges(self) -> int:
        return 2 * self.n_crossings

    @cached_property
    def partner(self) -> tuple[int, ...]:
        """Edge involution on dart ids."""
        return _partner(self.n_crossings, self.edges)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, (a, b) in enumerate(self.edges):
            out[dart_id(a)] = i
            out[dart_id(b)] = i
        return tuple(out)

    def edge_darts(self, e: int) -> tuple[int, int]:
        a, b = self.edges[e]
        return dart_id(a), dart_id(b)

    def is_over(self, d: int) -> bool:
        return (d & 3) % 2 == self.over[d >> 2]

    def with_punctures(self, punctures: Iterable[Sequence[int]]) -> "Diagram":
        return Diagram(self.n_crossings, self.edges, self.over, tuple(punctures))


@lru_cache(maxsize=256)
def _partner(n: int, edges: tuple) -> tuple[int, ...]:
    out = [0] * (4 * n)
    for a, b in edges:
        out[dart_id(a)] = dart_id(b)
        out[dart_id(b)] = dart_id(a)
    return tuple(out)


@lru_cache(maxsize=256)
def _face_orbits(n: int, edges: tuple) -> tuple[tuple[int, ...], ...]:
    # Face permutation: cross the edge, then step clockwise.  The face lies to
    # the left of the walk and corner k is the wedge the walk leaves through
    # along dart k.
    partner = _partner(n, edges)
    seen = [False] * (4 * n)
    faces = []
    for start in range(4 * n):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = rotate_cw(partner[d])
        faces.append(tuple(orbit))
    return tuple(faces)


def face_orbits(d: Diagram) -> tuple[tuple[int, ...], ...]:
    """Faces of the capped surface as cyclic sequences of corner ids."""
    return _face_orbits(d.n_crossings, d.edges)


# --- SKD text format -------------------------------------------------------

_PAIR = r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)"
_RE_CROSSINGS = re.compile(r"^crossings\s+(\S+)$")
_RE_EDGE = re.compile(rf"^edge\s+{_PAIR}\s*{_PAIR}$")
_RE_OVER = re.compile(r"^over\s+(-?\d+)\s+(-?\d+)$")
_RE_PUNCTURE = re.compile(rf"^puncture\s+{_PAIR}$")


def parse_diagram(text: str) -> Diagram:
    n = None
    edges: list[tuple[Dart, Dart]] = []
    over: dict[int, int] = {}
    punctures: list[Corner] = []
    dart_line: dict[Dart, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        word = stripped.split()[0]

        if n is None:
            m = _RE_CROSSINGS.match(stripped)
            if not m:
                raise SKDSyntaxError("expected 'crossings N' as the first directive", lineno, col)
            if not m.group(1).isdigit() or int(m.group(1)) < 1:
                raise SKDSyntaxError("crossing count must be a positive integer", lineno,
                                     col + stripped.index(m.group(1)))
            n = int(m.group(1))
            continue

        if word == "edge":
            m = _RE_EDGE.match(stripped)
            if not m:
                raise SKDSyntaxError("malformed edge line, expected 'edge (c,s) (c,s)'", lineno, col)
            c1, s1, c2, s2 = map(int, m.groups())
            a, b = Dart(c1, s1), Dart(c2, s2)
            for dart, g in ((a, 1), (b, 3)):
                if not 0 <= dart.crossing < n:
                    raise SKDSyntaxError(f"crossing index {dart.crossing} out of range",
                                         lineno, col + m.start(g))
                if not 0 <= dart.slot < 4:
                    raise SKDSyntaxError(f"slot {dart.slot} out of range", lineno, col + m.start(g + 1))
            if a == b:
                raise SKDSyntaxError("dart paired with itself", lineno, col + m.start(3))
            for dart, g in ((a, 1), (b, 3)):
                if dart in dart_line:
                    raise SKDSyntaxError(
                        f"dart {tuple(dart)} referenced twice (first on line {dart_line[dart]})",
                        lineno, col + m.start(g))
                dart_line[dart] = lineno
            edges.append((a, b))
        elif word == "over":
            m = _RE_OVER.match(stripped)
            if not m:
                raise SKDSyntaxError("malformed over line, expected 'over c A'", lineno, col)
            c, axis = map(int, m.groups())
            if not 0 <= c < n:
                raise SKDSyntaxError(f"crossing index {c} out of range", lineno, col + m.start(1))
            if axis not in (0, 1):
                raise SKDSyntaxError("over axis must be 0 or 1", lineno, col + m.start(2))
            if c in over:
                raise SKDSyntaxError(f"duplicate over-axis declaration for crossing {c}", lineno, col)
            over[c] = axis
        elif word == "puncture":
            m = _RE_PUNCTURE.match(stripped)
            if not m:
                raise SKDSyntaxError("malformed puncture line, expected 'puncture (c,j)'", lineno, col)
            c, j = map(int, m.groups())
            if not 0 <= c < n:
                raise SKDSyntaxError(f"crossing index {c} out of range", lineno, col + m.start(1))
            if not 0 <= j < 4:
                raise SKDSyntaxError(f"corner index {j} out of range", lineno, col + m.start(2))
            punctures.append(Corner(c, j))
        elif word == "crossings":
            raise SKDSyntaxError("duplicate 'crossings' directive", lineno, col)
        else:
            raise SKDSyntaxError(f"unknown directive {word!r}", lineno, col)

    last = len(text.splitlines()) + 1
    if n is None:
        raise SKDSyntaxError("missing 'crossings N' directive", 1)
    for c in range(n):
        for s in range(4):
            if Dart(c, s) not in dart_line:
                raise SKDSyntaxError(f"dart {(c, s)} unreferenced", last)
    for c in range(n):
        if c not in over:
            raise SKDSyntaxError(f"missing over-axis declaration for crossing {c}", last)
    return Diagram(n, tuple(edges), tuple(over[c] for c in range(n)), tuple(punctures))


def serialize_diagram(d: Diagram) -> str:
    lines = [f"crossings {d.n_crossings}"]
    for a, b in d.edges:
        lines.append(f"edge ({a.crossing},{a.slot}) ({b.crossing},{b.slot})")
    for c, axis in enumerate(d.over):
        lines.append(f"over {c} {axis}")
    for p in d.punctures:
        lines.append(f"puncture ({p.crossing},{p.index})")
    return "\n".join(lines) + "\n"


# --- structure ---------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    alternating: bool
    has_crossing: bool
    surface_is_disk: bool
    capped_genus: int
    n_boundary: int
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.connected and self.alternating and self.has_crossing


def _dart_components(d: Diagram) -> list[list[int]]:
    parent = list(range(d.n_crossings))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        ra, rb = find(a.crossing), find(b.crossing)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for c in range(d.n_crossings):
        groups.setdefault(find(c), []).append(c)
    return list(groups.values())


def is_connected(d: Diagram) -> bool:
    return len(_dart_components(d)) == 1


def check_alternating(d: Diagram) -> bool:
    """Every edge has exactly one endpoint on its crossing's over-axis."""
    return all(d.is_over(dart_id(a)) != d.is_over(dart_id(b)) for a, b in d.edges)


def euler_characteristic(d: Diagram) -> int:
    return d.n_crossings - d.n_edges + len(face_orbits(d))


def capped_genus(d: Diagram) -> int:
    """Genus of the capped surface, summed over connected pieces."""
    faces = face_orbits(d)
    comps = _dart_components(d)
    if len(comps) == 1:
        return (2 - euler_characteristic(d)) // 2
    which = {}
    for i, comp in enumerate(comps):
        for c in comp:
            which[c] = i
    chi = [-len(comp) for comp in comps]  # V - E per piece, E = 2V
    for f in faces:
        chi[which[f[0] >> 2]] += 1
    return sum((2 - x) // 2 for x in chi)


def validate_structure(d: Diagram) -> ValidationReport:
    messages = []
    comps = _dart_components(d)
    connected = len(comps) == 1
    if not connected:
        messages.append(f"projection graph has {len(comps)} connected components")
    alternating = check_alternating(d)
    if not alternating:
        bad = [i for i, (a, b) in enumerate(d.edges)
               if d.is_over(dart_id(a)) == d.is_over(dart_id(b))]
        messages.append(f"not alternating along edges {bad}")
    genus = capped_genus(d)
    k = len(d.punctures)
    is_disk = connected and genus == 0 and k == 1
    if is_disk:
        messages.append("surface is a disk (sphere with one puncture)")
    if k == 0:
        messages.append("no punctures: the surface is closed")
    return ValidationReport(
        connected=connected,
        alternating=alternating,
        has_crossing=d.n_crossings >= 1,
        surface_is_disk=is_disk,
        capped_genus=genus,
        n_boundary=k,
        messages=tuple(messages),
    )


def handlebody_genus(g: int, k: int) -> int:
    """Genus of the handlebody F x I for F of genus g with k boundary circles."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    if k < 1:
        raise ValueError("a closed surface does not thicken to a handlebody")
    return 2 * g + (k - 1)


# --- link components -----------------------------------------------------------

@dataclass(frozen=True)
class LinkComponent:
    """One closed strand: the crossings it visits in order and whether it
    passes over at each visit."""
    darts: tuple[int, ...]
    crossings: tuple[int, ...]
    over: tuple[bool, ...]

    @property
    def alternates(self) -> bool:
        m = len(self.over)
        return all(self.over[i] != self.over[(i + 1) % m] for i in range(m))


def trace_link_components(d: Diagram) -> list[LinkComponent]:
    partner = d.partner
    used = [False] * d.n_darts
    out = []
    for start in range(d.n_darts):
        if used[start]:
            continue
        darts, crossings, over = [], [], []
        x = start
        while True:
            used[x] = True
            y = partner[x]
            used[y] = True
            darts.append(x)
            crossings.append(y >> 2)
            over.append(d.is_over(y))
            x = through(y)
            if x == start:
                break
        out.append(LinkComponent(tuple(darts), tuple(crossings), tuple(over)))
    return out


# --- transformations -----------------------------------------------------------

def relabel(d: Diagram, perm: Sequence[int], rotation: Sequence[int] | None = None) -> Diagram:
    """Rename crossing c to perm[c] and turn its slots by rotation[c] steps."""
    n = d.n_crossings
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of the crossings")
    rot = list(rotation) if rotation is not None else [0] * n

    def mv(x):
        return (perm[x[0]], (x[1] + rot[x[0]]) % 4)

    over = [0] * n
    for c in range(n):
        over[perm[c]] = (d.over[c] + rot[c]) % 2
    return Diagram(
        n,
        tuple((mv(a), mv(b)) for a, b in d.edges),
        tuple(over),
        tuple(mv(p) for p in d.punctures),
    )


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing; the projection is unchanged."""
    return Diagram(d.n_crossings, d.edges, tuple(1 - a for a in d.over), d.punctures)


def reverse_orientation(d: Diagram) -> Diagram:
    """Reflect the surface by reversing every rotation."""
    def mv(x):
        return (x[0], (-x[1]) % 4)

    return Diagram(
        d.n_crossings,
        tuple((mv(a), mv(b)) for a, b in d.edges),
        d.over,
        tuple((p[0], (-p[1] - 1) % 4) for p in d.punctures),
    )


def solve_alternating_axes(n: int, edges: Sequence, fix: tuple[int, int] = (0, 0)):
    """Over-axes making the map alternating, or None when none exist.

    Solutions come in complementary pairs on each connected piece; ``fix`` pins
    one crossing's axis to choose between them.
    """
    # Per edge: axis[c] xor axis[c'] == s xor s' xor 1 (mod 2).
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b in edges:
        a, b = Dart(*a), Dart(*b)
        w = (a.slot + b.slot + 1) % 2
        adj[a.crossing].append((b.crossing, w))
        adj[b.crossing].append((a.crossing, w))
    axis = [-1] * n
    for root in [fix[0]] + list(range(n)):
        if axis[root] != -1:
            continue
        axis[root] = fix[1] if root == fix[0] else 0
        stack = [root]
        while stack:
            c = stack.pop()
            for c2, w in adj[c]:
                want = axis[c] ^ w
                if axis[c2] == -1:
                    axis[c2] = want
                    stack.append(c2)
                elif axis[c2] != want:
                    return None
    return tuple(axis)
