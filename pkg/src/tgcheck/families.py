"""Generated diagram families: twist knots and chains, torus grids, curls, sums."""

from __future__ import annotations

from .diagram import Dart, Diagram, DiagramError, capped_genus, check_alternating, solve_alternating_axes

# Slot directions used when laying out planar families: 0=NE, 1=NW, 2=SW, 3=SE.
NE, NW, SW, SE = 0, 1, 2, 3


def _alternating(n: int, edges: list) -> Diagram:
    axes = solve_alternating_axes(n, edges)
    if axes is None:
        raise DiagramError("family produced a map with no alternating assignment")
    return Diagram(n, tuple(edges), axes)


def twist(k: int, closure: str = "clasp") -> Diagram:
    """Alternating k-crossing diagram on the sphere built from a twist region.

    ``closure="clasp"``: twist knot, k-2 half twists closed by a clasp
    (k=3 trefoil, k=4 figure-eight, k=5 the 5-crossing twist knot).
    ``closure="torus"``: the (2,k) torus link, a closed chain of k bigons
    (k=2 is the Hopf clasp).
    """
    if closure == "clasp":
        if k < 3:
            raise ValueError("twist knots need k >= 3")
        n = k - 2
    elif closure == "torus":
        if k < 2:
            raise ValueError("(2,k) chains need k >= 2")
        n = k
    else:
        raise ValueError(f"unknown closure {closure!r}")

    edges = []
    for i in range(n - 1):
        edges.append(((i, NE), (i + 1, NW)))
        edges.append(((i, SE), (i + 1, SW)))
    last = n - 1
    if closure == "torus":
        edges.append(((last, NE), (0, NW)))
        edges.append(((last, SE), (0, SW)))
        return _alternating(n, edges)

    top, bottom = n, n + 1
    edges += [
        ((last, NE), (top, NW)),
        ((last, SE), (bottom, SW)),
        ((top, SW), (bottom, NW)),
        ((top, SE), (bottom, NE)),
        ((top, NE), (0, NW)),
        ((bottom, SE), (0, SW)),
    ]
    return _alternating(k, edges)


def grid(p: int, q: int) -> Diagram:
    """p horizontal and q vertical circles on the torus, meeting in p*q crossings.

    Slots here are 0=E, 1=N, 2=W, 3=S.  Alternation around each circle needs
    p and q even.
    """
    if p < 2 or q < 2 or p % 2 or q % 2:
        raise ValueError("grid(p, q) is alternating only for even p, q >= 2")

    def c(i, j):
        return (i % p) * q + (j % q)

    edges = []
    for i in range(p):
        for j in range(q):
            edges.append(((c(i, j), 0), (c(i, j + 1), 2)))
            edges.append(((c(i, j), 1), (c(i + 1, j), 3)))
    return _alternating(p * q, edges)


def curl() -> Diagram:
    """The one-crossing map on the torus: both edges are loops through opposite slots."""
    return Diagram(1, (((0, 0), (0, 2)), ((0, 1), (0, 3))), (0,), ((0, 0),))


def connected_sum(d1: Diagram, d2: Diagram, e1: int = 0, e2: int = 0) -> Diagram:
    """Join two unpunctured diagrams by cutting edge e1 of d1 and e2 of d2.

    Of the two ways to reconnect the four loose ends, the one adding the
    genera is used; d2 is mirrored if needed to keep the result alternating.
    """
    if d1.punctures or d2.punctures:
        raise ValueError("connected sums are formed before staking")
    n1 = d1.n_crossings
    shifted = [((a.crossing + n1, a.slot), (b.crossing + n1, b.slot)) for a, b in d2.edges]
    (a, b), (c, d) = d1.edges[e1], shifted[e2]
    rest = [x for i, x in enumerate(d1.edges) if i != e1] + [x for i, x in enumerate(shifted) if i != e2]
    n = n1 + d2.n_crossings
    target = capped_genus(d1) + capped_genus(d2)
    for join in (((a, c), (b, d)), ((a, d), (b, c))):
        edges = tuple(rest + list(join))
        for over2 in (d2.over, tuple(1 - x for x in d2.over)):
            cand = Diagram(n, edges, d1.over + over2)
            if capped_genus(cand) == target and check_alternating(cand):
                return cand
    raise DiagramError("no genus-additive alternating reconnection")


def add_kink(d: Diagram, e: int) -> Diagram:
    """Insert a Reidemeister-I kink (a new crossing with a monogon) on edge e."""
    n = d.n_crossings
    a, b = d.edges[e]
    rest = [x for i, x in enumerate(d.edges) if i != e]
    target = capped_genus(d)
    for in_slot, out_slot in ((2, 3), (3, 2)):
        edges = rest + [((n, 0), (n, 1)), (a, (n, in_slot)), ((n, out_slot), b)]
        axes = solve_alternating_axes(n + 1, edges, fix=(0, d.over[0]))
        if axes is None:
            continue
        cand = Diagram(n + 1, tuple(edges), axes, d.punctures)
        if capped_genus(cand) == target:
            return cand
    raise DiagramError("could not insert an alternating kink")


FAMILIES = ("twist", "grid", "sum", "curl")


def parse_family_term(term: str) -> Diagram:
    """Parse a short family term: ``twist:5``, ``twist:4:torus``, ``grid:2x4``, ``curl``."""
    parts = term.split(":")
    name = parts[0]
    try:
        if name == "twist":
            closure = parts[2] if len(parts) > 2 else "clasp"
            return twist(int(parts[1]), closure)
        if name == "grid":
            p, q = parts[1].lower().split("x")
            return grid(int(p), int(q))
        if name == "curl" and len(parts) == 1:
            return curl()
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad family term {term!r}: {exc}") from None
    raise ValueError(f"bad family term {term!r}")


def generate(family: str, params: dict[str, str]) -> Diagram:
    if family == "twist":
        return twist(int(params.get("k", 3)), params.get("closure", "clasp"))
    if family == "grid":
        return grid(int(params.get("p", 2)), int(params.get("q", 2)))
    if family == "curl":
        return curl()
    if family == "sum":
        left = parse_family_term(params.get("left", "twist:3"))
        right = parse_family_term(params.get("right", "twist:3"))
        return connected_sum(left.with_punctures(()), right.with_punctures(()))
    raise ValueError(f"unknown family {family!r}")
