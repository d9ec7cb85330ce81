"""
Named hypergraph families with canonical vertex labels.

    cycle(ℓ)               x1..xℓ, edges {xi, xi+1} and {xℓ, x1}
    complete_bipartite(m,n) x1..xm, y1..yn
    hyperclique(ℓ,k)        all k-subsets of x1..xℓ
    almost_clique(ℓ,k)      ℓ-clique where x1 only reaches x2..x(k+1)
    boat()                  Q_b, three length-3 paths between x1 and x8
    hyper_boat()            Q_hb, two triangles y/z joined by {yi, zi}
"""

from enum import Enum
from itertools import combinations

from ..error_handler import InputError
from ..hypergraph import Hypergraph


class FamilyName(Enum):
    CYCLE = "cycle"
    COMPLETE_BIPARTITE = "complete_bipartite"
    HYPERCLIQUE = "hyperclique"
    ALMOST_CLIQUE = "almost_clique"
    BOAT = "boat"
    HYPER_BOAT = "hyper_boat"
    EXAMPLE = "example"
    PATH = "path"
    STAR = "star"


def _xs(count: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def cycle(length: int) -> Hypergraph:
    if length < 3:
        raise InputError(f"cycle length must be >= 3, got {length}")
    return Hypergraph.from_edges(
        [(i, (i + 1) % length) for i in range(length)], n=length, labels=_xs(length)
    )


def path(length: int) -> Hypergraph:
    """Path on *length* vertices."""
    if length < 2:
        raise InputError(f"path needs >= 2 vertices, got {length}")
    return Hypergraph.from_edges([(i, i + 1) for i in range(length - 1)], n=length, labels=_xs(length))


def star(leaves: int) -> Hypergraph:
    if leaves < 1:
        raise InputError(f"star needs >= 1 leaf, got {leaves}")
    labels = ["c"] + _xs(leaves)
    return Hypergraph.from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1, labels=labels)


def complete_bipartite(m: int, n: int) -> Hypergraph:
    if m < 1 or n < 1:
        raise InputError(f"complete_bipartite needs m, n >= 1, got ({m}, {n})")
    labels = _xs(m) + _xs(n, "y")
    return Hypergraph.from_edges([(i, m + j) for i in range(m) for j in range(n)], n=m + n, labels=labels)


def hyperclique(length: int, k: int) -> Hypergraph:
    if not 1 < k <= length:
        raise InputError(f"hyperclique needs 1 < k <= ℓ, got (ℓ={length}, k={k})")
    return Hypergraph.from_edges(combinations(range(length), k), n=length, labels=_xs(length))


def almost_clique(length: int, k: int) -> Hypergraph:
    if not 1 <= k < length - 1:
        raise InputError(f"almost_clique needs 1 <= k < ℓ-1, got (ℓ={length}, k={k})")
    edges = [(u, w) for u, w in combinations(range(length), 2) if u != 0 or w <= k]
    return Hypergraph.from_edges(edges, n=length, labels=_xs(length))


def boat() -> Hypergraph:
    names = _xs(8)
    edges = [
        ("x1", "x2"),
        ("x1", "x4"),
        ("x1", "x6"),
        ("x2", "x3"),
        ("x4", "x5"),
        ("x6", "x7"),
        ("x3", "x8"),
        ("x5", "x8"),
        ("x7", "x8"),
    ]
    return Hypergraph.from_labelled(names, edges)


def hyper_boat() -> Hypergraph:
    names = ["y1", "y2", "y3", "z1", "z2", "z3"]
    edges = [
        ("y1", "y2", "y3"),
        ("z1", "z2", "z3"),
        ("y1", "z1"),
        ("y2", "z2"),
        ("y3", "z3"),
    ]
    return Hypergraph.from_labelled(names, edges)


def example() -> Hypergraph:
    """The four-vertex hypergraph with edges {x1,x2,x3}, {x1,y}, {x2,y}, {x3,y}."""
    names = ["x1", "x2", "x3", "y"]
    return Hypergraph.from_labelled(names, [("x1", "x2", "x3"), ("x1", "y"), ("x2", "y"), ("x3", "y")])


_BUILDERS = {
    FamilyName.CYCLE: (cycle, 1),
    FamilyName.COMPLETE_BIPARTITE: (complete_bipartite, 2),
    FamilyName.HYPERCLIQUE: (hyperclique, 2),
    FamilyName.ALMOST_CLIQUE: (almost_clique, 2),
    FamilyName.BOAT: (boat, 0),
    FamilyName.HYPER_BOAT: (hyper_boat, 0),
    FamilyName.EXAMPLE: (example, 0),
    FamilyName.PATH: (path, 1),
    FamilyName.STAR: (star, 1),
}


def parse_family_name(name: str | FamilyName) -> FamilyName:
    if isinstance(name, FamilyName):
        return name
    try:
        return FamilyName(name.lower().replace("-", "_"))
    except ValueError as e:
        known = ", ".join(f.value for f in FamilyName)
        raise InputError(f"unknown family {name!r} (known: {known})", original_error=e)


def family(name: str | FamilyName, *params: int) -> Hypergraph:
    """Build a named family member, e.g. family("cycle", 6) or family("hyper_boat")."""
    builder, arity = _BUILDERS[parse_family_name(name)]
    if len(params) != arity:
        raise InputError(f"family {name} takes {arity} parameter(s), got {len(params)}")
    return builder(*(int(p) for p in params))
