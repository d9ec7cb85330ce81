"""
Hypergraphs over dense vertex indices, with subsets represented as bitmasks.

Every other module builds on the predicates defined here: connectivity of a
vertex subset, touching of two subsets, and the ordered list of connected
subsets that fixes variable order for the optimization models.
"""

import threading
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from cachetools import LRUCache, cached

from .config import toolkit_config
from .error_handler import InputError

VertexSet = int


def bits(mask: VertexSet) -> Iterator[int]:
    """Yield the indices set in *mask*, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> VertexSet:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count, ordered hyperedges (bitmasks) and display labels.

    Instances are immutable and hashable, so they can key caches and be
    shared across threads.
    """

    n: int
    edges: tuple[VertexSet, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a hypergraph needs at least one vertex")
        if self.n > toolkit_config.max_vertices:
            raise InputError(f"{self.n} vertices exceed the supported maximum of {toolkit_config.max_vertices}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        if len(self.labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.n:
            raise InputError("vertex labels must be distinct")
        full = (1 << self.n) - 1
        seen = set()
        covered = 0
        for index, e in enumerate(self.edges):
            if e == 0:
                raise InputError(f"edge {index} is empty")
            if e & ~full:
                raise InputError(f"edge {index} references a vertex outside 0..{self.n - 1}")
            if e in seen:
                raise InputError(f"duplicate edge {self.format_set(e)}")
            seen.add(e)
            covered |= e
        if covered != full:
            missing = ", ".join(self.labels[v] for v in bits(full & ~covered))
            raise InputError(f"vertices not covered by any edge: {missing}")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(
        cls, edges: Iterable[Iterable[int]], n: int | None = None, labels: Sequence[str] | None = None
    ) -> "Hypergraph":
        edge_list = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((v for e in edge_list for v in e), default=-1)
        for e in edge_list:
            for v in e:
                if not 0 <= v < n:
                    raise InputError(f"vertex index {v} out of range 0..{n - 1}")
        return cls(n=n, edges=tuple(mask_of(e) for e in edge_list), labels=tuple(labels or ()))

    @classmethod
    def from_labelled(cls, vertex_names: Sequence[str], edges: Iterable[Iterable[str]]) -> "Hypergraph":
        index = {name: i for i, name in enumerate(vertex_names)}
        if len(index) != len(vertex_names):
            raise InputError("duplicate vertex names")
        masks = []
        for e in edges:
            names = list(e)
            unknown = [name for name in names if name not in index]
            if unknown:
                raise InputError(f"unknown vertex name(s): {' '.join(unknown)}")
            masks.append(mask_of(index[name] for name in names))
        return cls(n=len(vertex_names), edges=tuple(masks), labels=tuple(vertex_names))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def full(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise InputError(f"unknown vertex name {label!r}", original_error=e)

    def set_of(self, names: Iterable[str]) -> VertexSet:
        return mask_of(self.index(name) for name in names)

    def names(self, s: VertexSet) -> list[str]:
        return [self.labels[v] for v in bits(s)]

    def format_set(self, s: VertexSet) -> str:
        return "{" + ",".join(self.names(s)) + "}"

    def is_graph(self) -> bool:
        return all(e.bit_count() == 2 for e in self.edges)

    def check_subset(self, s: VertexSet) -> None:
        if s < 0 or s & ~self.full:
            raise InputError(f"vertex set {s:#x} references a vertex outside 0..{self.n - 1}")

    def __str__(self) -> str:
        return f"Hypergraph(n={self.n}, edges=[{', '.join(self.format_set(e) for e in self.edges)}])"


# ----------------------------------------------------------------------
# Adjacency and neighbourhoods
# ----------------------------------------------------------------------


@cached(cache=LRUCache(maxsize=toolkit_config.cache_size), lock=threading.Lock())
def adjacency(h: Hypergraph) -> tuple[VertexSet, ...]:
    """Closed neighbourhood of every vertex: the union of the edges containing it."""
    adj = [1 << v for v in range(h.n)]
    for e in h.edges:
        for v in bits(e):
            adj[v] |= e
    return tuple(adj)


def neighbourhood(h: Hypergraph, s: VertexSet) -> VertexSet:
    """N[s]: s together with every vertex sharing an edge with some vertex of s."""
    h.check_subset(s)
    adj = adjacency(h)
    result = s
    for v in bits(s):
        result |= adj[v]
    return result


def is_connected(h: Hypergraph, s: VertexSet) -> bool:
    """True iff the subhypergraph induced by *s* is connected (empty set → False)."""
    h.check_subset(s)
    if s == 0:
        return False
    return _reach(adjacency(h), s, s & -s) == s


def _reach(adj: Sequence[VertexSet], within: VertexSet, start: VertexSet) -> VertexSet:
    reached = start
    frontier = start
    while frontier:
        grown = 0
        for v in bits(frontier):
            grown |= adj[v]
        grown &= within
        frontier = grown & ~reached
        reached |= grown
    return reached


def touches(h: Hypergraph, s: VertexSet, t: VertexSet) -> bool:
    """True iff s∩t ≠ ∅ or some hyperedge meets both s and t."""
    if s == 0 or t == 0:
        raise InputError("touches() needs two nonempty vertex sets")
    h.check_subset(s)
    h.check_subset(t)
    if s & t:
        return True
    return any(e & s and e & t for e in h.edges)


def component_masks(h: Hypergraph) -> list[VertexSet]:
    """Vertex sets of the connected components, ordered by lowest vertex."""
    adj = adjacency(h)
    remaining = h.full
    components = []
    while remaining:
        comp = _reach(adj, h.full, remaining & -remaining)
        components.append(comp)
        remaining &= ~comp
    return components


# ----------------------------------------------------------------------
# Connected subsets
# ----------------------------------------------------------------------


@cached(cache=LRUCache(maxsize=toolkit_config.cache_size), lock=threading.Lock())
def _connected_subsets(h: Hypergraph) -> tuple[VertexSet, ...]:
    adj = adjacency(h)
    found: set[VertexSet] = set()
    for v in range(h.n):
        # sets whose lowest vertex is v, grown only through higher vertices
        allowed = h.full & ~((1 << v) - 1)
        stack = [1 << v]
        while stack:
            s = stack.pop()
            if s in found:
                continue
            found.add(s)
            boundary = 0
            for u in bits(s):
                boundary |= adj[u]
            boundary &= allowed & ~s
            for u in bits(boundary):
                grown = s | (1 << u)
                if grown not in found:
                    stack.append(grown)
    return tuple(sorted(found, key=lambda s: (s.bit_count(), s)))


def connected_subsets(h: Hypergraph) -> list[VertexSet]:
    """All nonempty connected subsets, ordered by cardinality then bitmask value."""
    return list(_connected_subsets(h))


# ----------------------------------------------------------------------
# Derived hypergraphs
# ----------------------------------------------------------------------


def clique_graph(h: Hypergraph) -> Hypergraph:
    """Graph on V(h) joining every pair of vertices that share a hyperedge."""
    pairs: dict[VertexSet, None] = {}
    for e in h.edges:
        members = list(bits(e))
        for i, u in enumerate(members):
            for w in members[i + 1 :]:
                pairs.setdefault((1 << u) | (1 << w))
    # vertices that only occur in singleton edges keep their singleton edge
    covered = 0
    for p in pairs:
        covered |= p
    singles = [1 << v for v in range(h.n) if not covered >> v & 1]
    return Hypergraph(n=h.n, edges=tuple(pairs) + tuple(singles), labels=h.labels)


def induced(h: Hypergraph, s: VertexSet) -> Hypergraph:
    """Hypergraph induced on *s*, vertices renumbered in increasing order, labels kept."""
    h.check_subset(s)
    if s == 0:
        raise InputError("cannot induce on the empty set")
    keep = list(bits(s))
    position = {v: i for i, v in enumerate(keep)}
    edges: list[VertexSet] = []
    for e in h.edges:
        cut = e & s
        if cut:
            mask = mask_of(position[v] for v in bits(cut))
            if mask not in edges:
                edges.append(mask)
    return Hypergraph(n=len(keep), edges=tuple(edges), labels=tuple(h.labels[v] for v in keep))
