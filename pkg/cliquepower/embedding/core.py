"""Embedding values, validation and depth measures."""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..error_handler import ErrorAggregator, InputError
from ..hypergraph import Hypergraph, VertexSet, bits, is_connected, touches


@dataclass(frozen=True)
class Embedding:
    """A map from clique vertices 1..k to nonempty vertex sets (images[i] is the image of i+1)."""

    k: int
    images: tuple[VertexSet, ...]

    def __post_init__(self):
        if self.k < 1:
            raise InputError("an embedding needs k >= 1")
        if len(self.images) != self.k:
            raise InputError(f"embedding declares k={self.k} but has {len(self.images)} images")
        for i, image in enumerate(self.images):
            if image <= 0:
                raise InputError(f"clique vertex {i + 1} has an empty image")

    @classmethod
    def from_preimages(cls, h: Hypergraph, k: int, preimages: Mapping[str, Sequence[int]]) -> "Embedding":
        """Build from {vertex label: clique vertices (1-based) mapped onto it}."""
        images = [0] * k
        for label, clique_vertices in preimages.items():
            v = h.index(label)
            for i in clique_vertices:
                if not 1 <= i <= k:
                    raise InputError(f"clique vertex {i} outside 1..{k}")
                images[i - 1] |= 1 << v
        missing = [str(i + 1) for i, image in enumerate(images) if not image]
        if missing:
            raise InputError(f"unmapped clique vertices: {' '.join(missing)}")
        return cls(k=k, images=tuple(images))

    def preimage(self, v: int) -> list[int]:
        """Clique vertices (0-based, increasing) whose image contains vertex *v*."""
        return [i for i, image in enumerate(self.images) if image >> v & 1]

    def vertex_depths(self, n: int) -> list[int]:
        depths = [0] * n
        for image in self.images:
            for v in bits(image):
                depths[v] += 1
        return depths

    def check_range(self, h: Hypergraph) -> None:
        for i, image in enumerate(self.images):
            if image & ~h.full:
                raise InputError(f"image of clique vertex {i + 1} references a vertex outside 0..{h.n - 1}")


@dataclass
class EmbeddingReport:
    valid: bool
    k: int
    wed: int
    ed: int
    vertex_depths: list[int]
    weak_edge_depths: list[int]
    edge_depths: list[int]
    violations: list[str] = field(default_factory=list)

    @property
    def emb_k(self) -> Fraction:
        """k / wed: the lower bound on emb certified by this embedding."""
        return Fraction(self.k, self.wed)

    @property
    def adaptive_bound(self) -> Fraction:
        """k / ed: the matching lower bound on adaptive width."""
        return Fraction(self.k, self.ed)


def weak_edge_depths(h: Hypergraph, e: Embedding) -> list[int]:
    return [sum(1 for image in e.images if image & edge) for edge in h.edges]


def wed(h: Hypergraph, e: Embedding) -> int:
    return max(weak_edge_depths(h, e))


def is_valid_embedding(h: Hypergraph, e: Embedding) -> EmbeddingReport:
    """Validate connectivity and pairwise touching; depths are computed regardless."""
    e.check_range(h)
    findings = ErrorAggregator()
    for i, image in enumerate(e.images):
        if not is_connected(h, image):
            findings.add(f"image {h.format_set(image)} is not connected", context=f"clique vertex {i + 1}")
    distinct = sorted(set(e.images))
    untouched = {(s, t) for s, t in combinations(distinct, 2) if not touches(h, s, t)}
    if untouched:
        for i, j in combinations(range(e.k), 2):
            s, t = e.images[i], e.images[j]
            if (min(s, t), max(s, t)) in untouched:
                findings.add(
                    f"images {h.format_set(s)} and {h.format_set(t)} do not touch",
                    context=f"clique vertices {i + 1},{j + 1}",
                )

    vertex_depths = e.vertex_depths(h.n)
    weak = weak_edge_depths(h, e)
    plus = [sum(vertex_depths[v] for v in bits(edge)) for edge in h.edges]
    return EmbeddingReport(
        valid=not findings.has_errors(),
        k=e.k,
        wed=max(weak),
        ed=max(plus),
        vertex_depths=vertex_depths,
        weak_edge_depths=weak,
        edge_depths=plus,
        violations=findings.messages(),
    )


@dataclass
class FractionalWitness:
    """Optimal weights of an exact MILP (2) solve: emb = 1 / w_star."""

    weights: dict[VertexSet, Fraction]
    w_star: Fraction
    K: int
    disconnected: bool = False
    nodes: int = 0

    @classmethod
    def from_weights(cls, weights: Mapping[VertexSet, Fraction], w_star: Fraction, **kwargs) -> "FractionalWitness":
        support = {s: Fraction(x) for s, x in sorted(weights.items()) if x > 0}
        K = math.lcm(*(x.denominator for x in support.values())) if support else 1
        return cls(weights=support, w_star=Fraction(w_star), K=K, **kwargs)

    @property
    def emb(self) -> Fraction:
        return 1 / self.w_star


def witness_to_embedding(w: FractionalWitness) -> Embedding:
    """A K-clique embedding with K·weight(S) copies of every support subset S."""
    images: list[VertexSet] = []
    for s, x in w.weights.items():
        copies = x * w.K
        if copies.denominator != 1:
            raise InputError(f"K={w.K} does not clear the denominator of weight {x}")
        images.extend([s] * int(copies))
    return Embedding(k=len(images), images=tuple(images))


def all_of_v(h: Hypergraph, k: int) -> Embedding:
    """ψ(i) = V for every i: always valid, with wed = k."""
    return Embedding(k=k, images=(h.full,) * k)
