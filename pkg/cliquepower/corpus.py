"""
Test corpora: the reference table of emb values, exhaustive small
hypergraphs, and random embeddings, graphs and SumProd instances.

Every generator is deterministic given its ``random.Random``.
"""

import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil
from typing import Any

from .constants import EXPECTED_EMB_BOAT, EXPECTED_EMB_HYPER_BOAT, EXPECTED_FHW_HYPER_BOAT
from .embedding.core import Embedding
from .embedding.families import (
    almost_clique,
    boat,
    complete_bipartite,
    cycle,
    hyper_boat,
    hyperclique,
    path,
    star,
)
from .engine import SumProdInstance, Table, WeightedGraph
from .error_handler import InputError
from .hypergraph import Hypergraph, VertexSet, bits, connected_subsets, is_connected, touches
from .semirings import BooleanSemiring, Semiring


@dataclass(frozen=True)
class Table1Row:
    """One row of the reference table: a hypergraph and its known widths.

    expected_fhw is set for the chordal rows, where emb = fhw, and for the
    hyper-boat, where the two differ.
    """

    name: str
    build: Callable[[], Hypergraph]
    expected_emb: Fraction
    expected_fhw: Fraction | None = None
    heavy: bool = False


def _acyclic_triple() -> Hypergraph:
    return Hypergraph.from_labelled(
        ["a", "b", "c", "d", "e", "f"], [("a", "b", "c"), ("c", "d"), ("c", "e", "f")]
    )


def _single_edge() -> Hypergraph:
    return Hypergraph.from_labelled(["x1", "x2", "x3"], [("x1", "x2", "x3")])


def table1_rows() -> list[Table1Row]:
    one = Fraction(1)
    rows = [
        Table1Row("single edge", _single_edge, one, one),
        Table1Row("path P4", lambda: path(4), one, one),
        Table1Row("star S3", lambda: star(3), one, one),
        Table1Row("acyclic triple", _acyclic_triple, one, one),
    ]
    for length in range(3, 9):
        rows.append(Table1Row(f"C{length}", lambda n=length: cycle(n), 2 - Fraction(1, ceil(length / 2))))
    for length in range(2, 5):
        rows.append(Table1Row(f"K2,{length}", lambda n=length: complete_bipartite(2, n), 2 - Fraction(1, length)))
    rows.append(Table1Row("K3,3", lambda: complete_bipartite(3, 3), Fraction(2)))
    for length in range(4, 7):
        value = Fraction(length - 1, 2)
        rows.append(Table1Row(f"A{length}", lambda n=length: almost_clique(n, 2), value, value))
    for length, k in ((3, 2), (4, 2), (4, 3), (5, 4)):
        value = Fraction(length, k)
        rows.append(Table1Row(f"H{length},{k}", lambda n=length, r=k: hyperclique(n, r), value, value))
    rows.append(Table1Row("Q_b", boat, EXPECTED_EMB_BOAT, heavy=True))
    rows.append(Table1Row("Q_hb", hyper_boat, EXPECTED_EMB_HYPER_BOAT, EXPECTED_FHW_HYPER_BOAT))
    return rows


# ----------------------------------------------------------------------
# Exhaustive small hypergraphs
# ----------------------------------------------------------------------


def _canonical(n: int, edges: tuple[VertexSet, ...]) -> tuple[VertexSet, ...]:
    best = None
    for perm in permutations(range(n)):
        relabelled = tuple(sorted(sum(1 << perm[v] for v in bits(e)) for e in edges))
        if best is None or relabelled < best:
            best = relabelled
    return best


def small_connected_hypergraphs(max_vertices: int, max_edges: int, reduced: bool = True) -> Iterator[Hypergraph]:
    """Connected hypergraphs on 1..max_vertices vertices with at most max_edges edges.

    One representative per isomorphism class, in a fixed order. With
    *reduced*, no edge is contained in another; such edges change neither
    touching nor any edge load maximum.
    """
    if max_vertices < 1 or max_edges < 1:
        raise InputError("max_vertices and max_edges must be >= 1")
    for n in range(1, max_vertices + 1):
        full = (1 << n) - 1
        seen: set[tuple[VertexSet, ...]] = set()
        for count in range(1, max_edges + 1):
            for edges in combinations(range(1, full + 1), count):
                if reduced and any(a & b == a or a & b == b for a, b in combinations(edges, 2)):
                    continue
                covered = 0
                for e in edges:
                    covered |= e
                if covered != full:
                    continue
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                h = Hypergraph(n=n, edges=key)
                if is_connected(h, h.full):
                    yield h


def sample_hypergraphs(
    rng: random.Random, count: int, max_vertices: int, max_edges: int, reduced: bool = True
) -> list[Hypergraph]:
    """A seeded sample of small_connected_hypergraphs, kept in corpus order."""
    corpus = list(small_connected_hypergraphs(max_vertices, max_edges, reduced))
    if count >= len(corpus):
        return corpus
    picked = sorted(rng.sample(range(len(corpus)), count))
    return [corpus[i] for i in picked]


# ----------------------------------------------------------------------
# Random embeddings
# ----------------------------------------------------------------------


def random_embedding(h: Hypergraph, rng: random.Random, k: int | None = None) -> Embedding:
    """A uniformly grown valid embedding: every new image touches all earlier ones.

    On a connected h the full vertex set is always a candidate, so the
    growth never gets stuck.
    """
    if not is_connected(h, h.full):
        raise InputError("random_embedding needs a connected hypergraph")
    k = k or rng.randint(1, 6)
    pool = connected_subsets(h)
    images: list[VertexSet] = []
    for _ in range(k):
        candidates = [s for s in pool if all(touches(h, s, t) for t in images)]
        images.append(rng.choice(candidates))
    return Embedding(k=k, images=tuple(images))


# ----------------------------------------------------------------------
# Random graphs and instances
# ----------------------------------------------------------------------


def _nonzero(s: Semiring, rng: random.Random) -> Any:
    value = s.sample(rng)
    return s.one if s.is_zero(value) else value


def random_graph(
    n: int, rng: random.Random, s: Semiring | None = None, density: float = 0.6, parts: tuple[int, ...] | None = None
) -> WeightedGraph:
    s = s or BooleanSemiring()
    weights = {(u, v): _nonzero(s, rng) for u, v in combinations(range(n), 2) if rng.random() < density}
    return WeightedGraph(n=n, weights=weights, parts=parts)


def reweighted(g: WeightedGraph, rng: random.Random, s: Semiring) -> WeightedGraph:
    """The same edges as *g* with fresh non-zero weights drawn from *s*."""
    return WeightedGraph(n=g.n, weights={pair: _nonzero(s, rng) for pair in sorted(g.weights)}, parts=g.parts)


def random_instance(
    h: Hypergraph, rng: random.Random, s: Semiring | None = None, domain: int = 3, density: float = 0.5
) -> SumProdInstance:
    """Every tuple of every table is stored with probability *density*."""
    s = s or BooleanSemiring()
    factors: list[Table] = []
    for e in h.edges:
        arity = e.bit_count()
        table: Table = {}
        for code in range(domain**arity):
            if rng.random() < density:
                t = tuple(code // domain**p % domain for p in reversed(range(arity)))
                table[t] = _nonzero(s, rng)
        factors.append(table)
    return SumProdInstance(h, (domain,) * h.n, tuple(factors))


def random_acyclic_hypergraph(rng: random.Random, num_edges: int, max_arity: int = 3) -> Hypergraph:
    """Grow a join tree: every new edge shares vertices with exactly one earlier edge."""
    edges: list[set[int]] = []
    n = 0
    for _ in range(num_edges):
        arity = rng.randint(1, max_arity)
        if edges:
            parent = sorted(rng.choice(edges))
            shared = set(rng.sample(parent, rng.randint(1, min(len(parent), arity))))
        else:
            shared = set()
        fresh = set(range(n, n + arity - len(shared)))
        n += len(fresh)
        edge = shared | fresh
        if edge not in edges:
            edges.append(edge)
    return Hypergraph.from_edges([sorted(e) for e in edges], n=n)


def random_qb_instance(
    rng: random.Random, tuples: int, domain: int = 8, s: Semiring | None = None, skew: float = 0.4
) -> SumProdInstance:
    """A boat-query instance with up to *tuples* stored pairs per table.

    With probability *skew* a spoke tuple takes value 0 at its hub, so x1 = 0
    and x8 = 0 tend to be heavy.
    """
    s = s or BooleanSemiring()
    h = boat()
    factors: list[Table] = []
    for e in h.edges:
        u, v = bits(e)
        table: Table = {}
        for _ in range(tuples):
            a, b = rng.randrange(domain), rng.randrange(domain)
            if u == 0 and rng.random() < skew:
                a = 0
            if v == 7 and rng.random() < skew:
                b = 0
            table[(a, b)] = _nonzero(s, rng)
        factors.append(table)
    return SumProdInstance(h, (domain,) * h.n, tuple(factors))
