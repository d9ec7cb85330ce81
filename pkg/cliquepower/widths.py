"""
Tree decompositions, acyclicity and chordality, fractional hypertree width,
and lower-bound certificates built from explicit set functions.

Proper tree decompositions are enumerated through the minimal
triangulations of the clique graph: the bags of a proper decomposition are
exactly the maximal cliques of one minimal triangulation. Width
computations only need the bags; ``clique_tree`` recovers a tree shape when
one is wanted.
"""

import math
import threading
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx
from cachetools import LRUCache, cached

from .config import toolkit_config
from .constants import COVER_CACHE_SIZE, ELIMINATION_STATE_LIMIT, MAX_SET_FUNCTION_N
from .embedding.core import Embedding, is_valid_embedding
from .embedding.families import hyper_boat
from .error_handler import DomainError, ErrorAggregator, InputError, ResourceError
from .hypergraph import Hypergraph, VertexSet, adjacency, bits, clique_graph, mask_of
from .logging_config import logger
from .ratlp import LinearProgram, Relation, Sense, solve_lp

FillSet = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags χ(t) with parent links; parent[t] is -1 for a root."""

    bags: tuple[VertexSet, ...]
    parent: tuple[int, ...]

    def __post_init__(self):
        if len(self.bags) != len(self.parent):
            raise InputError(f"{len(self.bags)} bags but {len(self.parent)} parent links")

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(t, p) for t, p in enumerate(self.parent) if p >= 0]

    def bag_set(self) -> frozenset[VertexSet]:
        return frozenset(self.bags)


@dataclass(frozen=True)
class SetFunction:
    """An explicit function on all 2^n subsets; values[mask] = f(mask)."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_SET_FUNCTION_N:
            raise InputError(f"set function tables support n <= {MAX_SET_FUNCTION_N}, got {self.n}")
        if len(self.values) != 1 << self.n:
            raise InputError(f"set function on {self.n} vertices needs {1 << self.n} values, got {len(self.values)}")

    def value(self, mask: VertexSet) -> Fraction:
        if not 0 <= mask < len(self.values):
            raise InputError(f"subset {mask:#x} outside a {self.n}-vertex set function")
        return self.values[mask]

    __call__ = value


def set_function_from_callable(n: int, fn: Callable[[VertexSet], Fraction | int]) -> SetFunction:
    return SetFunction(n=n, values=tuple(Fraction(fn(mask)) for mask in range(1 << n)))


# ----------------------------------------------------------------------
# Acyclicity and chordality
# ----------------------------------------------------------------------


def gyo_reduce(h: Hypergraph) -> list[VertexSet]:
    """GYO residue: repeatedly drop ear vertices and contained edges."""
    edges = list(h.edges)
    changed = True
    while changed and edges:
        changed = False
        for i, e in enumerate(edges):
            others = 0
            for j, f in enumerate(edges):
                if j != i:
                    others |= f
            lonely = e & ~others
            if lonely:
                edges[i] = e & ~lonely
                changed = True
        kept = []
        for i, e in enumerate(edges):
            swallowed = e == 0 or any(
                j != i and e & ~f == 0 and (e != f or j < i) for j, f in enumerate(edges)
            )
            if swallowed:
                changed = True
            else:
                kept.append(e)
        edges = kept
    return edges


def is_acyclic(h: Hypergraph) -> bool:
    return not gyo_reduce(h)


def _nx_graph(h: Hypergraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(h.n))
    for e in h.edges:
        members = list(bits(e))
        g.add_edges_from(combinations(members, 2))
    return g


def is_chordal(h: Hypergraph) -> bool:
    """Chordality of the clique graph."""
    return nx.is_chordal(_nx_graph(h))


# ----------------------------------------------------------------------
# Minimal triangulations
# ----------------------------------------------------------------------


def _pair_bit(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return 1 << (u * n + v)


def _pairs_of(n: int, fill: int) -> FillSet:
    return tuple(divmod(b, n) for b in bits(fill))


def _is_rtl_minimal(adj: Sequence[VertexSet], n: int, fill: int) -> bool:
    """Every fill edge {u,v} is the unique chord of a 4-cycle u-x-v-y of the filled graph."""
    filled = list(adj)
    for u, v in _pairs_of(n, fill):
        filled[u] |= 1 << v
        filled[v] |= 1 << u
    for u, v in _pairs_of(n, fill):
        common = filled[u] & filled[v] & ~((1 << u) | (1 << v))
        members = list(bits(common))
        if not any(not filled[x] >> y & 1 for x, y in combinations(members, 2)):
            return False
    return True


def minimal_triangulations(g: Hypergraph, threads: int | None = None) -> list[FillSet]:
    """All minimal chordal fill-ins of a graph, as sorted tuples of fill pairs.

    Every minimal triangulation is the fill of some elimination ordering, and
    the elimination graph after removing a vertex set S does not depend on
    the order S was removed in. The search therefore runs over eliminated
    sets, keeping only inclusion-minimal partial fills per set, and finally
    keeps the fills passing the Rose-Tarjan-Lueker unique-chord test.
    Results are ordered by size, then by pair list.
    """
    if any(e.bit_count() > 2 for e in g.edges):
        raise InputError("minimal_triangulations needs a graph (edges of size <= 2)")
    if g.n > toolkit_config.max_triangulation_n:
        raise ResourceError(
            f"triangulation enumeration limited to n <= {toolkit_config.max_triangulation_n}, got n={g.n}",
            limit=toolkit_config.max_triangulation_n,
        )
    n = g.n
    adj = [a & ~(1 << v) for v, a in enumerate(adjacency(g))]
    layer: dict[VertexSet, set[int]] = {0: {0}}
    for _ in range(n):
        following: dict[VertexSet, set[int]] = {}
        for eliminated, fills in layer.items():
            for v in bits(g.full & ~eliminated):
                # neighbours of v in the elimination graph: reachable through eliminated vertices
                region = 1 << v
                frontier = region
                while frontier:
                    grown = 0
                    for u in bits(frontier):
                        grown |= adj[u]
                    grown &= eliminated & ~region
                    region |= grown
                    frontier = grown
                around = 0
                for u in bits(region):
                    around |= adj[u]
                around &= ~eliminated & ~(1 << v)
                added = 0
                for a, b in combinations(list(bits(around)), 2):
                    if not adj[a] >> b & 1:
                        added |= _pair_bit(n, a, b)
                bucket = following.setdefault(eliminated | 1 << v, set())
                bucket.update(fill | added for fill in fills)
        layer = {}
        total = 0
        for eliminated, fills in following.items():
            ordered = sorted(fills, key=lambda f: (f.bit_count(), f))
            minimal: list[int] = []
            for f in ordered:
                if not any(m & ~f == 0 for m in minimal):
                    minimal.append(f)
            layer[eliminated] = set(minimal)
            total += len(minimal)
        if total > ELIMINATION_STATE_LIMIT:
            raise ResourceError(f"more than {ELIMINATION_STATE_LIMIT} partial fills", limit=ELIMINATION_STATE_LIMIT)

    candidates = sorted(layer.get(g.full, {0}), key=lambda f: (f.bit_count(), _pairs_of(n, f)))
    threads = threads or toolkit_config.threads
    if threads > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(lambda f: _is_rtl_minimal(adj, n, f), candidates))
    else:
        verdicts = [_is_rtl_minimal(adj, n, f) for f in candidates]
    result = [_pairs_of(n, f) for f, ok in zip(candidates, verdicts) if ok]
    logger.debug("minimal triangulations: %d on n=%d", len(result), n)
    return result


def clique_tree(bags: Sequence[VertexSet]) -> TreeDecomposition:
    """Maximum-weight spanning tree over bag intersection sizes, rooted at bag 0."""
    bags = tuple(bags)
    if not bags:
        raise InputError("clique_tree needs at least one bag")
    g = nx.Graph()
    g.add_nodes_from(range(len(bags)))
    for i, j in combinations(range(len(bags)), 2):
        g.add_edge(i, j, weight=(bags[i] & bags[j]).bit_count())
    tree = nx.maximum_spanning_tree(g)
    parent = [-1] * len(bags)
    for child, par in nx.bfs_predecessors(tree, 0):
        parent[child] = par
    return TreeDecomposition(bags=bags, parent=tuple(parent))


def check_tree_decomposition(h: Hypergraph, td: TreeDecomposition) -> list[str]:
    """Edge coverage and connectedness of every vertex's occurrence set."""
    findings = ErrorAggregator()
    for e in h.edges:
        if not any(e & ~bag == 0 for bag in td.bags):
            findings.add(f"edge {h.format_set(e)} is in no bag")
    for v in range(h.n):
        holding = [t for t, bag in enumerate(td.bags) if bag >> v & 1]
        if not holding:
            findings.add(f"vertex {h.labels[v]} is in no bag")
            continue
        # a connected occurrence set has exactly one node whose parent lacks v
        tops = [t for t in holding if td.parent[t] < 0 or not td.bags[td.parent[t]] >> v & 1]
        if len(tops) != 1:
            findings.add(f"bags holding {h.labels[v]} are not connected")
    return findings.messages()


@cached(cache=LRUCache(maxsize=toolkit_config.cache_size), lock=threading.Lock())
def _proper_tree_decompositions(h: Hypergraph) -> tuple[TreeDecomposition, ...]:
    g = clique_graph(h)
    base = _nx_graph(g)
    decompositions = []
    for fill in minimal_triangulations(g):
        filled = base.copy()
        filled.add_edges_from(fill)
        bags = sorted((mask_of(c) for c in nx.find_cliques(filled)), key=lambda b: (b.bit_count(), b))
        decompositions.append(clique_tree(bags))
    return tuple(decompositions)


def proper_tree_decompositions(h: Hypergraph) -> list[TreeDecomposition]:
    """One decomposition per minimal triangulation of the clique graph; bags are its maximal cliques."""
    return list(_proper_tree_decompositions(h))


# ----------------------------------------------------------------------
# Fractional covers and fhw
# ----------------------------------------------------------------------


@cached(cache=LRUCache(maxsize=COVER_CACHE_SIZE), lock=threading.Lock())
def fractional_edge_cover(h: Hypergraph, s: VertexSet) -> Fraction:
    """ρ*(s): min Σλ_e subject to Σ_{e∋v} λ_e ≥ 1 for every v in s."""
    h.check_subset(s)
    if s == 0:
        raise InputError("fractional_edge_cover needs a nonempty vertex set")
    lp = LinearProgram(num_vars=h.m, objective=[1] * h.m)
    for v in bits(s):
        lp.add({i: 1 for i, e in enumerate(h.edges) if e >> v & 1}, Relation.GE, 1)
    outcome = solve_lp(lp)
    if not outcome.optimal:
        raise DomainError(f"no fractional edge cover of {h.format_set(s)}")
    return outcome.value


def fractional_vertex_packing(h: Hypergraph, s: VertexSet) -> tuple[Fraction, dict[int, Fraction]]:
    """max Σ_{v∈s} u_v subject to Σ_{v∈e∩s} u_v ≤ 1 per edge; equal to ρ*(s) by duality."""
    h.check_subset(s)
    if s == 0:
        raise InputError("fractional_vertex_packing needs a nonempty vertex set")
    members = list(bits(s))
    lp = LinearProgram(num_vars=len(members), objective=[1] * len(members), sense=Sense.MAX)
    for e in h.edges:
        row = {j: 1 for j, v in enumerate(members) if e >> v & 1}
        if row:
            lp.add(row, Relation.LE, 1)
    outcome = solve_lp(lp)
    if not outcome.optimal:
        raise DomainError(f"vertex packing over {h.format_set(s)} is {outcome.status.value}")
    return outcome.value, {v: outcome.solution[j] for j, v in enumerate(members) if outcome.solution[j] > 0}


def fhw_decomposition(h: Hypergraph) -> tuple[Fraction, TreeDecomposition]:
    """The first proper decomposition of minimum fractional width, with that width."""
    best = None
    for td in proper_tree_decompositions(h):
        width = max(fractional_edge_cover(h, bag) for bag in td.bags)
        if best is None or width < best[0]:
            best = (width, td)
    return best


def fhw(h: Hypergraph) -> Fraction:
    return fhw_decomposition(h)[0]


def chordal_witness(h: Hypergraph) -> Embedding:
    """Singleton images on the widest bag, weighted by its optimal vertex packing.

    With û the normalised packing and k the least integer making k·û
    integral, every edge meets at most k/ρ* images, so k/wed ≥ fhw.
    """
    if not is_chordal(h):
        raise DomainError("chordal_witness needs a chordal hypergraph")
    width, td = fhw_decomposition(h)
    bag = next(b for b in td.bags if fractional_edge_cover(h, b) == width)
    total, packing = fractional_vertex_packing(h, bag)
    normalised = {v: u / total for v, u in packing.items()}
    k = math.lcm(*(x.denominator for x in normalised.values()))
    images: list[VertexSet] = []
    for v in sorted(normalised):
        images.extend([1 << v] * int(normalised[v] * k))
    return Embedding(k=k, images=tuple(images))


# ----------------------------------------------------------------------
# Set functions from embeddings
# ----------------------------------------------------------------------


def _require_valid(h: Hypergraph, e: Embedding):
    report = is_valid_embedding(h, e)
    if not report.valid:
        raise InputError("embedding is not valid: " + "; ".join(report.violations))
    return report


def coverage_function(h: Hypergraph, e: Embedding) -> SetFunction:
    """μ(S) = |{i : ψ(i) ∩ S ≠ ∅}| / wed(ψ)."""
    report = _require_valid(h, e)
    alpha = report.wed
    return set_function_from_callable(
        h.n, lambda mask: Fraction(sum(1 for image in e.images if image & mask), alpha)
    )


def vertex_depth_function(h: Hypergraph, e: Embedding) -> SetFunction:
    """Modular μ(S) = Σ_{v∈S} d_ψ(v) / ed(ψ)."""
    report = _require_valid(h, e)
    depths = report.vertex_depths
    return set_function_from_callable(
        h.n, lambda mask: Fraction(sum(depths[v] for v in bits(mask)), report.ed)
    )


@dataclass
class CertificationReport:
    monotone: bool
    submodular: bool
    edge_dominated: bool
    normalized: bool
    counterexamples: dict[str, tuple[VertexSet, VertexSet]] = field(default_factory=dict)
    findings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.monotone and self.submodular and self.edge_dominated and self.normalized


def certify_set_function(h: Hypergraph, f: SetFunction) -> CertificationReport:
    """f(∅) = 0, monotonicity, pairwise-element submodularity and edge domination, each with a counterexample."""
    if f.n != h.n:
        raise InputError(f"set function is over {f.n} vertices, hypergraph has {h.n}")
    findings = ErrorAggregator()
    counterexamples: dict[str, tuple[VertexSet, VertexSet]] = {}
    values = f.values

    if values[0] != 0:
        counterexamples["normalized"] = (0, 0)
        findings.add(f"f(∅) = {values[0]}, not 0", context="normalized")

    for s in range(1 << h.n):
        for v in bits(h.full & ~s):
            if values[s] > values[s | 1 << v]:
                counterexamples["monotone"] = (s, s | 1 << v)
                findings.add(f"f({h.format_set(s)}) > f({h.format_set(s | 1 << v)})", context="monotone")
                break
        if "monotone" in counterexamples:
            break

    for s in range(1 << h.n):
        free = list(bits(h.full & ~s))
        for a, b in combinations(free, 2):
            sa, sb = s | 1 << a, s | 1 << b
            if values[sa] + values[sb] < values[sa | sb] + values[s]:
                counterexamples["submodular"] = (sa, sb)
                findings.add(
                    f"f({h.format_set(sa)}) + f({h.format_set(sb)}) < f(union) + f(meet)", context="submodular"
                )
                break
        if "submodular" in counterexamples:
            break

    for e in h.edges:
        if values[e] > 1:
            counterexamples["edge_dominated"] = (e, e)
            findings.add(f"f({h.format_set(e)}) = {values[e]} > 1", context="edge_dominated")
            break

    return CertificationReport(
        monotone="monotone" not in counterexamples,
        submodular="submodular" not in counterexamples,
        edge_dominated="edge_dominated" not in counterexamples,
        normalized="normalized" not in counterexamples,
        counterexamples=counterexamples,
        findings=findings.messages(),
    )


def width_lower_bound(h: Hypergraph, f: SetFunction, strict: bool | None = None) -> Fraction:
    """min over proper decompositions of max_bag f(bag): a lower bound on subw(h) for certified f."""
    strict = toolkit_config.strict_certify if strict is None else strict
    report = certify_set_function(h, f)
    if not report.ok:
        message = "set function failed certification: " + "; ".join(report.findings)
        if strict:
            raise InputError(message)
        logger.warning("%s (continuing, strict certification off)", message)
    return min(max(f.value(bag) for bag in td.bags) for td in proper_tree_decompositions(h))


def lemma7_check(h: Hypergraph, e: Embedding) -> bool:
    """Every proper decomposition has a bag meeting all k images."""
    _require_valid(h, e)
    for td in proper_tree_decompositions(h):
        if not any(all(image & bag for image in e.images) for bag in td.bags):
            logger.warning("no bag of %s meets every image", [h.format_set(b) for b in td.bags])
            return False
    return True


# ----------------------------------------------------------------------
# The explicit submodular function on the hyper-boat
# ----------------------------------------------------------------------

_Y = 0b000111
_Z = 0b111000


def _counts(mask: VertexSet) -> tuple[int, int]:
    return (mask & _Y).bit_count(), (mask & _Z).bit_count()


_HYPER_BOAT_EDGES = frozenset(hyper_boat().edges)


# first matching clause wins; vertex order y1 y2 y3 z1 z2 z3
_HYPER_BOAT_CLAUSES: list[tuple[str, Callable[[VertexSet], bool], Fraction]] = [
    ("empty set", lambda s: s == 0, Fraction(0)),
    ("single vertex", lambda s: s.bit_count() == 1, Fraction(1, 2)),
    ("hyperedge", lambda s: s in _HYPER_BOAT_EDGES, Fraction(1)),
    ("one triangle plus one vertex", lambda s: _counts(s) in ((3, 1), (1, 3)), Fraction(3, 2)),
    ("one triangle plus two or three vertices", lambda s: _counts(s) in ((3, 2), (2, 3), (3, 3)), Fraction(2)),
    ("any other pair", lambda s: s.bit_count() == 2, Fraction(1)),
    ("two plus one", lambda s: _counts(s) in ((2, 1), (1, 2)), Fraction(3, 2)),
    ("two plus two", lambda s: _counts(s) == (2, 2), Fraction(2)),
]


def appendix_d_function() -> SetFunction:
    """The edge-dominated submodular function on the hyper-boat whose width bound is 2."""

    def lookup(mask: VertexSet) -> Fraction:
        for _, matches, value in _HYPER_BOAT_CLAUSES:
            if matches(mask):
                return value
        raise DomainError(f"no clause defines subset {mask:#08b}")

    return set_function_from_callable(6, lookup)
