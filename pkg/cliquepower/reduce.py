"""
Compile a k-clique problem into a SumProd instance through a clique embedding.

Given ψ: C_k ↦ H, every clique pair {i,j} is charged to one hyperedge
θ({i,j}) meeting both images. A variable x of H ranges over tuples of
lifted-graph vertices, one for each clique vertex mapped onto x, and the
table of an edge e lists the cliques across the partitions of
S_e = {i : ψ(i) ∩ e ≠ ∅} with the product of the weights charged to e.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .config import toolkit_config
from .embedding.core import Embedding, is_valid_embedding
from .engine import SumProdInstance, Table, WeightedGraph, eval_bruteforce, kclique_direct
from .error_handler import InputError
from .hypergraph import Hypergraph
from .logging_config import logger
from .semirings import Semiring

# clique pair (i, j) with i < j, 0-based, -> hyperedge index
ThetaAssignment = dict[tuple[int, int], int]


def kpartite_lift(g: WeightedGraph, k: int, canonical: bool = False) -> WeightedGraph:
    """Copy every vertex o into each of k partitions as vertex j·n + o.

    Copies (o, j) and (p, q) are joined with weight w(o, p) when j ≠ q. With
    *canonical*, only when the partition order agrees with the vertex order
    (o < p and j < q, or o > p and j > q), so every k-clique of g appears in
    the lift exactly once instead of k! times.
    """
    if k < 2:
        raise InputError(f"the lift needs k >= 2, got {k}")
    n = g.n
    weights: dict[tuple[int, int], Any] = {}
    # weight keys have o < p, so the canonical order asks for j < q
    for (o, p), w in g.weights.items():
        for j in range(k):
            for q in range(k):
                if j == q or (canonical and j > q):
                    continue
                weights[(j * n + o, q * n + p)] = w
    return WeightedGraph(n=n * k, weights=weights, parts=tuple(j for j in range(k) for _ in range(n)))


def assign_theta(h: Hypergraph, e: Embedding) -> ThetaAssignment:
    """Charge each clique pair to the lowest-index edge meeting both images."""
    report = is_valid_embedding(h, e)
    if not report.valid:
        raise InputError("embedding is not valid: " + "; ".join(report.violations))
    theta: ThetaAssignment = {}
    for i, j in combinations(range(e.k), 2):
        s, t = e.images[i], e.images[j]
        theta[(i, j)] = next(index for index, edge in enumerate(h.edges) if edge & s and edge & t)
    return theta


@dataclass
class ReductionOutput:
    """The compiled instance plus what is needed to audit and decode it.

    lam is wed(ψ): every table holds at most n^lam tuples.
    """

    instance: SumProdInstance
    theta: ThetaAssignment
    partition_map: tuple[int, ...]
    lam: int
    base: int
    members: tuple[tuple[int, ...], ...]
    preimages: tuple[tuple[int, ...], ...]
    edge_cliques: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def sidecar(self) -> dict[str, Any]:
        h = self.instance.hypergraph
        return {
            "theta": [
                {"pair": [i + 1, j + 1], "edge": h.names(h.edges[index])}
                for (i, j), index in sorted(self.theta.items())
            ],
            "partition_map": list(self.partition_map),
            "lambda": self.lam,
            "base": self.base,
            "domains": dict(zip(h.labels, self.instance.domains)),
            "edge_cliques": [
                {"edge": h.names(edge), "clique_vertices": [i + 1 for i in s_e]}
                for edge, s_e in zip(h.edges, self.edge_cliques)
            ],
        }

    def decode_value(self, x: int, code: int) -> tuple[int, ...]:
        """Lifted vertices (in increasing clique-vertex order) encoded by value *code* of variable *x*."""
        return decode_value(self, x, code)


def decode_value(output: ReductionOutput, x: int, code: int) -> tuple[int, ...]:
    preimage = output.preimages[x]
    if not 0 <= code < output.instance.domains[x]:
        raise InputError(f"code {code} outside the domain of variable {x}")
    positions = []
    for _ in preimage:
        code, digit = divmod(code, output.base)
        positions.append(digit)
    positions.reverse()
    return tuple(output.members[i][p] for i, p in zip(preimage, positions))


def _encode(preimage: tuple[int, ...], position: dict[int, int], base: int) -> int:
    code = 0
    for i in preimage:
        code = code * base + position[i]
    return code


def build_instance(
    h: Hypergraph, e: Embedding, g: WeightedGraph, s: Semiring, threads: int | None = None
) -> ReductionOutput:
    """The SumProd instance whose value is the k-clique aggregate of the k-partite graph g."""
    if g.parts is None or g.num_parts != e.k:
        raise InputError(f"graph must be {e.k}-partite, has {g.num_parts} labelled partitions")
    theta = assign_theta(h, e)
    lam = max(sum(1 for image in e.images if image & edge) for edge in h.edges)
    members = tuple(tuple(v for v in range(g.n) if g.parts[v] == i) for i in range(e.k))
    rank = [0] * g.n
    for part in members:
        for r, v in enumerate(part):
            rank[v] = r
    base = max(1, max(len(part) for part in members))
    preimages = tuple(tuple(e.preimage(x)) for x in range(h.n))
    domains = tuple(base ** len(p) for p in preimages)
    edge_cliques = tuple(tuple(i for i in range(e.k) if e.images[i] & edge) for edge in h.edges)

    def table_for(index: int) -> Table:
        edge = h.edges[index]
        s_e = edge_cliques[index]
        charged = [(i, j) for i, j in combinations(s_e, 2) if theta[(i, j)] == index]
        scope = [x for x in range(h.n) if edge >> x & 1]
        table: Table = {}
        chosen: dict[int, int] = {}

        def extend(depth: int) -> None:
            if depth == len(s_e):
                value = s.one
                for i, j in charged:
                    value = s.times(value, g.weight(chosen[i], chosen[j]))
                if s.is_zero(value):
                    return
                position = {i: rank[a] for i, a in chosen.items()}
                table[tuple(_encode(preimages[x], position, base) for x in scope)] = value
                return
            i = s_e[depth]
            for a in members[i]:
                if all(a in g.adjacency[chosen[j]] for j in s_e[:depth]):
                    chosen[i] = a
                    extend(depth + 1)
                    del chosen[i]

        extend(0)
        return table

    threads = threads or toolkit_config.threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            factors = list(pool.map(table_for, range(h.m)))
    else:
        factors = [table_for(index) for index in range(h.m)]

    instance = SumProdInstance(h, domains, tuple(factors))
    logger.info("reduction: k=%d, λ=%d, %d stored tuples", e.k, lam, instance.size)
    return ReductionOutput(
        instance=instance,
        theta=theta,
        partition_map=tuple(g.parts),
        lam=lam,
        base=base,
        members=members,
        preimages=preimages,
        edge_cliques=edge_cliques,
    )


@dataclass
class RoundtripReport:
    lhs: Any
    rhs: Any
    equal: bool


def roundtrip_check(h: Hypergraph, e: Embedding, g: WeightedGraph, s: Semiring) -> RoundtripReport:
    """SumProd value of the compiled canonical lift against the direct k-clique aggregate of g."""
    lifted = kpartite_lift(g, e.k, canonical=True)
    lhs = eval_bruteforce(build_instance(h, e, lifted, s).instance, s)
    rhs = kclique_direct(g, e.k, s)
    return RoundtripReport(lhs=lhs, rhs=rhs, equal=s.eq(lhs, rhs))
