"""
SumProd evaluation over a semiring.

An instance attaches to every hyperedge a table from tuples (ordered by the
edge's vertices, lowest index first) to nonzero semiring values; its value
is ⊕ over all valuations of ⊗ over the edges' table entries.
"""

import math
from collections import defaultdict
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

import networkx as nx

from .constants import DEFAULT_EPSILON
from .embedding.families import boat, hyper_boat
from .error_handler import DomainError, InputError
from .hypergraph import Hypergraph, bits
from .logging_config import logger
from .semirings import Semiring
from .widths import is_acyclic

Table = dict[tuple[int, ...], Any]


@dataclass
class SumProdInstance:
    hypergraph: Hypergraph
    domains: tuple[int, ...]
    factors: tuple[Table, ...]

    def __post_init__(self):
        h = self.hypergraph
        self.domains = tuple(int(d) for d in self.domains)
        self.factors = tuple(dict(f) for f in self.factors)
        if len(self.domains) != h.n:
            raise InputError(f"{len(self.domains)} domains for {h.n} variables")
        if any(d < 1 for d in self.domains):
            raise InputError("every domain needs at least one value")
        if len(self.factors) != h.m:
            raise InputError(f"{len(self.factors)} factor tables for {h.m} edges")
        for index, (e, table) in enumerate(zip(h.edges, self.factors)):
            scope = list(bits(e))
            for t in table:
                if len(t) != len(scope):
                    raise InputError(f"tuple {t} on edge {index} has arity {len(t)}, expected {len(scope)}")
                for v, a in zip(scope, t):
                    if not 0 <= a < self.domains[v]:
                        raise InputError(f"value {a} outside the domain of {h.labels[v]}")

    @property
    def size(self) -> int:
        """|I|: the number of stored tuples."""
        return sum(len(t) for t in self.factors)

    def scope(self, edge: int) -> list[int]:
        return list(bits(self.hypergraph.edges[edge]))

    def check_nonzero(self, s: Semiring) -> None:
        for index, table in enumerate(self.factors):
            for t, value in table.items():
                if s.is_zero(value):
                    raise InputError(f"edge {index} stores a zero value at {t}")


@dataclass
class WeightedGraph:
    """Vertices 0..n-1 and nonzero pair weights keyed (u, v) with u < v.

    *parts*, when set, assigns every vertex to one of k partitions.
    """

    n: int
    weights: dict[tuple[int, int], Any]
    parts: tuple[int, ...] | None = None
    adjacency: list[set[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("a graph needs n >= 0")
        normalised: dict[tuple[int, int], Any] = {}
        for (u, v), w in self.weights.items():
            if u == v:
                raise InputError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            normalised[(min(u, v), max(u, v))] = w
        self.weights = normalised
        if self.parts is not None and len(self.parts) != self.n:
            raise InputError(f"{len(self.parts)} partition labels for {self.n} vertices")
        self.adjacency = [set() for _ in range(self.n)]
        for u, v in self.weights:
            self.adjacency[u].add(v)
            self.adjacency[v].add(u)

    def weight(self, u: int, v: int) -> Any:
        return self.weights.get((min(u, v), max(u, v)))

    @property
    def num_parts(self) -> int:
        return 0 if self.parts is None else max(self.parts, default=-1) + 1


# ----------------------------------------------------------------------
# Brute force
# ----------------------------------------------------------------------


def _edge_order(inst: SumProdInstance) -> list[int]:
    """Smallest table first, then repeatedly the table with the fewest unseen variables.

    Among tables touching the variables seen so far, one whose scope is
    already bound acts as a filter and goes first; ties go to the smaller
    table, then the lower index.
    """
    h = inst.hypergraph
    remaining = set(range(h.m))
    order: list[int] = []
    seen = 0
    while remaining:
        connected = [i for i in remaining if h.edges[i] & seen]
        pool = connected or list(remaining)
        nxt = min(pool, key=lambda i: ((h.edges[i] & ~seen).bit_count(), len(inst.factors[i]), i))
        order.append(nxt)
        remaining.discard(nxt)
        seen |= h.edges[nxt]
    return order


def eval_bruteforce(inst: SumProdInstance, s: Semiring) -> Any:
    """⊕ over valuations of ⊗ over edge tables, by backtracking over stored tuples.

    Edges are visited in a fixed order, so at each depth the scope splits
    into variables bound by earlier edges and variables this edge binds.
    Each table is indexed by its bound part; a step only visits the tuples
    agreeing with the current assignment. Zero products are cut, and the
    running sum stops once it saturates (Boolean true).
    """
    plan: list[tuple[list[int], list[int], dict[tuple[int, ...], list[tuple[tuple[int, ...], Any]]]]] = []
    seen: set[int] = set()
    for i in _edge_order(inst):
        scope = inst.scope(i)
        bound_at = [p for p, v in enumerate(scope) if v in seen]
        free_at = [p for p, v in enumerate(scope) if v not in seen]
        index: dict[tuple[int, ...], list[tuple[tuple[int, ...], Any]]] = defaultdict(list)
        for t, value in sorted(inst.factors[i].items()):
            if not s.is_zero(value):
                index[tuple(t[p] for p in bound_at)].append((tuple(t[p] for p in free_at), value))
        plan.append(([scope[p] for p in bound_at], [scope[p] for p in free_at], index))
        seen.update(scope)
    assignment = [0] * inst.hypergraph.n

    def descend(depth: int, acc: Any) -> Any:
        if depth == len(plan):
            return acc
        bound_vars, free_vars, index = plan[depth]
        total = s.zero
        for free_values, value in index.get(tuple(assignment[v] for v in bound_vars), ()):
            for v, a in zip(free_vars, free_values):
                assignment[v] = a
            product = s.times(acc, value)
            if s.is_zero(product):
                continue
            total = s.plus(total, descend(depth + 1, product))
            if s.is_saturated(total):
                break
        return total

    return descend(0, s.one)


# ----------------------------------------------------------------------
# Join trees
# ----------------------------------------------------------------------


def join_tree(h: Hypergraph) -> list[tuple[int, int]]:
    """(child edge, parent edge) pairs of a join forest, each tree rooted at its lowest edge."""
    if not is_acyclic(h):
        raise DomainError("join trees exist only for acyclic hypergraphs")
    g = nx.Graph()
    g.add_nodes_from(range(h.m))
    for i, j in combinations(range(h.m), 2):
        shared = (h.edges[i] & h.edges[j]).bit_count()
        if shared:
            g.add_edge(i, j, weight=shared)
    forest = nx.maximum_spanning_tree(g)
    links: list[tuple[int, int]] = []
    for component in sorted(nx.connected_components(forest), key=min):
        root = min(component)
        links.extend((child, parent) for child, parent in nx.bfs_predecessors(forest, root))
    return links


def eval_acyclic(inst: SumProdInstance, s: Semiring) -> Any:
    """Leaf-to-root message passing over a join forest; each variable is summed out once."""
    h = inst.hypergraph
    if not is_acyclic(h):
        raise InputError("eval_acyclic needs an acyclic hypergraph")
    links = join_tree(h)
    parent = {child: par for child, par in links}
    tables: list[Table] = [dict(t) for t in inst.factors]

    # bfs order lists parents before children; reversed, every child precedes its parent
    for child, par in reversed(links):
        child_scope, parent_scope = inst.scope(child), inst.scope(par)
        shared = [v for v in child_scope if v in parent_scope]
        pick_child = [child_scope.index(v) for v in shared]
        pick_parent = [parent_scope.index(v) for v in shared]
        message: dict[tuple[int, ...], Any] = {}
        for t, value in tables[child].items():
            key = tuple(t[p] for p in pick_child)
            message[key] = s.plus(message.get(key, s.zero), value)
        merged: Table = {}
        for t, value in tables[par].items():
            incoming = message.get(tuple(t[p] for p in pick_parent))
            if incoming is None:
                continue
            combined = s.times(value, incoming)
            if not s.is_zero(combined):
                merged[t] = combined
        tables[par] = merged

    result = s.one
    for root in range(h.m):
        if root not in parent:
            result = s.times(result, s.sum(tables[root].values()))
    return result


# ----------------------------------------------------------------------
# k-cliques
# ----------------------------------------------------------------------


def kclique_direct(g: WeightedGraph, k: int, s: Semiring) -> Any:
    """⊕ over k-cliques of ⊗ over their pair weights."""
    if k < 2:
        raise InputError(f"k must be >= 2, got {k}")
    total = s.zero
    if k > g.n:
        return total

    def extend(clique: list[int], candidates: list[int], acc: Any) -> None:
        nonlocal total
        if len(clique) == k:
            total = s.plus(total, acc)
            return
        for index, v in enumerate(candidates):
            weight = acc
            for u in clique:
                weight = s.times(weight, g.weight(u, v))
            clique.append(v)
            extend(clique, [w for w in candidates[index + 1 :] if w in g.adjacency[v]], weight)
            clique.pop()

    extend([], list(range(g.n)), s.one)
    return total


# ----------------------------------------------------------------------
# Boat query by heavy-light split
# ----------------------------------------------------------------------

_BOAT_EDGES = boat().edges
_HYPER_BOAT = hyper_boat()


def heavy_light_threshold(m: int, epsilon: Fraction) -> int:
    """Least integer Δ with Δ^q ≥ m^p for ε = p/q, i.e. ⌈m^ε⌉."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    if m <= 1:
        return m
    p, q = epsilon.numerator, epsilon.denominator
    target = m**p
    lo, hi = 1, max(2, math.ceil(m ** float(epsilon)) + 1)
    while hi**q < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**q >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _edge(h: Hypergraph, u: int, v: int) -> int:
    return h.edges.index((1 << u) | (1 << v))


def _degrees(table: Table, position: int) -> dict[int, int]:
    degrees: dict[int, int] = {}
    for t in table:
        degrees[t[position]] = degrees.get(t[position], 0) + 1
    return degrees


def _residual(
    inst: SumProdInstance,
    drop: int,
    value: int,
    spokes: list[tuple[int, int]],
    keep_rows: Callable[[int], bool],
) -> SumProdInstance:
    """Fix boat vertex *drop* (x1 or x8) to *value* and restrict the other hub to rows passing *keep_rows*.

    *spokes* lists (edge index, position of *drop* in the tuple) for the three
    edges at *drop*. Those edges become unary tables on their other endpoint.
    """
    h = inst.hypergraph
    other = 7 - drop
    vertices = [v for v in range(h.n) if v != drop]
    position = {v: i for i, v in enumerate(vertices)}
    edges: list[tuple[int, ...]] = []
    factors: list[Table] = []
    for index, e in enumerate(h.edges):
        spoke = next((p for i, p in spokes if i == index), None)
        if spoke is not None:
            far = next(v for v in bits(e) if v != drop)
            edges.append((position[far],))
            factors.append({(t[1 - spoke],): w for t, w in inst.factors[index].items() if t[spoke] == value})
            continue
        scope = list(bits(e))
        table = inst.factors[index]
        if other in scope:
            at = scope.index(other)
            table = {t: w for t, w in table.items() if keep_rows(t[at])}
        edges.append(tuple(position[v] for v in scope))
        factors.append(table)
    sub = Hypergraph.from_edges(edges, n=len(vertices), labels=[h.labels[v] for v in vertices])
    return SumProdInstance(sub, tuple(inst.domains[v] for v in vertices), tuple(factors))


def _hub_join(inst: SumProdInstance, s: Semiring, hub: int, leaves: list[int], light: set[int]) -> Table:
    """T(leaves) = ⊕ over light hub values a of ⊗ R(hub=a, leaf)."""
    h = inst.hypergraph
    rows: list[dict[int, list[tuple[int, Any]]]] = []
    for leaf in leaves:
        index = _edge(h, hub, leaf)
        at = 0 if hub < leaf else 1
        by_hub: dict[int, list[tuple[int, Any]]] = {}
        for t, w in inst.factors[index].items():
            if t[at] in light:
                by_hub.setdefault(t[at], []).append((t[1 - at], w))
        rows.append(by_hub)
    joined: Table = {}
    for a in sorted(light):
        lists = [r.get(a, []) for r in rows]
        if not all(lists):
            continue
        for b1, w1 in lists[0]:
            for b2, w2 in lists[1]:
                for b3, w3 in lists[2]:
                    key = (b1, b2, b3)
                    joined[key] = s.plus(joined.get(key, s.zero), s.product((w1, w2, w3)))
    return {t: w for t, w in joined.items() if not s.is_zero(w)}


def solve_qb_heavy_light(
    inst: SumProdInstance,
    s: Semiring,
    epsilon: Fraction = DEFAULT_EPSILON,
    qhb_solver: Callable[[SumProdInstance, Semiring], Any] | None = None,
) -> Any:
    """Evaluate the boat query by splitting x1 and x8 into heavy and light values.

    Valuations fall into three disjoint cases: x1 heavy; x1 light and x8
    heavy; both light. The first two fix the heavy value and leave an acyclic
    residual. The last joins the light neighbourhoods of x1 and x8 into
    ternary tables over (x2,x4,x6) and (x3,x5,x7), giving a hyper-boat
    instance for *qhb_solver* (eval_bruteforce when omitted).
    """
    h = inst.hypergraph
    if h.n != 8 or set(h.edges) != set(_BOAT_EDGES):
        raise InputError("solve_qb_heavy_light needs the boat query over x1..x8")
    qhb_solver = qhb_solver or eval_bruteforce
    x1, x8 = 0, 7
    left, right = [1, 3, 5], [2, 4, 6]
    m = inst.size
    delta = heavy_light_threshold(m, epsilon)

    def heavy_values(hub: int, leaves: list[int]) -> set[int]:
        heavy: set[int] = set()
        for leaf in leaves:
            at = 0 if hub < leaf else 1
            for a, d in _degrees(inst.factors[_edge(h, hub, leaf)], at).items():
                if d > delta:
                    heavy.add(a)
        return heavy

    heavy1 = heavy_values(x1, left)
    heavy8 = heavy_values(x8, right)
    logger.debug("heavy-light: m=%d Δ=%d, %d heavy x1, %d heavy x8", m, delta, len(heavy1), len(heavy8))

    result = s.zero
    spokes1 = [(_edge(h, x1, leaf), 0) for leaf in left]
    for a in sorted(heavy1):
        residual = _residual(inst, x1, a, spokes1, lambda _: True)
        result = s.plus(result, eval_acyclic(residual, s))

    spokes8 = [(_edge(h, leaf, x8), 1) for leaf in right]
    for c in sorted(heavy8):
        residual = _residual(inst, x8, c, spokes8, lambda b: b not in heavy1)
        result = s.plus(result, eval_acyclic(residual, s))

    light1 = set(range(inst.domains[x1])) - heavy1
    light8 = set(range(inst.domains[x8])) - heavy8
    t1 = _hub_join(inst, s, x1, left, light1)
    t8 = _hub_join(inst, s, x8, right, light8)
    factors = (
        t1,
        t8,
        inst.factors[_edge(h, 1, 2)],
        inst.factors[_edge(h, 3, 4)],
        inst.factors[_edge(h, 5, 6)],
    )
    domains = tuple(inst.domains[v] for v in left + right)
    result = s.plus(result, qhb_solver(SumProdInstance(_HYPER_BOAT, domains, factors), s))
    return result


def project_qhb_to_qb(inst: SumProdInstance, s: Semiring) -> SumProdInstance:
    """A boat instance with the same value as a hyper-boat instance.

    x1 ranges over the stored (y1,y2,y3) tuples and x8 over the stored
    (z1,z2,z3) tuples; the spokes check that a tuple agrees with its leaf and
    carry the ternary value on the first spoke.
    """
    h = inst.hypergraph
    if h.n != 6 or set(h.edges) != set(_HYPER_BOAT.edges):
        raise InputError("project_qhb_to_qb needs the hyper-boat query over y1..y3, z1..z3")
    ys = sorted(inst.factors[h.edges.index(0b000111)].items())
    zs = sorted(inst.factors[h.edges.index(0b111000)].items())
    target = boat()
    # boat vertex -> hyper-boat vertex for the six leaves
    leaf_of = {1: 0, 3: 1, 5: 2, 2: 3, 4: 4, 6: 5}
    domains = [max(1, len(ys))] + [0] * 6 + [max(1, len(zs))]
    for v, y in leaf_of.items():
        domains[v] = inst.domains[y]
    factors: list[Table] = []
    for e in target.edges:
        u, v = bits(e)
        if u == 0:
            slot = [1, 3, 5].index(v)
            factors.append({(i, t[slot]): (w if slot == 0 else s.one) for i, (t, w) in enumerate(ys)})
        elif v == 7:
            slot = [2, 4, 6].index(u)
            factors.append({(t[slot], i): (w if slot == 0 else s.one) for i, (t, w) in enumerate(zs)})
        else:
            pair = (1 << leaf_of[u]) | (1 << leaf_of[v])
            factors.append(dict(inst.factors[h.edges.index(pair)]))
    return SumProdInstance(target, tuple(domains), tuple(factors))
