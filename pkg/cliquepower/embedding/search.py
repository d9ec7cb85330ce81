"""
Exact optimization of clique embeddings.

Both problems range over nonnegative weights x_S on connected subsets S
whose support is pairwise touching:

    ILP (1)   min w  s.t.  Σ x_S = k,  Σ_{S∩e≠∅} x_S ≤ w  for every edge e,  x_S integral
    MILP (2)  the same with k = 1 and x_S continuous

``ilp1_model`` and ``milp2_model`` state them declaratively, with a binary
y_S per subset forcing x_S = 0 whenever y_S = 1 and y_S + y_T ≥ 1 for every
non-touching pair. ``FamilySearch`` solves the same programs by
branch-and-bound directly over candidate families, which keeps every node
LP at |E|+1 rows. That is the default path of ``min_wed_ilp`` and
``emb_fractional``; ``method="milp"`` hands the declarative model to
``ratlp.solve_milp`` instead, which agrees on every value but needs far
more nodes once the pool has more than a few dozen subsets.
"""

import heapq
import math
import threading
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from cachetools import LRUCache, cached

from ..config import toolkit_config
from ..constants import DEFAULT_SEARCH_METHOD, LP_CACHE_SIZE, SEARCH_METHODS
from ..error_handler import DomainError, InputError, ResourceError
from ..hypergraph import (
    Hypergraph,
    VertexSet,
    bits,
    component_masks,
    connected_subsets,
    induced,
    neighbourhood,
)
from ..logging_config import logger
from ..ratlp import LinearProgram, LpOutcome, MilpModel, Relation, solve_lp, solve_milp
from .core import Embedding, FractionalWitness

# ----------------------------------------------------------------------
# Touching pool
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TouchingPool:
    """Connected subsets with their edge footprints and touching relation.

    footprints[i] is a bitmask over edge indices; touch[i] is a bitmask over
    pool indices (every subset touches itself).
    """

    subsets: tuple[VertexSet, ...]
    footprints: tuple[int, ...]
    touch: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.subsets)

    @property
    def num_edges(self) -> int:
        covered = 0
        for fp in self.footprints:
            covered |= fp
        return covered.bit_length()

    def meeting(self, s: VertexSet) -> int:
        """Pool indices (as a mask) of subsets that intersect *s*."""
        return sum(1 << i for i, t in enumerate(self.subsets) if t & s)


@cached(cache=LRUCache(maxsize=toolkit_config.cache_size), lock=threading.Lock())
def touching_pool(h: Hypergraph) -> TouchingPool:
    subsets = connected_subsets(h)
    footprints = tuple(sum(1 << ei for ei, e in enumerate(h.edges) if e & s) for s in subsets)
    touch = []
    for s in subsets:
        reach = neighbourhood(h, s)
        touch.append(sum(1 << j for j, t in enumerate(subsets) if t & reach))
    return TouchingPool(subsets=tuple(subsets), footprints=footprints, touch=tuple(touch))


def _dominates(pool: TouchingPool, j: int, i: int) -> bool:
    """Replacing S_i by S_j never raises an edge load and keeps every touching partner."""
    fp, touch = pool.footprints, pool.touch
    if fp[j] & ~fp[i]:
        return False
    partners = touch[i] & ~((1 << i) | (1 << j))
    return not partners & ~touch[j]


def reduce_pool(pool: TouchingPool) -> TouchingPool:
    """Drop every subset dominated by another; mutual dominance keeps the lower index."""
    size = len(pool)
    kept = []
    for i in range(size):
        beaten = False
        for j in range(size):
            if j != i and _dominates(pool, j, i) and (j < i or not _dominates(pool, i, j)):
                beaten = True
                break
        if not beaten:
            kept.append(i)
    position = {old: new for new, old in enumerate(kept)}
    touch = tuple(sum(1 << position[o] for o in bits(pool.touch[i]) if o in position) for i in kept)
    logger.debug("pool: %d subsets, %d after dominance", size, len(kept))
    return TouchingPool(
        subsets=tuple(pool.subsets[i] for i in kept),
        footprints=tuple(pool.footprints[i] for i in kept),
        touch=touch,
    )


def _pool_for(h: Hypergraph) -> TouchingPool:
    return reduce_pool(touching_pool(h))


# ----------------------------------------------------------------------
# Declarative models
# ----------------------------------------------------------------------


def _family_model(h: Hypergraph, pool: TouchingPool, total: int, integral: bool) -> MilpModel:
    """Variables x_0..x_{P-1}, y_0..y_{P-1}, w; see the module docstring."""
    size = len(pool)
    w = 2 * size
    names = [f"x{h.format_set(s)}" for s in pool.subsets] + [f"y{h.format_set(s)}" for s in pool.subsets] + ["w"]
    lp = LinearProgram(num_vars=2 * size + 1, names=names)
    lp.objective[w] = Fraction(1)
    lp.add({i: 1 for i in range(size)}, Relation.EQ, total)
    for ei in range(h.m):
        row = {i: 1 for i in range(size) if pool.footprints[i] >> ei & 1}
        if row:
            row[w] = -1
            lp.add(row, Relation.LE, 0)
    for i in range(size):
        lp.add({i: 1, size + i: total}, Relation.LE, total)
    for i in range(size):
        for j in bits(~pool.touch[i] & ((1 << size) - 1)):
            if j > i:
                lp.add({size + i: 1, size + j: 1}, Relation.GE, 1)
    bounds = {size + i: (0, 1) for i in range(size)}
    if integral:
        bounds.update({i: (0, total) for i in range(size)})
    return MilpModel(lp=lp, integer_bounds=bounds)


def ilp1_model(h: Hypergraph, k: int) -> MilpModel:
    """ILP (1) for min wed(C_k ↦ h) over the dominance-reduced pool."""
    if k < 1:
        raise InputError(f"clique size must be >= 1, got {k}")
    return _family_model(h, _pool_for(h), k, integral=True)


def milp2_model(h: Hypergraph) -> MilpModel:
    """MILP (2), whose optimum w* gives emb(h) = 1/w*."""
    return _family_model(h, _pool_for(h), 1, integral=False)


# ----------------------------------------------------------------------
# Family branch-and-bound
# ----------------------------------------------------------------------

Bounds = tuple[tuple[int, int, int], ...]  # (pool index, lo, hi), sorted


@dataclass(order=True)
class _FamilyNode:
    key: Fraction
    node_id: int
    candidates: int = field(compare=False)
    bounds: Bounds = field(compare=False)
    outcome: LpOutcome = field(compare=False)


class FamilySearch:
    """Best-bound branch-and-bound over pairwise-touching families of a pool.

    A node is a candidate mask C plus integer bounds. Its LP drops the
    touching requirement and keeps only subsets of C. When the LP support
    has a non-touching pair, the support subset with the most conflicts S
    splits the node into "S may be used" (C ∩ touch(S)) and "S is unused"
    (C \\ {S}). In integral mode a fractional x_S is then split into
    x_S ≤ ⌊x_S⌋ and x_S ≥ ⌈x_S⌉; the latter also restricts C to touch(S).

    *bags*, when given, are the bags of a tree decomposition of the
    hypergraph. Every pairwise-touching family of connected subsets meets a
    common bag, so the root is split into one subproblem per bag.
    """

    def __init__(
        self,
        pool: TouchingPool,
        k: int,
        integral: bool,
        node_limit: int | None = None,
        bags: Sequence[VertexSet] | None = None,
    ):
        if len(pool) == 0:
            raise InputError("cannot search an empty pool")
        self.pool = pool
        self.k = k
        self.integral = integral
        self.node_limit = node_limit or toolkit_config.node_limit
        self.bags = list(bags or ())
        self.num_edges = pool.num_edges
        self.nodes = 0
        self._lp_cache: LRUCache = LRUCache(maxsize=LP_CACHE_SIZE)
        self.best_value: Fraction | None = None
        self.best_weights: dict[int, Fraction] = {}

    # -- LP -----------------------------------------------------------------

    def _solve(self, candidates: int, bounds: Bounds) -> tuple[LpOutcome, list[int]]:
        key = (candidates, bounds)
        hit = self._lp_cache.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceError(f"family search exceeded {self.node_limit} nodes", limit=self.node_limit)
        order = list(bits(candidates))
        column = {c: j for j, c in enumerate(order)}
        w = len(order)
        lp = LinearProgram(num_vars=w + 1)
        lp.objective[w] = Fraction(1)
        lp.add({j: 1 for j in range(w)}, Relation.EQ, self.k)
        for ei in range(self.num_edges):
            row = {column[c]: 1 for c in order if self.pool.footprints[c] >> ei & 1}
            if row:
                row[w] = -1
                lp.add(row, Relation.LE, 0)
        for c, lo, hi in bounds:
            if c in column:
                if lo > 0:
                    lp.add({column[c]: 1}, Relation.GE, lo)
                if hi < self.k:
                    lp.add({column[c]: 1}, Relation.LE, hi)
        outcome = solve_lp(lp)
        result = (outcome, order)
        self._lp_cache[key] = result
        return result

    def _bound(self, outcome: LpOutcome) -> Fraction:
        return Fraction(math.ceil(outcome.value)) if self.integral else outcome.value

    # -- branching ------------------------------------------------------------

    def _weights(self, outcome: LpOutcome, order: list[int]) -> dict[int, Fraction]:
        return {c: outcome.solution[j] for j, c in enumerate(order) if outcome.solution[j] > 0}

    def _most_conflicting(self, support: dict[int, Fraction]) -> int | None:
        mask = sum(1 << c for c in support)
        best = None
        for c in sorted(support):
            conflicts = (mask & ~self.pool.touch[c]).bit_count()
            if conflicts and (best is None or conflicts > best[0]):
                best = (conflicts, c)
        return None if best is None else best[1]

    def _most_fractional(self, support: dict[int, Fraction]) -> int | None:
        best = None
        for c in sorted(support):
            v = support[c]
            if v.denominator == 1:
                continue
            distance = min(v - math.floor(v), math.ceil(v) - v)
            if best is None or distance > best[0]:
                best = (distance, c)
        return None if best is None else best[1]

    def _children(self, candidates: int, bounds: Bounds, support: dict[int, Fraction]):
        """Child (candidates, bounds) pairs, or None when the node is resolved."""
        lows = {c: lo for c, lo, _ in bounds if lo > 0}
        c = self._most_conflicting(support)
        if c is not None:
            included = candidates & self.pool.touch[c]
            excluded = candidates & ~(1 << c)
            return [
                (mask, self._restrict(bounds, mask))
                for mask in (included, excluded)
                if all(mask >> low & 1 for low in lows)
            ]
        if not self.integral:
            return None
        c = self._most_fractional(support)
        if c is None:
            return None
        floor, ceil = math.floor(support[c]), math.ceil(support[c])
        children = []
        if floor == 0:
            if c not in lows:
                mask = candidates & ~(1 << c)
                children.append((mask, self._restrict(bounds, mask)))
        else:
            children.append((candidates, self._tighten(bounds, c, hi=floor)))
        mask = candidates & self.pool.touch[c]
        if all(mask >> low & 1 for low in lows):
            children.append((mask, self._tighten(self._restrict(bounds, mask), c, lo=ceil)))
        return children

    @staticmethod
    def _restrict(bounds: Bounds, mask: int) -> Bounds:
        return tuple(b for b in bounds if mask >> b[0] & 1)

    def _tighten(self, bounds: Bounds, c: int, lo: int | None = None, hi: int | None = None) -> Bounds:
        current = {b[0]: (b[1], b[2]) for b in bounds}
        old_lo, old_hi = current.get(c, (0, self.k))
        current[c] = (old_lo if lo is None else lo, old_hi if hi is None else hi)
        return tuple(sorted((i, lo_, hi_) for i, (lo_, hi_) in current.items()))

    # -- search -------------------------------------------------------------

    def _offer(self, value: Fraction, weights: dict[int, Fraction]) -> None:
        if self.best_value is None or value < self.best_value:
            self.best_value = value
            self.best_weights = dict(weights)
            logger.debug("family search: incumbent %s after %d nodes", value, self.nodes)

    def _dive(self, candidates: int) -> None:
        """Greedy descent into the last feasible child, to seed the incumbent."""
        bounds: Bounds = ()
        outcome, order = self._solve(candidates, bounds)
        while outcome.optimal:
            support = self._weights(outcome, order)
            children = self._children(candidates, bounds, support)
            if children is None:
                self._offer(outcome.value, support)
                return
            for candidates, bounds in reversed(children):
                outcome, order = self._solve(candidates, bounds)
                if outcome.optimal:
                    break
            else:
                return

    def _roots(self) -> list[int]:
        everything = (1 << len(self.pool)) - 1
        if len(self.bags) < 2:
            return [everything]
        masks = sorted({self.pool.meeting(bag) for bag in self.bags}, key=lambda m: (m.bit_count(), m))
        # a bag whose candidates are contained in another bag's adds nothing
        return [m for i, m in enumerate(masks) if not any(m & ~o == 0 for o in masks[i + 1 :])]

    def run(self) -> tuple[Fraction, dict[int, Fraction]]:
        # any single subset carrying all the weight is feasible
        self._offer(Fraction(self.k), {0: Fraction(self.k)})
        roots = self._roots()
        self._dive(roots[0] if len(roots) == 1 else (1 << len(self.pool)) - 1)

        heap: list[_FamilyNode] = []
        seen: set[tuple[int, Bounds]] = set()
        counter = 0

        def push(candidates: int, bounds: Bounds) -> None:
            nonlocal counter
            if (candidates, bounds) in seen:
                return
            seen.add((candidates, bounds))
            outcome, _ = self._solve(candidates, bounds)
            if not outcome.optimal:
                return
            key = self._bound(outcome)
            if key >= self.best_value:
                return
            counter += 1
            heapq.heappush(heap, _FamilyNode(key, counter, candidates, bounds, outcome))

        for root in roots:
            push(root, ())
        while heap:
            node = heapq.heappop(heap)
            if node.key >= self.best_value:
                break
            outcome, order = self._solve(node.candidates, node.bounds)
            support = self._weights(outcome, order)
            children = self._children(node.candidates, node.bounds, support)
            if children is None:
                self._offer(outcome.value, support)
                continue
            for candidates, bounds in children:
                push(candidates, bounds)

        return self.best_value, self.best_weights


def _tree_decomposition_bags(h: Hypergraph, pool: TouchingPool) -> list[VertexSet]:
    """Bags of the proper tree decomposition whose bags meet the fewest subsets."""
    if h.n > toolkit_config.max_triangulation_n:
        logger.debug("family search: n=%d above triangulation guard, no bag split", h.n)
        return []
    from ..widths import proper_tree_decompositions

    best = None
    for td in proper_tree_decompositions(h):
        widest = max(pool.meeting(bag).bit_count() for bag in td.bags)
        if best is None or widest < best[0]:
            best = (widest, list(td.bags))
    return best[1] if best else []


def family_search(
    pool: TouchingPool,
    k: int,
    integral: bool,
    node_limit: int | None = None,
    bags: Sequence[VertexSet] | None = None,
) -> tuple[Fraction, dict[VertexSet, Fraction]]:
    """Optimal w and the support weights, keyed by subset."""
    search = FamilySearch(pool, k, integral, node_limit=node_limit, bags=bags)
    value, weights = search.run()
    return value, {pool.subsets[c]: x for c, x in sorted(weights.items())}


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------


def _check_method(method: str) -> None:
    if method not in SEARCH_METHODS:
        raise InputError(f"unknown method {method!r} (known: {', '.join(SEARCH_METHODS)})")


def _optimum(
    h: Hypergraph, pool: TouchingPool, total: int, integral: bool, method: str, node_limit: int | None
) -> tuple[Fraction, dict[int, Fraction], int]:
    """Optimal w, the non-zero x_S by pool index, and the nodes spent."""
    if method == "milp":
        outcome = solve_milp(_family_model(h, pool, total, integral), node_limit=node_limit)
        if not outcome.optimal:
            raise DomainError(f"embedding program is {outcome.status.value}")
        weights = {i: x for i, x in enumerate(outcome.solution[: len(pool)]) if x > 0}
        return outcome.value, weights, outcome.nodes
    search = FamilySearch(pool, total, integral, node_limit=node_limit, bags=_tree_decomposition_bags(h, pool))
    value, weights = search.run()
    return value, weights, search.nodes


def min_wed_ilp(
    h: Hypergraph, k: int, node_limit: int | None = None, method: str = DEFAULT_SEARCH_METHOD
) -> tuple[int, Embedding]:
    """Minimum wed(C_k ↦ h) by ILP (1), with a witness embedding.

    Clique vertices are assigned to the support subsets in pool order, each
    subset repeated by its multiplicity.
    """
    if k < 1:
        raise InputError(f"clique size must be >= 1, got {k}")
    _check_method(method)
    pool = _pool_for(h)
    value, weights, nodes = _optimum(h, pool, k, True, method, node_limit)
    images: list[VertexSet] = []
    for c in sorted(weights):
        images.extend([pool.subsets[c]] * int(weights[c]))
    logger.info("min_wed_ilp: k=%d -> %s (%s, %d nodes, pool %d)", k, value, method, nodes, len(pool))
    return int(value), Embedding(k=k, images=tuple(images))


def emb_fractional(
    h: Hypergraph, node_limit: int | None = None, method: str = DEFAULT_SEARCH_METHOD
) -> FractionalWitness:
    """MILP (2): w*, its support weights and K; emb(h) = 1/w*.

    A pairwise-touching family never spans two components, so on a
    disconnected hypergraph this is the best component.
    """
    _check_method(method)
    disconnected = len(component_masks(h)) > 1
    if disconnected:
        logger.warning("hypergraph is disconnected; emb is the maximum over its components")
    pool = _pool_for(h)
    value, weights, nodes = _optimum(h, pool, 1, False, method, node_limit)
    logger.info("emb_fractional: w* = %s (%s, %d nodes, pool %d)", value, method, nodes, len(pool))
    return FractionalWitness.from_weights(
        {pool.subsets[c]: x for c, x in weights.items()},
        value,
        disconnected=disconnected,
        nodes=nodes,
    )


def emb(h: Hypergraph) -> Fraction:
    """The clique embedding power of h."""
    return emb_fractional(h).emb


def emb_components(h: Hypergraph) -> list[tuple[VertexSet, FractionalWitness]]:
    """emb_fractional of every connected component, with weights in h's vertex numbering."""
    results = []
    for comp in component_masks(h):
        keep = list(bits(comp))
        witness = emb_fractional(induced(h, comp))
        lifted = {sum(1 << keep[v] for v in bits(s)): x for s, x in witness.weights.items()}
        results.append((comp, FractionalWitness.from_weights(lifted, witness.w_star, nodes=witness.nodes)))
    return results


def emb_k_curve(h: Hypergraph, k_max: int) -> list[tuple[int, Fraction]]:
    """emb_k(h) = k / min_wed(h, k) for k = 1..k_max."""
    if k_max < 1:
        raise InputError(f"k_max must be >= 1, got {k_max}")
    return [(k, Fraction(k, min_wed_ilp(h, k)[0])) for k in range(1, k_max + 1)]
