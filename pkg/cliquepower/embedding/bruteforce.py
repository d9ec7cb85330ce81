"""
Brute-force oracle for wed(C_k ↦ H).

By the symmetry of the clique only the multiset of images matters, so the
oracle enumerates size-k multisets of pairwise-touching connected subsets
in lexicographic index order and keeps the first one of minimum weak edge
depth. It shares nothing with the optimization path beyond the hypergraph
predicates, which is what makes it useful as a cross-check.
"""

import math
from concurrent.futures import ThreadPoolExecutor

from ..config import toolkit_config
from ..error_handler import InputError, ResourceError
from ..hypergraph import Hypergraph, bits, connected_subsets, touches
from ..logging_config import logger
from .core import Embedding


class _Oracle:
    def __init__(self, h: Hypergraph, k: int):
        self.k = k
        self.subsets = connected_subsets(h)
        self.footprints = [[ei for ei, e in enumerate(h.edges) if e & s] for s in self.subsets]
        self.touch = []
        for s in self.subsets:
            mask = 0
            for j, t in enumerate(self.subsets):
                if touches(h, s, t):
                    mask |= 1 << j
            self.touch.append(mask)
        self.num_edges = h.m

    def search(self, first: int, best: list) -> tuple[int | None, list[int]]:
        """Depth-first search over multisets starting with index *first*.

        *best* is a one-element list [value | None] holding the bound to beat.
        """
        loads = [0] * self.num_edges
        chosen: list[int] = []
        found: list[int] = []
        local_best: int | None = None

        def place(i: int) -> int:
            top = 0
            for ei in self.footprints[i]:
                loads[ei] += 1
                top = max(top, loads[ei])
            return top

        def unplace(i: int) -> None:
            for ei in self.footprints[i]:
                loads[ei] -= 1

        def extend(last: int, compat: int, depth: int) -> None:
            nonlocal local_best, found
            if len(chosen) == self.k:
                if best[0] is None or depth < best[0]:
                    best[0] = depth
                    local_best = depth
                    found = list(chosen)
                return
            for j in bits(compat >> last << last):
                chosen.append(j)
                top = max(depth, place(j))
                if best[0] is None or top < best[0]:
                    extend(j, compat & self.touch[j], top)
                unplace(j)
                chosen.pop()

        chosen.append(first)
        extend(first, self.touch[first], place(first))
        return local_best, found


def min_wed_bruteforce(
    h: Hypergraph, k: int, budget: int | None = None, threads: int | None = None
) -> tuple[int, Embedding]:
    """Exact min wed over all k-clique embeddings, by multiset enumeration.

    Args:
        h: Hypergraph
        k: Clique size (>= 1)
        budget: Max number of candidate multisets (C(|subsets|+k-1, k)); defaults to config
        threads: Shard the first choice across this many workers; defaults to config

    Returns:
        (minimum wed, first optimal embedding in lexicographic order)
    """
    if k < 1:
        raise InputError(f"clique size must be >= 1, got {k}")
    budget = budget or toolkit_config.bruteforce_budget
    threads = threads or toolkit_config.threads
    oracle = _Oracle(h, k)
    count = len(oracle.subsets)
    candidates = math.comb(count + k - 1, k)
    if candidates > budget:
        raise ResourceError(
            f"brute force over {candidates} multisets of {count} connected subsets exceeds budget {budget}",
            limit=budget,
        )

    if threads <= 1:
        shared = [None]
        best: tuple[int | None, list[int]] = (None, [])
        for first in range(count):
            value, choice = oracle.search(first, shared)
            if value is not None:
                best = (value, choice)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: oracle.search(f, [None]), range(count)))
        best = (None, [])
        for value, choice in results:
            if value is not None and (best[0] is None or value < best[0]):
                best = (value, choice)

    value, choice = best
    logger.debug("bruteforce: k=%d over %d subsets -> wed %s", k, count, value)
    return value, Embedding(k=k, images=tuple(oracle.subsets[i] for i in choice))
