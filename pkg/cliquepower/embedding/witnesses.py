"""
Explicit witness embeddings for the catalogued families.

Each witness is a clique embedding into the family member built by
``families.family`` with the same name and parameters.
"""

from ..error_handler import InputError
from ..hypergraph import mask_of
from .core import Embedding
from .families import FamilyName, boat, example, hyper_boat, parse_family_name


def cycle_witness(length: int) -> Embedding:
    """Consecutive segments of λ-1 vertices; odd ℓ uses k=ℓ, even ℓ reuses the (ℓ-1)-cycle with k=ℓ-1."""
    if length < 3:
        raise InputError(f"cycle length must be >= 3, got {length}")
    base = length if length % 2 else length - 1
    lam = (base + 1) // 2
    images = []
    for c in range(base):
        segment = {(c - t) % base for t in range(lam - 1)}
        if base != length and base - 1 in segment:
            # x_ℓ follows x_(ℓ-1) everywhere
            segment.add(length - 1)
        images.append(mask_of(segment))
    return Embedding(k=base, images=tuple(images))


def k2l_witness(length: int) -> Embedding:
    """(2ℓ-1)-clique into K_{2,ℓ}: ψ(i)={x1,yi}, ψ(ℓ+i-1)={x2,yi} for i<ℓ, and ψ(2ℓ-1)={yℓ}."""
    if length < 1:
        raise InputError(f"K_(2,ℓ) needs ℓ >= 1, got {length}")
    x1, x2 = 0, 1

    def y(i: int) -> int:
        return 1 + i

    images = [mask_of((x1, y(i))) for i in range(1, length)]
    images += [mask_of((x2, y(i))) for i in range(1, length)]
    images.append(mask_of((y(length),)))
    return Embedding(k=2 * length - 1, images=tuple(images))


def k33_witness() -> Embedding:
    x1, x2, x3, y1, y2, y3 = range(6)
    images = [
        (x1, y1),
        (x2, y1),
        (x1, y2),
        (x2, y2),
        (x1, y3),
        (x2, y3),
        (x3,),
        (x3,),
    ]
    return Embedding(k=8, images=tuple(mask_of(i) for i in images))


def almost_clique_witness(length: int, k: int) -> Embedding:
    """ψ(i) = {x(i+1)}: the (ℓ-1)-clique on x2..xℓ, every edge met at most twice."""
    if not 1 <= k < length - 1:
        raise InputError(f"almost_clique needs 1 <= k < ℓ-1, got (ℓ={length}, k={k})")
    return Embedding(k=length - 1, images=tuple(1 << v for v in range(1, length)))


def hyperclique_witness(length: int, k: int) -> Embedding:
    """ψ(i) = {xi}: every k-edge meets exactly k images."""
    if not 1 < k <= length:
        raise InputError(f"hyperclique needs 1 < k <= ℓ, got (ℓ={length}, k={k})")
    return Embedding(k=length, images=tuple(1 << v for v in range(length)))


# Optimal 17-clique embedding of the boat, listed as vertex -> clique vertices.
# x8 omits clique vertex 16; adding it puts ten images on the edge {x5,x8}.
_BOAT_PREIMAGES = {
    "x1": [1, 6, 7, 8, 9, 10, 11, 16],
    "x4": [5, 6, 7, 8, 9, 10, 11],
    "x5": [3, 4, 5],
    "x8": [2, 3, 4, 12, 13, 14, 15, 17],
    "x2": [1, 2, 6, 7, 8],
    "x3": [1, 2, 12, 13, 14, 15],
    "x6": [9, 10, 11, 16, 17],
    "x7": [12, 13, 14, 15, 16, 17],
}

_HYPER_BOAT_PREIMAGES = {
    "y1": [1, 2, 3],
    "y2": [2, 3],
    "y3": [1, 4],
    "z3": [4, 5, 6],
    "z2": [5, 6],
    "z1": [7],
}

_EXAMPLE_PREIMAGES = {"x1": [1], "x2": [2], "x3": [3], "y": [4, 5]}


def boat_witness() -> Embedding:
    return Embedding.from_preimages(boat(), 17, _BOAT_PREIMAGES)


def hyper_boat_witness() -> Embedding:
    return Embedding.from_preimages(hyper_boat(), 7, _HYPER_BOAT_PREIMAGES)


def example_witness() -> Embedding:
    return Embedding.from_preimages(example(), 5, _EXAMPLE_PREIMAGES)


def witness_embedding(name: str | FamilyName, *params: int) -> Embedding:
    """The catalogued witness for a family member, e.g. witness_embedding("cycle", 5)."""
    fam = parse_family_name(name)
    params = tuple(int(p) for p in params)
    if fam is FamilyName.CYCLE and len(params) == 1:
        return cycle_witness(*params)
    if fam is FamilyName.COMPLETE_BIPARTITE and len(params) == 2:
        if params == (3, 3):
            return k33_witness()
        if params[0] == 2:
            return k2l_witness(params[1])
    if fam is FamilyName.ALMOST_CLIQUE and len(params) == 2:
        return almost_clique_witness(*params)
    if fam is FamilyName.HYPERCLIQUE and len(params) == 2:
        return hyperclique_witness(*params)
    if not params:
        if fam is FamilyName.BOAT:
            return boat_witness()
        if fam is FamilyName.HYPER_BOAT:
            return hyper_boat_witness()
        if fam is FamilyName.EXAMPLE:
            return example_witness()
    raise InputError(f"no catalogued witness for {fam.value}{params or ''}")
