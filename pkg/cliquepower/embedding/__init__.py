"""
Clique embeddings ψ: C_k ↦ H.

Validation and depth measures live in ``core``, named hypergraph families in
``families``, explicit witnesses in ``witnesses``, the multiset oracle in
``bruteforce`` and the exact optimizers in ``search``.
"""

from .bruteforce import min_wed_bruteforce
from .core import (
    Embedding,
    EmbeddingReport,
    FractionalWitness,
    all_of_v,
    is_valid_embedding,
    wed,
    weak_edge_depths,
    witness_to_embedding,
)
from .families import FamilyName, family, parse_family_name
from .search import (
    FamilySearch,
    TouchingPool,
    emb,
    emb_components,
    emb_fractional,
    emb_k_curve,
    family_search,
    ilp1_model,
    milp2_model,
    min_wed_ilp,
    reduce_pool,
    touching_pool,
)
from .witnesses import witness_embedding

__all__ = [
    "Embedding",
    "EmbeddingReport",
    "FamilyName",
    "FamilySearch",
    "FractionalWitness",
    "TouchingPool",
    "all_of_v",
    "emb",
    "emb_components",
    "emb_fractional",
    "emb_k_curve",
    "family",
    "family_search",
    "ilp1_model",
    "is_valid_embedding",
    "milp2_model",
    "min_wed_bruteforce",
    "min_wed_ilp",
    "parse_family_name",
    "reduce_pool",
    "touching_pool",
    "wed",
    "weak_edge_depths",
    "witness_embedding",
    "witness_to_embedding",
]
