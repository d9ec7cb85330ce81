"""
Constants used throughout the cliquepower toolkit.

This module is the single source of truth for all default values,
guards, budgets, and tunables used across the package.
"""

from fractions import Fraction

# Hypergraph scale
MAX_VERTICES = 24  # subset lattice enumeration must stay at desk scale
MAX_TRIANGULATION_N = 9  # minimal triangulation enumeration guard

# Solver budgets
BRUTEFORCE_BUDGET = 10**7  # candidate multisets for the brute-force oracle
NODE_LIMIT = 200_000  # branch-and-bound nodes before giving up
ELIMINATION_STATE_LIMIT = 500_000  # partial fill sets kept during triangulation enumeration
MAX_SET_FUNCTION_N = 16  # explicit 2^n set function tables

# Caching
CACHE_SIZE = 256  # hypergraphs whose subset tables are kept
COVER_CACHE_SIZE = 4096  # (hypergraph, bag) fractional edge cover values
LP_CACHE_SIZE = 8192  # node LP outcomes kept during one family search

# Concurrency
DEFAULT_THREADS = 1

# Logging
DEFAULT_LOG_LEVEL = "INFO"

# Text formats
COMMENT_PREFIX = "#"
EMPTY_SET_TOKEN = "-"
INFINITY_LITERAL = "inf"
SEMIRING_NAMES = ("boolean", "counting", "tropical", "maxtimes")

# CLI exit codes
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2

# Expected reference values
EXPECTED_EMB_BOAT = Fraction(17, 9)
EXPECTED_EMB_HYPER_BOAT = Fraction(7, 4)
EXPECTED_FHW_HYPER_BOAT = Fraction(2)
EXPECTED_CURVE6_PEAK = Fraction(5, 3)
CURVE6_K_RANGE = (3, 12)

# Heavy-light defaults
DEFAULT_EPSILON = Fraction(1, 2)
BOAT_INSTANCES = 100
BOAT_TUPLES = 120
BOAT_DOMAIN = 24

# Reduction round-trip defaults
ROUNDTRIP_TRIPLES = 100
ROUNDTRIP_MAX_GRAPH_VERTICES = 6
ROUNDTRIP_DENSITY = 0.8

# Exact embedding solvers: family branch-and-bound, or the declarative model through ratlp.solve_milp
SEARCH_METHODS = ("search", "milp")
DEFAULT_SEARCH_METHOD = "search"
