"""
Exact rational linear programming and branch-and-bound MILP.

Everything is computed over ``fractions.Fraction``; there is no floating
point anywhere on the optimization path. The simplex is a dense two-phase
tableau with Bland's rule, which guarantees termination and makes the
returned optimal vertex a deterministic function of the input.
"""

import heapq
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .config import toolkit_config
from .error_handler import InputError, ResourceError
from .logging_config import logger

Rational = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


class Sense(Enum):
    MIN = "min"
    MAX = "max"


class Relation(Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coefficients, x) if a), _ZERO)

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = self.activity(x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """min/max c·x subject to linear constraints, x ≥ 0."""

    num_vars: int
    objective: list[Fraction] = field(default_factory=list)
    sense: Sense = Sense.MIN
    constraints: list[Constraint] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.objective:
            self.objective = [_ZERO] * self.num_vars
        self.objective = [Fraction(c) for c in self.objective]

    def add(
        self, coefficients: Mapping[int, int | Fraction] | Sequence[int | Fraction], relation: Relation, rhs
    ) -> int:
        """Append a constraint given densely or as {variable: coefficient}; returns its index."""
        if isinstance(coefficients, Mapping):
            row = [_ZERO] * self.num_vars
            for j, a in coefficients.items():
                if not 0 <= j < self.num_vars:
                    raise InputError(f"constraint references variable {j} outside 0..{self.num_vars - 1}")
                row[j] += Fraction(a)
        else:
            row = [Fraction(a) for a in coefficients]
        self.constraints.append(Constraint(tuple(row), relation, Fraction(rhs)))
        return len(self.constraints) - 1

    def validate(self) -> None:
        if len(self.objective) != self.num_vars:
            raise InputError(f"objective has {len(self.objective)} coefficients, expected {self.num_vars}")
        for i, c in enumerate(self.constraints):
            if len(c.coefficients) != self.num_vars:
                raise InputError(f"constraint {i} has {len(c.coefficients)} coefficients, expected {self.num_vars}")

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), _ZERO)

    def check(self, x: Sequence[Fraction]) -> list[int]:
        """Indices of constraints violated by *x* (nonnegativity violations are reported as -1)."""
        violated = [-1] if any(v < 0 for v in x) else []
        violated.extend(i for i, c in enumerate(self.constraints) if not c.holds(x))
        return violated


@dataclass
class LpOutcome:
    status: LpStatus
    value: Fraction | None = None
    solution: list[Fraction] = field(default_factory=list)
    nodes: int = 0
    relaxation_value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class MilpModel:
    """A linear program plus integer-constrained variables with integer bounds."""

    lp: LinearProgram
    integer_bounds: dict[int, tuple[int, int]] = field(default_factory=dict)

    def validate(self) -> None:
        self.lp.validate()
        for j, (lo, hi) in self.integer_bounds.items():
            if not 0 <= j < self.lp.num_vars:
                raise InputError(f"integer variable {j} outside 0..{self.lp.num_vars - 1}")
            if int(lo) != lo or int(hi) != hi or lo > hi:
                raise InputError(f"integer variable {j} has invalid bounds ({lo}, {hi})")

    def relaxation(self, bounds: Mapping[int, tuple[int, int]] | None = None) -> LinearProgram:
        """The LP relaxation with integer bounds imposed as constraints."""
        bounds = dict(self.integer_bounds) if bounds is None else bounds
        lp = LinearProgram(
            num_vars=self.lp.num_vars,
            objective=list(self.lp.objective),
            sense=self.lp.sense,
            constraints=list(self.lp.constraints),
            names=list(self.lp.names),
        )
        for j in sorted(bounds):
            lo, hi = bounds[j]
            if lo > 0:
                lp.add({j: 1}, Relation.GE, lo)
            lp.add({j: 1}, Relation.LE, hi)
        return lp

    def is_integral(self, x: Sequence[Fraction]) -> bool:
        return all(x[j].denominator == 1 for j in self.integer_bounds)


# ----------------------------------------------------------------------
# Simplex
# ----------------------------------------------------------------------


class _Tableau:
    """Dense tableau; the last entry of each row is the right-hand side."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], num_cols: int):
        self.rows = rows
        self.basis = basis
        self.num_cols = num_cols
        self.cost: list[Fraction] = [_ZERO] * (num_cols + 1)

    def set_cost(self, costs: Sequence[Fraction]) -> None:
        """Install a (minimization) cost vector and price out the basic columns."""
        cost = list(costs) + [_ZERO] * (self.num_cols - len(costs)) + [_ZERO]
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j, a in enumerate(row):
                    if a:
                        cost[j] -= cb * a
        self.cost = cost

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        inv = _ONE / prow[c]
        if inv != _ONE:
            prow = [a * inv if a else _ZERO for a in prow]
            self.rows[r] = prow
        support = [j for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[c]
            if factor:
                for j in support:
                    row[j] -= factor * prow[j]
        factor = self.cost[c]
        if factor:
            for j in support:
                self.cost[j] -= factor * prow[j]
        self.basis[r] = c

    def run(self, allowed: int) -> LpStatus:
        """Minimize with Bland's rule over columns 0..allowed-1."""
        while True:
            entering = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if entering is None:
                return LpStatus.OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return LpStatus.UNBOUNDED
            self.pivot(best[1], entering)

    def objective_value(self) -> Fraction:
        return -self.cost[-1]


def solve_lp(p: LinearProgram) -> LpOutcome:
    """Solve *p* exactly by the two-phase tableau simplex under Bland's rule."""
    p.validate()
    n = p.num_vars
    rows: list[list[Fraction]] = []
    kinds: list[Relation] = []
    for c in p.constraints:
        coeffs = list(c.coefficients)
        rhs = c.rhs
        relation = c.relation
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            relation = {Relation.LE: Relation.GE, Relation.GE: Relation.LE, Relation.EQ: Relation.EQ}[relation]
        rows.append(coeffs + [rhs])
        kinds.append(relation)

    num_slack = sum(1 for k in kinds if k is not Relation.EQ)
    num_art = sum(1 for k in kinds if k is not Relation.LE)
    num_cols = n + num_slack + num_art
    art_start = n + num_slack

    table: list[list[Fraction]] = []
    basis: list[int] = []
    slack = n
    art = art_start
    for coeffs, kind in zip(rows, kinds):
        row = coeffs[:-1] + [_ZERO] * (num_slack + num_art) + [coeffs[-1]]
        if kind is Relation.LE:
            row[slack] = _ONE
            basis.append(slack)
            slack += 1
        elif kind is Relation.GE:
            row[slack] = -_ONE
            row[art] = _ONE
            basis.append(art)
            slack += 1
            art += 1
        else:
            row[art] = _ONE
            basis.append(art)
            art += 1
        table.append(row)

    tableau = _Tableau(table, basis, num_cols)

    if num_art:
        tableau.set_cost([_ZERO] * art_start + [_ONE] * num_art)
        tableau.run(num_cols)
        if tableau.objective_value() > 0:
            return LpOutcome(LpStatus.INFEASIBLE)
        _drive_out_artificials(tableau, art_start)

    costs = p.objective if p.sense is Sense.MIN else [-c for c in p.objective]
    tableau.set_cost(list(costs) + [_ZERO] * (num_cols - n))
    status = tableau.run(art_start)
    if status is LpStatus.UNBOUNDED:
        return LpOutcome(LpStatus.UNBOUNDED)

    x = [_ZERO] * n
    for r, b in enumerate(tableau.basis):
        if b < n:
            x[b] = tableau.rows[r][-1]
    value = p.evaluate(x)
    return LpOutcome(LpStatus.OPTIMAL, value, x)


def _drive_out_artificials(tableau: _Tableau, art_start: int) -> None:
    """Pivot zero-level artificials out of the basis; drop rows that are redundant."""
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] >= art_start:
            row = tableau.rows[r]
            column = next((j for j in range(art_start) if row[j]), None)
            if column is None:
                del tableau.rows[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, column)
        r += 1


# ----------------------------------------------------------------------
# Branch and bound
# ----------------------------------------------------------------------


@dataclass(order=True)
class _Node:
    key: Fraction
    node_id: int
    bounds: dict[int, tuple[int, int]] = field(compare=False)
    outcome: LpOutcome = field(compare=False)


def _most_fractional(model: MilpModel, x: Sequence[Fraction]) -> int | None:
    best = None
    for j in sorted(model.integer_bounds):
        v = x[j]
        if v.denominator == 1:
            continue
        distance = min(v - math.floor(v), math.ceil(v) - v)
        if best is None or distance > best[0]:
            best = (distance, j)
    return None if best is None else best[1]


def solve_milp(m: MilpModel, node_limit: int | None = None) -> LpOutcome:
    """Exact MILP optimum by best-bound branch-and-bound over LP relaxations.

    Branches on the most fractional integer variable (ties: lowest index);
    open nodes are explored in order of bound, ties by lowest node id.
    An unbounded relaxation, at the root or below it, makes the result UNBOUNDED.
    """
    m.validate()
    node_limit = node_limit or toolkit_config.node_limit
    sign = 1 if m.lp.sense is Sense.MIN else -1

    root_bounds = dict(m.integer_bounds)
    root = solve_lp(m.relaxation(root_bounds))
    if not root.optimal:
        return LpOutcome(root.status, nodes=1)

    counter = 0
    explored = 1
    heap = [_Node(sign * root.value, counter, root_bounds, root)]
    incumbent: LpOutcome | None = None

    while heap:
        node = heapq.heappop(heap)
        if incumbent is not None and node.key >= sign * incumbent.value:
            break
        x = node.outcome.solution
        j = _most_fractional(m, x)
        if j is None:
            incumbent = LpOutcome(LpStatus.OPTIMAL, node.outcome.value, list(x))
            logger.debug("milp: incumbent %s at node %d", incumbent.value, node.node_id)
            continue
        lo, hi = node.bounds[j]
        for child_lo, child_hi in ((lo, math.floor(x[j])), (math.ceil(x[j]), hi)):
            if child_lo > child_hi:
                continue
            explored += 1
            if explored > node_limit:
                raise ResourceError(f"branch-and-bound exceeded {node_limit} nodes", limit=node_limit)
            bounds = dict(node.bounds)
            bounds[j] = (child_lo, child_hi)
            outcome = solve_lp(m.relaxation(bounds))
            if outcome.status is LpStatus.UNBOUNDED:
                logger.warning("milp: unbounded relaxation below node %d", node.node_id)
                return LpOutcome(LpStatus.UNBOUNDED, nodes=explored, relaxation_value=root.value)
            if not outcome.optimal:
                continue
            if incumbent is not None and sign * outcome.value >= sign * incumbent.value:
                continue
            counter += 1
            heapq.heappush(heap, _Node(sign * outcome.value, counter, bounds, outcome))

    logger.debug("milp: %d nodes explored", explored)
    if incumbent is None:
        return LpOutcome(LpStatus.INFEASIBLE, nodes=explored, relaxation_value=root.value)
    incumbent.nodes = explored
    incumbent.relaxation_value = root.value
    return incumbent
