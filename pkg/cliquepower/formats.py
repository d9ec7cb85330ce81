"""
Text file formats.

    hypergraph      vertices: x1 x2 y / edge: x1 x2
    embedding       k: 5 / map 1: x1
    instance        semiring: tropical / domain x1: 0 1 2 / factor edge(x1 x2): (0,1)=3 (1,2)=5
    graph           n: 6 / parts: 0 0 1 1 2 2 / edge 0 1 [weight]
    set function    value x1 y : 3/2   (``-`` is the empty set)

``#`` starts a comment anywhere on a line. Every parser raises InputError
with the offending line number.
"""

import re
from collections.abc import Iterator
from fractions import Fraction
from pathlib import Path
from typing import Any

from .constants import COMMENT_PREFIX, EMPTY_SET_TOKEN
from .embedding.core import Embedding
from .engine import SumProdInstance, WeightedGraph
from .error_handler import ErrorHandler, InputError
from .hypergraph import Hypergraph, bits
from .semirings import BooleanSemiring, Semiring, semiring_by_name
from .widths import SetFunction

_DOMAIN_RANGE = re.compile(r"^0\.\.(\d+)$")
_FACTOR_HEAD = re.compile(r"^factor\s+edge\(([^)]*)\)\s*:(.*)$")
_FACTOR_ENTRY = re.compile(r"\(([^)]*)\)\s*=\s*(\S+)")
# domains above this size are written as a range
_LISTED_DOMAIN_MAX = 16


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(COMMENT_PREFIX, 1)[0].strip()
        if line:
            yield number, line


def _split_key(line: str, number: int) -> tuple[str, str]:
    if ":" not in line:
        raise InputError(f"line {number}: expected 'key: value', got {line!r}")
    key, value = line.split(":", 1)
    return key.strip(), value.strip()


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ErrorHandler.wrap(e, f"reading {path}")


def rational_str(value: Fraction | int) -> str:
    """p/q, or p when the denominator is 1."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def to_jsonable(obj: Any) -> Any:
    """Recursively turn Fractions into p/q strings and tuples/sets into lists."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list | tuple | set | frozenset):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, int | float | str):
        return obj
    return str(obj)


# ----------------------------------------------------------------------
# Hypergraphs
# ----------------------------------------------------------------------


def parse_hypergraph(text: str) -> Hypergraph:
    names: list[str] | None = None
    edges: list[list[str]] = []
    for number, line in _lines(text):
        key, value = _split_key(line, number)
        if key == "vertices":
            if names is not None:
                raise InputError(f"line {number}: vertices declared twice")
            names = value.split()
        elif key == "edge":
            if names is None:
                raise InputError(f"line {number}: edge before the vertices line")
            if not value:
                raise InputError(f"line {number}: empty edge")
            if len(set(value.split())) != len(value.split()):
                raise InputError(f"line {number}: repeated vertex in edge")
            edges.append(value.split())
        else:
            raise InputError(f"line {number}: unknown key {key!r}")
    if names is None:
        raise InputError("hypergraph file has no vertices line")
    return Hypergraph.from_labelled(names, edges)


def format_hypergraph(h: Hypergraph) -> str:
    lines = ["vertices: " + " ".join(h.labels)]
    lines += ["edge: " + " ".join(h.names(e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def load_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(read_text(path))


# ----------------------------------------------------------------------
# Embeddings
# ----------------------------------------------------------------------


def parse_embedding(text: str, h: Hypergraph) -> Embedding:
    k: int | None = None
    images: dict[int, int] = {}
    for number, line in _lines(text):
        key, value = _split_key(line, number)
        if key == "k":
            try:
                k = int(value)
            except ValueError as e:
                raise InputError(f"line {number}: k must be an integer", original_error=e)
            if k < 1:
                raise InputError(f"line {number}: k must be >= 1")
            continue
        parts = key.split()
        if len(parts) != 2 or parts[0] != "map":
            raise InputError(f"line {number}: expected 'map <i>: <vertices>'")
        if k is None:
            raise InputError(f"line {number}: map before the k line")
        try:
            i = int(parts[1])
        except ValueError as e:
            raise InputError(f"line {number}: clique vertex must be an integer", original_error=e)
        if not 1 <= i <= k:
            raise InputError(f"line {number}: clique vertex {i} outside 1..{k}")
        if i in images:
            raise InputError(f"line {number}: clique vertex {i} mapped twice")
        if not value:
            raise InputError(f"line {number}: empty image for clique vertex {i}")
        images[i] = h.set_of(value.split())
    if k is None:
        raise InputError("embedding file has no k line")
    missing = [str(i) for i in range(1, k + 1) if i not in images]
    if missing:
        raise InputError(f"unmapped clique vertices: {' '.join(missing)}")
    return Embedding(k=k, images=tuple(images[i] for i in range(1, k + 1)))


def format_embedding(h: Hypergraph, e: Embedding) -> str:
    lines = [f"k: {e.k}"]
    lines += [f"map {i + 1}: " + " ".join(h.names(image)) for i, image in enumerate(e.images)]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# SumProd instances
# ----------------------------------------------------------------------


def _parse_domain(value: str, number: int) -> int:
    ranged = _DOMAIN_RANGE.match(value)
    if ranged:
        return int(ranged.group(1)) + 1
    try:
        values = [int(token) for token in value.split()]
    except ValueError as e:
        raise InputError(f"line {number}: domain values must be integers", original_error=e)
    if values != list(range(len(values))) or not values:
        raise InputError(f"line {number}: domain must list 0..d-1 in order")
    return len(values)


def parse_instance(text: str, semiring: Semiring | None = None) -> tuple[SumProdInstance, Semiring]:
    """Parse an instance; the file's semiring line applies unless *semiring* is given."""
    declared: Semiring | None = None
    domains: dict[str, int] = {}
    factor_lines: list[tuple[int, list[str], str]] = []
    for number, line in _lines(text):
        head = _FACTOR_HEAD.match(line)
        if head:
            scope = head.group(1).split()
            if len(set(scope)) != len(scope):
                raise InputError(f"line {number}: repeated variable in edge({head.group(1).strip()})")
            factor_lines.append((number, scope, head.group(2)))
            continue
        key, value = _split_key(line, number)
        if key == "semiring":
            declared = semiring_by_name(value)
        elif key.startswith("domain "):
            name = key[len("domain ") :].strip()
            if name in domains:
                raise InputError(f"line {number}: domain of {name} declared twice")
            domains[name] = _parse_domain(value, number)
        else:
            raise InputError(f"line {number}: unknown key {key!r}")
    s = semiring or declared or BooleanSemiring()
    names = list(domains)
    h = Hypergraph.from_labelled(names, [scope for _, scope, _ in factor_lines])
    factors = []
    for number, scope, body in factor_lines:
        # stored tuples follow increasing vertex index, the file follows the edge(...) listing
        order = sorted(range(len(scope)), key=lambda p: h.index(scope[p]))
        table = {}
        for raw_tuple, raw_value in _FACTOR_ENTRY.findall(body):
            try:
                t = tuple(int(a) for a in raw_tuple.split(","))
            except ValueError as err:
                raise InputError(f"line {number}: bad tuple ({raw_tuple})", original_error=err)
            if len(t) != len(scope):
                raise InputError(f"line {number}: tuple ({raw_tuple}) has arity {len(t)}, edge has {len(scope)}")
            value = s.parse(raw_value)
            if not s.is_zero(value):
                table[tuple(t[p] for p in order)] = value
        factors.append(table)
    return SumProdInstance(h, tuple(domains[name] for name in names), tuple(factors)), s


def format_instance(inst: SumProdInstance, s: Semiring) -> str:
    h = inst.hypergraph
    lines = [f"semiring: {s.name}"]
    for name, size in zip(h.labels, inst.domains):
        listed = " ".join(str(a) for a in range(size)) if size <= _LISTED_DOMAIN_MAX else f"0..{size - 1}"
        lines.append(f"domain {name}: {listed}")
    for e, table in zip(h.edges, inst.factors):
        entries = " ".join(f"({','.join(str(a) for a in t)})={s.format(v)}" for t, v in sorted(table.items()))
        lines.append(f"factor edge({' '.join(h.names(e))}): {entries}".rstrip())
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Graphs
# ----------------------------------------------------------------------


def parse_graph(text: str, semiring: Semiring | None = None) -> WeightedGraph:
    """n: N, optional parts: line, then edge u v [weight]; a missing weight is the semiring one."""
    s = semiring or BooleanSemiring()
    n: int | None = None
    parts: tuple[int, ...] | None = None
    weights: dict[tuple[int, int], Any] = {}
    for number, line in _lines(text):
        tokens = line.split()
        if tokens[0] == "edge":
            if n is None:
                raise InputError(f"line {number}: edge before the n line")
            if len(tokens) not in (3, 4):
                raise InputError(f"line {number}: expected 'edge u v [weight]'")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError as e:
                raise InputError(f"line {number}: vertices must be integers", original_error=e)
            w = s.parse(tokens[3]) if len(tokens) == 4 else s.one
            if (min(u, v), max(u, v)) in weights:
                raise InputError(f"line {number}: duplicate edge {u} {v}")
            if not s.is_zero(w):
                weights[(min(u, v), max(u, v))] = w
            continue
        key, value = _split_key(line, number)
        try:
            if key == "n":
                n = int(value)
            elif key == "parts":
                parts = tuple(int(t) for t in value.split())
            else:
                raise InputError(f"line {number}: unknown key {key!r}")
        except ValueError as e:
            raise InputError(f"line {number}: integers expected after {key}:", original_error=e)
    if n is None:
        raise InputError("graph file has no n line")
    return WeightedGraph(n=n, weights=weights, parts=parts)


def format_graph(g: WeightedGraph, s: Semiring | None = None) -> str:
    s = s or BooleanSemiring()
    lines = [f"n: {g.n}"]
    if g.parts is not None:
        lines.append("parts: " + " ".join(str(p) for p in g.parts))
    lines += [f"edge {u} {v} {s.format(w)}" for (u, v), w in sorted(g.weights.items())]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Set functions
# ----------------------------------------------------------------------


def parse_set_function(text: str, h: Hypergraph) -> SetFunction:
    values: dict[int, Fraction] = {}
    for number, line in _lines(text):
        if not line.startswith("value") or ":" not in line:
            raise InputError(f"line {number}: expected 'value <vertices> : <p/q>'")
        subset, raw = line[len("value") :].rsplit(":", 1)
        tokens = subset.split()
        if not tokens:
            raise InputError(f"line {number}: write {EMPTY_SET_TOKEN!r} for the empty set")
        mask = 0 if tokens == [EMPTY_SET_TOKEN] else h.set_of(tokens)
        if mask in values:
            raise InputError(f"line {number}: value of {h.format_set(mask)} given twice")
        try:
            values[mask] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"line {number}: bad rational {raw.strip()!r}", original_error=e)
    missing = [mask for mask in range(1 << h.n) if mask not in values]
    if missing:
        shown = ", ".join(h.format_set(m) for m in missing[:5])
        raise InputError(f"{len(missing)} subsets have no value, e.g. {shown}")
    return SetFunction(n=h.n, values=tuple(values[mask] for mask in range(1 << h.n)))


def format_set_function(h: Hypergraph, f: SetFunction) -> str:
    lines = []
    for mask in range(1 << h.n):
        names = " ".join(h.labels[v] for v in bits(mask)) or EMPTY_SET_TOKEN
        lines.append(f"value {names} : {rational_str(f.value(mask))}")
    return "\n".join(lines) + "\n"
