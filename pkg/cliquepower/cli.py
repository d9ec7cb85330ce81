"""
Command line for the cliquepower toolkit.

    cliquepower emb --family hyper_boat
    cliquepower embk --family cycle -p 6 --k 5
    cliquepower verify --hypergraph h.txt --embedding e.txt
    cliquepower widths --family hyper_boat --fhw --chordal
    cliquepower reduce --hypergraph h.txt --embedding e.txt --graph g.txt --semiring counting -o out.txt
    cliquepower eval --instance out.txt --semiring counting
    cliquepower family cycle 6 -o c6.txt
    cliquepower repro table1
    cliquepower repro roundtrip --triples 100

Exit codes: 0 success, 1 domain or resource error, 2 usage or input error.
"""

import functools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import click

from .config import toolkit_config
from .constants import (
    DEFAULT_SEARCH_METHOD,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    ROUNDTRIP_TRIPLES,
    SEARCH_METHODS,
    SEMIRING_NAMES,
)
from .embedding import (
    emb_components,
    emb_fractional,
    emb_k_curve,
    family,
    is_valid_embedding,
    min_wed_bruteforce,
    min_wed_ilp,
    witness_embedding,
    witness_to_embedding,
)
from .engine import eval_acyclic, eval_bruteforce, solve_qb_heavy_light
from .error_handler import CliquePowerError, DomainError, ErrorHandler, InputError
from .formats import (
    format_embedding,
    format_hypergraph,
    format_instance,
    load_hypergraph,
    parse_embedding,
    parse_graph,
    parse_instance,
    parse_set_function,
    rational_str,
    read_text,
    to_jsonable,
)
from .hypergraph import Hypergraph
from .logging_config import configure, logger
from .reduce import build_instance, kpartite_lift
from .repro import boat as repro_boat
from .repro import curve6, format_rows, lemma7, oracle, roundtrip, table1
from .semirings import semiring_by_name
from .widths import (
    certify_set_function,
    coverage_function,
    fhw_decomposition,
    is_acyclic,
    is_chordal,
    proper_tree_decompositions,
    vertex_depth_function,
    width_lower_bound,
)

SEMIRING_CHOICE = click.Choice(SEMIRING_NAMES, case_sensitive=False)


@dataclass
class Session:
    json: bool = False


# ----------------------------------------------------------------------
# Plumbing
# ----------------------------------------------------------------------


def _reported(func):
    """Turn toolkit errors into an error line on stderr and the matching exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CliquePowerError as e:
            ErrorHandler.log_error(e, context=func.__name__)
            click.echo(f"error: {e.message}", err=True)
            click.get_current_context().exit(ErrorHandler.exit_code(e))

    return wrapper


def _emit(session: Session, payload: dict[str, Any], text: str) -> None:
    if session.json:
        click.echo(json.dumps(to_jsonable(payload), indent=2))
    else:
        click.echo(text)


def _write(path: str | None, content: str) -> None:
    if path is None or path == "-":
        click.echo(content, nl=False)
    else:
        Path(path).write_text(content, encoding="utf-8")
        logger.info("wrote %s", path)


def _load(hypergraph: str | None, family_name: str | None, params: tuple[int, ...]) -> Hypergraph:
    if (hypergraph is None) == (family_name is None):
        raise InputError("give exactly one of --hypergraph FILE or --family NAME")
    if hypergraph is not None:
        return load_hypergraph(hypergraph)
    return family(family_name, *params)


def _hypergraph_options(func):
    func = click.option("--param", "-p", "params", type=int, multiple=True, help="Family parameter (repeatable).")(
        func
    )
    func = click.option("--family", "family_name", help="Named family, e.g. cycle, boat, hyper_boat.")(func)
    func = click.option("--hypergraph", type=click.Path(exists=True, dir_okay=False), help="Hypergraph file.")(func)
    return func


def _weights_text(h: Hypergraph, weights: dict[int, Fraction]) -> list[str]:
    return [f"  {h.format_set(s)} : {rational_str(x)}" for s, x in weights.items()]


# ----------------------------------------------------------------------
# Group
# ----------------------------------------------------------------------


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
@click.option("--verbose", "-v", is_flag=True, help="Log solver progress.")
@click.option("--quiet", "-q", is_flag=True, help="Only log warnings and errors.")
@click.option("--budget", type=click.IntRange(min=1), help="Brute-force multiset budget.")
@click.option("--max-n", type=click.IntRange(min=1), help="Triangulation enumeration vertex guard.")
@click.option("--node-limit", type=click.IntRange(min=1), help="Branch-and-bound node limit.")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads for parallel modes.")
@click.pass_context
def cli(ctx, as_json, verbose, quiet, budget, max_n, node_limit, threads):
    """Clique embedding power toolkit."""
    level = "DEBUG" if verbose else "WARNING" if quiet else toolkit_config.log_level
    configure(level)
    overrides = {
        "bruteforce_budget": budget,
        "max_triangulation_n": max_n,
        "node_limit": node_limit,
        "threads": threads,
    }
    saved = {key: getattr(toolkit_config, key) for key, value in overrides.items() if value is not None}
    for key, value in overrides.items():
        if value is not None:
            setattr(toolkit_config, key, value)

    def restore():
        for key, value in saved.items():
            setattr(toolkit_config, key, value)

    ctx.call_on_close(restore)
    ctx.obj = Session(json=as_json)


# ----------------------------------------------------------------------
# emb / embk / verify
# ----------------------------------------------------------------------


@cli.command()
@_hypergraph_options
@click.option("--witness", "witness_out", type=click.Path(dir_okay=False), help="Write the K-clique witness here.")
@click.option("--components", is_flag=True, help="Report every connected component separately.")
@click.option("--method", type=click.Choice(SEARCH_METHODS), default=DEFAULT_SEARCH_METHOD, show_default=True)
@click.pass_obj
@_reported
def emb(session, hypergraph, family_name, params, witness_out, components, method):
    """Clique embedding power emb(h) = 1/w*."""
    h = _load(hypergraph, family_name, params)
    if components:
        rows = emb_components(h)
        payload = {
            "components": [
                {"vertices": h.names(comp), "emb": w.emb, "w_star": w.w_star, "K": w.K} for comp, w in rows
            ]
        }
        text = "\n".join(f"{h.format_set(comp)}: emb = {rational_str(w.emb)}, K = {w.K}" for comp, w in rows)
        _emit(session, payload, text)
        return
    w = emb_fractional(h, method=method)
    payload = {
        "emb": w.emb,
        "w_star": w.w_star,
        "K": w.K,
        "disconnected": w.disconnected,
        "nodes": w.nodes,
        "weights": [{"subset": h.names(s), "weight": x} for s, x in w.weights.items()],
    }
    lines = [f"emb = {rational_str(w.emb)}, K = {w.K}", f"w* = {rational_str(w.w_star)}", "weights:"]
    lines += _weights_text(h, w.weights)
    if w.disconnected:
        lines.append("note: disconnected hypergraph, value is the best component")
    _emit(session, payload, "\n".join(lines))
    if witness_out:
        _write(witness_out, format_embedding(h, witness_to_embedding(w)))


@cli.command()
@_hypergraph_options
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Clique size.")
@click.option("--bruteforce", is_flag=True, help="Use the multiset oracle instead of branch-and-bound.")
@click.option("--method", type=click.Choice(SEARCH_METHODS), default=DEFAULT_SEARCH_METHOD, show_default=True)
@click.option("--curve", is_flag=True, help="Print emb_j for j = 1..k instead.")
@click.option("--witness", "witness_out", type=click.Path(dir_okay=False), help="Write the optimal embedding here.")
@click.pass_obj
@_reported
def embk(session, hypergraph, family_name, params, k, bruteforce, method, curve, witness_out):
    """Minimum weak edge depth of a k-clique embedding."""
    h = _load(hypergraph, family_name, params)
    if curve:
        points = emb_k_curve(h, k)
        _emit(
            session,
            {"curve": [{"k": j, "emb_k": v} for j, v in points]},
            "\n".join(f"{j:>3}  {rational_str(v)}" for j, v in points),
        )
        return
    solver = min_wed_bruteforce if bruteforce else functools.partial(min_wed_ilp, method=method)
    value, e = solver(h, k)
    payload = {"k": k, "wed": value, "emb_k": Fraction(k, value), "images": [h.names(s) for s in e.images]}
    _emit(session, payload, f"wed(C_{k} -> h) = {value}, emb_{k} = {rational_str(Fraction(k, value))}")
    if witness_out:
        _write(witness_out, format_embedding(h, e))


@cli.command()
@_hypergraph_options
@click.option("--embedding", type=click.Path(exists=True, dir_okay=False), required=True, help="Embedding file.")
@click.pass_obj
@_reported
def verify(session, hypergraph, family_name, params, embedding):
    """Validate an embedding and report its depths."""
    h = _load(hypergraph, family_name, params)
    report = is_valid_embedding(h, parse_embedding(read_text(embedding), h))
    payload = {
        "valid": report.valid,
        "k": report.k,
        "wed": report.wed,
        "ed": report.ed,
        "emb_k": report.emb_k,
        "adaptive_bound": report.adaptive_bound,
        "vertex_depths": dict(zip(h.labels, report.vertex_depths)),
        "edges": [
            {"edge": h.names(e), "weak_depth": d, "edge_depth": p}
            for e, d, p in zip(h.edges, report.weak_edge_depths, report.edge_depths)
        ],
        "violations": report.violations,
    }
    lines = [
        f"valid: {'yes' if report.valid else 'no'}",
        f"k = {report.k}, wed = {report.wed}, ed = {report.ed}",
        f"k/wed = {rational_str(report.emb_k)}, k/ed = {rational_str(report.adaptive_bound)}",
    ]
    lines += [
        f"  {h.format_set(e)}: d = {d}, d+ = {p}"
        for e, d, p in zip(h.edges, report.weak_edge_depths, report.edge_depths)
    ]
    lines += [f"violation: {v}" for v in report.violations]
    _emit(session, payload, "\n".join(lines))
    if not report.valid:
        raise DomainError("embedding is not valid")


# ----------------------------------------------------------------------
# widths
# ----------------------------------------------------------------------


@cli.command()
@_hypergraph_options
@click.option("--fhw", "want_fhw", is_flag=True, help="Fractional hypertree width.")
@click.option("--chordal", "want_chordal", is_flag=True, help="Chordality of the clique graph.")
@click.option("--acyclic", "want_acyclic", is_flag=True, help="Alpha-acyclicity (GYO).")
@click.option("--proper-tds", "want_tds", is_flag=True, help="List the proper tree decompositions.")
@click.option("--certify", type=click.Path(exists=True, dir_okay=False), help="Certify a set function file.")
@click.option("--coverage", type=click.Path(exists=True, dir_okay=False), help="Coverage bound of an embedding.")
@click.option("--adaptive", type=click.Path(exists=True, dir_okay=False), help="Vertex-depth bound of an embedding.")
@click.pass_obj
@_reported
def widths(
    session,
    hypergraph,
    family_name,
    params,
    want_fhw,
    want_chordal,
    want_acyclic,
    want_tds,
    certify,
    coverage,
    adaptive,
):
    """Widths, decompositions and set-function lower bounds."""
    h = _load(hypergraph, family_name, params)
    if not any((want_fhw, want_chordal, want_acyclic, want_tds, certify, coverage, adaptive)):
        want_fhw = want_chordal = want_acyclic = True
    payload: dict[str, Any] = {}
    lines: list[str] = []
    if want_acyclic:
        payload["acyclic"] = is_acyclic(h)
        lines.append(f"acyclic: {'yes' if payload['acyclic'] else 'no'}")
    if want_chordal:
        payload["chordal"] = is_chordal(h)
        lines.append(f"chordal: {'yes' if payload['chordal'] else 'no'}")
    if want_fhw:
        value, td = fhw_decomposition(h)
        payload["fhw"] = value
        payload["fhw_bags"] = [h.names(b) for b in td.bags]
        lines.append(f"fhw = {rational_str(value)}")
        lines.append("  bags: " + " ".join(h.format_set(b) for b in td.bags))
    if want_tds:
        tds = proper_tree_decompositions(h)
        payload["proper_tds"] = [[h.names(b) for b in td.bags] for td in tds]
        lines.append(f"proper tree decompositions: {len(tds)}")
        lines += ["  " + " ".join(h.format_set(b) for b in td.bags) for td in tds]
    if certify:
        f = parse_set_function(read_text(certify), h)
        report = certify_set_function(h, f)
        certified = report.ok
        payload["certificate"] = {
            "monotone": report.monotone,
            "submodular": report.submodular,
            "edge_dominated": report.edge_dominated,
            "normalized": report.normalized,
            "findings": report.findings,
        }
        lines.append(f"certified: {'yes' if report.ok else 'no'}")
        lines += [f"  {finding}" for finding in report.findings]
        if report.ok:
            payload["width_lower_bound"] = width_lower_bound(h, f)
            lines.append(f"width lower bound = {rational_str(payload['width_lower_bound'])}")
    for key, path, build in (
        ("coverage_bound", coverage, coverage_function),
        ("adaptive_bound", adaptive, vertex_depth_function),
    ):
        if path:
            e = parse_embedding(read_text(path), h)
            payload[key] = width_lower_bound(h, build(h, e))
            lines.append(f"{key.replace('_', ' ')} = {rational_str(payload[key])}")
    _emit(session, payload, "\n".join(lines))
    if certify and not certified:
        raise DomainError("set function failed certification")


# ----------------------------------------------------------------------
# reduce / eval
# ----------------------------------------------------------------------


@cli.command()
@_hypergraph_options
@click.option("--embedding", type=click.Path(exists=True, dir_okay=False), required=True, help="Embedding file.")
@click.option("--graph", type=click.Path(exists=True, dir_okay=False), required=True, help="Graph file.")
@click.option("--semiring", type=SEMIRING_CHOICE, default="boolean", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Instance file (stdout when omitted).")
@click.option("--sidecar", type=click.Path(dir_okay=False), help="Write θ, λ and the partition map as JSON.")
@click.pass_obj
@_reported
def reduce(session, hypergraph, family_name, params, embedding, graph, semiring, output, sidecar):
    """Compile k-clique over a graph into a SumProd instance over h.

    A graph without a parts line is lifted to k partitions first, keeping
    one copy of every k-clique.
    """
    h = _load(hypergraph, family_name, params)
    s = semiring_by_name(semiring)
    e = parse_embedding(read_text(embedding), h)
    g = parse_graph(read_text(graph), s)
    if g.parts is None:
        g = kpartite_lift(g, e.k, canonical=True)
    out = build_instance(h, e, g, s, threads=toolkit_config.threads)
    _write(output, format_instance(out.instance, s))
    if sidecar:
        Path(sidecar).write_text(json.dumps(to_jsonable(out.sidecar()), indent=2), encoding="utf-8")
    if output:
        _emit(
            session,
            {"k": e.k, "lambda": out.lam, "tuples": out.instance.size, "output": output},
            f"k = {e.k}, λ = {out.lam}, {out.instance.size} stored tuples -> {output}",
        )


@cli.command(name="eval")
@click.option("--instance", type=click.Path(exists=True, dir_okay=False), required=True, help="Instance file.")
@click.option("--semiring", type=SEMIRING_CHOICE, help="Override the file's semiring line.")
@click.option("--acyclic", is_flag=True, help="Evaluate by join-tree message passing.")
@click.option("--heavy-light", "epsilon", help="Evaluate a boat instance by heavy-light split with this ε.")
@click.pass_obj
@_reported
def eval_command(session, instance, semiring, acyclic, epsilon):
    """Evaluate a SumProd instance."""
    inst, s = parse_instance(read_text(instance), semiring_by_name(semiring) if semiring else None)
    if acyclic and epsilon:
        raise InputError("--acyclic and --heavy-light are exclusive")
    if acyclic:
        value, method = eval_acyclic(inst, s), "acyclic"
    elif epsilon:
        try:
            eps = Fraction(epsilon)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad epsilon {epsilon!r}", original_error=e)
        value, method = solve_qb_heavy_light(inst, s, eps), "heavy-light"
    else:
        value, method = eval_bruteforce(inst, s), "bruteforce"
    _emit(
        session,
        {"semiring": s.name, "method": method, "value": s.format(value)},
        f"value = {s.format(value)}",
    )


# ----------------------------------------------------------------------
# family / repro
# ----------------------------------------------------------------------


@cli.command(name="family")
@click.argument("name")
@click.argument("params", type=int, nargs=-1)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Hypergraph file (stdout when omitted).")
@click.option("--witness", "witness_out", type=click.Path(dir_okay=False), help="Write the catalogued witness here.")
@_reported
def family_command(name, params, output, witness_out):
    """Write a named family member as a hypergraph file."""
    h = family(name, *params)
    _write(output, format_hypergraph(h))
    if witness_out:
        _write(witness_out, format_embedding(h, witness_embedding(name, *params)))


@cli.command()
@click.argument("target", type=click.Choice(["table1", "boat", "curve6", "oracle", "lemma7", "roundtrip"]))
@click.option("--skip-heavy", is_flag=True, help="Leave out the boat query's emb.")
@click.option("--max-vertices", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--max-edges", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--pairs", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--triples", type=click.IntRange(min=1), default=ROUNDTRIP_TRIPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
@_reported
def repro(session, target, skip_heavy, max_vertices, max_edges, k_max, pairs, triples, seed):
    """Recompute reference values and report PASS/FAIL."""
    payload: dict[str, Any] = {"target": target}
    if target == "oracle":
        summary = oracle(max_vertices, max_edges, k_max)
        payload |= {
            "cases": summary.cases,
            "discrepancies": summary.discrepancies,
            "property_violations": summary.property_violations,
        }
        lines = [f"{summary.cases} cases", f"discrepancies: {len(summary.discrepancies)}"]
        lines += [f"  {d}" for d in summary.discrepancies + summary.property_violations]
        lines.append(f"property violations: {len(summary.property_violations)}")
        _emit(session, payload, "\n".join(lines))
        if not summary.ok:
            raise DomainError("oracle discrepancies found")
        return
    if target == "table1":
        rows = table1(include_heavy=not skip_heavy)
    elif target == "boat":
        rows = repro_boat(include_emb=not skip_heavy)
    elif target == "curve6":
        points, rows = curve6()
        payload["curve"] = [{"k": k, "emb_k": v} for k, v in points]
        if not session.json:
            click.echo("\n".join(f"{k:>3}  {rational_str(v) if v is not None else 'error'}" for k, v in points))
    elif target == "roundtrip":
        rows = roundtrip(triples=triples, seed=seed)
    else:
        rows = lemma7(pairs=pairs, seed=seed, max_vertices=max_vertices, max_edges=max_edges)
    payload["rows"] = [r.as_dict() for r in rows]
    _emit(session, payload, format_rows(rows))
    if not all(r.passed for r in rows):
        raise DomainError(f"{sum(not r.passed for r in rows)} rows failed")


# ----------------------------------------------------------------------
# Entry points
# ----------------------------------------------------------------------


def run(argv: list[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    try:
        result = cli.main(args=argv, prog_name="cliquepower", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return EXIT_DOMAIN_ERROR
    if isinstance(result, int):
        return result
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))

