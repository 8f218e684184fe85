"""Command-line front door.

Exit codes: 0 success, 2 pipeline failure (with stage diagnostics),
3 invalid input, 4 search budget exceeded.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import asdict

import click

from . import __version__
from .acyclic import Decomposition, NotAcyclicError, NotPartialError, decompose_acyclic
from .core import (
    Digraph,
    GraphFormatError,
    decomposition_from_json,
    decomposition_to_json,
    excess,
    parse_digraph,
    parse_undirected,
    serialize_digraph,
    serialize_undirected,
)
from .decomposer import (
    DEFAULT_SHORT_CYCLE_CAP,
    NotSparseError,
    PipelineConfig,
    PipelineFailure,
    ZeroExcessVertexError,
    decompose_auto,
    decompose_discrete,
    decompose_k_sparse,
    decompose_no_zero,
    verify,
)
from .exact import BudgetExceededError, exact_pn, is_consistent_exact, strong_consistency_scan
from .experiments import run_experiment, summarize
from .random_regular import (
    OddProductError,
    RejectionBudgetError,
    check_discrete,
    cycle_census,
    gen_counterexample,
    gen_d0,
    orient_random,
    sample_regular,
)

EXIT_FAILURE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _log_manifest(ctx, outcome: str, seed=None, input_digest=None, started=None):
    log_path = ctx.obj.get("log")
    if not log_path:
        return
    record = {
        "command": ctx.command_path,
        "config": {k: v for k, v in ctx.params.items()},
        "seed": seed,
        "input_digest": input_digest,
        "outcome": outcome,
        "wall_time_s": round(time.perf_counter() - (started or time.perf_counter()), 6),
    }
    with open(log_path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True, default=str) + "\n")


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _parse_digraph_or_exit(text: str) -> Digraph:
    try:
        return parse_digraph(text)
    except (GraphFormatError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(__version__)
@click.option("--log", type=click.Path(dir_okay=False), default=None,
              help="Append one JSON-lines manifest record per command run.")
@click.pass_context
def main(ctx, log):
    """Minimum path decompositions of directed graphs."""
    ctx.ensure_object(dict)
    ctx.obj["log"] = log


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["auto", "acyclic", "no-zero", "k-sparse", "discrete"]),
              default="auto", show_default=True)
@click.option("-p", "--max-cycle-len", type=int, default=DEFAULT_SHORT_CYCLE_CAP,
              show_default=True, help="Short-cycle length bound for the discrete pipeline.")
@click.option("--paths-per-cycle", type=int, default=2, show_default=True)
@click.option("--cycle-degree-floor", type=int, default=4, show_default=True)
@click.option("--sparsity-k", type=int, default=4, show_default=True)
@click.option("--theta", type=int, default=None)
@click.option("--retries", type=int, default=32, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--undirected", is_flag=True,
              help="Treat the input as undirected and orient it with --seed first.")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None,
              help="Write the decomposition JSON here instead of stdout.")
@click.option("--verify-only", is_flag=True, help="Print only the verification report.")
@click.pass_context
def decompose(ctx, file, mode, max_cycle_len, paths_per_cycle, cycle_degree_floor,
              sparsity_k, theta, retries, seed, undirected, json_out, verify_only):
    """Decompose a digraph into the minimum number of paths."""
    started = time.perf_counter()
    text = _read(file)
    if undirected:
        try:
            G = parse_undirected(text)
        except GraphFormatError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        D = orient_random(G, seed)
    else:
        D = _parse_digraph_or_exit(text)
    cfg = PipelineConfig(
        paths_per_cycle=paths_per_cycle,
        cycle_degree_floor=cycle_degree_floor,
        sparsity_k=sparsity_k,
        theta=theta,
        retries=retries,
        seed=seed,
    )
    try:
        if mode == "auto":
            result = decompose_auto(D, cfg, short_cycle_cap=max_cycle_len)
        elif mode == "acyclic":
            result = decompose_acyclic(D)
        elif mode == "no-zero":
            result = decompose_no_zero(D, cfg)
        elif mode == "k-sparse":
            result = decompose_k_sparse(D, cfg)
        else:
            result = decompose_discrete(D, max_cycle_len, cfg)
    except (ZeroExcessVertexError, NotSparseError, NotAcyclicError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        _log_manifest(ctx, "invalid-input", seed, _digest(text), started)
        sys.exit(EXIT_INVALID)
    if isinstance(result, PipelineFailure):
        payload = {
            "stage": result.stage,
            "witness": repr(result.witness),
            "config": asdict(result.config),
        }
        click.echo(json.dumps(payload, sort_keys=True, default=str))
        _log_manifest(ctx, f"failure:{result.stage}", seed, _digest(text), started)
        sys.exit(EXIT_FAILURE)
    report = verify(D, result)
    if verify_only:
        for c in report.checks:
            click.echo(f"{'ok' if c.ok else 'FAIL'} {c.name}{': ' + c.detail if c.detail else ''}")
        click.echo(f"verdict: {report.verdict}")
    else:
        _emit(decomposition_to_json(result.paths, result.host_excess, report.ok), json_out)
    _log_manifest(ctx, "success", seed, _digest(text), started)
    sys.exit(0 if report.ok else EXIT_FAILURE)


@main.command("exact-pn")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--limit", type=int, default=24, show_default=True, help="Edge budget.")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None,
              help="Write the certificate decomposition JSON here.")
@click.pass_context
def cmd_exact(ctx, file, limit, json_out):
    """Exact minimum path decomposition of a small digraph."""
    started = time.perf_counter()
    text = _read(file)
    D = _parse_digraph_or_exit(text)
    ex, _ = excess(D)
    try:
        pn, cert = exact_pn(D, limit)
    except BudgetExceededError as exc:
        click.echo(f"error: {exc}", err=True)
        _log_manifest(ctx, "budget-exceeded", None, _digest(text), started)
        sys.exit(EXIT_BUDGET)
    consistent = (pn == ex) if D.m else True
    click.echo(f"pn={pn} ex={ex} consistent={str(consistent).lower()}")
    if json_out:
        _emit(decomposition_to_json(cert, ex, True), json_out)
    _log_manifest(ctx, "success", None, _digest(text), started)


@main.command("scan-orientations")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--limit", type=int, default=16, show_default=True,
              help="Maximum edge count (the scan enumerates 2^m orientations).")
@click.pass_context
def cmd_scan(ctx, file, limit):
    """Check every orientation of an undirected graph for consistency."""
    started = time.perf_counter()
    text = _read(file)
    try:
        G = parse_undirected(text)
    except GraphFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    try:
        ok, witness = strong_consistency_scan(G, limit)
    except BudgetExceededError as exc:
        click.echo(f"error: {exc}", err=True)
        _log_manifest(ctx, "budget-exceeded", None, _digest(text), started)
        sys.exit(EXIT_BUDGET)
    click.echo(f"strongly_consistent={str(ok).lower()}")
    if not ok:
        click.echo("# inconsistent orientation witness:")
        click.echo(serialize_digraph(witness), nl=False)
    _log_manifest(ctx, "success", None, _digest(text), started)


@main.command("check")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.argument("decomposition", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def cmd_check(ctx, file, decomposition):
    """Verify a decomposition JSON against its host digraph."""
    started = time.perf_counter()
    text = _read(file)
    D = _parse_digraph_or_exit(text)
    try:
        paths, ex_claimed, _ = decomposition_from_json(_read(decomposition))
    except (ValueError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    report = verify(D, Decomposition(tuple(paths), ex_claimed))
    for c in report.checks:
        click.echo(f"{'ok' if c.ok else 'FAIL'} {c.name}{': ' + c.detail if c.detail else ''}")
    click.echo(f"verdict: {report.verdict}")
    _log_manifest(ctx, report.verdict, None, _digest(text), started)
    sys.exit(0 if report.ok else EXIT_FAILURE)


@main.group()
def gen():
    """Graph generators (edge-list format on stdout or -o FILE)."""


@gen.command("regular")
@click.option("-n", type=int, required=True)
@click.option("-d", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--simple", is_flag=True, help="Reject pairings with loops or repeated edges.")
@click.option("-o", "out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def gen_regular(ctx, n, d, seed, simple, out):
    """Sample a random d-regular (multi)graph via half-edge pairing."""
    started = time.perf_counter()
    try:
        G = sample_regular(n, d, seed, simple=simple)
    except (OddProductError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    except RejectionBudgetError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    _emit(f"# random {d}-regular graph, n={n}, seed={seed}, simple={simple}\n"
          + serialize_undirected(G), out)
    _log_manifest(ctx, "success", seed, None, started)


@gen.command("d0")
@click.option("-o", "out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def gen_d0_cmd(ctx, out):
    """The 5-vertex gadget with excess 2 that needs 4 paths."""
    started = time.perf_counter()
    D = gen_d0()
    _emit("# gap gadget: excess 2, minimum decomposition 4\n" + serialize_digraph(D), out)
    _log_manifest(ctx, "success", None, None, started)


@gen.command("counterexample")
@click.option("-k", type=int, required=True)
@click.option("-o", "out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def gen_counterexample_cmd(ctx, k, out):
    """Gadget chain with all-excess-one vertices and decomposition gap 2k+2."""
    started = time.perf_counter()
    if k < 0:
        click.echo("error: k must be non-negative", err=True)
        sys.exit(EXIT_INVALID)
    D, meta = gen_counterexample(k)
    header = "".join(f"# {key}={value}\n" for key, value in sorted(meta.items()))
    _emit(header + serialize_digraph(D), out)
    _log_manifest(ctx, "success", None, None, started)


@main.group()
def stats():
    """Monte Carlo statistics."""


@stats.command("cycles")
@click.option("-n", type=int, required=True)
@click.option("-d", type=int, required=True)
@click.option("--max-len", type=int, default=6, show_default=True)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.pass_context
def stats_cycles(ctx, n, d, max_len, samples, seed, jobs):
    """Empirical short-cycle counts vs the limiting means (d-1)^i/(2i)."""
    started = time.perf_counter()
    try:
        census = cycle_census(n, d, max_len, samples, seed, jobs=jobs)
    except (OddProductError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    click.echo(json.dumps(census.as_table(), sort_keys=True, indent=2))
    _log_manifest(ctx, "success", seed, None, started)


@main.command("discrete-check")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("-p", type=int, required=True, help="Cycle length bound.")
@click.option("--census-cap", type=int, default=None,
              help="Max number of short cycles [default: 3 + log2 log2 n].")
@click.option("--distance-floor", type=int, default=None,
              help="Min pairwise distance of cycle vertices off the cycles "
                   "[default: 2 * sparsity radius = 8].")
@click.pass_context
def discrete_check(ctx, file, p, census_cap, distance_floor):
    """Short-cycle sparsity report for an undirected graph."""
    import math

    started = time.perf_counter()
    text = _read(file)
    try:
        G = parse_undirected(text)
    except GraphFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    if census_cap is None:
        census_cap = 3 + max(0, math.ceil(math.log2(max(2.0, math.log2(max(G.n, 2))))))
    if distance_floor is None:
        distance_floor = 8
    if p < 3:
        click.echo("error: p must be at least 3", err=True)
        sys.exit(EXIT_INVALID)
    report = check_discrete(G, p, census_cap, distance_floor)
    click.echo(json.dumps(report.as_dict(), sort_keys=True, indent=2))
    _log_manifest(ctx, "discrete" if report.verdict else "not-discrete",
                  None, _digest(text), started)
    sys.exit(0 if report.verdict else EXIT_FAILURE)


@main.command("experiment")
@click.option("--n", "n_list", type=str, required=True,
              help="Comma-separated vertex counts, e.g. 50,100,200.")
@click.option("--d", type=int, default=3, show_default=True)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--cap", type=int, default=DEFAULT_SHORT_CYCLE_CAP, show_default=True,
              help="Short-cycle length bound handed to the pipeline.")
@click.pass_context
def experiment(ctx, n_list, d, samples, seed, jobs, cap):
    """Sample, orient and decompose; report success rates per size."""
    started = time.perf_counter()
    try:
        n_values = [int(x) for x in n_list.split(",") if x.strip()]
    except ValueError:
        click.echo("error: --n must be a comma-separated list of integers", err=True)
        sys.exit(EXIT_INVALID)
    if d % 2 == 0 and d > 0:
        click.echo(
            "warning: even degree hosts have balanced orientations "
            "(closed walks cover them with no path surplus); expect failures",
            err=True,
        )
    for n in n_values:
        if n * d % 2:
            click.echo(f"error: n*d odd for n={n}, d={d}", err=True)
            sys.exit(EXIT_INVALID)
    records = run_experiment(n_values, d, samples, seed, jobs=jobs, short_cycle_cap=cap)
    rows = summarize(records)
    click.echo(f"{'n':>6} {'trials':>7} {'success':>8} {'rate':>7}  failure stages")
    for row in rows:
        stages = ", ".join(f"{k}:{v}" for k, v in sorted(row["failure_stages"].items())) or "-"
        click.echo(
            f"{row['n']:>6} {row['trials']:>7} {row['successes']:>8} "
            f"{row['success_rate']:>7.2%}  {stages}"
        )
    _log_manifest(ctx, "success", seed, None, started)


if __name__ == "__main__":
    main()
