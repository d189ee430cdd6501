from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError

from pmnn.bench.output import render_csv, write_text
from pmnn.bench.schemas import ConvergenceFunction, FdmRequest, RunConfig, TableId
from pmnn.bench.service import table_csv
from pmnn.config import settings
from pmnn.dependencies import get_bench_service
from pmnn.exceptions import InvalidArgumentError, OutputError, PmnnError
from pmnn.logging_config import setup_logging
from pmnn.problems.models import ExampleId
from pmnn.solver.models import Scheme

app = typer.Typer(
    name="pmnn",
    help="Fractional-order PMNN solvers, reference solvers and benchmark tables.",
    no_args_is_help=True,
    add_completion=False,
)

USAGE_ERROR = 2
OUTPUT_ERROR = 3

ExampleOpt = Annotated[int, typer.Option("--example", help="Benchmark problem 1, 2 or 3.")]
AlphaOpt = Annotated[float, typer.Option("--alpha", help="Caputo order in (0, 1).")]
SchemeOpt = Annotated[Scheme, typer.Option("--scheme", help="Temporal scheme.")]
NtOpt = Annotated[int, typer.Option("--nt", help="Number of time nodes, t_0 included.")]
NxOpt = Annotated[int, typer.Option("--nx", help="Spatial nodes per axis (ignored for ODEs).")]
PathOpt = Annotated[Path | None, typer.Option(dir_okay=False, writable=True)]


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map domain errors onto process exit codes."""
    try:
        yield
    except (InvalidArgumentError, ValidationError) as exc:
        typer.echo(f"error: {_describe(exc)}", err=True)
        raise typer.Exit(code=USAGE_ERROR) from exc
    except OutputError as exc:
        typer.echo(f"error: {exc.message}", err=True)
        raise typer.Exit(code=OUTPUT_ERROR) from exc
    except PmnnError as exc:
        typer.echo(f"error [{exc.code}]: {exc.message}", err=True)
        raise typer.Exit(code=1) from exc


def _describe(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in exc.errors()
        )
    return str(exc)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InvalidArgumentError(
            f"Expected a comma-separated list of integers, got {text!r}"
        ) from None


@app.command()
def weights(
    alpha: AlphaOpt,
    scheme: SchemeOpt = Scheme.l1,
    n: Annotated[int, typer.Option("--n", help="L1: weight count. L2-1sigma: row index.")] = 4,
) -> None:
    """Print L1 weights a_0..a_{n-1} or the L2-1sigma row c^(n)."""
    with exit_codes():
        response = get_bench_service().weights(alpha, scheme, n)
    rows = [(k, f"{value:.12f}") for k, value in enumerate(response.weights)]
    typer.echo(render_csv(["k", "weight"], rows), nl=False)


@app.command()
def convergence(
    alpha: AlphaOpt,
    scheme: SchemeOpt = Scheme.l1,
    function: Annotated[
        ConvergenceFunction, typer.Option("--function", help="Test function t^p.")
    ] = ConvergenceFunction.t3,
    ns: Annotated[
        str, typer.Option("--ns", help="Comma-separated step counts.")
    ] = "64,128,256,512",
) -> None:
    """Empirical order of the discrete Caputo derivative on t^p."""
    with exit_codes():
        study = get_bench_service().convergence(scheme, alpha, function, parse_int_list(ns))
    rows = [(row.n, row.error, study.order_label) for row in study.rows]
    typer.echo(render_csv(["n", "error", "order"], rows), nl=False)


@app.command()
def solve(
    example: ExampleOpt,
    alpha: AlphaOpt,
    scheme: SchemeOpt = Scheme.l1,
    nt: NtOpt = 41,
    nx: NxOpt = 11,
    seed: Annotated[int, typer.Option("--seed")] = settings.default_seed,
    max_iters: Annotated[int | None, typer.Option("--max-iters")] = None,
    hidden_layers: Annotated[int, typer.Option("--hidden-layers")] = settings.hidden_layers,
    width: Annotated[int, typer.Option("--width")] = settings.width,
    out: PathOpt = None,
    dump_prediction: PathOpt = None,
    save_params: PathOpt = None,
) -> None:
    """Train one PMNN and write its report as JSON."""
    service = get_bench_service()
    with exit_codes():
        config = RunConfig(
            example=ExampleId.from_number(example),
            alpha=alpha,
            scheme=scheme,
            nt=nt,
            nx=nx,
            seed=seed,
            max_iters=max_iters,
            hidden_layers=hidden_layers,
            width=width,
            out=out,
            dump_prediction=dump_prediction,
            save_params=save_params,
        )
        params, report = service.solve(config)
        service.export_solve(config, params, report)
    if out is None:
        typer.echo(report.model_dump_json(indent=2))


@app.command()
def table(
    table_id: Annotated[TableId, typer.Option("--table", help="Which error table.")],
    seeds: Annotated[str, typer.Option("--seeds", help="Comma-separated seeds.")] = "",
    max_iters: Annotated[int | None, typer.Option("--max-iters")] = None,
    workers: Annotated[int | None, typer.Option("--workers", min=1)] = None,
    out: PathOpt = None,
) -> None:
    """Reproduce an error table as CSV, one row per (nt, nx, alpha, scheme)."""
    with exit_codes():
        report = get_bench_service().table(
            table_id, parse_int_list(seeds), max_iters=max_iters, workers=workers
        )
        text = table_csv(report)
        if out is not None:
            write_text(out, text)
    if out is None:
        typer.echo(text, nl=False)


@app.command()
def fdm(
    example: ExampleOpt,
    alpha: AlphaOpt,
    scheme: SchemeOpt = Scheme.l1,
    nt: NtOpt = 41,
    nx: NxOpt = 11,
    out: Annotated[
        Path | None, typer.Option(dir_okay=False, help="Write the grid solution as CSV.")
    ] = None,
) -> None:
    """Run the finite-difference reference solver and print its error summary."""
    with exit_codes():
        request = FdmRequest(
            example=ExampleId.from_number(example), alpha=alpha, scheme=scheme, nt=nt, nx=nx
        )
        solution, summary = get_bench_service().fdm(request)
        if out is not None:
            solution.to_csv(out)
    typer.echo(summary.model_dump_json(indent=2))


@app.command()
def serve(
    host: Annotated[str, typer.Option("--host")] = settings.host,
    port: Annotated[int, typer.Option("--port")] = settings.port,
) -> None:
    """Serve the HTTP API."""
    import uvicorn

    uvicorn.run("pmnn.main:app", host=host, port=port)


def main() -> None:
    setup_logging()
    app()
