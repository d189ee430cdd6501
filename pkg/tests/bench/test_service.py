import json

import numpy as np
import pytest

from pmnn.bench.schemas import FdmRequest, RunConfig, TableId
from pmnn.bench.service import BenchService, table_csv
from pmnn.exceptions import InvalidArgumentError, OutputError
from pmnn.neural import load_params
from pmnn.problems import ExampleId
from pmnn.solver import Scheme


def test_weights(bench_service):
    l1 = bench_service.weights(0.5, Scheme.l1, 3)
    assert l1.weights == pytest.approx([1.0, np.sqrt(2.0) - 1.0, np.sqrt(3.0) - np.sqrt(2.0)])
    row = bench_service.weights(0.5, Scheme.l2sigma, 2)
    assert len(row.weights) == 2
    assert row.weights[0] == pytest.approx(0.8819171036, abs=1e-9)


def test_weights_reject_order(bench_service):
    with pytest.raises(InvalidArgumentError):
        bench_service.weights(1.5, Scheme.l1, 3)


def test_solve_records_run_config(bench_service, fake_trainer):
    config = RunConfig(example=ExampleId.conv1d, alpha=0.5, nt=21, nx=7, seed=3, max_iters=9)
    _, report = bench_service.solve(config)
    assert report.config["run"]["nx"] == 7
    assert report.config["optimizer"]["max_iterations"] == 9
    assert fake_trainer.calls[0]["nx"] == 7


def test_fode_runs_ignore_nx(bench_service, fake_trainer):
    bench_service.solve(RunConfig(example=ExampleId.fode1, alpha=0.5))
    assert fake_trainer.calls[0]["nx"] is None


def test_export_solve(tmp_path, bench_service):
    config = RunConfig(
        example=ExampleId.fode1,
        alpha=0.5,
        out=tmp_path / "report.json",
        save_params=tmp_path / "net.bin",
        dump_prediction=tmp_path / "prediction.csv",
    )
    params, report = bench_service.solve(config)
    bench_service.export_solve(config, params, report)

    assert json.loads(config.out.read_text())["problem"] == "fode1"
    np.testing.assert_array_equal(load_params(config.save_params).flat, params.flat)
    lines = config.dump_prediction.read_text().splitlines()
    assert lines[0] == "t,u_exact,u_pred,abs_err"
    assert len(lines) == 501


def test_export_failure(tmp_path, bench_service):
    config = RunConfig(example=ExampleId.fode1, alpha=0.5, out=tmp_path / "no" / "report.json")
    params, report = bench_service.solve(config)
    with pytest.raises(OutputError):
        bench_service.export_solve(config, params, report)


def test_table_with_seeds(bench_service):
    report = bench_service.table(TableId.pde1d_nx, seeds=[1, 2, 3])
    assert report.header == [
        "table", "example", "nt", "nx", "alpha", "scheme",
        "error_seed_1", "error_seed_2", "error_seed_3", "median_error",
        "reference_error", "iterations", "wall_time_s",
    ]
    assert [(row["nx"], row["scheme"]) for row in report.rows[:4]] == [
        (6, "l1"), (6, "l2sigma"), (11, "l1"), (11, "l2sigma"),
    ]
    assert len(report.rows) == 12
    first = report.rows[0]
    assert first["example"] == 2
    assert first["median_error"] == first["error_seed_2"]
    assert first["reference_error"] == 3.24e-03
    assert first["iterations"] == 12
    assert first["wall_time_s"] == pytest.approx(1.5)


def test_table_default_seed(bench_service, fake_trainer):
    report = bench_service.table("ode-err", max_iters=7)
    assert report.seeds == [42]
    assert "median_error" not in report.header
    assert len(report.rows) == 6 * 3 * 2
    assert report.rows[0]["nx"] is None
    assert {call["config"].max_iterations for call in fake_trainer.calls} == {7}

    lines = table_csv(report).splitlines()
    assert lines[0].startswith("table,example,nt,nx,alpha,scheme,error_seed_42,")
    assert lines[1].startswith("ode-err,1,11,,0.25,l1,")


def test_table_rejects_repeated_seeds(bench_service):
    with pytest.raises(InvalidArgumentError):
        bench_service.table(TableId.pde2d_nx, seeds=[1, 1])


def test_unknown_table(bench_service):
    with pytest.raises(InvalidArgumentError):
        bench_service.table("pde3d-err")


def test_fdm_summary(bench_service):
    solution, summary = bench_service.fdm(FdmRequest(example=ExampleId.fode1, alpha=0.5, nt=65))
    assert solution.grid.steps == 64
    assert summary.nx is None
    assert summary.error_at_final <= summary.max_abs_error <= 5e-2


@pytest.mark.slow
def test_ode_table_row_with_real_training():
    config = RunConfig(example=ExampleId.fode1, alpha=0.25, scheme=Scheme.l1, nt=201, seed=1)
    _, report = BenchService().solve(config)
    assert report.nt == 201
    assert report.l2_relative_error <= 5e-2
