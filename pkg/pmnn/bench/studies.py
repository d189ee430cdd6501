"""Empirical order of the discrete Caputo quadratures on t^p."""

from collections.abc import Sequence

import numpy as np
import structlog

from pmnn.bench.schemas import ConvergenceFunction, ConvergenceRow, ConvergenceStudy
from pmnn.caputo.models import FractionalOrder, TimeGrid
from pmnn.caputo.oracles import caputo_power_oracle
from pmnn.caputo.quadrature import caputo_l1, caputo_l2sigma
from pmnn.exceptions import InvalidArgumentError
from pmnn.solver.models import Scheme

logger = structlog.get_logger()

ROUNDOFF_LEVEL = 1e-13


def fitted_order(taus: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(tau)."""
    slope, _ = np.polyfit(np.log(taus), np.log(errors), 1)
    return float(slope)


def quadrature_error(
    scheme: Scheme, alpha: FractionalOrder, function: ConvergenceFunction, steps: int
) -> tuple[float, float]:
    """(tau, |discrete - exact|) on [0, 1] with `steps` intervals."""
    grid = TimeGrid(1.0, steps)
    power = function.power
    samples = np.ones_like(grid.nodes) if power == 0 else grid.nodes**power
    if scheme is Scheme.l1:
        approx = caputo_l1(samples, alpha, grid.tau)
        at = grid.horizon
    else:
        approx = caputo_l2sigma(samples, alpha, grid.tau)
        at = grid.at(steps - 1 + alpha.sigma)
    exact = 0.0 if power == 0 else caputo_power_oracle(power, alpha, at)
    return grid.tau, abs(approx - exact)


def convergence_study(
    scheme: Scheme,
    alpha: FractionalOrder | float,
    function: ConvergenceFunction,
    steps: Sequence[int],
) -> ConvergenceStudy:
    if len(steps) < 3:
        raise InvalidArgumentError(f"A convergence study needs at least 3 grids, got {len(steps)}")
    order = FractionalOrder.of(alpha)
    scheme = Scheme(scheme)
    rows = []
    for n in steps:
        tau, error = quadrature_error(scheme, order, function, n)
        rows.append(ConvergenceRow(n=n, tau=tau, error=error))

    errors = [row.error for row in rows]
    fitted = None
    if max(errors) > ROUNDOFF_LEVEL:
        floor = np.finfo(float).tiny
        fitted = fitted_order([row.tau for row in rows], [max(e, floor) for e in errors])
    logger.info(
        "convergence_study_done",
        scheme=scheme.value,
        alpha=order.alpha,
        function=function.value,
        order=fitted,
    )
    return ConvergenceStudy(
        scheme=scheme, alpha=order.alpha, function=function, rows=rows, order=fitted
    )
