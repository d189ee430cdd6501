from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from pmnn.caputo.models import TimeGrid
from pmnn.exceptions import InvalidArgumentError, OutputError
from pmnn.solver.models import FractionalIVP

_AXIS_NAMES = ("x", "y")


@dataclass(frozen=True)
class GridSolution:
    """Values on t_0..t_N times the spatial node grid, indexed (time, x[, y])."""

    grid: TimeGrid
    axes: tuple[np.ndarray, ...] = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        expected = (self.grid.steps + 1, *(axis.size for axis in self.axes))
        if self.values.shape != expected:
            raise InvalidArgumentError(
                f"Grid values have shape {self.values.shape}, expected {expected}"
            )

    @property
    def spatial_dim(self) -> int:
        return len(self.axes)

    def _mesh(self) -> list[np.ndarray]:
        mesh = np.meshgrid(self.grid.nodes, *self.axes, indexing="ij")
        return [m.ravel() for m in mesh]

    def points(self) -> np.ndarray:
        """Columns (space..., t) in the row-major order of `values`."""
        t, *space = self._mesh()
        return np.column_stack([*space, t])

    def exact_values(self, problem: FractionalIVP) -> np.ndarray:
        if problem.exact_solution is None:
            raise InvalidArgumentError(f"Problem '{problem.name}' has no exact solution")
        points = self.points()
        sampled = problem.sample(
            problem.exact_solution, points[:, : self.spatial_dim], points[:, self.spatial_dim]
        )
        return sampled.reshape(self.values.shape)

    def max_abs_error(self, problem: FractionalIVP) -> float:
        return float(np.max(np.abs(self.values - self.exact_values(problem))))

    def error_at_final(self, problem: FractionalIVP) -> float:
        """Max-abs error over the spatial grid at t = T."""
        error = np.abs(self.values[-1] - self.exact_values(problem)[-1])
        return float(np.max(error))

    def to_csv(self, path: str | Path) -> None:
        header = ["t", *_AXIS_NAMES[: self.spatial_dim], "u"]
        rows = np.column_stack([*self._mesh(), self.values.ravel()])
        try:
            with Path(path).open("w", newline="") as handle:
                writer = csv.writer(handle)
                writer.writerow(header)
                writer.writerows([repr(float(value)) for value in row] for row in rows)
        except OSError as exc:
            raise OutputError(f"Cannot write grid solution to {path}: {exc}") from exc
