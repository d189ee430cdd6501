"""Reproduction grids for the benchmark error tables and their reference values."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from pmnn.bench.schemas import TableId
from pmnn.exceptions import InvalidArgumentError
from pmnn.problems.models import ExampleId
from pmnn.solver.models import Scheme

ALPHAS = (0.25, 0.5, 0.75)
SCHEMES = (Scheme.l1, Scheme.l2sigma)

# (nt, nx, alpha, scheme) -> reference L2 relative error
ReferenceValues = dict[tuple[int, int | None, float, Scheme], float]


@dataclass(frozen=True)
class TableCell:
    nt: int
    nx: int | None
    alpha: float
    scheme: Scheme

    @property
    def sort_key(self) -> tuple[int, int, float, int]:
        return (self.nt, self.nx or 0, self.alpha, SCHEMES.index(self.scheme))


@dataclass(frozen=True)
class TableSpec:
    table_id: TableId
    example: ExampleId
    nt_values: tuple[int, ...]
    nx_values: tuple[int | None, ...]
    alphas: tuple[float, ...]
    reference: ReferenceValues = field(repr=False)

    def cells(self) -> list[TableCell]:
        cells = [
            TableCell(nt=nt, nx=nx, alpha=alpha, scheme=scheme)
            for nt, nx, alpha, scheme in product(
                self.nt_values, self.nx_values, self.alphas, SCHEMES
            )
        ]
        return sorted(cells, key=lambda cell: cell.sort_key)

    def reference_error(self, cell: TableCell) -> float | None:
        return self.reference.get((cell.nt, cell.nx, cell.alpha, cell.scheme))


def _rows_by_nt(rows: dict[int, tuple[float, ...]], nx: int | None) -> ReferenceValues:
    """Rows of (L1, L2-1sigma) pairs for each alpha, keyed by nt."""
    return {
        (nt, nx, alpha, scheme): row[index]
        for nt, row in rows.items()
        for index, (alpha, scheme) in enumerate(product(ALPHAS, SCHEMES))
    }


def _rows_by_nx(rows: dict[int, tuple[float, ...]], nt: int, alpha: float) -> ReferenceValues:
    return {
        (nt, nx, alpha, scheme): row[index]
        for nx, row in rows.items()
        for index, scheme in enumerate(SCHEMES)
    }


_ODE_ERR = {
    11: (1.55e-02, 1.20e-03, 5.31e-02, 2.50e-03, 1.33e-01, 6.28e-03),
    21: (5.35e-03, 1.21e-03, 2.07e-02, 2.19e-03, 5.88e-02, 1.53e-03),
    41: (1.86e-03, 3.71e-03, 7.84e-03, 3.02e-03, 2.55e-02, 7.84e-04),
    81: (9.58e-04, 2.64e-03, 3.10e-03, 1.58e-03, 1.09e-02, 4.75e-04),
    101: (6.68e-04, 3.51e-03, 2.26e-03, 2.51e-03, 8.36e-03, 3.39e-04),
    201: (1.71e-04, 3.86e-03, 1.26e-03, 2.37e-03, 4.59e-03, 3.52e-04),
}

_PDE1D_ERR = {
    11: (3.46e-02, 2.80e-02, 1.38e-02, 8.03e-03, 6.39e-03, 2.14e-03),
    21: (1.81e-02, 1.58e-02, 6.43e-03, 3.59e-03, 3.52e-03, 1.17e-03),
    41: (7.74e-03, 5.85e-03, 3.66e-03, 1.64e-03, 2.03e-03, 6.70e-04),
    81: (2.21e-03, 9.73e-04, 1.85e-03, 6.74e-04, 1.13e-03, 3.81e-04),
    101: (1.43e-03, 5.24e-04, 1.48e-03, 5.28e-04, 9.61e-04, 2.90e-04),
}

_PDE1D_NX = {
    6: (3.24e-03, 1.75e-03),
    11: (3.66e-03, 1.64e-03),
    21: (3.45e-03, 1.59e-03),
    41: (3.37e-03, 1.61e-03),
    81: (3.52e-03, 1.68e-03),
    101: (3.59e-03, 1.63e-03),
}

_PDE2D_ERR = {
    11: (2.50e-04, 6.23e-05, 8.13e-04, 6.15e-05, 2.34e-03, 5.00e-05),
    21: (8.27e-05, 4.01e-05, 3.16e-04, 4.67e-05, 1.01e-03, 4.17e-05),
    41: (4.07e-05, 1.66e-04, 1.21e-04, 3.91e-05, 4.32e-04, 4.77e-05),
    81: (2.34e-05, 3.32e-04, 5.26e-05, 5.25e-05, 1.76e-04, 5.08e-05),
    101: (3.04e-05, 5.61e-05, 4.56e-05, 5.62e-05, 1.35e-04, 5.68e-05),
}

_PDE2D_NX = {
    6: (3.42e-04, 7.03e-05),
    11: (3.16e-04, 4.67e-05),
    21: (3.07e-04, 4.16e-05),
    41: (3.10e-04, 4.25e-05),
    81: (3.09e-04, 6.76e-05),
}

TABLES: dict[TableId, TableSpec] = {
    TableId.ode_err: TableSpec(
        table_id=TableId.ode_err,
        example=ExampleId.fode1,
        nt_values=tuple(_ODE_ERR),
        nx_values=(None,),
        alphas=ALPHAS,
        reference=_rows_by_nt(_ODE_ERR, nx=None),
    ),
    TableId.pde1d_err: TableSpec(
        table_id=TableId.pde1d_err,
        example=ExampleId.conv1d,
        nt_values=tuple(_PDE1D_ERR),
        nx_values=(11,),
        alphas=ALPHAS,
        reference=_rows_by_nt(_PDE1D_ERR, nx=11),
    ),
    TableId.pde1d_nx: TableSpec(
        table_id=TableId.pde1d_nx,
        example=ExampleId.conv1d,
        nt_values=(41,),
        nx_values=tuple(_PDE1D_NX),
        alphas=(0.5,),
        reference=_rows_by_nx(_PDE1D_NX, nt=41, alpha=0.5),
    ),
    TableId.pde2d_err: TableSpec(
        table_id=TableId.pde2d_err,
        example=ExampleId.conv2d,
        nt_values=tuple(_PDE2D_ERR),
        nx_values=(11,),
        alphas=ALPHAS,
        reference=_rows_by_nt(_PDE2D_ERR, nx=11),
    ),
    TableId.pde2d_nx: TableSpec(
        table_id=TableId.pde2d_nx,
        example=ExampleId.conv2d,
        nt_values=(21,),
        nx_values=tuple(_PDE2D_NX),
        alphas=(0.5,),
        reference=_rows_by_nx(_PDE2D_NX, nt=21, alpha=0.5),
    ),
}


def get_table(table_id: TableId | str) -> TableSpec:
    try:
        return TABLES[TableId(table_id)]
    except ValueError:
        known = ", ".join(TableId)
        raise InvalidArgumentError(
            f"Unknown table '{table_id}', expected one of {known}"
        ) from None
