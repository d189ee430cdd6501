"""Linear solvers for the implicit time steps."""

import numpy as np
import scipy.sparse as sp
from scipy.sparse import linalg as spla

from pmnn.exceptions import ConvergenceError, InvalidArgumentError, NumericalError


def thomas_solve(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """Tridiagonal solve; lower and upper are the n - 1 off-diagonals."""
    n = rhs.size
    if diag.size != n or lower.size != n - 1 or upper.size != n - 1:
        raise InvalidArgumentError("Tridiagonal bands do not match the right-hand side")
    w = np.zeros(max(n - 1, 0))
    g = np.zeros(n)

    pivot = diag[0]
    if pivot == 0.0:
        raise NumericalError("Zero pivot in tridiagonal solve", term="pivot")
    if n > 1:
        w[0] = upper[0] / pivot
    g[0] = rhs[0] / pivot
    for i in range(1, n):
        pivot = diag[i] - lower[i - 1] * w[i - 1]
        if pivot == 0.0:
            raise NumericalError("Zero pivot in tridiagonal solve", term="pivot")
        if i < n - 1:
            w[i] = upper[i] / pivot
        g[i] = (rhs[i] - lower[i - 1] * g[i - 1]) / pivot

    solution = np.empty(n)
    solution[-1] = g[-1]
    for i in range(n - 2, -1, -1):
        solution[i] = g[i] - w[i] * solution[i + 1]
    return solution


def second_difference(m: int) -> sp.csr_matrix:
    """Unscaled 3-point stencil (1, -2, 1) on m interior nodes."""
    return sp.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(m, m), format="csr")


def laplacian_2d(m: int, h: float) -> sp.csr_matrix:
    """5-point Laplacian on an m x m interior block, row-major (x, y) ordering."""
    stencil = second_difference(m)
    identity = sp.identity(m, format="csr")
    return ((sp.kron(stencil, identity) + sp.kron(identity, stencil)) / h**2).tocsr()


def cg_solve(
    matrix: sp.spmatrix,
    rhs: np.ndarray,
    x0: np.ndarray | None = None,
    rtol: float = 1e-12,
    maxiter: int | None = None,
) -> np.ndarray:
    solution, info = spla.cg(matrix, rhs, x0=x0, rtol=rtol, atol=0.0, maxiter=maxiter)
    if info != 0:
        residual = float(np.linalg.norm(rhs - matrix @ solution))
        scale = float(np.linalg.norm(rhs)) or 1.0
        raise ConvergenceError(
            f"Conjugate gradients stopped after {info} iterations without reaching rtol={rtol}",
            best_estimate=residual / scale,
        )
    return solution
