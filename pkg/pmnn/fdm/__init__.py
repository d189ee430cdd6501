from pmnn.fdm.linalg import cg_solve, laplacian_2d, second_difference, thomas_solve
from pmnn.fdm.models import GridSolution
from pmnn.fdm.service import fdm_solve, fdm_solve_1d, fdm_solve_2d, fdm_solve_fode

__all__ = [
    "GridSolution",
    "cg_solve",
    "fdm_solve",
    "fdm_solve_1d",
    "fdm_solve_2d",
    "fdm_solve_fode",
    "laplacian_2d",
    "second_difference",
    "thomas_solve",
]
