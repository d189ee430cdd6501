from pmnn.solver.collocation import build_collocation, evaluation_points, spatial_axes
from pmnn.solver.fields import FunctionField, SolutionField, as_field, exact_field
from pmnn.solver.models import (
    CollocationSet,
    FractionalIVP,
    LossBreakdown,
    OperatorKind,
    Scheme,
)
from pmnn.solver.schemas import SolveReport
from pmnn.solver.schemes import L1Scheme, L2SigmaScheme, TemporalScheme, make_scheme
from pmnn.solver.service import (
    LossAssembly,
    assemble_loss,
    l1_target,
    l2_relative_error,
    l2sigma_target,
    predict,
    train,
)

__all__ = [
    "CollocationSet",
    "FractionalIVP",
    "FunctionField",
    "L1Scheme",
    "L2SigmaScheme",
    "LossAssembly",
    "LossBreakdown",
    "OperatorKind",
    "Scheme",
    "SolutionField",
    "SolveReport",
    "TemporalScheme",
    "as_field",
    "assemble_loss",
    "build_collocation",
    "evaluation_points",
    "exact_field",
    "l1_target",
    "l2_relative_error",
    "l2sigma_target",
    "make_scheme",
    "predict",
    "spatial_axes",
    "train",
]
