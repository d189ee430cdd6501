from pmnn.neural.autodiff import ObjectiveEvaluation, evaluate_objective, loss_gradient
from pmnn.neural.lbfgs import LbfgsResult, LineSearchStep, lbfgs_minimize
from pmnn.neural.models import JetValue, NetworkParams
from pmnn.neural.network import DTYPE, NetworkField, forward, forward_jet, init_params
from pmnn.neural.schemas import Activation, LbfgsConfig, LbfgsStatus, NetworkSpec
from pmnn.neural.snapshot import decode_params, encode_params, load_params, save_params

__all__ = [
    "DTYPE",
    "Activation",
    "JetValue",
    "LbfgsConfig",
    "LbfgsResult",
    "LbfgsStatus",
    "LineSearchStep",
    "NetworkField",
    "NetworkParams",
    "NetworkSpec",
    "ObjectiveEvaluation",
    "decode_params",
    "encode_params",
    "evaluate_objective",
    "forward",
    "forward_jet",
    "init_params",
    "lbfgs_minimize",
    "load_params",
    "loss_gradient",
    "save_params",
]
