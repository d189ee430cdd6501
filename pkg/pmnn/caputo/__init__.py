from pmnn.caputo.models import FractionalOrder, L1Weights, L2SigmaWeightRow, TimeGrid
from pmnn.caputo.oracles import caputo_power_oracle, caputo_quadrature_oracle
from pmnn.caputo.quadrature import caputo_l1, caputo_l2sigma
from pmnn.caputo.weights import (
    caputo_prefactor,
    gamma_fn,
    l1_weights,
    l2sigma_weight_row,
    l2sigma_weight_table,
)

__all__ = [
    "FractionalOrder",
    "L1Weights",
    "L2SigmaWeightRow",
    "TimeGrid",
    "caputo_l1",
    "caputo_l2sigma",
    "caputo_power_oracle",
    "caputo_prefactor",
    "caputo_quadrature_oracle",
    "gamma_fn",
    "l1_weights",
    "l2sigma_weight_row",
    "l2sigma_weight_table",
]
