from .b1 import build_H_B1, ks2_factor
from .dense_free import build_dense_free
from .linear import (
    construct_bipartite_family,
    construct_inductive,
    construct_ntriangle,
)
from .log_regime import construct_multipartite, construct_star, greedy_color_classes
from .params import (
    ConstructionReport,
    Params,
    bipartite_tau,
    codegree_edge_threshold,
    ball_cover_threshold,
    degree_interval,
    derive_log_sizes,
    log_rho,
    rho,
)

__all__ = [
    "ConstructionReport",
    "Params",
    "ball_cover_threshold",
    "bipartite_tau",
    "build_H_B1",
    "build_dense_free",
    "codegree_edge_threshold",
    "construct_bipartite_family",
    "construct_inductive",
    "construct_multipartite",
    "construct_ntriangle",
    "construct_star",
    "degree_interval",
    "derive_log_sizes",
    "greedy_color_classes",
    "ks2_factor",
    "log_rho",
    "rho",
]
