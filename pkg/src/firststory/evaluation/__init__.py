"""Detection-cost evaluation."""

from firststory.evaluation.detection_cost import (
    confusion,
    cost_norm,
    det_curve,
    min_cost_point,
    pair_scores,
    probit,
    write_det_csv,
)

__all__ = [
    "confusion",
    "cost_norm",
    "det_curve",
    "min_cost_point",
    "pair_scores",
    "probit",
    "write_det_csv",
]
