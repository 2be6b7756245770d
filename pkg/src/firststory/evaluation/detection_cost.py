"""
Detection Cost Evaluation - miss/false-alarm rates, normalized cost and DET curves

A document is predicted new iff its novelty score is at or above the threshold.
"New" is the target class:

    p_miss = true-new predicted old / true-new
    p_fa   = true-old predicted new / true-old

    cost_norm = (c_miss * p_miss * p_target + c_fa * p_fa * (1 - p_target))
                / min(c_miss * p_target, c_fa * (1 - p_target))

so a perfect system scores 0 and the better of "always new" / "always old"
scores exactly 1. DET curves sweep every observed score as a threshold.
"""

import math
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import polars as pl

from firststory.core.exceptions import DegenerateTruthError
from firststory.models.detection import Verdict
from firststory.models.document import Document
from firststory.models.evaluation import CostParams, DetPoint

ScoredTruth = Tuple[float, bool]

PROBIT_CLAMP = 1e-6

DET_CSV_COLUMNS = ["threshold", "p_miss", "p_fa", "probit_miss", "probit_fa", "cost_norm", "is_min_cost"]

# Rational approximation coefficients for the inverse normal CDF (central and
# tail regions), refined by one Halley step against erfc.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _split(scored: Iterable[ScoredTruth]) -> Tuple[np.ndarray, np.ndarray]:
    pairs = list(scored)
    scores = np.fromiter((s for s, _ in pairs), dtype=np.float64, count=len(pairs))
    is_new = np.fromiter((t for _, t in pairs), dtype=bool, count=len(pairs))
    new_scores = np.sort(scores[is_new])
    old_scores = np.sort(scores[~is_new])
    if new_scores.size == 0 or old_scores.size == 0:
        raise DegenerateTruthError(
            f"need both classes, got {new_scores.size} new and {old_scores.size} old documents"
        )
    return new_scores, old_scores


def _rates(new_scores: np.ndarray, old_scores: np.ndarray, thresholds: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # Scores strictly below a threshold are predicted old.
    misses = np.searchsorted(new_scores, thresholds, side="left")
    false_alarms = old_scores.size - np.searchsorted(old_scores, thresholds, side="left")
    return misses / new_scores.size, false_alarms / old_scores.size


def confusion(scored: Iterable[ScoredTruth], threshold: float) -> Tuple[float, float]:
    """(p_miss, p_fa) at one threshold for ``(novelty_score, is_new)`` pairs."""
    new_scores, old_scores = _split(scored)
    p_miss, p_fa = _rates(new_scores, old_scores, np.array([threshold], dtype=np.float64))
    return float(p_miss[0]), float(p_fa[0])


def cost_norm(p_miss: float, p_fa: float, params: CostParams) -> float:
    """Normalized detection cost at the given error rates."""
    weighted = params.c_miss * p_miss * params.p_target + params.c_fa * p_fa * params.p_nontarget
    return weighted / min(params.c_miss * params.p_target, params.c_fa * params.p_nontarget)


def det_curve(scored: Iterable[ScoredTruth], params: CostParams) -> List[DetPoint]:
    """DET staircase in ascending threshold order with the lowest-cost point flagged.

    Thresholds are -inf, every distinct observed score above the lowest one
    (the lowest reproduces the -inf corner) and +inf.
    """
    new_scores, old_scores = _split(scored)
    distinct = np.unique(np.concatenate([new_scores, old_scores]))
    thresholds = np.concatenate([[-np.inf], distinct[1:], [np.inf]])
    p_miss, p_fa = _rates(new_scores, old_scores, thresholds)

    costs = [cost_norm(float(m), float(f), params) for m, f in zip(p_miss, p_fa)]
    best = int(np.argmin(costs))
    return [
        DetPoint(
            threshold=float(t),
            p_miss=float(m),
            p_fa=float(f),
            cost_norm=c,
            is_min_cost=(i == best),
        )
        for i, (t, m, f, c) in enumerate(zip(thresholds, p_miss, p_fa, costs))
    ]


def min_cost_point(points: Sequence[DetPoint]) -> DetPoint:
    """The flagged lowest-cost operating point of a DET curve."""
    for point in points:
        if point.is_min_cost:
            return point
    raise ValueError("DET curve has no flagged minimum-cost point")


def _probit_initial(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        )
    if p > 1.0 - _P_LOW:
        q = math.sqrt(-2.0 * math.log1p(-p))
        return -(((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        )
    q = p - 0.5
    r = q * q
    return (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / (
        ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    )


def probit(p: float) -> float:
    """Inverse standard normal CDF, with ``p`` clamped to [1e-6, 1 - 1e-6]."""
    p = min(max(p, PROBIT_CLAMP), 1.0 - PROBIT_CLAMP)
    if p == 0.5:
        return 0.0
    x = _probit_initial(p)
    # One Halley step.
    error = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = error * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def pair_scores(verdicts: Iterable[Verdict], truth: Iterable[Document], skip: int = 0) -> List[ScoredTruth]:
    """Join verdicts with labelled documents by id, in verdict order.

    The first ``skip`` verdicts (a training prefix) and unlabelled or unknown
    documents are left out.
    """
    labels: Dict[str, bool] = {doc.id: doc.is_first_story for doc in truth if doc.is_labeled}
    scored: List[ScoredTruth] = []
    for position, verdict in enumerate(verdicts):
        if position < skip or verdict.doc_id not in labels:
            continue
        scored.append((verdict.novelty_score, labels[verdict.doc_id]))
    return scored


def det_frame(points: Sequence[DetPoint]) -> pl.DataFrame:
    """DET points as a table with probit coordinates."""
    return pl.DataFrame(
        {
            "threshold": [p.threshold for p in points],
            "p_miss": [p.p_miss for p in points],
            "p_fa": [p.p_fa for p in points],
            "probit_miss": [probit(p.p_miss) for p in points],
            "probit_fa": [probit(p.p_fa) for p in points],
            "cost_norm": [p.cost_norm for p in points],
            "is_min_cost": [p.is_min_cost for p in points],
        },
        schema={
            "threshold": pl.Float64,
            "p_miss": pl.Float64,
            "p_fa": pl.Float64,
            "probit_miss": pl.Float64,
            "probit_fa": pl.Float64,
            "cost_norm": pl.Float64,
            "is_min_cost": pl.Boolean,
        },
    ).select(DET_CSV_COLUMNS)


def write_det_csv(path: Union[str, Path], points: Sequence[DetPoint]) -> None:
    """Write DET points as UTF-8 CSV, one row per point in ascending threshold order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    det_frame(points).write_csv(path, quote_style="necessary")
