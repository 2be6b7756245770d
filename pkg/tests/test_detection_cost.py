"""Tests for detection cost, DET curves and the probit transform."""

import math

import numpy as np
import polars as pl
import pytest

from firststory.core.exceptions import DegenerateTruthError
from firststory.evaluation.detection_cost import (
    DET_CSV_COLUMNS,
    confusion,
    cost_norm,
    det_curve,
    min_cost_point,
    pair_scores,
    probit,
    write_det_csv,
)
from firststory.models.detection import Verdict
from firststory.models.document import Document
from firststory.models.evaluation import CostParams

DEFAULT_COST = CostParams()


class TestConfusion:
    def test_hand_example(self):
        scored = [(0.9, True), (0.3, True), (0.6, False), (0.1, False)]
        assert confusion(scored, 0.5) == (0.5, 0.5)

    def test_zero_threshold_predicts_everything_new(self):
        scored = [(0.9, True), (0.3, True), (0.6, False), (0.1, False)]
        assert confusion(scored, 0.0) == (0.0, 1.0)

    def test_score_equal_to_threshold_is_new(self):
        assert confusion([(0.5, True), (0.5, False)], 0.5) == (0.0, 1.0)

    def test_missing_class_raises(self):
        with pytest.raises(DegenerateTruthError):
            confusion([(0.9, True), (0.8, True)], 0.5)
        with pytest.raises(DegenerateTruthError):
            confusion([], 0.5)


class TestCostNorm:
    def test_perfect_system_scores_zero(self):
        assert cost_norm(0.0, 0.0, DEFAULT_COST) == 0.0

    def test_better_trivial_system_scores_one(self):
        always_new = cost_norm(0.0, 1.0, DEFAULT_COST)
        always_old = cost_norm(1.0, 0.0, DEFAULT_COST)
        assert min(always_new, always_old) == pytest.approx(1.0, abs=1e-9)

    def test_hand_value(self):
        assert cost_norm(0.5, 0.05, DEFAULT_COST) == pytest.approx(0.745, abs=1e-9)

    def test_invalid_cost_params(self):
        with pytest.raises(ValueError):
            CostParams(p_target=1.0)
        with pytest.raises(ValueError):
            CostParams(c_fa=0.0)


class TestCostNormProperties:
    def test_uniform_cost_scaling_leaves_cost_unchanged(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            c_miss, c_fa, p_target = rng.uniform(0.01, 10.0), rng.uniform(0.01, 10.0), rng.uniform(0.001, 0.999)
            scale = rng.uniform(0.001, 1000.0)
            p_miss, p_fa = rng.uniform(0.0, 1.0, size=2)
            base = CostParams(c_miss=c_miss, c_fa=c_fa, p_target=p_target)
            scaled = CostParams(c_miss=c_miss * scale, c_fa=c_fa * scale, p_target=p_target)
            assert cost_norm(p_miss, p_fa, scaled) == pytest.approx(cost_norm(p_miss, p_fa, base), rel=1e-9)

    def test_affine_in_each_rate(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            params = CostParams(
                c_miss=rng.uniform(0.01, 10.0), c_fa=rng.uniform(0.01, 10.0), p_target=rng.uniform(0.001, 0.999)
            )
            x, y, fixed = rng.uniform(0.0, 1.0, size=3)
            mix = rng.uniform(0.0, 1.0)
            between = mix * x + (1 - mix) * y
            assert cost_norm(between, fixed, params) == pytest.approx(
                mix * cost_norm(x, fixed, params) + (1 - mix) * cost_norm(y, fixed, params), rel=1e-9, abs=1e-12
            )
            assert cost_norm(fixed, between, params) == pytest.approx(
                mix * cost_norm(fixed, x, params) + (1 - mix) * cost_norm(fixed, y, params), rel=1e-9, abs=1e-12
            )


class TestConfusionInvariance:
    @pytest.mark.parametrize(
        "transform",
        [lambda s: 4.0 * s - 1.0, math.exp, lambda s: s**3 + s],
        ids=["affine", "exp", "cubic"],
    )
    def test_strictly_increasing_transform_of_scores_and_threshold(self, transform):
        rng = np.random.default_rng(12)
        for _ in range(50):
            scores = rng.uniform(0.0, 1.0, size=200).round(3)
            is_new = rng.uniform(size=200) < 0.3
            is_new[:2] = [True, False]
            scored = [(float(s), bool(n)) for s, n in zip(scores, is_new)]
            transformed = [(transform(s), n) for s, n in scored]
            for threshold in [*rng.choice(scores, size=5).tolist(), *rng.uniform(0.0, 1.0, size=5).tolist()]:
                assert confusion(transformed, transform(threshold)) == confusion(scored, threshold)


class TestDetCurve:
    def test_staircase_is_monotone_with_corners(self):
        rng = np.random.default_rng(8)
        scored = [(float(s), bool(t)) for s, t in zip(rng.random(300), rng.random(300) < 0.3)]
        points = det_curve(scored, DEFAULT_COST)

        assert (points[0].p_miss, points[0].p_fa) == (0.0, 1.0)
        assert (points[-1].p_miss, points[-1].p_fa) == (1.0, 0.0)
        thresholds = [p.threshold for p in points]
        assert thresholds == sorted(thresholds)
        for before, after in zip(points, points[1:]):
            assert after.p_fa <= before.p_fa
            assert after.p_miss >= before.p_miss

    def test_identical_scores_give_two_corners(self):
        points = det_curve([(0.4, True), (0.4, False), (0.4, False)], DEFAULT_COST)
        assert [(p.p_miss, p.p_fa) for p in points] == [(0.0, 1.0), (1.0, 0.0)]

    def test_exactly_one_min_cost_point(self):
        scored = [(0.9, True), (0.8, True), (0.7, False), (0.2, False), (0.1, False)]
        points = det_curve(scored, DEFAULT_COST)
        flagged = [p for p in points if p.is_min_cost]
        assert len(flagged) == 1
        assert flagged[0] == min_cost_point(points)
        assert flagged[0].cost_norm == min(p.cost_norm for p in points)
        # Perfect separation is reachable.
        assert flagged[0].cost_norm == 0.0
        assert 0.7 < flagged[0].threshold <= 0.8

    def test_random_scores_follow_the_chance_diagonal(self):
        rng = np.random.default_rng(12)
        scored = [(float(s), True) for s in rng.random(10_000)]
        scored += [(float(s), False) for s in rng.random(10_000)]
        points = det_curve(scored, DEFAULT_COST)
        worst = max(abs(p.p_miss + p.p_fa - 1.0) for p in points)
        assert worst <= 0.03

    def test_write_csv(self, tmp_path):
        points = det_curve([(0.9, True), (0.2, False), (0.6, False)], DEFAULT_COST)
        path = tmp_path / "out" / "det.csv"
        write_det_csv(path, points)

        frame = pl.read_csv(path)
        assert frame.columns == DET_CSV_COLUMNS
        assert frame.height == len(points)
        assert frame["is_min_cost"].sum() == 1
        assert frame["p_miss"].to_list() == [p.p_miss for p in points]

    def test_csv_output_is_byte_stable(self, tmp_path):
        points = det_curve([(0.9, True), (0.2, False), (0.6, False), (0.6, True)], DEFAULT_COST)
        write_det_csv(tmp_path / "a.csv", points)
        write_det_csv(tmp_path / "b.csv", points)
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


class TestProbit:
    def test_known_quantiles(self):
        assert probit(0.5) == 0.0
        assert probit(0.975) == pytest.approx(1.959963984540054, abs=1e-9)
        assert probit(0.841344746068543) == pytest.approx(1.0, abs=1e-9)
        assert probit(0.01) == pytest.approx(-2.326347874040841, abs=1e-9)

    def test_antisymmetric(self):
        for p in (0.001, 0.02, 0.2, 0.4, 0.49):
            assert probit(p) == pytest.approx(-probit(1.0 - p), abs=1e-9)

    def test_inverts_the_normal_cdf(self):
        for p in np.linspace(0.0001, 0.9999, 97):
            x = probit(float(p))
            assert 0.5 * math.erfc(-x / math.sqrt(2.0)) == pytest.approx(p, rel=1e-9)

    def test_clamped_at_the_ends(self):
        assert probit(0.0) == probit(1e-6)
        assert probit(1.0) == probit(1.0 - 1e-6)
        assert math.isfinite(probit(0.0)) and math.isfinite(probit(1.0))


class TestPairScores:
    def test_joins_by_id_and_skips_prefix(self):
        truth = [
            Document(id="a", ts=1, text="x", label="a"),
            Document(id="b", ts=2, text="x", label="a"),
            Document(id="c", ts=3, text="x", label="0"),
            Document(id="d", ts=4, text="x"),
        ]
        verdicts = [
            Verdict(doc_id="a", is_novel=True, novelty_score=1.0),
            Verdict(doc_id="b", is_novel=False, nearest_id="a", novelty_score=0.2),
            Verdict(doc_id="c", is_novel=True, nearest_id="a", novelty_score=0.9),
            Verdict(doc_id="d", is_novel=True, novelty_score=1.0),
        ]
        assert pair_scores(verdicts, truth) == [(1.0, True), (0.2, False), (0.9, True)]
        assert pair_scores(verdicts, truth, skip=1) == [(0.2, False), (0.9, True)]
