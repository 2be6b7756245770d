"""
Experiment Orchestrator - wires files, detector and evaluation together

Each run is one stage chain: read stream -> detect -> write verdicts, or
read verdicts + truth -> score -> write DET curve. The comparison run replays
one stream through both weighting modes with the same training prefix and
evaluates the post-training portion only.
"""

import time
from pathlib import Path
from typing import AbstractSet, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

from pydantic import BaseModel

from firststory.core.exceptions import FirstStoryError
from firststory.core.logging import LoggerMixin
from firststory.engines.exhaustive_index import ExhaustiveIndex
from firststory.engines.novelty_detection import NoveltyDetector
from firststory.evaluation.detection_cost import det_curve, min_cost_point, pair_scores, write_det_csv
from firststory.models.detection import DetectorConfig, Verdict, WeightingMode
from firststory.models.document import Document
from firststory.models.evaluation import CostParams, DetPoint
from firststory.storage.stream_files import read_stream, read_verdicts, write_verdicts
from firststory.transformers.text_preprocessor import TextPreprocessor

PathLike = Union[str, Path]
T = TypeVar("T")


class DetectionSummary(BaseModel):
    """Outcome of one detection run."""

    input_path: str
    output_path: str
    mode: WeightingMode
    oracle: bool
    tables: int
    documents: int
    novel: int
    empty: int
    indexed: int
    mean_candidates: float
    duration_seconds: float


class EvaluationSummary(BaseModel):
    """Outcome of scoring one verdict sequence against ground truth."""

    scored: int
    new_count: int
    old_count: int
    det_points: int
    min_cost: DetPoint
    det_out: Optional[str] = None


class ComparisonSummary(BaseModel):
    """Static versus incremental weighting on the same stream."""

    documents: int
    train_prefix: int
    results: Dict[WeightingMode, EvaluationSummary]

    @property
    def relative_miss_reduction(self) -> Optional[float]:
        """Share of static-mode misses removed by incremental weighting, at each mode's minimum cost."""
        static_miss = self.results[WeightingMode.STATIC].min_cost.p_miss
        if static_miss == 0.0:
            return None
        incremental_miss = self.results[WeightingMode.INCREMENTAL].min_cost.p_miss
        return (static_miss - incremental_miss) / static_miss


class ExperimentOrchestrator(LoggerMixin):
    """Runs detection, evaluation and mode comparisons."""

    def __init__(self, stoplist: Optional[AbstractSet[str]] = None):
        self.preprocessor = TextPreprocessor(stoplist)

    def _load(self, reader: Callable[[PathLike], T], path: PathLike) -> T:
        try:
            return reader(path)
        except FirstStoryError as e:
            self.log_error(e, {"path": str(path)})
            raise

    def detect(
        self, docs: Sequence[Document], config: DetectorConfig, oracle: bool = False
    ) -> Tuple[NoveltyDetector, List[Verdict]]:
        """Run a fresh detector over ``docs``; returns the detector (for its statistics) and the verdicts."""
        detector = NoveltyDetector(
            config, index=ExhaustiveIndex() if oracle else None, preprocessor=self.preprocessor
        )
        return detector, detector.run(docs)

    def evaluate(
        self,
        verdicts: Sequence[Verdict],
        truth: Sequence[Document],
        cost: CostParams,
        skip: int = 0,
    ) -> Tuple[EvaluationSummary, List[DetPoint]]:
        """Score verdicts against labelled documents; ``skip`` drops a training prefix."""
        scored = pair_scores(verdicts, truth, skip=skip)
        points = det_curve(scored, cost)
        new_count = sum(1 for _, is_new in scored if is_new)
        summary = EvaluationSummary(
            scored=len(scored),
            new_count=new_count,
            old_count=len(scored) - new_count,
            det_points=len(points),
            min_cost=min_cost_point(points),
        )
        return summary, points

    def run_detection(
        self,
        input_path: PathLike,
        output_path: PathLike,
        config: DetectorConfig,
        oracle: bool = False,
    ) -> DetectionSummary:
        """Read a stream file, detect first stories and write the verdict file."""
        started = time.perf_counter()
        docs = self._load(read_stream, input_path)
        detector, verdicts = self.detect(docs, config, oracle=oracle)
        write_verdicts(output_path, verdicts)

        summary = DetectionSummary(
            input_path=str(input_path),
            output_path=str(output_path),
            mode=config.weighting_mode,
            oracle=oracle,
            tables=config.lsh.tables,
            documents=detector.documents_processed,
            novel=detector.novel_count,
            empty=detector.empty_count,
            indexed=len(detector.index),
            mean_candidates=detector.candidates_scored / max(1, detector.documents_processed),
            duration_seconds=time.perf_counter() - started,
        )
        self.logger.info("Detection run complete", **summary.model_dump(mode="json"))
        return summary

    def run_evaluation(
        self,
        verdicts_path: PathLike,
        truth_path: PathLike,
        det_out: PathLike,
        cost: CostParams,
        skip: int = 0,
    ) -> EvaluationSummary:
        """Score a verdict file against a labelled stream file and write the DET CSV."""
        verdicts = self._load(read_verdicts, verdicts_path)
        truth = self._load(read_stream, truth_path)
        summary, points = self.evaluate(verdicts, truth, cost, skip=skip)
        write_det_csv(det_out, points)
        summary = summary.model_copy(update={"det_out": str(det_out)})

        self.logger.info(
            "Evaluation complete",
            scored=summary.scored,
            new=summary.new_count,
            old=summary.old_count,
            min_cost=summary.min_cost.cost_norm,
            det_out=str(det_out),
        )
        return summary

    def compare_modes(
        self,
        docs: Sequence[Document],
        config: DetectorConfig,
        cost: CostParams,
        det_dir: Optional[PathLike] = None,
    ) -> ComparisonSummary:
        """Run both weighting modes on ``docs`` and evaluate everything after the training prefix.

        With ``det_dir`` set, each mode's DET curve is written to ``det_<mode>.csv`` there.
        """
        results: Dict[WeightingMode, EvaluationSummary] = {}
        for mode in (WeightingMode.STATIC, WeightingMode.INCREMENTAL):
            mode_config = config.model_copy(update={"weighting_mode": mode})
            _, verdicts = self.detect(docs, mode_config)
            summary, points = self.evaluate(verdicts, docs, cost, skip=config.train_prefix)
            if det_dir is not None:
                det_out = Path(det_dir) / f"det_{mode.value}.csv"
                write_det_csv(det_out, points)
                summary = summary.model_copy(update={"det_out": str(det_out)})
            results[mode] = summary

        comparison = ComparisonSummary(documents=len(docs), train_prefix=config.train_prefix, results=results)
        self.logger.info(
            "Mode comparison complete",
            documents=len(docs),
            train_prefix=config.train_prefix,
            static_miss=results[WeightingMode.STATIC].min_cost.p_miss,
            incremental_miss=results[WeightingMode.INCREMENTAL].min_cost.p_miss,
            relative_miss_reduction=comparison.relative_miss_reduction,
        )
        return comparison

    def run_comparison(
        self,
        input_path: PathLike,
        det_dir: PathLike,
        config: DetectorConfig,
        cost: CostParams,
    ) -> ComparisonSummary:
        """File-based :meth:`compare_modes`."""
        return self.compare_modes(self._load(read_stream, input_path), config, cost, det_dir=det_dir)
