"""Experiment orchestration for FirstStory."""

from firststory.pipeline.orchestrator import (
    ComparisonSummary,
    DetectionSummary,
    EvaluationSummary,
    ExperimentOrchestrator,
)

__all__ = [
    "ComparisonSummary",
    "DetectionSummary",
    "EvaluationSummary",
    "ExperimentOrchestrator",
]
