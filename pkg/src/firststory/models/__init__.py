"""Domain models shared by the FirstStory engines."""

from firststory.models.detection import DetectorConfig, LshParams, Verdict, WeightingMode
from firststory.models.document import NEW_STORY_MARKER, Document, TokenBag
from firststory.models.evaluation import CostParams, DetPoint
from firststory.models.synthetic import SynthConfig
from firststory.models.vectors import TermVector

__all__ = [
    "NEW_STORY_MARKER",
    "CostParams",
    "DetPoint",
    "DetectorConfig",
    "Document",
    "LshParams",
    "SynthConfig",
    "TermVector",
    "TokenBag",
    "Verdict",
    "WeightingMode",
]
