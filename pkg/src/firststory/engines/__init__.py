"""Processing engines for FirstStory."""

from firststory.engines.exhaustive_index import ExhaustiveIndex
from firststory.engines.lsh_index import IndexedDoc, LshIndex, Signature, plan_tables
from firststory.engines.novelty_detection import NoveltyDetector, run_stream, score
from firststory.engines.vector_space import VectorSpaceState, Vocabulary, cosine

__all__ = [
    "ExhaustiveIndex",
    "IndexedDoc",
    "LshIndex",
    "NoveltyDetector",
    "Signature",
    "VectorSpaceState",
    "Vocabulary",
    "cosine",
    "plan_tables",
    "run_stream",
    "score",
]
