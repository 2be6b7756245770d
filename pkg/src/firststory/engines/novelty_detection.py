"""
Novelty Detection Engine - the streaming first story detection loop

For every document, in order:

1. absorb its batch into the vector space model (incremental mode only),
2. weigh it against the current statistics,
3. retrieve candidates from the index,
4. score it by the minimum cosine distance to any candidate,
5. decide novel (score >= threshold) or redundant with the nearest candidate,
6. insert it into the index.

The verdict is always emitted before the document is indexed, so a document
never matches itself. In static mode the model is built once from the training
prefix and frozen; terms it never saw get zero weight. In incremental mode
the training prefix seeds the model and every later batch is absorbed before
its documents are weighted.

Strictly sequential per stream; independent detectors share no state.
"""

from itertools import islice
from typing import AbstractSet, Iterable, Iterator, List, Optional, Protocol, Sequence, Tuple

from firststory.core.exceptions import DuplicateDocumentError
from firststory.core.logging import LoggerMixin
from firststory.engines.exhaustive_index import ExhaustiveIndex
from firststory.engines.lsh_index import IndexedDoc, LshIndex
from firststory.engines.vector_space import VectorSpaceState, cosine
from firststory.models.detection import DetectorConfig, Verdict, WeightingMode
from firststory.models.document import Document, TokenBag
from firststory.models.vectors import TermVector
from firststory.transformers.text_preprocessor import TextPreprocessor


class CandidateIndex(Protocol):
    """Storage the detector retrieves comparison documents from."""

    def insert(self, doc_id: str, v: TermVector) -> None:
        ...

    def candidates(self, q: TermVector) -> List[IndexedDoc]:
        ...

    def __len__(self) -> int:
        ...


def score(q: TermVector, cands: Iterable[IndexedDoc]) -> Tuple[float, Optional[str]]:
    """Minimum cosine distance from ``q`` to the candidates and the minimizing id.

    Candidates must arrive in insertion order; on equal distances the earliest
    inserted document wins. Returns ``(1.0, None)`` when there are none.
    """
    best_distance = 1.0
    best_id: Optional[str] = None
    for entry in cands:
        distance = 1.0 - cosine(q, entry.vector)
        if best_id is None or distance < best_distance:
            best_distance = distance
            best_id = entry.doc_id
    return best_distance, best_id


def _batched(items: Sequence[Document], size: int) -> Iterator[List[Document]]:
    iterator = iter(items)
    while batch := list(islice(iterator, size)):
        yield batch


class NoveltyDetector(LoggerMixin):
    """First story detector over one document stream."""

    def __init__(
        self,
        config: DetectorConfig,
        stoplist: Optional[AbstractSet[str]] = None,
        index: Optional[CandidateIndex] = None,
        preprocessor: Optional[TextPreprocessor] = None,
    ):
        self.config = config
        self.preprocessor = preprocessor if preprocessor is not None else TextPreprocessor(stoplist)
        self.state = VectorSpaceState()
        self.index: CandidateIndex = index if index is not None else LshIndex(config.lsh)
        self._seen: set[str] = set()
        self._trained = False

        # Run statistics
        self.documents_processed = 0
        self.novel_count = 0
        self.empty_count = 0
        self.candidates_scored = 0

    @property
    def is_static(self) -> bool:
        return self.config.weighting_mode == WeightingMode.STATIC

    def _prepare(self, docs: Sequence[Document]) -> List[TokenBag]:
        batch_ids: set[str] = set()
        for doc in docs:
            if doc.id in self._seen or doc.id in batch_ids:
                raise DuplicateDocumentError(doc.id)
            batch_ids.add(doc.id)
        return [self.preprocessor(doc.text) for doc in docs]

    def train(self, docs: Sequence[Document]) -> List[Verdict]:
        """Build the model from a training collection, then run it through the detector.

        The whole collection is absorbed as one batch before any of its documents
        is weighted. Static mode freezes the model afterwards.
        """
        if self._trained:
            raise RuntimeError("detector already trained")
        bags = self._prepare(docs)
        self.state.absorb_batch(bags)
        self._trained = True

        self.logger.info(
            "Training pass complete",
            mode=self.config.weighting_mode.value,
            documents=len(docs),
            vocabulary=len(self.state.vocab),
        )
        return [self._decide(doc, bag) for doc, bag in zip(docs, bags)]

    def process_batch(self, docs: Sequence[Document]) -> List[Verdict]:
        """Absorb a batch (incremental mode) and decide each of its documents in order."""
        bags = self._prepare(docs)
        if not self.is_static:
            self.state.absorb_batch(bags)
        return [self._decide(doc, bag) for doc, bag in zip(docs, bags)]

    def process(self, doc: Document) -> Verdict:
        """Decide a single document, treating it as a batch of one."""
        return self.process_batch([doc])[0]

    def _decide(self, doc: Document, bag: TokenBag) -> Verdict:
        self._seen.add(doc.id)
        self.documents_processed += 1

        if not bag:
            self.novel_count += 1
            self.empty_count += 1
            self.logger.debug("Empty document declared novel", doc_id=doc.id)
            return Verdict(doc_id=doc.id, is_novel=True, novelty_score=1.0, is_empty=True)

        vector = self.state.weigh(bag, doc.id, drop_unknown=self.is_static)
        cands = self.index.candidates(vector)
        self.candidates_scored += len(cands)
        distance, nearest_id = score(vector, cands)
        is_novel = distance >= self.config.threshold
        if is_novel:
            self.novel_count += 1

        if not vector.is_zero:
            self.index.insert(doc.id, vector)

        self.logger.debug(
            "Document decided",
            doc_id=doc.id,
            is_novel=is_novel,
            novelty_score=distance,
            nearest_id=nearest_id,
            candidates=len(cands),
        )
        return Verdict(doc_id=doc.id, is_novel=is_novel, nearest_id=nearest_id, novelty_score=distance)

    def run(self, docs: Sequence[Document]) -> List[Verdict]:
        """Process a whole stream: training prefix first, then batches of ``batch_size``."""
        prefix = docs[: self.config.train_prefix]
        rest = docs[self.config.train_prefix :]

        verdicts: List[Verdict] = []
        if prefix:
            verdicts.extend(self.train(prefix))
        elif self.is_static:
            self.logger.warning("Static mode without a training prefix; every term is unknown")

        for batch in _batched(rest, self.config.batch_size):
            verdicts.extend(self.process_batch(batch))

        self.logger.info(
            "Stream processed",
            mode=self.config.weighting_mode.value,
            documents=self.documents_processed,
            novel=self.novel_count,
            empty=self.empty_count,
            indexed=len(self.index),
            mean_candidates=self.candidates_scored / max(1, self.documents_processed),
        )
        return verdicts


def run_stream(
    docs: Sequence[Document],
    config: DetectorConfig,
    stoplist: Optional[AbstractSet[str]] = None,
    oracle: bool = False,
) -> List[Verdict]:
    """Run a fresh detector over ``docs``; ``oracle`` swaps LSH for an exhaustive scan."""
    index: Optional[CandidateIndex] = ExhaustiveIndex() if oracle else None
    return NoveltyDetector(config, stoplist=stoplist, index=index).run(docs)
