"""
Vector Space Engine - incremental TF-IDF model

Keeps the vocabulary, per-term document frequencies and the document count,
and weighs token bags into unit-length term vectors:

    raw_j = (log10(tf_j) + 1.0) * log10(d / df_j),   w_j = raw_j / ||raw||_2

Updates are additive in the counts, so absorbing a corpus batch by batch gives
exactly the same state as absorbing it in one go. A vector is weighted once,
with the statistics current at that moment, and never re-weighted.

Single writer (``absorb_batch``), any number of readers between writes.
"""

import math
from typing import Dict, Iterable, List, Optional

from firststory.core.exceptions import UnknownTermError
from firststory.core.logging import LoggerMixin
from firststory.models.document import TokenBag
from firststory.models.vectors import TermVector


class Vocabulary:
    """Append-only bijection term <-> dense id, ids assigned in first-seen order."""

    def __init__(self) -> None:
        self._ids: Dict[str, int] = {}
        self._terms: List[str] = []

    def id_of(self, term: str) -> Optional[int]:
        return self._ids.get(term)

    def term(self, term_id: int) -> str:
        return self._terms[term_id]

    def add(self, term: str) -> int:
        term_id = self._ids.get(term)
        if term_id is None:
            term_id = len(self._terms)
            self._ids[term] = term_id
            self._terms.append(term)
        return term_id

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, term: object) -> bool:
        return term in self._ids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"Vocabulary(size={len(self)})"


class VectorSpaceState(LoggerMixin):
    """Vocabulary, document frequencies and document count at one point in the stream."""

    def __init__(self) -> None:
        self.vocab = Vocabulary()
        self.doc_freq: Dict[int, int] = {}
        self.total_docs = 0

    def absorb_batch(self, batch: Iterable[TokenBag]) -> "VectorSpaceState":
        """Add a batch of documents to the counts and return the updated state."""
        absorbed = 0
        new_terms = 0
        for bag in batch:
            absorbed += 1
            for term in bag:
                size_before = len(self.vocab)
                term_id = self.vocab.add(term)
                if len(self.vocab) > size_before:
                    new_terms += 1
                self.doc_freq[term_id] = self.doc_freq.get(term_id, 0) + 1
        self.total_docs += absorbed

        if absorbed:
            self.logger.debug(
                "Absorbed batch",
                documents=absorbed,
                new_terms=new_terms,
                total_docs=self.total_docs,
                vocabulary=len(self.vocab),
            )
        return self

    def idf(self, term_id: int) -> float:
        """log10(total_docs / df); raises UnknownTermError when df is 0."""
        df = self.doc_freq.get(term_id, 0)
        if df == 0:
            raise UnknownTermError(term_id)
        if df == self.total_docs:
            return 0.0
        return math.log10(self.total_docs / df)

    def weigh(self, bag: TokenBag, doc_id: str, drop_unknown: bool = False) -> TermVector:
        """Weigh a token bag against the current statistics.

        With ``drop_unknown`` terms that were never absorbed get zero weight
        instead of raising, which is how a frozen (static) model treats new
        vocabulary.
        """
        raw: Dict[int, float] = {}
        for term, tf in bag.items():
            term_id = self.vocab.id_of(term)
            if term_id is None or self.doc_freq.get(term_id, 0) == 0:
                if drop_unknown:
                    continue
                raise UnknownTermError(term if term_id is None else term_id)
            raw[term_id] = (math.log10(tf) + 1.0) * self.idf(term_id)
        return TermVector.normalized(doc_id, raw)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorSpaceState):
            return NotImplemented
        return (
            self.total_docs == other.total_docs
            and self.doc_freq == other.doc_freq
            and self.vocab == other.vocab
        )

    def __repr__(self) -> str:
        return f"VectorSpaceState(total_docs={self.total_docs}, vocabulary={len(self.vocab)})"


def cosine(q: TermVector, d: TermVector) -> float:
    """Cosine similarity of two non-negative vectors, 0 when either is zero.

    Uses an exactly rounded sum so the result is identical for (q, d) and (d, q).
    """
    if q.norm == 0.0 or d.norm == 0.0:
        return 0.0
    shared = q.entries.keys() & d.entries.keys()
    if not shared:
        return 0.0
    dot = math.fsum(q.entries[j] * d.entries[j] for j in shared)
    return min(1.0, max(0.0, dot / (q.norm * d.norm)))
