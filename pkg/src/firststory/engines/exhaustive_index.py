"""Brute-force candidate index: every stored document is a candidate."""

from typing import List

from firststory.core.exceptions import DuplicateDocumentError
from firststory.engines.lsh_index import IndexedDoc
from firststory.models.vectors import TermVector


class ExhaustiveIndex:
    """Same insert/candidates protocol as :class:`LshIndex`, without hashing."""

    def __init__(self) -> None:
        self._entries: List[IndexedDoc] = []
        self._doc_ids: set[str] = set()

    def insert(self, doc_id: str, v: TermVector) -> None:
        if doc_id in self._doc_ids:
            raise DuplicateDocumentError(doc_id)
        self._entries.append(IndexedDoc(len(self._entries), doc_id, v))
        self._doc_ids.add(doc_id)

    def candidates(self, q: TermVector) -> List[IndexedDoc]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self._doc_ids
