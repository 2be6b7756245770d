"""
LSH Index Engine - approximate nearest-neighbour retrieval over term vectors

Each of L hash tables maps a k-bit random-hyperplane signature to the bucket
of documents sharing it; a query's candidates are the union of its L matching
buckets. Bit b of table l is set iff the projection of the vector onto
hyperplane (l, b) is strictly positive.

The vocabulary grows without bound, so hyperplanes are never stored densely:
the component of hyperplane (l, b) along term j is a deterministic +/-1 drawn
from a generator seeded with (seed, j). Planes are cached per term id.

Single writer (``insert``), concurrent readers only between writes.
"""

import math
from typing import Dict, List, NamedTuple

import numpy as np

from firststory.core.exceptions import DegenerateParamsError, DuplicateDocumentError
from firststory.core.logging import LoggerMixin
from firststory.models.detection import LshParams
from firststory.models.vectors import TermVector


class Signature(NamedTuple):
    """k-bit fingerprint of a vector in one table."""

    bits: int
    table_index: int


class IndexedDoc(NamedTuple):
    """A stored document; ``seq`` is its insertion order."""

    seq: int
    doc_id: str
    vector: TermVector


def plan_tables(phi: float, p_coll: float, k: int) -> int:
    """Number of tables so that a neighbour is missed with probability at most ``phi``.

    L = ceil(ln(phi) / ln(1 - p_coll**k)), at least 1.
    """
    if not 0.0 < phi < 1.0:
        raise ValueError(f"phi must lie in (0, 1), got {phi}")
    if not 0.0 < p_coll < 1.0:
        raise ValueError(f"p_coll must lie in (0, 1), got {p_coll}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")

    p_all_bits = p_coll**k
    if p_all_bits == 0.0 or p_all_bits == 1.0:
        raise DegenerateParamsError(f"p_coll**k = {p_all_bits!r} for p_coll={p_coll}, k={k}")
    log_miss_one_table = math.log1p(-p_all_bits)
    if log_miss_one_table == 0.0:
        raise DegenerateParamsError(f"p_coll**k = {p_all_bits!r} is too small to plan with")
    return max(1, math.ceil(math.log(phi) / log_miss_one_table))


class LshIndex(LoggerMixin):
    """Multi-table random-hyperplane LSH index."""

    def __init__(self, params: LshParams):
        self.params = params
        self.tables: List[Dict[int, List[IndexedDoc]]] = [{} for _ in range(params.tables)]
        self._planes: Dict[int, np.ndarray] = {}
        self._doc_ids: set[str] = set()
        self._bit_weights = np.left_shift(np.uint64(1), np.arange(params.bits, dtype=np.uint64))

        self.logger.debug("LSH index created", bits=params.bits, tables=params.tables, seed=params.seed)

    def _plane(self, term_id: int) -> np.ndarray:
        """(L, k) matrix of +/-1 hyperplane components for one term."""
        plane = self._planes.get(term_id)
        if plane is None:
            rng = np.random.default_rng([self.params.seed, term_id])
            draws = rng.integers(0, 2, size=(self.params.tables, self.params.bits))
            plane = draws.astype(np.float64) * 2.0 - 1.0
            self._planes[term_id] = plane
        return plane

    def signatures(self, v: TermVector) -> List[int]:
        """Signature bits of ``v`` in every table, in table order."""
        if not v.entries:
            return [0] * self.params.tables
        weights = np.fromiter(v.entries.values(), dtype=np.float64, count=len(v.entries))
        planes = np.stack([self._plane(term_id) for term_id in v.entries])
        projections = np.tensordot(weights, planes, axes=1)
        packed = ((projections > 0.0).astype(np.uint64) * self._bit_weights).sum(axis=1)
        return [int(bits) for bits in packed]

    def signature(self, v: TermVector, table_index: int) -> Signature:
        """Signature of ``v`` in one table."""
        if not 0 <= table_index < self.params.tables:
            raise ValueError(f"table_index {table_index} outside [0, {self.params.tables})")
        return Signature(self.signatures(v)[table_index], table_index)

    def insert(self, doc_id: str, v: TermVector) -> None:
        """Add a document to its bucket in every table."""
        if doc_id in self._doc_ids:
            raise DuplicateDocumentError(doc_id)
        entry = IndexedDoc(len(self._doc_ids), doc_id, v)
        for table, bits in zip(self.tables, self.signatures(v)):
            table.setdefault(bits, []).append(entry)
        self._doc_ids.add(doc_id)

    def candidates(self, q: TermVector) -> List[IndexedDoc]:
        """Union of the buckets matching ``q`` over all tables, in insertion order."""
        found: Dict[int, IndexedDoc] = {}
        for table, bits in zip(self.tables, self.signatures(q)):
            for entry in table.get(bits, ()):
                found.setdefault(entry.seq, entry)
        return [found[seq] for seq in sorted(found)]

    def bucket_sizes(self, table_index: int) -> Dict[int, int]:
        """Bucket key -> member count for one table."""
        return {bits: len(bucket) for bits, bucket in self.tables[table_index].items()}

    @property
    def doc_ids(self) -> frozenset[str]:
        return frozenset(self._doc_ids)

    def __len__(self) -> int:
        return len(self._doc_ids)

    def __contains__(self, doc_id: object) -> bool:
        return doc_id in self._doc_ids
