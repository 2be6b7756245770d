"""Sparse term-weight vectors."""

import math
from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class TermVector:
    """Sparse map term-id -> weight for one document.

    Weights are finite and non-negative; vectors produced by weighting are unit
    length or exactly zero. ``norm`` is computed once on construction.
    """

    doc_id: str
    entries: Mapping[int, float]
    norm: float = field(init=False, compare=False)

    def __post_init__(self) -> None:
        for term_id, weight in self.entries.items():
            if not math.isfinite(weight) or weight < 0.0:
                raise ValueError(f"invalid weight {weight!r} for term {term_id} in {self.doc_id!r}")
        object.__setattr__(self, "norm", math.sqrt(math.fsum(w * w for w in self.entries.values())))

    @classmethod
    def normalized(cls, doc_id: str, raw: Mapping[int, float]) -> "TermVector":
        """Scale raw weights to unit L2 length, dropping zero entries."""
        nonzero = {term_id: w for term_id, w in raw.items() if w != 0.0}
        length = math.sqrt(math.fsum(w * w for w in nonzero.values()))
        if length == 0.0:
            return cls(doc_id, {})
        return cls(doc_id, {term_id: w / length for term_id, w in nonzero.items()})

    @property
    def is_zero(self) -> bool:
        return self.norm == 0.0

    def __len__(self) -> int:
        return len(self.entries)
