"""Detector configuration and per-document verdicts."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from firststory.models.document import NEW_STORY_MARKER


class WeightingMode(str, Enum):
    """How the vector space model evolves while the stream is processed."""

    STATIC = "static"
    INCREMENTAL = "incremental"


class LshParams(BaseModel):
    """Random-hyperplane LSH shape: ``bits`` per signature (k) in ``tables`` tables (L)."""

    model_config = ConfigDict(frozen=True)

    bits: int = Field(13, ge=1, le=64)
    tables: int = Field(11, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)

    @classmethod
    def planned(cls, phi: float, p_coll: float, bits: int = 13, seed: int = 0) -> "LshParams":
        """Size the table count so a neighbour colliding per bit with ``p_coll`` is missed with probability at most ``phi``."""
        from firststory.engines.lsh_index import plan_tables

        return cls(bits=bits, tables=plan_tables(phi, p_coll, bits), seed=seed)


class DetectorConfig(BaseModel):
    """Input threshold and model settings for one detection run."""

    model_config = ConfigDict(frozen=True)

    threshold: float = Field(0.5, ge=0.0, le=1.0)
    lsh: LshParams = Field(default_factory=LshParams)
    weighting_mode: WeightingMode = WeightingMode.INCREMENTAL
    batch_size: int = Field(1, ge=1)
    train_prefix: int = Field(0, ge=0)


class Verdict(BaseModel):
    """Decision for one document: novel, or redundant with its nearest prior document."""

    model_config = ConfigDict(frozen=True)

    doc_id: str
    is_novel: bool
    nearest_id: Optional[str] = None
    novelty_score: float = Field(ge=0.0, le=1.0)
    is_empty: bool = False

    @model_validator(mode="after")
    def check_self_match(self) -> "Verdict":
        if self.nearest_id is not None and self.nearest_id == self.doc_id:
            raise ValueError("a verdict cannot name the document itself as nearest neighbour")
        return self

    @property
    def prediction(self) -> str:
        """``"0"`` for a new event, otherwise the id of the earlier similar document."""
        if self.is_novel or self.nearest_id is None:
            return NEW_STORY_MARKER
        return self.nearest_id
