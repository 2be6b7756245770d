"""Synthetic stream generator configuration."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SynthConfig(BaseModel):
    """Shape of a synthetic labelled stream."""

    model_config = ConfigDict(frozen=True)

    n_docs: int = Field(ge=1)
    n_events: int = Field(ge=1)
    vocab_size: int = Field(2000, ge=40)
    drift_rate: float = Field(0.05, ge=0.0, le=1.0)
    duplicate_noise: float = Field(0.1, ge=0.0, le=1.0)
    seed: int = Field(0, ge=0)

    # Generator shape; rarely changed.
    doc_length: int = Field(24, ge=1)
    category_size: int = Field(40, ge=2)
    event_terms: int = Field(8, ge=1)
    start_ts: int = 1_342_051_200_000
    ts_step: int = Field(60_000, ge=0)

    @model_validator(mode="after")
    def check_events(self) -> "SynthConfig":
        if self.n_events > self.n_docs:
            raise ValueError("n_events cannot exceed n_docs")
        if self.category_size > self.vocab_size:
            raise ValueError("category_size cannot exceed vocab_size")
        return self
