"""Configuration management for the FirstStory detector."""

from typing import Any, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from firststory.models.detection import WeightingMode


class Settings(BaseSettings):
    """Application settings with environment variable support.

    Every field can be set through a ``FIRSTSTORY_``-prefixed environment
    variable or a ``.env`` file. CLI flags override these per invocation.
    """

    model_config = SettingsConfigDict(
        env_prefix="FIRSTSTORY_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "FirstStory"
    app_version: str = "0.1.0"
    debug: bool = False
    log_level: str = "INFO"
    log_file: Optional[str] = Field(None, description="Optional log file path")

    # Detection
    mode: WeightingMode = Field(WeightingMode.INCREMENTAL, description="Weighting mode: static or incremental")
    threshold: float = Field(0.5, ge=0.0, le=1.0, description="Cosine-distance novelty threshold")
    batch_size: int = Field(1, ge=1, description="Documents per incremental update batch")
    train_prefix: int = Field(0, ge=0, description="Documents in the training prefix")
    stopwords_path: Optional[str] = Field(None, description="Custom stopword file")

    # Locality sensitive hashing
    lsh_bits: int = Field(13, ge=1, le=64, description="Bits per signature (k)")
    lsh_tables: Optional[int] = Field(None, ge=1, description="Explicit table count (L)")
    lsh_phi: float = Field(0.05, gt=0.0, lt=1.0, description="Tolerated nearest-neighbour miss probability")
    lsh_p_collision: float = Field(0.9, gt=0.0, lt=1.0, description="Per-hyperplane collision probability of a target neighbour")
    seed: int = Field(0, ge=0, lt=2**64, description="Hyperplane and generator seed")

    # Evaluation
    c_miss: float = Field(1.0, gt=0.0, description="Cost of a missed first story")
    c_fa: float = Field(0.1, gt=0.0, description="Cost of a false alarm")
    p_target: float = Field(0.02, gt=0.0, lt=1.0, description="Prior probability of a first story")

    # Synthetic streams
    synth_vocab: int = Field(2000, ge=40, description="Base vocabulary size")
    synth_drift: float = Field(0.05, ge=0.0, le=1.0, description="Fresh-term replacement rate")
    synth_noise: float = Field(0.1, ge=0.0, le=1.0, description="Follow-up token re-draw rate")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of {valid_levels}")
        return v.upper()

    @field_validator("mode", mode="before")
    @classmethod
    def normalize_mode(cls, v: Any) -> Any:
        """Accept mode names in any case."""
        return v.lower() if isinstance(v, str) else v


# Global settings instance
settings = Settings()
