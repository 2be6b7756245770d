"""Detection cost parameters and DET curve points."""

from pydantic import BaseModel, ConfigDict, Field


class CostParams(BaseModel):
    """Costs and prior of the normalized detection cost."""

    model_config = ConfigDict(frozen=True)

    c_miss: float = Field(1.0, gt=0.0)
    c_fa: float = Field(0.1, gt=0.0)
    p_target: float = Field(0.02, gt=0.0, lt=1.0)

    @property
    def p_nontarget(self) -> float:
        return 1.0 - self.p_target


class DetPoint(BaseModel):
    """One operating point of a DET curve."""

    model_config = ConfigDict(frozen=True)

    threshold: float
    p_miss: float = Field(ge=0.0, le=1.0)
    p_fa: float = Field(ge=0.0, le=1.0)
    cost_norm: float = Field(ge=0.0)
    is_min_cost: bool = False
