from pydantic import BaseModel, ConfigDict


class FrozenModel(BaseModel):
    """Immutable, hashable record. Every domain type derives from it."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
