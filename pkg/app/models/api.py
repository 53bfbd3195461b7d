from pydantic import BaseModel, Field
from typing import Any, Dict


class Report(BaseModel):
    command: str = Field(..., description="CLI subcommand that produced the report")
    input_digest: str = Field(..., description="sha256 of the canonical action document")
    arguments: Dict[str, Any] = Field(default_factory=dict, description="Parsed command options, for replay")
    payload: Dict[str, Any] = Field(default_factory=dict, description="Command-specific data, rationals as 'p/q'")
    version: str = Field(..., description="Tool version")
