from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from utils.formatting import render_json, render_text, to_jsonable

SCHEMA_VERSION = 1


class Report(BaseModel):
    """The envelope every subcommand and every HTTP route returns."""

    schema_version: Literal[1] = SCHEMA_VERSION
    command: str
    config: Dict[str, Any] = Field(default_factory=dict)
    results: List[Any] = Field(default_factory=list)
    checks: List[Any] = Field(default_factory=list)
    agreement: List[Any] = Field(default_factory=list)
    bounds: List[Any] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)
    verdict: Optional[str] = None

    def payload(self) -> Dict[str, Any]:
        data = self.model_dump(mode="python", exclude_none=True)
        for section in ("checks", "agreement", "bounds"):
            if not data[section]:
                del data[section]
        return to_jsonable(data)

    def render(self, fmt: str = "json") -> str:
        if fmt == "text":
            return render_text(self.payload())
        return render_json(self.payload())
