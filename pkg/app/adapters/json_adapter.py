import json

from app.adapters.base import BaseReportAdapter
from app.models.api import Report


class JsonReportAdapter(BaseReportAdapter):
    """Machine-readable output: sorted keys, so identical reports give identical bytes."""

    name = "json"

    def render(self, report: Report) -> str:
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
