import json
from typing import Any, List

from app.adapters.base import BaseReportAdapter
from app.models.api import Report


def _is_scalar_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _lines(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    out: List[str] = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and not _is_scalar_list(item):
                out.append(f"{pad}{key}:")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        if not value:
            out.append(f"{pad}(none)")
        for i, item in enumerate(value):
            if isinstance(item, (dict, list)) and not _is_scalar_list(item):
                out.append(f"{pad}- [{i}]")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(f"{pad}{_scalar(value)}")
    return out


def _scalar(value: Any) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(_scalar(v) for v in value) + ")"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


class TextReportAdapter(BaseReportAdapter):
    """
    Human-readable output derived from the JSON form of the report;
    it carries nothing the JSON does not.
    """

    name = "text"

    def render(self, report: Report) -> str:
        data = json.loads(report.model_dump_json())
        header = f"{data.pop('command')} (strataflux {data.pop('version')}, input {data.pop('input_digest')[:12]})"
        return "\n".join([header] + _lines(data, 0)) + "\n"
