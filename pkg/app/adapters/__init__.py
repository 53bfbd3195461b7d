from typing import Dict, Type

from app.adapters.base import BaseReportAdapter
from app.adapters.json_adapter import JsonReportAdapter
from app.adapters.text_adapter import TextReportAdapter

ADAPTERS: Dict[str, Type[BaseReportAdapter]] = {
    JsonReportAdapter.name: JsonReportAdapter,
    TextReportAdapter.name: TextReportAdapter,
}


def get_adapter(fmt: str) -> BaseReportAdapter:
    try:
        return ADAPTERS[fmt]()
    except KeyError:
        raise ValueError(f"unknown output format {fmt!r}; expected one of {sorted(ADAPTERS)}")
