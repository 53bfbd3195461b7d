from abc import ABC, abstractmethod

from app.models.api import Report


class BaseReportAdapter(ABC):
    """
    Abstract base class for report renderers.
    Enforces a common interface for turning a Report into output text.
    """

    name: str = "base"

    @abstractmethod
    def render(self, report: Report) -> str:
        """
        Renders a report.

        Args:
            report: The command's Report

        Returns:
            The complete output text, newline-terminated
        """
        pass
