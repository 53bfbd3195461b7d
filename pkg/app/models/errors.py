from typing import Optional, Tuple


class StrataError(ValueError):
    """
    Base class for every failure the library reports.
    `label` is the name printed by the CLI, `exit_code` its process status.
    """
    label: str = "StrataError"
    exit_code: int = 1

    def __str__(self) -> str:
        return super().__str__() or self.label


# ─── Geometry ───────────────────────────────────────────

class EmptyInputError(StrataError):
    label = "EmptyInput"


class RankMismatchError(StrataError):
    label = "RankMismatch"


class ZeroDirectionError(StrataError):
    label = "ZeroDirection"


class DegenerateCorralError(StrataError):
    label = "DegenerateCorral"


# ─── Input Documents ────────────────────────────────────

class ParseError(StrataError):
    label = "ParseError"
    exit_code = 2


class ActionValidationError(StrataError):
    label = "ValidationError"
    exit_code = 2

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ─── Stratification / Cohomology ────────────────────────

class NegativeCodimError(StrataError):
    label = "NegativeCodim"


class TooLargeError(StrataError):
    label = "TooLarge"


class StrictlySemistableError(StrataError):
    label = "StrictlySemistable"

    def __init__(self, support: Tuple[int, ...]):
        super().__init__(f"support {list(support)} is semistable but not stable")
        self.support = support


class NotPolynomialError(StrataError):
    label = "NotPolynomial"


# ─── Unstable Quotients ─────────────────────────────────

class ZeroBetaError(StrataError):
    label = "ZeroBeta"


class NonPositiveEpsilonError(StrataError):
    label = "NonPositiveEpsilon"
    exit_code = 5


class ChamberInconsistencyError(StrataError):
    label = "ChamberInconsistency"


# ─── Implosion ──────────────────────────────────────────

class GroupTooLargeError(StrataError):
    label = "GroupTooLarge"


class NotInChamberError(StrataError):
    label = "NotInChamber"


# ─── CLI Contract ───────────────────────────────────────

class UnsupportedRootDatumError(StrataError):
    label = "UnsupportedRootDatum"
    exit_code = 3


class MissingRootDatumError(StrataError):
    label = "MissingRootDatum"
    exit_code = 3


class UnknownBetaError(StrataError):
    label = "UnknownBeta"
    exit_code = 4

    def __init__(self, selector: str, detail: Optional[str] = None):
        super().__init__(detail or f"{selector} is not a member of the index set")
        self.selector = selector


class PlotRankError(StrataError):
    label = "PlotRank"
    exit_code = 6


class OutputError(StrataError):
    label = "OutputError"

    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
