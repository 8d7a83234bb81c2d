from __future__ import annotations

from dataclasses import dataclass

from ..domains import FeedkitError
from .syntax import Loc


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" / "warning"
    loc: Loc
    code: str
    message: str

    def __str__(self):
        return f"{self.loc}: {self.severity}[{self.code}]: {self.message}"


class ModelError(FeedkitError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class ParseError(Exception):
    """Internal: aborts the current statement."""

    def __init__(self, diag: Diagnostic):
        super().__init__(str(diag))
        self.diag = diag
