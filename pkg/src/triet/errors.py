"""Exception hierarchy shared by every module.

Everything raised on purpose derives from :class:`TrietError`, which is what
the command line maps to exit status 1.
"""

from __future__ import annotations


class TrietError(Exception):
    """Base class for domain errors."""

    code = "TrietError"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class FieldMismatch(TrietError):
    code = "FieldMismatch"


class DivisionByZero(TrietError, ZeroDivisionError):
    code = "DivisionByZero"


class LiteralSyntaxError(TrietError, ValueError):
    code = "SyntaxError"


class MixedFields(TrietError):
    code = "MixedFields"


class OrderViolation(TrietError, ValueError):
    code = "OrderViolation"


class OutOfDomain(TrietError, ValueError):
    code = "OutOfDomain"


class NotMinimal(TrietError):
    code = "NotMinimal"


class CapExceeded(TrietError):
    code = "CapExceeded"

    def __init__(self, cap: int, state: dict | None = None):
        self.cap = cap
        self.state = state or {}
        detail = ", ".join(f"{k}={v}" for k, v in self.state.items())
        super().__init__(f"iteration cap {cap} exceeded" + (f" ({detail})" if detail else ""))

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["cap"] = self.cap
        out["state"] = {k: str(v) for k, v in self.state.items()}
        return out


class NotAFactor(TrietError):
    code = "NotAFactor"


class UnknownLetter(TrietError, KeyError):
    code = "UnknownLetter"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class NotEndomorphism(TrietError):
    code = "NotEndomorphism"


class PeriodicCycle(TrietError):
    code = "PeriodicCycle"


class NotASubstitutionSeed(TrietError):
    code = "NotASubstitutionSeed"


class NotPrimitive(TrietError):
    code = "NotPrimitive"


class Degenerate(TrietError):
    code = "Degenerate"

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)

    def to_dict(self) -> dict:
        out = super().to_dict()
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


class FieldEscape(TrietError):
    code = "FieldEscape"
