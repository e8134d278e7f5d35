"""
fk3census errors.
"""

import traceback
from typing import Optional


class Fk3CensusError(Exception):
    """
    Base class for fk3census errors.
    """


class DiagnosticError(Fk3CensusError):
    """
    Base class for errors that the command line surface renders as a single diagnostic line on standard error. Any
    keyword arguments are kept as structured metadata (the failing condition, the offending subset etc.)
    """

    def __init__(
        self, *args, original_error: Optional[BaseException] = None, include_stack_trace: bool = False, **metadata
    ):
        super().__init__(*args)
        self.original_error = original_error or self
        self.include_stack_trace = include_stack_trace
        self.metadata = metadata

    def generate_diagnostic(self) -> str:
        """
        Generate the text of the diagnostic. The default implementation outputs the error itself followed by its
        metadata (or the complete traceback if `include_stack_trace` is True).
        """
        if self.include_stack_trace:
            return "".join(
                traceback.format_exception(
                    type(self.original_error), self.original_error, self.original_error.__traceback__
                )
            )
        text = "".join(traceback.format_exception_only(type(self.original_error), self.original_error)).strip()
        if self.metadata:
            text += " [" + ", ".join(f"{key}={value}" for key, value in sorted(self.metadata.items())) + "]"
        return text


class InvalidArgumentError(DiagnosticError):
    """
    Raised when the arguments of an operation violate its preconditions (index sets out of range, wrong number of
    weights, a violated `a_i + a_5 = d` gate and so on).
    """


class UsageError(DiagnosticError):
    """
    Raised when the command line cannot be parsed.
    """


class WeightSpecParseError(DiagnosticError):
    """
    Raised when a weight spec (`w0,w1,...,wn:d`) is malformed. `column` is the 1-based position of the first offending
    character.
    """

    def __init__(self, *args, column: int, **metadata):
        super().__init__(*args, column=column, **metadata)
        self.column = column


class WeightDomainError(DiagnosticError):
    """
    Raised when a weight or a degree is not a positive integer.
    """


class LinearConeError(DiagnosticError):
    """
    Raised when the Jacobian ring series is requested for a linear cone (d = a_i for some i).
    """


class NoTangentVariableError(DiagnosticError):
    """
    Raised when an orbifold stratum is contained in the general hypersurface but no tangent variable exists, which
    means that the general member is not quasi-smooth along the stratum.
    """


class ConditionFailedError(DiagnosticError):
    """
    Raised when a weight system does not satisfy one of the conditions a family has to satisfy. `condition` names it.
    """

    def __init__(self, *args, condition: str, **metadata):
        super().__init__(*args, condition=condition, **metadata)
        self.condition = condition


class CrossCheckError(DiagnosticError):
    """
    Raised when one of the self-checks of the census fails. `check` names the failed check.
    """

    def __init__(self, *args, check: str, **metadata):
        super().__init__(*args, check=check, **metadata)
        self.check = check


class FamilyAlreadyStored(Fk3CensusError):
    """
    Raised when a family is stored twice under the same key in a write-once family store.
    """


class FamilyDoesNotExist(Fk3CensusError):
    """
    Raised when a family is not present in a family store.
    """
