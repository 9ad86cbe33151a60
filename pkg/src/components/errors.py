from __future__ import annotations

from typing import Any, Dict, Optional


class TensorCohError(Exception):
    """Base class for every failure raised by the computational components."""


class InputError(TensorCohError):
    """Malformed or mismatched input (dimensions, algebras, files)."""

    def __init__(self, message: str, *, position: Optional[str] = None) -> None:
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)


class NonAdmissibleError(InputError):
    pass


class RadicalUnavailableError(InputError):
    pass


class HypothesisNotSatisfied(InputError):
    """A precondition of a homological statement does not hold for the input."""


class UndeterminedError(TensorCohError):
    pass


class ConsistencyError(TensorCohError):
    """An internal invariant failed; this always indicates a bug."""


class WitnessError(TensorCohError):
    def __init__(self, message: str, witness: Dict[str, Any]) -> None:
        self.witness = witness
        super().__init__(f"{message} (witness: {witness})")


class PurityError(WitnessError):
    pass


class ThetaNotConcentratedError(WitnessError):
    pass
