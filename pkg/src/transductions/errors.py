"""
TRANSDUCTIONS - Error Types
===========================

Every failure raised by the library derives from TransductionError, which is
itself a ValueError, so callers can keep catching ValueError.

Classes:
    - TransductionError: base class
    - GraphError: malformed graphs, vertices or colorings
    - FormulaSyntaxError: grammar and scoping violations (with position)
    - EvaluationError: free variable without an assigned vertex
    - InterpretationError: realised edge relation not symmetric/irreflexive
    - PipelineError: malformed pipelines, witnesses or gluing marks
    - BudgetExceededError: search space above the configured budget
    - PerturbationError: malformed flip partitions or perturbations
    - EncodingError: violated encoder preconditions
    - VerificationError: an encoder contract that did not hold
    - GameError: invalid game arguments or caterpillar preconditions
"""

from typing import Optional, Tuple


class TransductionError(ValueError):
    """Base class for all library errors."""


class GraphError(TransductionError):
    """Invalid graph data: out-of-range endpoints, self-loops, bad colors."""


class FormulaSyntaxError(TransductionError):
    """Raised when formula text does not parse or violates scoping rules."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 text: Optional[str] = None):
        self.line = line
        self.column = column
        self.text = text
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class EvaluationError(TransductionError):
    """Raised when an assignment does not cover the free variables."""


class InterpretationError(TransductionError):
    """Raised when an interpretation realises an asymmetric or reflexive relation."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        self.pair = pair
        super().__init__(message)


class PipelineError(TransductionError):
    """Stage kind mismatch, witness mismatch, missing marks."""


class BudgetExceededError(TransductionError):
    """Raised instead of starting a search larger than the budget."""

    def __init__(self, message: str, estimate: Optional[int] = None, budget: Optional[int] = None):
        self.estimate = estimate
        self.budget = budget
        if estimate is not None and budget is not None:
            message = f"{message} (estimate {estimate} > budget {budget})"
        super().__init__(message)


class PerturbationError(TransductionError):
    """Raised for flip partitions that do not partition the vertex set."""


class EncodingError(TransductionError):
    """Raised when an encoder's input does not meet its preconditions."""


class VerificationError(TransductionError):
    """Raised when a constructed artifact fails its own contract."""


class GameError(TransductionError):
    """Raised for negative round counts and unmet clone-check preconditions."""
