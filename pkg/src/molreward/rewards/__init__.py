"""Verifiable reward functions for each chemistry task."""

from .grade import RewardResult, grade
from .oracles import (
    HttpPropertyOracle,
    HttpReactionOracle,
    OracleUnavailableError,
    PropertyOracle,
    ReactionOracle,
    StubSolubilityOracle,
    TableReactionOracle,
)
from .response import ParsedResponse, format_response, parse_response
from .taskspec import ConfigurationError, GradingContext, TaskSpec
from .verifiers import (
    canonical_of,
    verify_completion,
    verify_elucidation,
    verify_exact,
    verify_formula,
    verify_functional_group,
    verify_mcq,
    verify_retrosynthesis,
    verify_solubility_edit,
)

__all__ = [
    "ConfigurationError", "GradingContext", "HttpPropertyOracle",
    "HttpReactionOracle", "OracleUnavailableError", "ParsedResponse",
    "PropertyOracle", "ReactionOracle", "RewardResult", "StubSolubilityOracle",
    "TableReactionOracle", "TaskSpec", "canonical_of", "format_response",
    "grade", "parse_response", "verify_completion", "verify_elucidation",
    "verify_exact", "verify_formula", "verify_functional_group", "verify_mcq",
    "verify_retrosynthesis", "verify_solubility_edit",
]
