"""Task descriptions and the grading context they are evaluated against."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..bloom import BloomFilter
from ..graph.patterns import PatternLibrary, builtin_library
from ..plausibility import PlausibilityReference
from .oracles import PropertyOracle, ReactionOracle

TASK_KINDS = (
    "iupac_match", "smiles_completion", "molecular_formula", "functional_group",
    "elucidation", "retrosynthesis", "reaction_prediction", "molecule_caption",
    "solubility_edit", "mcq",
)


class ConfigurationError(ValueError):
    """Bad task payloads or missing context: a fault, never a zero reward."""


@dataclass(frozen=True)
class TaskSpec:
    kind: str
    gold: dict[str, Any]
    partial_credit: bool | None = None   # None = context default
    quality_bonus: bool | None = None

    def __post_init__(self):
        if self.kind not in TASK_KINDS:
            raise ConfigurationError(f"unknown task kind {self.kind!r}")
        _validate_gold(self.kind, self.gold)

    @staticmethod
    def from_record(record: dict[str, Any]) -> "TaskSpec":
        if "task_kind" not in record:
            raise ConfigurationError("record is missing task_kind")
        gold = record.get("gold")
        if not isinstance(gold, dict):
            raise ConfigurationError("record gold payload must be an object")
        flags = record.get("flags") or {}
        if not isinstance(flags, dict):
            raise ConfigurationError("record flags must be an object")
        return TaskSpec(
            kind=record["task_kind"], gold=gold,
            partial_credit=flags.get("partial_credit"),
            quality_bonus=flags.get("quality_bonus"))


def _require(gold: dict, key: str, types: tuple[type, ...]) -> Any:
    if key not in gold:
        raise ConfigurationError(f"gold payload is missing {key!r}")
    value = gold[key]
    if not isinstance(value, types):
        raise ConfigurationError(f"gold payload field {key!r} has wrong type")
    return value


def _validate_gold(kind: str, gold: dict[str, Any]) -> None:
    if kind in ("iupac_match", "molecule_caption", "reaction_prediction",
                "elucidation", "retrosynthesis"):
        _require(gold, "target", (str,))
    elif kind == "smiles_completion":
        _require(gold, "prefix", (str,))
    elif kind == "molecular_formula":
        _require(gold, "formula", (str,))
    elif kind == "functional_group":
        _require(gold, "formula", (str,))
        groups = _require(gold, "groups", (list,))
        if not 1 <= len(groups) <= 3:
            raise ConfigurationError("functional_group tasks take 1-3 group names")
    elif kind == "mcq":
        options = _require(gold, "options", (list,))
        key = _require(gold, "key", (int,))
        if len(options) < 2:
            raise ConfigurationError("mcq needs at least 2 options")
        if not 0 <= key < len(options):
            raise ConfigurationError("mcq key out of range")
    elif kind == "solubility_edit":
        _require(gold, "original", (str,))
        delta = _require(gold, "delta", (int, float))
        if delta == 0:
            raise ConfigurationError("solubility_edit delta must be nonzero")


# Counterions tolerated as the second component of an open-form answer,
# as canonical SMILES.
COUNTERION_SMILES = (
    "[Cl-]", "[Br-]", "[I-]", "[F-]",
    "[Na+]", "[K+]", "[Li+]", "[Cs+]",
    "[Ca+2]", "[Mg+2]", "[Zn+2]", "[NH4+]",
    "CC(=O)[O-]", "[O-]C(=O)C(F)(F)F", "CS(=O)(=O)[O-]",
    "[O-][N+](=O)[O-]", "[O-]S(=O)(=O)[O-]", "[O-]C(=O)C(=O)[O-]",
)


@dataclass
class GradingContext:
    """Everything verifiers may need; absent pieces fail loudly when used."""

    patterns: PatternLibrary = field(default_factory=builtin_library)
    plausibility: PlausibilityReference | None = None
    purchasable: BloomFilter | None = None
    reaction_oracle: ReactionOracle | None = None
    property_oracle: PropertyOracle | None = None
    default_partial_credit: bool = False
    default_quality_bonus: bool = False
    elucidation_threshold: float = 0.7
    counterions: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.counterions:
            from ..smiles import parse, write_canonical
            self.counterions = frozenset(
                write_canonical(parse(s)) for s in COUNTERION_SMILES)

    def need(self, attribute: str, kind: str) -> Any:
        value = getattr(self, attribute)
        if value is None:
            raise ConfigurationError(
                f"task kind {kind!r} needs {attribute} configured")
        return value
