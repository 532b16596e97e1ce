"""Reward composition: r = format x accuracy (+ optional quality bonus)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..plausibility import quality_flags
from ..smiles import Reaction, SmilesError, parse, parse_reaction
from .response import parse_response
from .taskspec import ConfigurationError, GradingContext, TaskSpec
from .verifiers import (
    verify_completion,
    verify_elucidation,
    verify_exact,
    verify_formula,
    verify_functional_group,
    verify_mcq,
    verify_retrosynthesis,
    verify_solubility_edit,
)


@dataclass(frozen=True)
class RewardResult:
    reward: float
    format: int
    accuracy: float
    bonus: int
    reason: str

    def as_dict(self) -> dict[str, Any]:
        return {"reward": self.reward, "format": self.format,
                "accuracy": self.accuracy, "bonus": self.bonus,
                "reason": self.reason}


def grade(task: TaskSpec, raw: str, ctx: GradingContext) -> RewardResult:
    """Grade one raw completion against one task.

    Pure in (task, raw, context state): identical inputs give byte-identical
    results, including reason strings.
    """
    parsed = parse_response(raw)
    if not parsed.well_formed:
        return RewardResult(reward=0.0, format=0, accuracy=0.0, bonus=0,
                            reason=f"format_error: {parsed.defect}")

    accuracy, reason = _dispatch(task, parsed.answer, ctx)

    bonus = 0
    use_bonus = task.quality_bonus if task.quality_bonus is not None \
        else ctx.default_quality_bonus
    if use_bonus and accuracy == 1.0:
        bonus = 1 if _answer_quality_ok(parsed.answer, ctx) else 0

    return RewardResult(reward=1.0 * accuracy + bonus, format=1,
                        accuracy=accuracy, bonus=bonus, reason=reason)


def _dispatch(task: TaskSpec, answer: str, ctx: GradingContext) -> tuple[float, str]:
    kind = task.kind
    gold = task.gold
    partial = task.partial_credit if task.partial_credit is not None \
        else ctx.default_partial_credit

    if kind in ("iupac_match", "molecule_caption", "reaction_prediction"):
        return verify_exact(answer, gold["target"])
    if kind == "molecular_formula":
        return verify_formula(answer, gold["formula"], ctx, partial)
    if kind == "functional_group":
        return verify_functional_group(answer, gold["formula"],
                                       list(gold["groups"]), ctx, partial)
    if kind == "elucidation":
        return verify_elucidation(answer, gold["target"], ctx)
    if kind == "smiles_completion":
        return verify_completion(gold["prefix"], answer, ctx)
    if kind == "retrosynthesis":
        reaction, defect = _answer_as_reaction(answer, gold["target"])
        if reaction is None:
            return 0.0, defect or "parse_error"
        return verify_retrosynthesis(reaction, gold["target"], ctx)
    if kind == "mcq":
        return verify_mcq(answer, list(gold["options"]), int(gold["key"]))
    if kind == "solubility_edit":
        return verify_solubility_edit(
            answer, gold["original"], float(gold["delta"]),
            dict(gold.get("constraints") or {}), ctx)
    raise ConfigurationError(f"unknown task kind {kind!r}")


def _answer_as_reaction(answer: str, target: str) -> tuple[Reaction | None, str | None]:
    """Retrosynthesis answers: full reaction SMILES or bare reactant list."""
    try:
        if ">" in answer:
            return parse_reaction(answer), None
        reactants = tuple(parse(part) for part in answer.split(".") if part)
        if not reactants:
            return None, "parse_error: no reactants in answer"
        return Reaction(reactants=reactants, agents=(),
                        products=(parse(target),)), None
    except SmilesError as e:
        return None, f"parse_error: {e}"


def _answer_quality_ok(answer: str, ctx: GradingContext) -> bool:
    try:
        mol = parse(answer)
    except SmilesError:
        return False
    return quality_flags(mol, ctx.patterns).ok
