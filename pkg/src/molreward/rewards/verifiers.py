"""Per-task accuracy verifiers.

Every verifier returns ``(accuracy, reason)``. Accuracy is 0, 0.5, or 1;
reasons are stable machine-readable strings ("code" or "code: detail").
Unparseable answers score 0 with a parse_error reason; broken gold payloads
and missing oracles raise instead (they are faults, not wrong answers).
"""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache

from ..graph import (
    Fingerprint,
    fingerprint,
    heavy_atom_count,
    molecular_formula,
    murcko_scaffold,
    parse_formula,
    tanimoto,
)
from ..graph.patterns import PatternLibrary, _MolView
from ..graph.subgraph import extract_subgraph
from ..plausibility import PlausibilityReference, is_reasonable
from ..smiles import Molecule, Reaction, SmilesError, parse, write_canonical
from .oracles import PropertyOracle, ReactionOracle
from .taskspec import ConfigurationError, GradingContext

Verdict = tuple[float, str]


@lru_cache(maxsize=16384)
def canonical_of(text: str) -> str:
    """Canonical SMILES of raw text; cached because targets repeat heavily."""
    return write_canonical(parse(text))


@lru_cache(maxsize=4096)
def _fingerprint_of(text: str) -> Fingerprint:
    return fingerprint(parse(text))


def strip_stereo(mol: Molecule) -> Molecule:
    atoms = tuple(replace(a, stereo=None, stereo_ref=()) for a in mol.atoms)
    bonds = tuple(replace(b, direction=0, stereo=None) for b in mol.bonds)
    return Molecule(atoms, bonds)


def verify_exact(answer: str, target: str, *, stereo_sensitive: bool = True) -> Verdict:
    """1 iff canonical forms are byte-equal (stereo retained by default)."""
    try:
        want = canonical_of(target)
    except SmilesError as e:
        raise ConfigurationError(f"gold target does not parse: {e}") from e
    try:
        if stereo_sensitive:
            got = canonical_of(answer)
        else:
            got = write_canonical(strip_stereo(parse(answer)))
            want = write_canonical(strip_stereo(parse(target)))
    except SmilesError as e:
        return 0.0, f"parse_error: {e}"
    if got == want:
        return 1.0, "exact_match"
    return 0.0, "wrong_molecule"


def split_components(mol: Molecule) -> list[Molecule]:
    if mol.components <= 1:
        return [mol]
    return [extract_subgraph(mol, set(comp)) for comp in mol.component_atom_sets()]


def resolve_design_answer(answer: str, ctx: GradingContext) -> tuple[Molecule | None, str | None]:
    """Parse an open-form molecule answer.

    Multi-component answers are rejected except a two-component pair whose
    smaller member is a recognised counterion; grading then applies to the
    larger member.
    """
    try:
        mol = parse(answer)
    except SmilesError as e:
        return None, f"parse_error: {e}"
    if mol.components == 1:
        return mol, None
    if mol.components == 2:
        parts = sorted(split_components(mol), key=heavy_atom_count)
        if write_canonical(parts[0]) in ctx.counterions:
            return parts[1], None
    return None, "mixture_disallowed"


def _plausible(mol: Molecule, ref: PlausibilityReference) -> tuple[bool, str]:
    verdict = is_reasonable(mol, ref)
    if verdict.ok:
        return True, ""
    return False, f"implausible_molecule: {verdict.failing_kind} {verdict.failing_value}"


def verify_formula(answer: str, formula: str, ctx: GradingContext,
                   partial_credit: bool) -> Verdict:
    try:
        want = parse_formula(formula)
    except ValueError as e:
        raise ConfigurationError(f"gold formula invalid: {e}") from e
    mol, defect = resolve_design_answer(answer, ctx)
    if mol is None:
        return 0.0, defect or "parse_error"
    if molecular_formula(mol).counts != want:
        return 0.0, "formula_mismatch"
    ref = ctx.need("plausibility", "molecular_formula")
    ok, why = _plausible(mol, ref)
    if ok:
        return 1.0, "correct"
    if partial_credit:
        return 0.5, f"partial_credit: formula met; {why}"
    return 0.0, why


def verify_functional_group(answer: str, formula: str, groups: list[str],
                            ctx: GradingContext, partial_credit: bool) -> Verdict:
    library: PatternLibrary = ctx.patterns
    for name in groups:
        if name not in library:
            raise ConfigurationError(f"unknown functional group {name!r}")
    try:
        want = parse_formula(formula)
    except ValueError as e:
        raise ConfigurationError(f"gold formula invalid: {e}") from e
    mol, defect = resolve_design_answer(answer, ctx)
    if mol is None:
        return 0.0, defect or "parse_error"
    if molecular_formula(mol).counts != want:
        return 0.0, "formula_mismatch"
    view = _MolView(mol)
    missing = [name for name in groups if library.count(mol, name, view) < 1]
    ref = ctx.need("plausibility", "functional_group")
    plausible, why = _plausible(mol, ref)
    if not missing and plausible:
        return 1.0, "correct"
    failure = f"missing_group: {missing[0]}" if missing else why
    if partial_credit:
        return 0.5, f"partial_credit: formula met; {failure}"
    return 0.0, failure


def verify_elucidation(answer: str, target: str, ctx: GradingContext) -> Verdict:
    """1 iff Tanimoto(answer, target) >= threshold (inclusive, default 0.7)."""
    try:
        target_fp = _fingerprint_of(target)
    except SmilesError as e:
        raise ConfigurationError(f"gold target does not parse: {e}") from e
    mol, defect = resolve_design_answer(answer, ctx)
    if mol is None:
        return 0.0, defect or "parse_error"
    similarity = tanimoto(fingerprint(mol), target_fp)
    if similarity >= ctx.elucidation_threshold:
        return 1.0, f"similar_enough: {similarity:.4f}"
    return 0.0, f"similarity_below_threshold: {similarity:.4f}"


def verify_completion(prefix: str, answer: str, ctx: GradingContext) -> Verdict:
    """Answer must extend the prefix byte-wise, parse, and be reasonable."""
    if not answer.startswith(prefix):
        return 0.0, "prefix_mismatch"
    mol, defect = resolve_design_answer(answer, ctx)
    if mol is None:
        return 0.0, defect or "parse_error"
    ref = ctx.need("plausibility", "smiles_completion")
    ok, why = _plausible(mol, ref)
    if ok:
        return 1.0, "correct"
    return 0.0, why


def verify_retrosynthesis(answer: Reaction, target: str, ctx: GradingContext) -> Verdict:
    catalog = ctx.need("purchasable", "retrosynthesis")
    oracle: ReactionOracle = ctx.need("reaction_oracle", "retrosynthesis")
    try:
        want = canonical_of(target)
    except SmilesError as e:
        raise ConfigurationError(f"gold target does not parse: {e}") from e
    reactant_smiles = sorted(write_canonical(m) for m in answer.reactants)
    for smi in reactant_smiles:
        if smi not in catalog:
            return 0.0, f"not_purchasable: {smi}"
    product = oracle.predict_product(reactant_smiles)
    if not product:
        return 0.0, "no_predicted_product"
    try:
        got = canonical_of(product)
    except SmilesError:
        return 0.0, "product_mismatch"
    if got == want:
        return 1.0, "correct"
    return 0.0, "product_mismatch"


def normalize_option(text: str) -> str:
    """SMILES-canonical when parseable, else trimmed case-folded text."""
    text = text.strip()
    try:
        return canonical_of(text)
    except SmilesError:
        return " ".join(text.casefold().split())


def verify_mcq(answer: str, options: list[str], key: int) -> Verdict:
    want = normalize_option(options[key])
    if normalize_option(answer) == want:
        return 1.0, "option_match"
    return 0.0, "wrong_option"


def verify_solubility_edit(answer: str, original: str, delta: float,
                           constraints: dict, ctx: GradingContext) -> Verdict:
    oracle: PropertyOracle = ctx.need("property_oracle", "solubility_edit")
    try:
        parse(original)
    except SmilesError as e:
        raise ConfigurationError(f"gold original does not parse: {e}") from e
    mol, defect = resolve_design_answer(answer, ctx)
    if mol is None:
        return 0.0, defect or "parse_error"
    answer_smiles = write_canonical(mol)

    achieved = oracle.predict(answer_smiles) - oracle.predict(original)
    if (delta > 0 and achieved < delta) or (delta < 0 and achieved > delta):
        return 0.0, f"property_target_missed: {achieved:+.3f} vs {delta:+.3f}"

    if constraints.get("scaffold"):
        same = write_canonical(murcko_scaffold(mol)) == \
            write_canonical(murcko_scaffold(parse(original)))
        if not same:
            return 0.0, "scaffold_changed"
    threshold = constraints.get("similarity")
    if threshold is not None:
        similarity = tanimoto(fingerprint(mol), _fingerprint_of(original))
        if similarity < threshold:
            return 0.0, f"similarity_constraint: {similarity:.4f} < {threshold}"
    for name in constraints.get("preserve_groups", []):
        if name not in ctx.patterns:
            raise ConfigurationError(f"unknown functional group {name!r}")
        before = ctx.patterns.count(parse(original), name)
        after = ctx.patterns.count(mol, name)
        if before != after:
            return 0.0, f"group_changed: {name}"

    ref = ctx.need("plausibility", "solubility_edit")
    ok, why = _plausible(mol, ref)
    if ok:
        return 1.0, "correct"
    return 0.0, why
