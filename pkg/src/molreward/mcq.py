"""Multiple-choice question generation with similarity-matched distractors,
leakage-free train/test splits, and in-context variants.

Distractors are the most Tanimoto-similar pool molecules whose property
values violate the question's criterion: numeric values must differ by more
than the property window (0.25 by default, 0.35 for pKa), and comparative
"higher/lower than X" questions demand at least a 10 percentile-point gap
for the key while distractors must not exceed the reference at all.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Fingerprint, fingerprint, tanimoto
from .smiles import Molecule, SmilesError, parse, write_canonical

DEFAULT_VALUE_WINDOW = 0.25
PKA_VALUE_WINDOW = 0.35
PERCENTILE_GAP = 10.0

QUESTION_TEMPLATES = {
    "identify": (
        "Which of the following molecules has a measured {property} of "
        "approximately {value}?",
        "Select the molecule whose {property} was determined to be close to "
        "{value}.",
        "One of these compounds has {property} near {value}. Which one?",
    ),
    "outlier": (
        "All but one of these molecules have similar {property} values. "
        "Which is the outlier?",
        "Three of the following compounds share comparable {property}; pick "
        "the inconsistent one.",
        "Identify the compound whose {property} does not match the rest.",
    ),
    "higher": (
        "Which of the following molecules has a higher {property} than "
        "{reference}?",
        "Select the compound whose {property} exceeds that of {reference}.",
    ),
    "lower": (
        "Which of the following molecules has a lower {property} than "
        "{reference}?",
        "Select the compound whose {property} falls below that of "
        "{reference}.",
    ),
}


class McqGenerationError(ValueError):
    """Not enough qualifying options to build the requested question."""


@dataclass(frozen=True)
class PropertyRecord:
    molecule: Molecule
    property_name: str
    value: float | str
    percentile: float | None = None

    @property
    def smiles(self) -> str:
        return write_canonical(self.molecule)


@dataclass(frozen=True)
class MCQ:
    question_text: str
    options: tuple[str, ...]
    key: int
    kind: str                      # "identify" or "outlier"
    property_name: str
    reference: str | None = None   # comparative questions quote this molecule

    def __post_init__(self):
        if not 0 <= self.key < len(self.options):
            raise ValueError("key out of range")
        if len(self.options) < 2:
            raise ValueError("an MCQ needs at least 2 options")

    def molecules(self) -> set[str]:
        out = set(self.options)
        if self.reference:
            out.add(self.reference)
        return out


def percentile_rank(values: Sequence[float], x: float) -> float:
    """Midrank percentile: 100 * (#below + 0.5 * #equal) / n."""
    if not values:
        raise ValueError("empty value pool")
    below = sum(1 for v in values if v < x)
    equal = sum(1 for v in values if v == x)
    return 100.0 * (below + 0.5 * equal) / len(values)


def finalize_pool(records: Iterable[PropertyRecord]) -> list[PropertyRecord]:
    """Attach percentile ranks to every numeric record of one property pool."""
    records = list(records)
    names = {r.property_name for r in records}
    if len(names) > 1:
        raise ValueError(f"pool mixes properties: {sorted(names)}")
    numeric = [float(r.value) for r in records if isinstance(r.value, (int, float))]
    out = []
    for r in records:
        pct = None
        if isinstance(r.value, (int, float)):
            pct = percentile_rank(numeric, float(r.value))
        out.append(PropertyRecord(molecule=r.molecule,
                                  property_name=r.property_name,
                                  value=r.value, percentile=pct))
    return out


def value_window(property_name: str) -> float:
    if property_name.strip().lower() in ("pka", "pkah1"):
        return PKA_VALUE_WINDOW
    return DEFAULT_VALUE_WINDOW


@dataclass
class _Scored:
    record: PropertyRecord
    similarity: float
    smiles: str


def _rank_pool(target: PropertyRecord, pool: Sequence[PropertyRecord]) -> list[_Scored]:
    target_fp = fingerprint(target.molecule)
    target_smiles = target.smiles
    scored = []
    for rec in pool:
        smi = rec.smiles
        if smi == target_smiles:
            continue
        scored.append(_Scored(rec, tanimoto(fingerprint(rec.molecule), target_fp), smi))
    scored.sort(key=lambda s: (-s.similarity, s.smiles))
    return scored


def generate_mcq(target: PropertyRecord, pool: Sequence[PropertyRecord],
                 n_options: int = 4, kind: str = "identify",
                 seed: int = 0) -> MCQ:
    """Build one question around ``target`` with similarity-ranked wrong
    options drawn from ``pool``.

    identify: key is the target; distractors' values must violate the window.
    outlier: distractors share the target's value neighbourhood, the key (the
    outlier) violates it.
    higher/lower: the target is quoted as the reference; the key must sit at
    least 10 percentile points beyond it, distractors at or short of it.
    """
    if kind not in QUESTION_TEMPLATES:
        raise McqGenerationError(f"unknown question kind {kind!r}")
    if n_options < 2:
        raise McqGenerationError("n_options must be at least 2")
    rng = random.Random(seed)
    ranked = _rank_pool(target, pool)
    window = value_window(target.property_name)
    numeric = isinstance(target.value, (int, float))

    def violates(rec: PropertyRecord) -> bool:
        if numeric:
            return abs(float(rec.value) - float(target.value)) > window
        return rec.value != target.value

    def matches(rec: PropertyRecord) -> bool:
        if numeric:
            return abs(float(rec.value) - float(target.value)) <= window
        return rec.value == target.value

    if kind == "identify":
        distractors = [s for s in ranked if violates(s.record)][:n_options - 1]
        if len(distractors) < n_options - 1:
            raise McqGenerationError(
                f"only {len(distractors)} qualifying distractors for identify")
        options = [target.smiles] + [s.smiles for s in distractors]
        key_smiles = target.smiles
        reference = None
        text_args = {"property": target.property_name,
                     "value": _fmt_value(target.value)}
    elif kind == "outlier":
        in_group = [s for s in ranked if matches(s.record)][:n_options - 2]
        outliers = [s for s in ranked if violates(s.record)]
        if len(in_group) < n_options - 2 or not outliers:
            raise McqGenerationError("not enough in-group or outlier candidates")
        outlier = outliers[0]
        options = [target.smiles] + [s.smiles for s in in_group] + [outlier.smiles]
        key_smiles = outlier.smiles
        reference = None
        text_args = {"property": target.property_name}
    else:  # higher / lower
        if not numeric or target.percentile is None:
            raise McqGenerationError("comparative questions need numeric "
                                     "percentile-ranked records")
        sign = 1.0 if kind == "higher" else -1.0

        def beyond(rec: PropertyRecord) -> bool:
            return rec.percentile is not None and \
                sign * (rec.percentile - target.percentile) >= PERCENTILE_GAP

        def never_beyond(rec: PropertyRecord) -> bool:
            return rec.percentile is not None and \
                sign * (rec.percentile - target.percentile) <= 0.0

        keys = [s for s in ranked if beyond(s.record)]
        distractors = [s for s in ranked if never_beyond(s.record)][:n_options - 1]
        if not keys or len(distractors) < n_options - 1:
            raise McqGenerationError("not enough comparative candidates")
        options = [keys[0].smiles] + [s.smiles for s in distractors]
        key_smiles = keys[0].smiles
        reference = target.smiles
        text_args = {"property": target.property_name, "reference": reference}

    rng.shuffle(options)
    template = rng.choice(QUESTION_TEMPLATES[kind])
    out_kind = kind if kind in ("identify", "outlier") else "identify"
    return MCQ(
        question_text=template.format(**text_args),
        options=tuple(options),
        key=options.index(key_smiles),
        kind=out_kind,
        property_name=target.property_name,
        reference=reference,
    )


def _fmt_value(value: float | str) -> str:
    if isinstance(value, str):
        return value
    return f"{value:.2f}"


# ---------------------------------------------------------------------------
# leakage control


def build_cooccurrence_graph(mcqs: Iterable[MCQ]) -> dict[str, set[str]]:
    """Undirected molecule graph; an edge joins every pair sharing a question."""
    graph: dict[str, set[str]] = {}
    for mcq in mcqs:
        mols = sorted(mcq.molecules())
        for m in mols:
            graph.setdefault(m, set())
        for i in range(len(mols)):
            for j in range(i + 1, len(mols)):
                graph[mols[i]].add(mols[j])
                graph[mols[j]].add(mols[i])
    return graph


def connected_components(graph: dict[str, set[str]]) -> list[set[str]]:
    seen: set[str] = set()
    comps = []
    for node in sorted(graph):
        if node in seen:
            continue
        comp = {node}
        stack = [node]
        seen.add(node)
        while stack:
            for nbr in graph[stack.pop()]:
                if nbr not in seen:
                    seen.add(nbr)
                    comp.add(nbr)
                    stack.append(nbr)
        comps.append(comp)
    return comps


class SplitError(ValueError):
    """The co-occurrence graph cannot be split at the requested fraction."""


def split_leakage_free(graph: dict[str, set[str]], test_fraction: float,
                       seed: int = 0) -> tuple[set[str], set[str]]:
    """Assign whole connected components to train/test, greedily approaching
    ``test_fraction`` of nodes in test. Guarantees zero cross-split edges."""
    if not graph:
        raise SplitError("empty graph")
    if not 0.0 < test_fraction < 1.0:
        raise SplitError("test_fraction must be in (0, 1)")
    comps = connected_components(graph)
    total = sum(len(c) for c in comps)
    biggest = max(len(c) for c in comps)
    if biggest / total > max(test_fraction, 1.0 - test_fraction):
        raise SplitError(
            f"one component holds {biggest}/{total} nodes; no split at "
            f"fraction {test_fraction} can avoid leakage")
    rng = random.Random(seed)
    order = list(range(len(comps)))
    rng.shuffle(order)
    target = test_fraction * total
    test: set[str] = set()
    train: set[str] = set()
    test_count = 0
    for idx in order:
        comp = comps[idx]
        if abs(test_count + len(comp) - target) < abs(test_count - target):
            test |= comp
            test_count += len(comp)
        else:
            train |= comp

    # Paranoia: the invariant the whole procedure exists for.
    for node in test:
        crossing = graph[node] & train
        if crossing:
            raise AssertionError(f"cross-split edge at {node}")
    return train, test


def assign_splits(mcqs: Sequence[MCQ], test_fraction: float,
                  seed: int = 0) -> list[str]:
    """Per-question split labels ("train"/"test") from the molecule split."""
    graph = build_cooccurrence_graph(mcqs)
    train, test = split_leakage_free(graph, test_fraction, seed)
    labels = []
    for mcq in mcqs:
        mols = mcq.molecules()
        if mols <= test:
            labels.append("test")
        elif mols <= train:
            labels.append("train")
        else:  # unreachable: a question's molecules share one component
            raise AssertionError("question straddles the split")
    return labels


# ---------------------------------------------------------------------------
# ICL variants


def make_icl_variant(mcq: MCQ, seed: int = 0) -> tuple[str, MCQ]:
    """Remove one distractor and render it as context.

    The reduced question has the same random baseline as an (n-1)-option
    question; the keyed option is never the one removed.
    """
    if len(mcq.options) < 3:
        raise McqGenerationError("need at least 3 options to build an ICL variant")
    rng = random.Random(seed)
    candidates = [i for i in range(len(mcq.options)) if i != mcq.key]
    removed = rng.choice(candidates)
    context = (f"As context, {mcq.options[removed]} is a known incorrect "
               f"answer for this {mcq.property_name} question.")
    options = tuple(o for i, o in enumerate(mcq.options) if i != removed)
    new_key = mcq.key - (1 if removed < mcq.key else 0)
    reduced = MCQ(question_text=mcq.question_text, options=options,
                  key=new_key, kind=mcq.kind,
                  property_name=mcq.property_name, reference=mcq.reference)
    return context, reduced


# ---------------------------------------------------------------------------
# tabular input / JSONL output

def read_property_table(text: str) -> dict[str, list[PropertyRecord]]:
    """Parse ``smiles<TAB>property<TAB>value`` rows (one-line header) into
    per-property pools; unparseable molecules are skipped."""
    pools: dict[str, list[PropertyRecord]] = {}
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty property table")
    for line in lines[1:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"expected 3 tab-separated columns: {line!r}")
        smiles, name, raw_value = parts
        try:
            mol = parse(smiles)
        except SmilesError:
            continue
        try:
            value: float | str = float(raw_value)
        except ValueError:
            value = raw_value
        pools.setdefault(name, []).append(
            PropertyRecord(molecule=mol, property_name=name, value=value))
    return {name: finalize_pool(records) for name, records in pools.items()}


def mcq_to_json(mcq: MCQ, mcq_id: str, split: str) -> str:
    record = {
        "id": mcq_id,
        "question": mcq.question_text,
        "options": list(mcq.options),
        "key": mcq.key,
        "kind": mcq.kind,
        "property": mcq.property_name,
        "split": split,
    }
    if mcq.reference:
        record["reference"] = mcq.reference
    return json.dumps(record, sort_keys=True)
