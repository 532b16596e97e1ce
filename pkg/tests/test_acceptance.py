"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

from __future__ import annotations

import json
import math
import random
import time

import pytest

from molreward.bloom import BloomFilter
from molreward.cli import main as cli_main
from molreward.graph import fingerprint, tanimoto
from molreward.grpo import group_advantages, group_objective, max_eps_cur
from molreward.mcq import (
    PropertyRecord,
    assign_splits,
    build_cooccurrence_graph,
    finalize_pool,
    generate_mcq,
)
from molreward.plausibility import build_reference, is_reasonable
from molreward.rewards import (
    GradingContext,
    StubSolubilityOracle,
    TableReactionOracle,
    TaskSpec,
    format_response,
    grade,
)
from molreward.simulate import (
    SimulationConfig,
    SyntheticProblem,
    measure_trivial_fractions,
    simulate,
)
from molreward.smiles import parse, permuted, write_canonical, write_random

from oracle import isomorphic
from test_grpo import oracle_advantages, oracle_objective

PERMUTATIONS_PER_MOLECULE = 50

# Engineered fingerprint pair with Tanimoto exactly 14/20 = 0.7.
ELUCIDATION_PAIR = ("CCCc1ccc(CCC)cc1", "CCCc1ccc(O)cc1")


@pytest.fixture(scope="module")
def reference(corpus):
    ref, stats = build_reference(corpus)
    assert stats.parsed == len(corpus)
    return ref


# ---------------------------------------------------------------------------


def test_criterion_1_canonicalization(corpus):
    """50 random permutations each: byte-identical canonical output, and
    round-trip isomorphism holds for the whole corpus, under 60 s."""
    start = time.time()
    rng = random.Random(20240601)
    failures = 0
    for smiles in corpus:
        mol = parse(smiles)
        reference_form = write_canonical(mol)
        for _ in range(PERMUTATIONS_PER_MOLECULE):
            order = list(range(len(mol.atoms)))
            rng.shuffle(order)
            if write_canonical(permuted(mol, order)) != reference_form:
                failures += 1
                break
        if not isomorphic(mol, parse(reference_form)):
            failures += 1
    elapsed = time.time() - start
    assert failures == 0
    assert elapsed < 60.0, f"canonicalization suite took {elapsed:.1f}s"
    print(f"\nACCEPTANCE 1: PASS - {len(corpus)} molecules x "
          f"{PERMUTATIONS_PER_MOLECULE} permutations byte-identical, "
          f"round-trip isomorphism 100%, {elapsed:.1f}s")


def test_criterion_2_advantage_oracle():
    rng = random.Random(7)
    trivial_seen = 0
    for _ in range(10**4):
        size = rng.randint(2, 16)
        if rng.random() < 0.1:
            rewards = [rng.choice([0.0, 1.0])] * size
        else:
            rewards = [rng.choice([0.0, 0.5, 1.0, 2.0]) for _ in range(size)]
        group = group_advantages(rewards)
        want, want_trivial = oracle_advantages(rewards)
        assert group.trivial == want_trivial
        trivial_seen += group.trivial
        for got, expected in zip(group.advantages, want):
            assert abs(got - expected) <= 1e-12
    assert trivial_seen > 0
    print(f"\nACCEPTANCE 2: PASS - 10^4 random groups match the brute-force "
          f"oracle to 1e-12 ({trivial_seen} zero-variance groups flagged trivial)")


def test_criterion_3_objective_oracle():
    rng = random.Random(13)
    checked = 0
    for case in range(10**3):
        size = rng.randint(2, 4)
        rewards = [rng.choice([0.0, 0.5, 1.0]) for _ in range(size)]
        group = group_advantages(rewards)
        lengths = [rng.randint(1, 6) for _ in range(size)]
        if case % 5 == 0:
            # pin ratios at the clip boundary
            eps = 0.2
            po = [[0.5] * n for n in lengths]
            pt = [[0.5 * (1 + eps) if t % 2 else 0.5 * (1 - eps)
                   for t in range(n)] for n in lengths]
        else:
            eps = rng.choice([0.1, 0.2, 0.3])
            pt = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
            po = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
        pr = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
        beta = 0.0 if case % 3 == 0 else rng.choice([0.005, 0.1])
        got = group_objective(group, pt, po, pr, eps, beta)
        want = oracle_objective(group.advantages, pt, po, pr, eps, beta)
        assert abs(got - want) <= 1e-10
        checked += 1
    assert checked == 10**3
    print("\nACCEPTANCE 3: PASS - 10^3 random instances (clip-boundary and "
          "beta=0 included) match brute force to 1e-10")


def _ablation_problems():
    return ([SyntheticProblem(f"imp{i}", 0.0) for i in range(250)] +
            [SyntheticProblem(f"easy{i}", 1.0) for i in range(250)] +
            [SyntheticProblem(f"med{i}", 0.35) for i in range(300)])


def test_criterion_4_curriculum_ablation():
    start = time.time()
    gaps = []
    starts = []
    for seed in range(5):
        shared = dict(problems=_ablation_problems(), steps=200, group_size=4,
                      batch_size=64, seed=seed, learning_rate=0.5, beta=0.005)
        base = simulate(SimulationConfig(eps_cur=0.0, **shared))
        curr = simulate(SimulationConfig(eps_cur=0.5, **shared))
        window = [r for r in base if 50 <= r.step <= 200]
        base_mean = sum(r.nontrivial_fraction for r in window) / len(window)
        window = [r for r in curr if 50 <= r.step <= 200]
        curr_mean = sum(r.nontrivial_fraction for r in window) / len(window)
        gaps.append(curr_mean - base_mean)
        starts.append((base[0].nontrivial_fraction, curr[0].nontrivial_fraction))
    elapsed = time.time() - start
    mean_gap = sum(gaps) / len(gaps)
    assert mean_gap >= 0.10, f"gap {mean_gap:.3f} below 10 percentage points"
    assert elapsed < 120.0, f"ablation took {elapsed:.1f}s"
    print(f"\nACCEPTANCE 4: PASS - curriculum lifts the non-trivial fraction "
          f"by {100 * mean_gap:.1f}pp over 5 seeds (start fractions ~"
          f"{100 * starts[0][0]:.0f}%), {elapsed:.1f}s")


def _bound_problems():
    return ([SyntheticProblem(f"imp{i}", 0.0) for i in range(1900)] +
            [SyntheticProblem(f"hard{i}", 0.002) for i in range(100)] +
            [SyntheticProblem(f"med{i}", 0.6, in_dataset=False)
             for i in range(400)])


def _bound_config(steps, eps, seed, lr=0.5):
    return SimulationConfig(
        problems=_bound_problems(), steps=steps, group_size=12, batch_size=64,
        eps_cur=eps, seed=seed, learning_rate=lr,
        seed_buffer=[f"med{i}" for i in range(400)])


def test_criterion_5_curriculum_bound():
    probe = _bound_config(200, 0.3, 0, lr=0.0)
    ftd, ftb = measure_trivial_fractions(probe, probe_steps=200)
    bound = max_eps_cur(ftd, ftb)
    assert 0.0 < 1.5 * bound <= 1.0, f"scenario broke the bound range: {bound}"

    sustained = drained = 0
    for seed in range(5):
        low = simulate(_bound_config(500, 0.8 * bound, seed))
        high = simulate(_bound_config(500, 1.5 * bound, seed))
        sustained += low[-1].buffer_size > 0
        drained += high[-1].buffer_size == 0
    assert sustained >= 4, f"buffer survived in only {sustained}/5 seeds"
    assert drained >= 4, f"buffer drained in only {drained}/5 seeds"
    print(f"\nACCEPTANCE 5: PASS - measured fTD={ftd:.4f} fTB={ftb:.4f} "
          f"bound={bound:.3f}; at 0.8x buffer alive in {sustained}/5 seeds, "
          f"at 1.5x drained to zero in {drained}/5 seeds")


def test_criterion_6_bloom_filter():
    bloom = BloomFilter.create(10**4, 0.01, salt=2024)
    members = [f"member-{i}" for i in range(10**4)]
    for item in members:
        bloom.insert(item)
    false_negatives = sum(1 for item in members if item not in bloom)
    assert false_negatives == 0
    hits = sum(1 for i in range(10**5) if f"non-member-{i}" in bloom)
    rate = hits / 10**5
    assert rate <= 0.02, f"false-positive rate {rate:.4f}"
    print(f"\nACCEPTANCE 6: PASS - 0 false negatives, measured FP rate "
          f"{rate:.4f} <= 0.02 at configured p=0.01")


# ---------------------------------------------------------------------------
# criterion 7: table-driven reward semantics


def _reward_context(reference):
    purchasable = BloomFilter.create(100, 0.001)
    for smi in ("CC(=O)O", "CCO", "CCN", "c1ccccc1"):
        purchasable.insert(write_canonical(parse(smi)))
    oracle = TableReactionOracle.from_entries([
        (["CC(=O)O", "CCO"], "CCOC(C)=O"),
        (["CC(=O)O", "CCN"], "CCNC(C)=O"),
    ])
    return GradingContext(
        plausibility=reference, purchasable=purchasable,
        reaction_oracle=oracle, property_oracle=StubSolubilityOracle())


def _wrap(answer: str) -> str:
    return format_response("reasoning about the problem", answer)


def _reward_cases() -> list[tuple]:
    """(label, kind, gold, raw_response, flags, expected reward/fmt/acc/bonus)."""
    rand = lambda smi, seed: write_random(parse(smi), seed)
    pair_target, pair_answer = ELUCIDATION_PAIR
    ok = {}
    pc = {"partial_credit": True}
    npc = {"partial_credit": False}
    qb = {"quality_bonus": True}
    exact = "reaction_prediction"
    cases = [
        # --- format failures: reward 0 regardless of content ---
        ("fmt_bare_answer", exact, {"target": "CCO"}, "CCO", ok, (0, 0, 0, 0)),
        ("fmt_missing_think_end", exact, {"target": "CCO"},
         "<|think_start|>t<|answer_start|>CCO<|answer_end|>", ok, (0, 0, 0, 0)),
        ("fmt_missing_answer_end", exact, {"target": "CCO"},
         "<|think_start|>t<|think_end|><|answer_start|>CCO", ok, (0, 0, 0, 0)),
        ("fmt_two_answer_blocks", exact, {"target": "CCO"},
         "<|think_start|>t<|think_end|><|answer_start|>CCO<|answer_end|>"
         "<|answer_start|>CCO<|answer_end|>", ok, (0, 0, 0, 0)),
        ("fmt_out_of_order", exact, {"target": "CCO"},
         "<|answer_start|>CCO<|answer_end|><|think_start|>t<|think_end|>",
         ok, (0, 0, 0, 0)),
        ("fmt_extra_prose", exact, {"target": "CCO"},
         "Sure! <|think_start|>t<|think_end|>"
         "<|answer_start|>CCO<|answer_end|>", ok, (0, 0, 0, 0)),
        # --- exact match family ---
        ("exact_canonical", exact, {"target": "CCO"}, _wrap("CCO"), ok, (1, 1, 1, 0)),
        ("exact_reordered", exact, {"target": "CCO"}, _wrap("OCC"), ok, (1, 1, 1, 0)),
        ("exact_wrong", exact, {"target": "CCO"}, _wrap("CCN"), ok, (0, 1, 0, 0)),
        ("exact_parse_error", exact, {"target": "CCO"}, _wrap("C(C"), ok, (0, 1, 0, 0)),
        ("exact_stereo_mismatch", exact, {"target": "N[C@@H](C)C(=O)O"},
         _wrap("N[C@H](C)C(=O)O"), ok, (0, 1, 0, 0)),
        ("exact_salt_target", exact, {"target": "[NH4+].[Cl-]"},
         _wrap("[Cl-].[NH4+]"), ok, (1, 1, 1, 0)),
        ("iupac_reordered", "iupac_match", {"target": "CC(=O)Oc1ccccc1C(=O)O"},
         _wrap(rand("CC(=O)Oc1ccccc1C(=O)O", 4)), ok, (1, 1, 1, 0)),
        ("iupac_wrong", "iupac_match", {"target": "CCO"}, _wrap("CCCO"), ok, (0, 1, 0, 0)),
        ("caption_match", "molecule_caption", {"target": "CN1C=NC2=C1C(=O)N(C)C(=O)N2C"},
         _wrap(rand("CN1C=NC2=C1C(=O)N(C)C(=O)N2C", 9)), ok, (1, 1, 1, 0)),
        ("caption_unparseable", "molecule_caption", {"target": "CCO"},
         _wrap("ethanol"), ok, (0, 1, 0, 0)),
        # --- molecular formula ---
        ("formula_correct", "molecular_formula", {"formula": "C2H6O"},
         _wrap("CCO"), ok, (1, 1, 1, 0)),
        ("formula_partial_on", "molecular_formula", {"formula": "C2H6O2"},
         _wrap("CC(O)O"), pc, (0.5, 1, 0.5, 0)),
        ("formula_partial_off", "molecular_formula", {"formula": "C2H6O2"},
         _wrap("CC(O)O"), npc, (0, 1, 0, 0)),
        ("formula_mismatch", "molecular_formula", {"formula": "C2H6O"},
         _wrap("CCC"), pc, (0, 1, 0, 0)),
        ("formula_counterion_ok", "molecular_formula", {"formula": "C2H6O"},
         _wrap("CCO.[Na+]"), ok, (1, 1, 1, 0)),
        ("formula_mixture_rejected", "molecular_formula", {"formula": "C2H6O"},
         _wrap("CO.CO"), pc, (0, 1, 0, 0)),
        # --- functional group ---
        ("group_satisfied", "functional_group",
         {"formula": "C2H6O", "groups": ["hydroxyl"]}, _wrap("CCO"), ok, (1, 1, 1, 0)),
        ("group_missing_partial", "functional_group",
         {"formula": "C2H6O", "groups": ["hydroxyl"]}, _wrap("COC"), pc, (0.5, 1, 0.5, 0)),
        ("group_missing_strict", "functional_group",
         {"formula": "C2H6O", "groups": ["hydroxyl"]}, _wrap("COC"), npc, (0, 1, 0, 0)),
        ("group_wrong_formula", "functional_group",
         {"formula": "C2H6O", "groups": ["hydroxyl"]}, _wrap("CCCO"), pc, (0, 1, 0, 0)),
        ("group_three_groups", "functional_group",
         {"formula": "C3H6O3", "groups": ["hydroxyl", "carboxylic_acid", "methyl"]},
         _wrap("CC(O)C(=O)O"), ok, (1, 1, 1, 0)),
        # --- elucidation (inclusive 0.7 threshold) ---
        ("eluc_identical", "elucidation", {"target": "CCO"}, _wrap("CCO"), ok, (1, 1, 1, 0)),
        ("eluc_disjoint", "elucidation", {"target": "c1ccccc1"}, _wrap("C"), ok, (0, 1, 0, 0)),
        ("eluc_exact_07_inclusive", "elucidation", {"target": pair_target},
         _wrap(pair_answer), ok, (1, 1, 1, 0)),
        ("eluc_below_07", "elucidation", {"target": "CCO"}, _wrap("CCCO"), ok, (0, 1, 0, 0)),
        ("eluc_unparseable", "elucidation", {"target": "CCO"}, _wrap("??"), ok, (0, 1, 0, 0)),
        ("eluc_randomized_target", "elucidation", {"target": "CC(=O)Oc1ccccc1C(=O)O"},
         _wrap(rand("CC(=O)Oc1ccccc1C(=O)O", 17)), ok, (1, 1, 1, 0)),
        # --- SMILES completion ---
        ("completion_valid", "smiles_completion", {"prefix": "C1CC"},
         _wrap("C1CCC1"), ok, (1, 1, 1, 0)),
        ("completion_prefix_mismatch", "smiles_completion", {"prefix": "C1CC"},
         _wrap("CCO"), ok, (0, 1, 0, 0)),
        ("completion_parse_error", "smiles_completion", {"prefix": "C1CC"},
         _wrap("C1CC1X"), ok, (0, 1, 0, 0)),
        ("completion_implausible", "smiles_completion", {"prefix": "S1SS"},
         _wrap("S1SSSSSSSS1"), ok, (0, 1, 0, 0)),
        # --- retrosynthesis ---
        ("retro_full_reaction", "retrosynthesis", {"target": "CCOC(C)=O"},
         _wrap("CC(=O)O.CCO>>CCOC(C)=O"), ok, (1, 1, 1, 0)),
        ("retro_reactants_only", "retrosynthesis", {"target": "CCOC(C)=O"},
         _wrap("CC(=O)O.CCO"), ok, (1, 1, 1, 0)),
        ("retro_not_purchasable", "retrosynthesis", {"target": "CCOC(C)=O"},
         _wrap("CC(=O)O.CCCCCO"), ok, (0, 1, 0, 0)),
        ("retro_wrong_product", "retrosynthesis", {"target": "c1ccccc1"},
         _wrap("CC(=O)O.CCN"), ok, (0, 1, 0, 0)),
        ("retro_malformed", "retrosynthesis", {"target": "CCOC(C)=O"},
         _wrap("CC(=O)O>>"), ok, (0, 1, 0, 0)),
        # --- MCQ ---
        ("mcq_verbatim", "mcq", {"options": ["CCO", "CCN", "CCC"], "key": 0},
         _wrap("CCO"), ok, (1, 1, 1, 0)),
        ("mcq_reordered_smiles", "mcq", {"options": ["CCO", "CCN", "CCC"], "key": 0},
         _wrap("OCC"), ok, (1, 1, 1, 0)),
        ("mcq_distractor", "mcq", {"options": ["CCO", "CCN", "CCC"], "key": 0},
         _wrap("CCN"), ok, (0, 1, 0, 0)),
        ("mcq_text_casefold", "mcq", {"options": ["increase", "decrease"], "key": 1},
         _wrap("  Decrease "), ok, (1, 1, 1, 0)),
        ("mcq_non_option", "mcq", {"options": ["increase", "decrease"], "key": 1},
         _wrap("stay the same"), ok, (0, 1, 0, 0)),
        # --- solubility edit (stub oracle: 1.5/O - 0.25/heavy atom) ---
        ("sol_increase_ok", "solubility_edit",
         {"original": "CCCCCO", "delta": 1.0, "constraints": {}},
         _wrap("OCCCCO"), ok, (1, 1, 1, 0)),
        ("sol_wrong_direction", "solubility_edit",
         {"original": "CCCCCO", "delta": -1.0, "constraints": {}},
         _wrap("OCCCCO"), ok, (0, 1, 0, 0)),
        ("sol_scaffold_kept", "solubility_edit",
         {"original": "Cc1ccccc1", "delta": 1.0, "constraints": {"scaffold": True}},
         _wrap("OCc1ccccc1"), ok, (1, 1, 1, 0)),
        ("sol_scaffold_changed", "solubility_edit",
         {"original": "Cc1ccccc1", "delta": 1.0, "constraints": {"scaffold": True}},
         _wrap("OCC1CCCCC1"), ok, (0, 1, 0, 0)),
        ("sol_similarity_fail", "solubility_edit",
         {"original": "Cc1ccccc1", "delta": 1.0, "constraints": {"similarity": 0.9}},
         _wrap("OCc1ccccc1"), ok, (0, 1, 0, 0)),
        ("sol_group_lost", "solubility_edit",
         {"original": "CC(=O)O", "delta": 1.0,
          "constraints": {"preserve_groups": ["carboxylic_acid"]}},
         _wrap("OCC(O)CO"), ok, (0, 1, 0, 0)),
        # --- quality bonus ---
        ("bonus_clean_exact", exact, {"target": "CCO"}, _wrap("OCC"), qb, (2, 1, 1, 1)),
        ("bonus_nitro_withheld", exact, {"target": "[O-][N+](=O)c1ccccc1"},
         _wrap("[O-][N+](=O)c1ccccc1"), qb, (1, 1, 1, 0)),
        ("bonus_formula_clean", "molecular_formula", {"formula": "C2H6O"},
         _wrap("CCO"), qb, (2, 1, 1, 1)),
        ("bonus_long_chain_withheld", "molecular_formula", {"formula": "C8H18"},
         _wrap("CCCCCCCC"), qb, (1, 1, 1, 0)),
        ("bonus_disabled", exact, {"target": "CCO"}, _wrap("CCO"),
         {"quality_bonus": False}, (1, 1, 1, 0)),
        ("bonus_not_on_partial", "molecular_formula", {"formula": "C2H6O2"},
         _wrap("CC(O)O"), {"partial_credit": True, "quality_bonus": True},
         (0.5, 1, 0.5, 0)),
        ("bonus_not_on_wrong", exact, {"target": "CCO"}, _wrap("CCN"), qb, (0, 1, 0, 0)),
        # --- canonical-form invariance ---
        ("invariance_formula_randomized", "molecular_formula",
         {"formula": "C2H6O"}, _wrap(rand("CCO", 3)), ok, (1, 1, 1, 0)),
        ("invariance_mcq_randomized", "mcq",
         {"options": ["CC(=O)Oc1ccccc1C(=O)O", "CCN"], "key": 0},
         _wrap(rand("CC(=O)Oc1ccccc1C(=O)O", 21)), ok, (1, 1, 1, 0)),
        ("invariance_whitespace_answer", exact, {"target": "CCO"},
         _wrap("  CCO  "), ok, (1, 1, 1, 0)),
        ("invariance_retro_randomized", "retrosynthesis", {"target": "CCOC(C)=O"},
         _wrap(f"{rand('CC(=O)O', 5)}.{rand('CCO', 6)}"), ok, (1, 1, 1, 0)),
    ]
    return cases


def test_criterion_7_reward_semantics(reference):
    ctx = _reward_context(reference)
    # guards behind the engineered cases
    assert tanimoto(fingerprint(parse(ELUCIDATION_PAIR[0])),
                    fingerprint(parse(ELUCIDATION_PAIR[1]))) == 0.7
    assert tanimoto(fingerprint(parse("CCO")), fingerprint(parse("CCCO"))) < 0.7
    assert not is_reasonable(parse("CC(O)O"), reference).ok

    cases = _reward_cases()
    assert len(cases) >= 60
    failures = []
    for label, kind, gold, raw, flags, expected in cases:
        task = TaskSpec(kind=kind, gold=gold, **flags)
        result = grade(task, raw, ctx)
        got = (result.reward, result.format, result.accuracy, result.bonus)
        if got != tuple(float(x) if i in (0, 2) else x
                        for i, x in enumerate(expected)):
            failures.append((label, got, expected, result.reason))
    assert not failures, failures
    print(f"\nACCEPTANCE 7: PASS - {len(cases)} hand-constructed reward cases "
          f"all graded as expected")


def test_criterion_8_plausibility_self_consistency(corpus, reference):
    rejected_members = [smi for smi in corpus
                        if not is_reasonable(parse(smi), reference).ok]
    assert rejected_members == []

    exotic_rings = [
        "S1SSSSSSSS1", "N1NNNN1", "P1PPPP1", "O1OOCCO1",
        "S1SSSS1", "S1SSSSS1", "N1NNN1", "S1CCSCCS1", "P1CCPCC1",
        "S1OOOO1", "N1OONN1", "C1OOOO1", "S1NNNN1", "P1OPOP1",
        "C1CCCCCCCCCCCC1", "C1CCCCCCCCCCCCC1", "S1CSCSCS1",
        "N1CNCNCNC1", "O1COCOCO1", "P1CPCPCP1",
    ]
    wrongly_accepted = []
    for smi in exotic_rings:
        mol = parse(smi)   # must parse: rejection must come from the check
        if is_reasonable(mol, reference).ok:
            wrongly_accepted.append(smi)
    assert wrongly_accepted == []
    print(f"\nACCEPTANCE 8: PASS - all {len(corpus)} catalog molecules judged "
          f"reasonable; {len(exotic_rings)}/20 out-of-catalog ring systems rejected")


def _mcq_table_molecules() -> list[tuple[str, float]]:
    """Deterministic synthetic molecules with pseudo-measured values."""
    mids = ["C", "CC", "CCC", "CCCC", "O", "N", "S", "CO", "CN", "OC", "NC",
            "C(C)C", "CC(C)", "C=C", "CCO", "OCC", "CC=C", "COC", "CSC",
            "CNC", "C(F)(F)", "CC(=O)O", "OC(=O)C", "C(Cl)C", "CC(O)C",
            "CC(N)C", "C#C", "CC#CC", "OCO", "NCN", "SCS", "C=CC=C"]
    caps = ["C", "CC", "CCC", "CCCC", "CCCCC", "N", "O", "CN", "CO", "Cl",
            "Br", "I", "CCl", "CCN", "CCO", "C(C)C", "C(C)(C)C", "CBr",
            "c1ccccc1", "Cc1ccccc1", "C1CCCCC1", "C1CCCC1", "OC", "NC"]
    rows = []
    seen = set()
    for i, mid in enumerate(mids):
        for j, a in enumerate(caps):
            for k, b in enumerate(caps):
                smiles = a + mid + b
                try:
                    mol = parse(smiles)
                    canonical = write_canonical(mol)
                except Exception:
                    continue
                if canonical in seen or len(mol.atoms) > 24:
                    continue
                seen.add(canonical)
                value = ((i * 13 + j * 7 + k * 3) % 37) / 2.0
                rows.append((smiles, value))
    return rows


def test_criterion_9_mcq_leakage():
    rows = _mcq_table_molecules()
    assert len(rows) >= 2200, f"only {len(rows)} table molecules"
    half = len(rows) // 2
    pools = {
        "logS": finalize_pool(
            PropertyRecord(parse(s), "logS", v) for s, v in rows[:half]),
        "pKa": finalize_pool(
            PropertyRecord(parse(s), "pKa", v) for s, v in rows[half:]),
    }
    mcqs = []
    for name in sorted(pools):
        pool = pools[name]
        used: set[str] = set()
        count = 0
        for i, target in enumerate(pool):
            if count >= 250:
                break
            if target.smiles in used:
                continue
            candidates = [r for r in pool if r.smiles not in used]
            kind = "identify" if i % 2 == 0 else "outlier"
            try:
                mcq = generate_mcq(target, candidates, n_options=4,
                                   kind=kind, seed=1000 + i)
            except Exception:
                continue
            mcqs.append(mcq)
            used |= mcq.molecules()
            count += 1
    assert len(mcqs) == 500, f"generated {len(mcqs)} questions"

    labels = assign_splits(mcqs, 0.2, seed=42)
    graph = build_cooccurrence_graph(mcqs)
    train_molecules: set[str] = set()
    test_molecules: set[str] = set()
    for mcq, label in zip(mcqs, labels):
        (test_molecules if label == "test" else train_molecules).update(
            mcq.molecules())
    assert train_molecules & test_molecules == set()
    cross_edges = sum(
        1 for node in test_molecules for nbr in graph[node]
        if nbr in train_molecules)
    assert cross_edges == 0
    print(f"\nACCEPTANCE 9: PASS - 500 questions, train/test molecule "
          f"intersection empty, cross-split co-occurrence edges = 0 "
          f"({len(test_molecules)} test / {len(train_molecules)} train molecules)")


def test_criterion_10_throughput(corpus, tmp_path):
    targets = [s for s in corpus if "." not in s][:200]
    records = []
    for i in range(10**4):
        target = targets[i % len(targets)]
        answer = target if i % 3 else write_random(parse(target), i)
        records.append(json.dumps({
            "id": f"r{i}", "task_kind": "reaction_prediction",
            "problem": "product?", "gold": {"target": target},
            "response": format_response("t", answer)}))
    inp = tmp_path / "batch.jsonl"
    inp.write_text("\n".join(records) + "\n")

    out1 = tmp_path / "out1.jsonl"
    start = time.time()
    assert cli_main(["grade", "--input", str(inp), "--output", str(out1),
                     "--parallelism", "1"]) == 0
    elapsed = time.time() - start
    assert elapsed < 10.0, f"single-threaded batch took {elapsed:.1f}s"

    out8 = tmp_path / "out8.jsonl"
    assert cli_main(["grade", "--input", str(inp), "--output", str(out8),
                     "--parallelism", "8"]) == 0
    assert out1.read_bytes() == out8.read_bytes()

    rewards = [json.loads(line)["reward"] for line in out1.read_text().splitlines()]
    assert all(r == 1.0 for r in rewards)
    print(f"\nACCEPTANCE 10: PASS - 10^4 exact-match records in {elapsed:.1f}s "
          f"single-threaded; parallelism 1 and 8 byte-identical")
