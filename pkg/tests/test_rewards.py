from __future__ import annotations

import pytest

from molreward.bloom import BloomFilter
from molreward.plausibility import build_reference
from molreward.rewards import (
    ConfigurationError,
    GradingContext,
    OracleUnavailableError,
    StubSolubilityOracle,
    TableReactionOracle,
    TaskSpec,
    format_response,
    grade,
    parse_response,
    verify_exact,
)
from molreward.smiles import parse, write_canonical, write_random

CATALOG = [
    "c1ccccc1", "Cc1ccccc1", "CCO", "CC(=O)O", "c1ccncc1", "CCN",
    "CCOC(C)=O", "C1CCC1", "C1CCCC1", "C1CCCCC1", "OCC(O)CO", "CCCO",
    "COc1ccccc1", "OCc1ccccc1", "Cc1ccccc1C", "CCOCC", "CCC(=O)O",
    "OCCO", "OCCCO", "OCCCCO",
]


@pytest.fixture(scope="module")
def ctx():
    ref, _ = build_reference(CATALOG)
    purchasable = BloomFilter.create(100, 0.001)
    for smi in ["CC(=O)O", "CCO", "CCN", "c1ccccc1"]:
        purchasable.insert(write_canonical(parse(smi)))
    oracle = TableReactionOracle.from_entries([
        (["CC(=O)O", "CCO"], "CCOC(C)=O"),
        (["CC(=O)O", "CCN"], "CCNC(C)=O"),
    ])
    return GradingContext(
        plausibility=ref, purchasable=purchasable, reaction_oracle=oracle,
        property_oracle=StubSolubilityOracle())


class TestParseResponse:
    def test_well_formed(self):
        r = parse_response("<|think_start|>t<|think_end|><|answer_start|>CCO<|answer_end|>")
        assert r.well_formed and r.thought == "t" and r.answer == "CCO"

    def test_whitespace_between_blocks_ok(self):
        r = parse_response(format_response("think", "CCO"))
        assert r.well_formed and r.answer == "CCO"

    @pytest.mark.parametrize("raw,defect", [
        ("<|think_start|>t<|think_end|><|answer_start|>x", "missing"),
        ("<|answer_start|>x<|answer_end|>", "missing"),
        ("<|think_start|>t<|think_end|><|answer_start|>x<|answer_end|>"
         "<|answer_start|>y<|answer_end|>", "repeated"),
        ("<|answer_start|>x<|answer_end|><|think_start|>t<|think_end|>", "order"),
        ("junk<|think_start|>t<|think_end|><|answer_start|>x<|answer_end|>", "outside"),
        ("<|think_start|>t<|think_end|>stray<|answer_start|>x<|answer_end|>", "outside"),
        ("<|think_start|>t<|think_end|><|answer_start|>x<|answer_end|>trailing", "outside"),
    ])
    def test_defects(self, raw, defect):
        r = parse_response(raw)
        assert not r.well_formed
        assert defect in r.defect


class TestVerifyExact:
    def test_isomorphic_match(self):
        assert verify_exact("OCC", "CCO")[0] == 1.0

    def test_mismatch(self):
        assert verify_exact("CCO", "CCN")[0] == 0.0

    def test_parse_error_reason(self):
        accuracy, reason = verify_exact("C(C", "CCO")
        assert accuracy == 0.0 and reason.startswith("parse_error")

    def test_stereo_sensitive_by_default(self):
        assert verify_exact("N[C@@H](C)C(=O)O", "N[C@H](C)C(=O)O")[0] == 0.0

    def test_stereo_insensitive_flag(self):
        accuracy, _ = verify_exact("N[C@@H](C)C(=O)O", "N[C@H](C)C(=O)O",
                                   stereo_sensitive=False)
        assert accuracy == 1.0

    def test_unparseable_gold_is_config_fault(self):
        with pytest.raises(ConfigurationError):
            verify_exact("CCO", "C(C")


class TestGradeDispatch:
    def run(self, ctx, kind, gold, answer, **flags):
        task = TaskSpec(kind=kind, gold=gold, **flags)
        return grade(task, format_response("reasoning", answer), ctx)

    def test_format_zero_overrides_correct_answer(self, ctx):
        task = TaskSpec(kind="reaction_prediction", gold={"target": "CCO"})
        result = grade(task, "CCO", ctx)
        assert result.reward == 0.0 and result.format == 0
        assert result.reason.startswith("format_error")

    def test_canonical_form_invariance(self, ctx):
        mol = parse("CCOC(C)=O")
        for seed in range(10):
            answer = write_random(mol, seed)
            r = self.run(ctx, "molecule_caption", {"target": "CCOC(C)=O"}, answer)
            assert r.accuracy == 1.0, answer

    def test_counterion_pair_allowed(self, ctx):
        r = self.run(ctx, "molecular_formula", {"formula": "C2H6O"}, "CCO.[Na+]")
        assert r.accuracy == 1.0

    def test_mixture_rejected(self, ctx):
        r = self.run(ctx, "molecular_formula", {"formula": "C2H6O"}, "CO.CO")
        assert r.accuracy == 0.0 and "mixture" in r.reason

    def test_partial_credit_only_with_flag(self, ctx):
        gold = {"formula": "C2H6O"}
        with_flag = self.run(ctx, "molecular_formula", gold, "COC", partial_credit=True)
        without = self.run(ctx, "molecular_formula", gold, "COC", partial_credit=False)
        assert with_flag.accuracy == 0.5
        assert without.accuracy == 0.0

    def test_functional_group_unknown_name_raises(self, ctx):
        with pytest.raises(ConfigurationError):
            self.run(ctx, "functional_group",
                     {"formula": "C2H6O", "groups": ["nonexistent"]}, "CCO")

    def test_retrosynthesis_full_reaction_answer(self, ctx):
        r = self.run(ctx, "retrosynthesis", {"target": "CCOC(C)=O"},
                     "CC(=O)O.CCO>>CCOC(C)=O")
        assert r.accuracy == 1.0

    def test_retrosynthesis_bad_product_ignored_oracle_decides(self, ctx):
        r = self.run(ctx, "retrosynthesis", {"target": "CCOC(C)=O"},
                     "CC(=O)O.CCO>>CCC")
        assert r.accuracy == 1.0

    def test_retrosynthesis_not_purchasable(self, ctx):
        r = self.run(ctx, "retrosynthesis", {"target": "CCOC(C)=O"},
                     "CC(=O)O.CCCCCO")
        assert r.accuracy == 0.0 and "not_purchasable" in r.reason

    def test_retrosynthesis_product_mismatch(self, ctx):
        r = self.run(ctx, "retrosynthesis", {"target": "c1ccccc1"},
                     "CC(=O)O.CCN")
        assert r.accuracy == 0.0 and r.reason == "product_mismatch"

    def test_missing_oracle_is_config_fault(self):
        bare = GradingContext()
        task = TaskSpec(kind="retrosynthesis", gold={"target": "CCO"})
        with pytest.raises(ConfigurationError):
            grade(task, format_response("t", "CC(=O)O.CCO"), bare)

    def test_solubility_stub_path(self, ctx):
        # stub logS: +1.5 per oxygen, -0.25 per heavy atom
        gold = {"original": "CCCO", "delta": 1.0, "constraints": {}}
        r = self.run(ctx, "solubility_edit", gold, "OCCCO")
        assert r.accuracy == 1.0   # +1.5 - 0.25 = +1.25 >= 1.0

    def test_solubility_wrong_direction(self, ctx):
        gold = {"original": "CCCO", "delta": -1.0, "constraints": {}}
        r = self.run(ctx, "solubility_edit", gold, "OCCCO")
        assert r.accuracy == 0.0 and "property_target_missed" in r.reason

    def test_solubility_scaffold_constraint(self, ctx):
        gold = {"original": "Cc1ccccc1", "delta": 1.0,
                "constraints": {"scaffold": True}}
        r = self.run(ctx, "solubility_edit", gold, "OCc1ccccc1")
        assert r.accuracy == 1.0
        r2 = self.run(ctx, "solubility_edit",
                      {"original": "Cc1ccccc1", "delta": 1.0,
                       "constraints": {"scaffold": True}}, "OCC1CCCCC1")
        assert r2.accuracy == 0.0 and r2.reason == "scaffold_changed"

    def test_solubility_group_preservation(self, ctx):
        gold = {"original": "CC(=O)O", "delta": 1.0,
                "constraints": {"preserve_groups": ["carboxylic_acid"]}}
        r = self.run(ctx, "solubility_edit", gold, "OCC(O)CO")
        assert r.accuracy == 0.0 and "group_changed" in r.reason

    def test_quality_bonus_composition(self, ctx):
        gold = {"formula": "C2H6O"}
        r = self.run(ctx, "molecular_formula", gold, "CCO", quality_bonus=True)
        assert (r.accuracy, r.bonus, r.reward) == (1.0, 1, 2.0)

    def test_bonus_requires_accuracy(self, ctx):
        r = self.run(ctx, "molecular_formula", {"formula": "C2H6O"}, "CCC",
                     quality_bonus=True)
        assert r.bonus == 0 and r.reward == 0.0

    def test_determinism(self, ctx):
        task = TaskSpec(kind="elucidation", gold={"target": "CCO"})
        raw = format_response("t", "CCCO")
        a = grade(task, raw, ctx)
        b = grade(task, raw, ctx)
        assert a == b

    def test_reward_invariant(self, ctx):
        cases = [
            ("mcq", {"options": ["CCO", "CCN"], "key": 0}, "CCO"),
            ("mcq", {"options": ["CCO", "CCN"], "key": 0}, "CCN"),
            ("molecular_formula", {"formula": "C2H6O"}, "COC"),
        ]
        for kind, gold, answer in cases:
            r = self.run(ctx, kind, gold, answer, partial_credit=True)
            assert r.reward == r.format * r.accuracy + r.bonus


class TestTaskSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError):
            TaskSpec(kind="make_gold", gold={})

    def test_mcq_needs_two_options(self):
        with pytest.raises(ConfigurationError):
            TaskSpec(kind="mcq", gold={"options": ["only"], "key": 0})

    def test_mcq_key_in_range(self):
        with pytest.raises(ConfigurationError):
            TaskSpec(kind="mcq", gold={"options": ["a", "b"], "key": 5})

    def test_functional_group_arity(self):
        with pytest.raises(ConfigurationError):
            TaskSpec(kind="functional_group",
                     gold={"formula": "CH4", "groups": []})

    def test_record_parsing(self):
        task = TaskSpec.from_record({
            "id": "r1", "task_kind": "mcq",
            "gold": {"options": ["a", "b"], "key": 1},
            "flags": {"partial_credit": True},
        })
        assert task.kind == "mcq" and task.partial_credit is True


class TestOracles:
    def test_table_oracle_order_insensitive(self):
        oracle = TableReactionOracle.from_entries([(["CCO", "CC(=O)O"], "CCOC(C)=O")])
        want = write_canonical(parse("CCOC(C)=O"))
        assert oracle.predict_product(sorted(["CCO", "CC(=O)O"])) == want

    def test_http_oracle_unreachable_raises(self):
        from molreward.rewards import HttpReactionOracle
        oracle = HttpReactionOracle(url="http://127.0.0.1:1/predict", timeout=0.2)
        with pytest.raises(OracleUnavailableError):
            oracle.predict_product(["CCO"])

    def test_stub_solubility_values(self):
        stub = StubSolubilityOracle()
        assert stub.predict("CCO") == pytest.approx(1.5 - 0.75)
        assert stub.predict("CCCO") == pytest.approx(1.5 - 1.0)
