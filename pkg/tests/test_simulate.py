from __future__ import annotations

import json
import math

import pytest

from molreward.grpo import max_eps_cur
from molreward.simulate import (
    SimulationConfig,
    SyntheticProblem,
    ToyPolicy,
    measure_trivial_fractions,
    metrics_to_csv,
    simulate,
)


def mixed_problems(n_imp=50, n_easy=25, n_med=25, p_med=0.35):
    return ([SyntheticProblem(f"imp{i}", 0.0) for i in range(n_imp)] +
            [SyntheticProblem(f"easy{i}", 1.0) for i in range(n_easy)] +
            [SyntheticProblem(f"med{i}", p_med) for i in range(n_med)])


class TestToyPolicy:
    def test_probabilities_normalize(self):
        policy = ToyPolicy.from_problems(mixed_problems(), n_answers=3)
        probs = policy.probs("med0")
        assert sum(probs) == pytest.approx(1.0)
        assert all(p > 0 for p in probs)

    def test_initial_success_probability(self):
        policy = ToyPolicy.from_problems(
            [SyntheticProblem("p", 0.35)], n_answers=2)
        assert policy.probs("p")[0] == pytest.approx(0.35, abs=1e-6)

    def test_clone_is_independent(self):
        policy = ToyPolicy.from_problems([SyntheticProblem("p", 0.5)])
        other = policy.clone()
        other.logits["p"][0] += 1.0
        assert policy.logits["p"][0] != other.logits["p"][0]


class TestSimulate:
    def test_deterministic_under_seed(self):
        cfg = SimulationConfig(problems=mixed_problems(), steps=30,
                               group_size=4, batch_size=16, eps_cur=0.5,
                               seed=3, learning_rate=0.5)
        a = simulate(cfg)
        b = simulate(cfg)
        assert a == b

    def test_all_solved_entirely_trivial(self):
        cfg = SimulationConfig(
            problems=[SyntheticProblem(f"p{i}", 1.0) for i in range(20)],
            steps=20, group_size=4, batch_size=8, eps_cur=0.5, seed=0,
            learning_rate=1.0)
        for row in simulate(cfg):
            assert row.nontrivial_fraction == 0.0
            assert row.buffer_size == 0

    def test_frozen_policy_stationary(self):
        cfg = SimulationConfig(problems=mixed_problems(), steps=60,
                               group_size=4, batch_size=32, eps_cur=0.0,
                               seed=1, learning_rate=0.0)
        rows = simulate(cfg)
        early = sum(r.mean_reward for r in rows[:20]) / 20
        late = sum(r.mean_reward for r in rows[-20:]) / 20
        assert late == pytest.approx(early, abs=0.1)

    def test_learning_raises_reward(self):
        cfg = SimulationConfig(
            problems=[SyntheticProblem(f"m{i}", 0.4) for i in range(30)],
            steps=150, group_size=4, batch_size=16, eps_cur=0.0, seed=2,
            learning_rate=2.0)
        rows = simulate(cfg)
        assert rows[-1].mean_reward > rows[0].mean_reward + 0.2

    def test_curriculum_raises_nontrivial_fraction(self):
        kwargs = dict(problems=mixed_problems(), steps=120, group_size=4,
                      batch_size=32, seed=0, learning_rate=0.5)
        base = simulate(SimulationConfig(eps_cur=0.0, **kwargs))
        curr = simulate(SimulationConfig(eps_cur=0.5, **kwargs))
        window = range(40, 120)
        mean = lambda rows: sum(rows[s].nontrivial_fraction for s in window) / len(window)
        assert mean(curr) > mean(base)

    def test_group_size_validation(self):
        with pytest.raises(ValueError):
            simulate(SimulationConfig(problems=mixed_problems(), group_size=1))

    def test_out_of_dataset_seeds_only_reachable_via_buffer(self):
        problems = ([SyntheticProblem(f"d{i}", 0.0) for i in range(20)] +
                    [SyntheticProblem("special", 0.5, in_dataset=False)])
        cfg = SimulationConfig(problems=problems, steps=10, group_size=4,
                               batch_size=8, eps_cur=0.0, seed=0,
                               learning_rate=0.0, seed_buffer=["special"])
        rows = simulate(cfg)
        # never drawn at eps 0, so never removed
        assert all(r.buffer_size == 1 for r in rows)

    def test_metrics_csv_shape(self):
        cfg = SimulationConfig(problems=mixed_problems(), steps=5,
                               group_size=4, batch_size=8, eps_cur=0.25,
                               seed=0)
        text = metrics_to_csv(simulate(cfg))
        lines = text.strip().splitlines()
        assert lines[0] == "step,nontrivial_fraction,mean_reward,buffer_size"
        assert len(lines) == 6


class TestMeasuredFractions:
    def test_probe_matches_analytic(self):
        # uniform p=0.5, G=4: trivial probability = 2 * 0.5^4 = 0.125
        problems = [SyntheticProblem(f"m{i}", 0.5) for i in range(200)]
        cfg = SimulationConfig(problems=problems, steps=50, group_size=4,
                               batch_size=64, eps_cur=0.25, seed=0)
        ftd, ftb = measure_trivial_fractions(cfg, probe_steps=80)
        assert ftd == pytest.approx(0.125, abs=0.03)
        assert ftb == pytest.approx(0.125, abs=0.05)
        assert 0 < max_eps_cur(ftd, ftb) < 1


class TestConfigFile:
    def test_from_json(self, tmp_path):
        ids = tmp_path / "seeds.txt"
        ids.write_text("med_0\nmed_1\n")
        cfg_path = tmp_path / "sim.json"
        cfg_path.write_text(json.dumps({
            "problems": [
                {"count": 10, "p_success": 0.0, "prefix": "imp"},
                {"count": 5, "p_success": 0.5, "prefix": "med"},
                {"count": 3, "p_success": 0.4, "prefix": "x",
                 "in_dataset": False},
            ],
            "steps": 7, "group_size": 4, "batch_size": 8,
            "eps_cur": 0.25, "seed": 11, "learning_rate": 0.1,
            "seed_buffer_file": str(ids),
        }))
        cfg = SimulationConfig.from_json(cfg_path)
        assert len(cfg.problems) == 18
        assert cfg.seed_buffer == ["med_0", "med_1"]
        assert sum(1 for p in cfg.problems if not p.in_dataset) == 3
        rows = simulate(cfg)
        assert len(rows) == 7
