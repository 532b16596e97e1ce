from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from molreward.grpo import (
    CurriculumBuffer,
    Group,
    clip_term,
    group_advantages,
    group_objective,
    kl_estimate,
    max_eps_cur,
    sample_batch,
)

# ---------------------------------------------------------------------------
# independent brute-force oracles (kept deliberately separate from the
# implementations they check)


def oracle_advantages(rewards):
    n = len(rewards)
    mean = math.fsum(rewards) / n
    var = math.fsum((r - mean) ** 2 for r in rewards) / n
    std = math.sqrt(var)
    if std < 1e-12:
        return [0.0] * n, True
    return [(r - mean) / std for r in rewards], False


def oracle_objective(advantages, pt, po, pr, eps, beta):
    total = 0.0
    for i, advantage in enumerate(advantages):
        per_token = []
        for t in range(len(pt[i])):
            ratio = pt[i][t] / po[i][t]
            clipped = ratio
            if clipped < 1 - eps:
                clipped = 1 - eps
            if clipped > 1 + eps:
                clipped = 1 + eps
            surrogate = min(ratio * advantage, clipped * advantage)
            ratio_ref = pr[i][t] / pt[i][t]
            kl = ratio_ref - math.log(ratio_ref) - 1.0
            per_token.append(surrogate - beta * kl)
        total += sum(per_token) / len(per_token)
    return total


class TestGroupAdvantages:
    def test_spec_example(self):
        g = group_advantages([1, 0, 0, 0])
        # mean 0.25, population std sqrt(0.1875)
        assert g.advantages[0] == pytest.approx(1.7320508, abs=1e-7)
        for a in g.advantages[1:]:
            assert a == pytest.approx(-0.5773503, abs=1e-7)

    def test_all_equal_trivial(self):
        g = group_advantages([1, 1, 1, 1])
        assert g.trivial and g.advantages == (0.0,) * 4

    def test_two_zeros_trivial(self):
        assert group_advantages([0, 0]).trivial

    def test_too_small(self):
        with pytest.raises(ValueError):
            group_advantages([1.0])

    def test_normalization_invariants(self):
        rng = random.Random(0)
        for _ in range(500):
            size = rng.randint(2, 16)
            rewards = [rng.choice([0.0, 0.5, 1.0, 2.0]) for _ in range(size)]
            g = group_advantages(rewards)
            want, trivial = oracle_advantages(rewards)
            assert g.trivial == trivial
            for got, expected in zip(g.advantages, want):
                assert got == pytest.approx(expected, abs=1e-12)
            if not g.trivial:
                assert abs(sum(g.advantages) / size) < 1e-9
                popstd = math.sqrt(sum(a * a for a in g.advantages) / size)
                assert abs(popstd - 1.0) < 1e-9

    def test_shift_and_scale_invariance(self):
        rng = random.Random(1)
        for _ in range(100):
            rewards = [rng.random() for _ in range(6)]
            base = group_advantages(rewards).advantages
            shifted = group_advantages([r + 3.7 for r in rewards]).advantages
            scaled = group_advantages([r * 2.5 for r in rewards]).advantages
            for b, s, c in zip(base, shifted, scaled):
                assert s == pytest.approx(b, abs=1e-9)
                assert c == pytest.approx(b, abs=1e-9)


class TestClipTerm:
    def test_identity_at_ratio_one(self):
        for advantage in (-2.0, 0.0, 0.7, 31.0):
            assert clip_term(1.0, advantage, 0.2) == advantage

    def test_spec_values(self):
        assert clip_term(1.5, 1.0, 0.2) == pytest.approx(1.2)
        assert clip_term(0.5, -1.0, 0.2) == pytest.approx(-0.8)

    def test_negative_advantage_unclipped_below(self):
        # min picks ratio*A when that is smaller
        assert clip_term(1.5, -1.0, 0.2) == pytest.approx(-1.5)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            clip_term(0.0, 1.0, 0.2)
        with pytest.raises(ValueError):
            clip_term(1.0, 1.0, 0.0)


class TestKlEstimate:
    def test_zero_at_equal(self):
        assert kl_estimate(0.3, 0.3) == 0.0

    def test_spec_values(self):
        assert kl_estimate(0.25, 0.5) == pytest.approx(2 - math.log(2) - 1)
        assert kl_estimate(0.5, 0.25) == pytest.approx(0.5 - math.log(0.5) - 1)

    def test_zero_probability_rejected(self):
        with pytest.raises(ValueError):
            kl_estimate(0.0, 0.5)

    @given(st.floats(min_value=1e-6, max_value=1.0),
           st.floats(min_value=1e-6, max_value=1.0))
    @settings(max_examples=500, deadline=None)
    def test_nonnegative_property(self, pt, pr):
        value = kl_estimate(pt, pr)
        assert value >= 0.0
        if abs(pr / pt - 1.0) > 1e-9:
            assert value > 0.0


class TestGroupObjective:
    def test_all_policies_equal_trivial_group(self):
        g = group_advantages([1, 1])
        probs = [[0.5], [0.5]]
        assert group_objective(g, probs, probs, probs, 0.2, 0.005) == 0.0

    def test_single_token_equals_sum_of_advantages(self):
        g = group_advantages([1, 0, 0, 0])
        probs = [[0.4], [0.2], [0.3], [0.1]]
        value = group_objective(g, probs, probs, probs, 0.2, 0.0)
        assert value == pytest.approx(sum(g.advantages), abs=1e-10)

    def test_matches_bruteforce_on_random_instances(self):
        rng = random.Random(7)
        for _ in range(300):
            size = rng.randint(2, 4)
            rewards = [rng.choice([0.0, 0.5, 1.0]) for _ in range(size)]
            g = group_advantages(rewards)
            lengths = [rng.randint(1, 6) for _ in range(size)]
            pt = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
            po = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
            pr = [[rng.uniform(0.05, 1.0) for _ in range(n)] for n in lengths]
            eps = rng.choice([0.1, 0.2, 0.3])
            beta = rng.choice([0.0, 0.005, 0.1])
            got = group_objective(g, pt, po, pr, eps, beta)
            want = oracle_objective(g.advantages, pt, po, pr, eps, beta)
            assert got == pytest.approx(want, abs=1e-10)

    def test_clip_boundary(self):
        g = Group(problem_id="", rewards=(1.0, 0.0), advantages=(1.0, -1.0),
                  trivial=False)
        pt = [[0.6], [0.2]]
        po = [[0.5], [0.5]]   # ratios 1.2 (at boundary), 0.4
        value = group_objective(g, pt, po, pt, 0.2, 0.0)
        want = min(1.2 * 1.0, 1.2 * 1.0) + min(0.4 * -1.0, 0.8 * -1.0)
        assert value == pytest.approx(want, abs=1e-12)

    def test_misaligned_lengths_rejected(self):
        g = group_advantages([1, 0])
        with pytest.raises(ValueError):
            group_objective(g, [[0.5], [0.5]], [[0.5]], [[0.5], [0.5]], 0.2, 0.0)
        with pytest.raises(ValueError):
            group_objective(g, [[0.5], [0.5, 0.5]], [[0.5], [0.5]],
                            [[0.5], [0.5]], 0.2, 0.0)


class TestMaxEpsCur:
    def test_spec_values(self):
        assert max_eps_cur(0.9, 0.5) == pytest.approx(0.1 / 0.6)
        assert max_eps_cur(0.3, 0.0) == 1.0
        assert max_eps_cur(0.0, 1.0) == 0.5

    def test_undefined_case(self):
        with pytest.raises(ValueError):
            max_eps_cur(1.0, 0.0)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            max_eps_cur(-0.1, 0.5)
        with pytest.raises(ValueError):
            max_eps_cur(0.5, 1.5)

    @given(st.floats(0.0, 0.999), st.floats(0.001, 1.0))
    @settings(max_examples=300, deadline=None)
    def test_bounded(self, ftd, ftb):
        assert 0.0 <= max_eps_cur(ftd, ftb) <= 1.0


def _nontrivial():
    return group_advantages([1, 0, 0, 0], problem_id="x")


def _trivial():
    return group_advantages([0, 0], problem_id="x")


class TestCurriculumBuffer:
    def test_offer_inserts_nontrivial(self):
        buf = CurriculumBuffer()
        assert buf.offer("p1", _nontrivial())
        assert "p1" in buf

    def test_offer_ignores_trivial(self):
        buf = CurriculumBuffer()
        assert not buf.offer("p1", _trivial())
        assert len(buf) == 0

    def test_drop_if_trivial(self):
        buf = CurriculumBuffer()
        buf.offer("p1", _nontrivial())
        assert buf.drop_if_trivial("p1", _trivial())
        assert "p1" not in buf

    def test_drop_nontrivial_keeps(self):
        buf = CurriculumBuffer()
        buf.offer("p1", _nontrivial())
        assert not buf.drop_if_trivial("p1", _nontrivial())
        assert "p1" in buf

    def test_drop_missing_noop(self):
        buf = CurriculumBuffer()
        assert not buf.drop_if_trivial("ghost", _trivial())

    def test_no_duplicates(self):
        buf = CurriculumBuffer()
        buf.offer("p1", _nontrivial())
        buf.offer("p1", _nontrivial())
        assert len(buf) == 1

    def test_capacity_evicts_oldest(self):
        buf = CurriculumBuffer(capacity=2)
        for pid in ("a", "b", "c"):
            buf.offer(pid, _nontrivial())
        assert buf.ids() == ["b", "c"]


class TestSampleBatch:
    DATASET = [f"d{i}" for i in range(100)]

    def test_eps_zero_all_dataset(self):
        buf = CurriculumBuffer()
        buf.offer("b1", _nontrivial())
        batch = sample_batch(self.DATASET, buf, 10, 0.0, 0)
        assert len(batch) == 10 and "b1" not in batch

    def test_exact_fraction(self):
        buf = CurriculumBuffer()
        for i in range(10):
            buf.offer(f"b{i}", _nontrivial())
        batch = sample_batch(self.DATASET, buf, 8, 0.5, 1)
        assert sum(1 for pid in batch if pid.startswith("b")) == 4

    def test_empty_buffer_degrades(self):
        batch = sample_batch(self.DATASET, CurriculumBuffer(), 8, 0.9, 2)
        assert len(batch) == 8 and all(p.startswith("d") for p in batch)

    def test_small_buffer_takes_fewer(self):
        buf = CurriculumBuffer()
        buf.offer("b1", _nontrivial())
        batch = sample_batch(self.DATASET, buf, 8, 0.5, 3)
        assert batch.count("b1") == 1 and len(batch) == 8

    def test_deterministic_under_seed(self):
        buf = CurriculumBuffer()
        for i in range(5):
            buf.offer(f"b{i}", _nontrivial())
        assert sample_batch(self.DATASET, buf, 8, 0.5, 7) == \
            sample_batch(self.DATASET, buf, 8, 0.5, 7)

    def test_no_duplicates_within_batch(self):
        buf = CurriculumBuffer()
        for i in range(20):
            buf.offer(f"d{i}", _nontrivial())   # buffer ids overlap dataset
        batch = sample_batch(self.DATASET, buf, 50, 0.3, 5)
        assert len(batch) == len(set(batch))
