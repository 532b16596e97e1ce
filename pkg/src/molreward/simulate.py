"""Desk-scale GRPO training loop over synthetic problems.

A categorical toy policy stands in for the LLM: each problem has a finite
answer set with exactly one rewarded answer, and the policy holds per-problem
logits. Every step samples a batch (a configurable fraction from the
curriculum buffer), draws G answers per problem, scores them, forms group
advantages, updates the buffer, and takes one analytic gradient-ascent step
on the per-group objective. Everything is deterministic under the run seed.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .grpo import CurriculumBuffer, group_advantages, sample_batch

_P_FLOOR = 1e-9


@dataclass(frozen=True)
class SyntheticProblem:
    problem_id: str
    p_success: float
    in_dataset: bool = True   # False: reachable only via curriculum seeding

    def __post_init__(self):
        if not 0.0 <= self.p_success <= 1.0:
            raise ValueError("p_success must lie in [0, 1]")


@dataclass
class ToyPolicy:
    """Per-problem categorical logits over a shared finite answer set.

    Answer 0 is the rewarded answer for every problem.
    """

    logits: dict[str, list[float]]
    temperature: float = 1.0

    @staticmethod
    def from_problems(problems: Sequence[SyntheticProblem], n_answers: int = 2,
                      temperature: float = 1.0) -> "ToyPolicy":
        if n_answers < 2:
            raise ValueError("need at least 2 answers")
        logits = {}
        for prob in problems:
            p = min(max(prob.p_success, _P_FLOOR), 1.0 - _P_FLOOR)
            rest = math.log((1.0 - p) / (n_answers - 1))
            logits[prob.problem_id] = [math.log(p)] + [rest] * (n_answers - 1)
        return ToyPolicy(logits=logits, temperature=temperature)

    def probs(self, problem_id: str) -> list[float]:
        z = self.logits[problem_id]
        t = self.temperature
        peak = max(z)
        weights = [math.exp((v - peak) / t) for v in z]
        total = sum(weights)
        return [w / total for w in weights]

    def clone(self) -> "ToyPolicy":
        return ToyPolicy(logits={k: list(v) for k, v in self.logits.items()},
                         temperature=self.temperature)


@dataclass(frozen=True)
class StepMetrics:
    step: int
    nontrivial_fraction: float
    mean_reward: float
    buffer_size: int
    f_trivial_dataset: float   # nan when the step drew nothing from that source
    f_trivial_buffer: float


@dataclass
class SimulationConfig:
    problems: list[SyntheticProblem]
    steps: int = 200
    group_size: int = 4
    batch_size: int = 64
    eps_cur: float = 0.0
    seed: int = 0
    learning_rate: float = 0.0
    beta: float = 0.005
    temperature: float = 1.0
    n_answers: int = 2
    eps_clip: float = 0.2
    buffer_capacity: int | None = None
    seed_buffer: list[str] = field(default_factory=list)
    ref_reset_every: int | None = None

    @staticmethod
    def from_json(path: str | Path) -> "SimulationConfig":
        raw = json.loads(Path(path).read_text())
        problems = []
        for i, entry in enumerate(raw.pop("problems")):
            count = int(entry["count"])
            p = float(entry["p_success"])
            prefix = entry.get("prefix", f"m{i}")
            in_dataset = bool(entry.get("in_dataset", True))
            problems.extend(
                SyntheticProblem(f"{prefix}_{j}", p, in_dataset)
                for j in range(count))
        seed_file = raw.pop("seed_buffer_file", None)
        cfg = SimulationConfig(problems=problems, **raw)
        if seed_file:
            ids = [ln.strip() for ln in Path(seed_file).read_text().splitlines()]
            cfg.seed_buffer = [i for i in ids if i]
        return cfg


def simulate(config: SimulationConfig,
             policy: ToyPolicy | None = None) -> list[StepMetrics]:
    """Run the GRPO loop; returns one metrics row per step."""
    if config.group_size < 2:
        raise ValueError("group size must be at least 2")
    problems = config.problems
    if not problems:
        raise ValueError("no problems configured")
    dataset_ids = [p.problem_id for p in problems if p.in_dataset]
    if not dataset_ids:
        raise ValueError("no problems marked in_dataset")

    policy = policy or ToyPolicy.from_problems(
        problems, n_answers=config.n_answers, temperature=config.temperature)
    reference = policy.clone()
    buffer = CurriculumBuffer(capacity=config.buffer_capacity,
                              eps_cur=config.eps_cur)
    known = {p.problem_id for p in problems}
    buffer.seed(pid for pid in config.seed_buffer if pid in known)

    master = random.Random(config.seed)
    t = config.temperature
    metrics: list[StepMetrics] = []

    for step in range(config.steps):
        if config.ref_reset_every and step > 0 and step % config.ref_reset_every == 0:
            reference = policy.clone()

        batch_seed = master.randrange(2**62)
        draw_rng = random.Random(master.randrange(2**62))
        batch = sample_batch(dataset_ids, buffer, config.batch_size,
                             config.eps_cur, batch_seed)
        from_buffer = min(int(math.floor(config.eps_cur * config.batch_size + 0.5)),
                          len(buffer))

        grads: dict[str, list[float]] = {}
        nontrivial = 0
        reward_sum = 0.0
        reward_n = 0
        trivial_by_source = {True: [0, 0], False: [0, 0]}  # source->[trivial, total]

        for pos, pid in enumerate(batch):
            pi = policy.probs(pid)
            pi_ref = reference.probs(pid)
            answers = draw_rng.choices(range(len(pi)), weights=pi,
                                       k=config.group_size)
            rewards = [1.0 if a == 0 else 0.0 for a in answers]
            group = group_advantages(rewards, problem_id=pid)
            buffer.observe(pid, group)

            is_buffer_draw = pos < from_buffer
            tally = trivial_by_source[is_buffer_draw]
            tally[0] += group.trivial
            tally[1] += 1
            nontrivial += not group.trivial
            reward_sum += sum(rewards)
            reward_n += len(rewards)

            if config.learning_rate:
                grad = grads.setdefault(pid, [0.0] * len(pi))
                for a, advantage in zip(answers, group.advantages):
                    # d/dz of clip(ratio,A,eps) - beta*KL at theta=old: the
                    # ratio is 1 (inside the clip window), and the KL term
                    # contributes beta*(ref/theta - 1) along grad log pi.
                    coef = advantage - config.beta * (1.0 - pi_ref[a] / pi[a])
                    for j in range(len(pi)):
                        e_j = 1.0 if j == a else 0.0
                        grad[j] += coef * (e_j - pi[j]) / t

        if config.learning_rate:
            scale = config.learning_rate / len(batch)
            for pid, grad in grads.items():
                z = policy.logits[pid]
                for j in range(len(grad)):
                    z[j] += scale * grad[j]

        t_d, n_d = trivial_by_source[False]
        t_b, n_b = trivial_by_source[True]
        metrics.append(StepMetrics(
            step=step,
            nontrivial_fraction=nontrivial / len(batch),
            mean_reward=reward_sum / reward_n,
            buffer_size=len(buffer),
            f_trivial_dataset=t_d / n_d if n_d else math.nan,
            f_trivial_buffer=t_b / n_b if n_b else math.nan,
        ))
    return metrics


def metrics_to_csv(metrics: Sequence[StepMetrics]) -> str:
    lines = ["step,nontrivial_fraction,mean_reward,buffer_size"]
    for row in metrics:
        lines.append(f"{row.step},{row.nontrivial_fraction:.6f},"
                     f"{row.mean_reward:.6f},{row.buffer_size}")
    return "\n".join(lines) + "\n"


def measure_trivial_fractions(config: SimulationConfig,
                              probe_steps: int = 50) -> tuple[float, float]:
    """Estimate (fTD, fTB) from a frozen-policy probe run."""
    probe = SimulationConfig(
        problems=config.problems, steps=probe_steps,
        group_size=config.group_size, batch_size=config.batch_size,
        eps_cur=config.eps_cur or 0.25, seed=config.seed + 7919,
        learning_rate=0.0, beta=config.beta, temperature=config.temperature,
        n_answers=config.n_answers, seed_buffer=list(config.seed_buffer))
    rows = simulate(probe)
    ds = [r.f_trivial_dataset for r in rows if not math.isnan(r.f_trivial_dataset)]
    bs = [r.f_trivial_buffer for r in rows if not math.isnan(r.f_trivial_buffer)]
    ftd = sum(ds) / len(ds) if ds else math.nan
    ftb = sum(bs) / len(bs) if bs else math.nan
    return ftd, ftb
