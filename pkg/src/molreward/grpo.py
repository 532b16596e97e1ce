"""Group-relative policy optimization arithmetic and the curriculum buffer.

Advantages are within-group z-scores with population standard deviation;
zero-variance groups are "trivial" and contribute no policy gradient (their
advantages are all zero), though they still pay the KL penalty inside the
objective.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

TRIVIAL_STD_FLOOR = 1e-12


@dataclass(frozen=True)
class Group:
    problem_id: str
    rewards: tuple[float, ...]
    advantages: tuple[float, ...]
    trivial: bool


def group_advantages(rewards: Sequence[float], problem_id: str = "") -> Group:
    """Per-completion advantages A_i = (r_i - mean) / population std.

    Groups need at least two completions. When the rewards are (numerically)
    all equal the group is trivial and every advantage is zero.
    """
    g = len(rewards)
    if g < 2:
        raise ValueError(f"a group needs at least 2 completions, got {g}")
    mean = sum(rewards) / g
    variance = sum((r - mean) ** 2 for r in rewards) / g
    std = math.sqrt(variance)
    if std < TRIVIAL_STD_FLOOR:
        return Group(problem_id=problem_id, rewards=tuple(rewards),
                     advantages=(0.0,) * g, trivial=True)
    return Group(problem_id=problem_id, rewards=tuple(rewards),
                 advantages=tuple((r - mean) / std for r in rewards),
                 trivial=False)


def clip_term(ratio: float, advantage: float, eps: float) -> float:
    """min(ratio*A, clamp(ratio, 1-eps, 1+eps)*A), the PPO surrogate."""
    if ratio <= 0:
        raise ValueError("probability ratio must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    clamped = min(max(ratio, 1.0 - eps), 1.0 + eps)
    return min(ratio * advantage, clamped * advantage)


def kl_estimate(p_theta: float, p_ref: float) -> float:
    """k3 estimator: ref/theta - ln(ref/theta) - 1; nonnegative, 0 at ratio 1."""
    if p_theta <= 0 or p_ref <= 0:
        raise ValueError("token probabilities must be positive")
    ratio = p_ref / p_theta
    return ratio - math.log(ratio) - 1.0


def group_objective(group: Group,
                    probs_theta: Sequence[Sequence[float]],
                    probs_old: Sequence[Sequence[float]],
                    probs_ref: Sequence[Sequence[float]],
                    eps: float, beta: float) -> float:
    """Per-group objective: token-averaged clipped surrogate minus beta * KL.

    ``probs_*[i][t]`` is the probability of completion i's token t under each
    policy; the three sequences must align exactly.
    """
    g = len(group.advantages)
    if not (len(probs_theta) == len(probs_old) == len(probs_ref) == g):
        raise ValueError("token probability sequences must cover every completion")
    total = 0.0
    for i in range(g):
        pt, po, pr = probs_theta[i], probs_old[i], probs_ref[i]
        if not (len(pt) == len(po) == len(pr)) or not pt:
            raise ValueError(f"misaligned token sequences for completion {i}")
        advantage = group.advantages[i]
        inner = 0.0
        for t in range(len(pt)):
            inner += clip_term(pt[t] / po[t], advantage, eps)
            inner -= beta * kl_estimate(pt[t], pr[t])
        total += inner / len(pt)
    return total


def max_eps_cur(f_trivial_dataset: float, f_trivial_buffer: float) -> float:
    """Largest sustainable buffer sampling fraction.

    (1 - fTD) / (1 - fTD + fTB): above this, trivial groups drain the buffer
    faster than fresh non-trivial problems refill it.
    """
    ftd, ftb = f_trivial_dataset, f_trivial_buffer
    if not (0 <= ftd <= 1 and 0 <= ftb <= 1):
        raise ValueError("trivial fractions must lie in [0, 1]")
    if ftb == 0:
        if ftd == 1:
            raise ValueError("bound undefined when fTD=1 and fTB=0")
        return 1.0
    return (1.0 - ftd) / (1.0 - ftd + ftb)


@dataclass
class CurriculumBuffer:
    """Insertion-ordered set of recently non-trivial problem ids."""

    capacity: int | None = None
    eps_cur: float = 0.0
    _entries: dict[str, None] = field(default_factory=dict)

    def __post_init__(self):
        if self.capacity is not None and self.capacity < 1:
            raise ValueError("capacity must be positive when set")
        if not 0 <= self.eps_cur <= 1:
            raise ValueError("eps_cur must be in [0, 1]")

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, problem_id: str) -> bool:
        return problem_id in self._entries

    def ids(self) -> list[str]:
        return list(self._entries)

    def seed(self, problem_ids: Iterable[str]) -> None:
        for pid in problem_ids:
            self._insert(pid)

    def _insert(self, problem_id: str) -> None:
        if problem_id in self._entries:
            return
        if self.capacity is not None and len(self._entries) >= self.capacity:
            oldest = next(iter(self._entries))
            del self._entries[oldest]
        self._entries[problem_id] = None

    def offer(self, problem_id: str, group: Group) -> bool:
        """Insert iff the group is non-trivial. Returns True when inserted."""
        if group.trivial or problem_id in self._entries:
            return False
        self._insert(problem_id)
        return True

    def drop_if_trivial(self, problem_id: str, group: Group) -> bool:
        """Remove iff present and the group is trivial."""
        if group.trivial and problem_id in self._entries:
            del self._entries[problem_id]
            return True
        return False

    def observe(self, problem_id: str, group: Group) -> None:
        """Apply both curriculum rules for one graded group."""
        if group.trivial:
            self.drop_if_trivial(problem_id, group)
        else:
            self.offer(problem_id, group)


def sample_batch(dataset: Sequence[str], buffer: CurriculumBuffer,
                 batch_size: int, eps_cur: float, rng_seed: int) -> list[str]:
    """Draw a batch: round(eps_cur*batch_size) ids from the buffer (fewer if
    the buffer is smaller), the remainder uniformly from the dataset, all
    without replacement within the batch."""
    if not dataset:
        raise ValueError("dataset must be non-empty")
    if not 0 <= eps_cur <= 1:
        raise ValueError("eps_cur must be in [0, 1]")
    rng = random.Random(rng_seed)
    want_buffer = int(math.floor(eps_cur * batch_size + 0.5))
    take_buffer = min(want_buffer, len(buffer))
    chosen = rng.sample(buffer.ids(), take_buffer) if take_buffer else []
    taken = set(chosen)
    remaining = [pid for pid in dataset if pid not in taken]
    need = batch_size - take_buffer
    if need >= len(remaining):
        chosen.extend(remaining)
    else:
        chosen.extend(rng.sample(remaining, need))
    return chosen
