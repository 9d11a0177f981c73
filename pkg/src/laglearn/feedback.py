"""Delay schedules and exactly-once feedback delivery.

Feedback generated at round s with delay d becomes available at the end
of round s + d - 1 and can drive the update made at that round; d = 1 is
the no-delay case, and a fixed lag of tau rounds corresponds to d = tau + 1.
The buffer partitions source rounds into delivery sets, so each round's
feedback is handed out exactly once, and accumulates the total delay
sum that governs the arbitrary-delay regret scaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DelaySchedule:
    """Produces the per-round delays d_1..d_T (all >= 1)."""

    def realize(self, horizon: int) -> np.ndarray:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class FixedDelay(DelaySchedule):
    """Constant lag of `tau` rounds: d_t = tau + 1 for every t."""

    tau: int

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("tau must be >= 0")

    def realize(self, horizon: int) -> np.ndarray:
        return np.full(horizon, self.tau + 1, dtype=np.int64)

    def describe(self) -> str:
        return f"fixed(tau={self.tau})"


@dataclass(frozen=True)
class RandomDelay(DelaySchedule):
    """I.i.d. uniform integer delays on [low, d_max], drawn from `seed`."""

    d_max: int
    seed: int
    low: int = 1

    def __post_init__(self):
        if self.low < 1 or self.d_max < self.low:
            raise ValueError("need 1 <= low <= d_max")

    def realize(self, horizon: int) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        return rng.integers(self.low, self.d_max + 1, size=horizon, dtype=np.int64)

    def describe(self) -> str:
        return f"random(d_max={self.d_max}, seed={self.seed})"


@dataclass(frozen=True)
class ExplicitDelay(DelaySchedule):
    """A crafted delay list, e.g. a worst-case schedule."""

    delays: tuple[int, ...]

    def __post_init__(self):
        if any(int(d) != d or d < 1 for d in self.delays):
            raise ValueError("delays must be integers >= 1")

    def realize(self, horizon: int) -> np.ndarray:
        if len(self.delays) < horizon:
            raise ValueError(f"schedule has {len(self.delays)} delays, horizon is {horizon}")
        return np.asarray(self.delays[:horizon], dtype=np.int64)

    def describe(self) -> str:
        return f"explicit(n={len(self.delays)})"


def delays_from_file(path) -> ExplicitDelay:
    """Load an explicit schedule from a text file, one integer per line."""
    delays = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                delays.append(int(text))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: not an integer: {text!r}") from exc
    return ExplicitDelay(tuple(delays))


class FeedbackBuffer:
    """Per-round delivery bookkeeping.

    `push(s, d)` schedules round s for delivery at round s + d - 1;
    `ready_at(t)` is the set of source rounds delivered at round t (possibly
    empty, possibly several under arbitrary delays).  Querying rounds past
    the horizon is allowed: late feedback lands in post-horizon delivery
    sets that only evaluation ever looks at.
    """

    def __init__(self):
        self._deliveries: dict[int, list[int]] = {}
        self._delivery_round: dict[int, int] = {}
        self._delay_sum = 0

    def push(self, source: int, delay: int) -> None:
        if delay < 1:
            raise ValueError("delay must be >= 1")
        if source in self._delivery_round:
            raise RuntimeError(f"round {source} was already pushed")
        due = source + delay - 1
        self._delivery_round[source] = due
        self._deliveries.setdefault(due, []).append(source)
        self._delay_sum += int(delay)

    def ready_at(self, t: int) -> tuple[int, ...]:
        if t < 1:
            raise ValueError("rounds are numbered from 1")
        return tuple(sorted(self._deliveries.get(t, ())))

    @property
    def delay_sum(self) -> int:
        return self._delay_sum

    @property
    def pushed(self) -> int:
        return len(self._delivery_round)

    def delivery_round(self, source: int) -> int:
        return self._delivery_round[source]
