"""Shared integer-boundary conventions.

The closed-form policy and the brute-force oracle must agree on how float
ratios round to task counts, otherwise a ratio sitting within one ulp of an
integer would make the two sides disagree for reasons that have nothing to do
with the allocation logic. Both import the rules from here; the search logic
on each side stays independent.
"""

from __future__ import annotations

import math

REL_EPS = 1e-9


def floor_eps(x: float, rel: float = REL_EPS) -> int:
    """floor(x) robust to downward float noise: floor(x + eps)."""
    return math.floor(x + rel * max(1.0, abs(x)))


def ceil_eps(x: float, rel: float = REL_EPS) -> int:
    """ceil(x) robust to upward float noise: ceil(x - eps)."""
    return math.ceil(x - rel * max(1.0, abs(x)))


def cache_task_capacity(cache_bits: float, input_remote_bits: float, task_count: int) -> int:
    """Largest number of tasks whose remote inputs fit in the cache, capped at F.

    A zero-size remote input never occupies cache space, so the cap is F.
    The ratio is clamped before rounding: a subnormal input size can push it
    past float range.
    """
    if input_remote_bits <= 0:
        return task_count
    ratio = cache_bits / input_remote_bits
    if ratio >= task_count:
        return task_count
    return max(0, min(task_count, floor_eps(ratio)))


def power_within_budget(k1: float, k2: float, x_local: int, x_offload: int,
                        budget_w: float, rel: float = REL_EPS) -> bool:
    """Whether a mix of x_local locally-computed and x_offload offloaded tasks
    fits the average power budget, with the package-wide relative tolerance."""
    return k1 * x_local + k2 * x_offload <= budget_w * (1.0 + rel) + 1e-300
