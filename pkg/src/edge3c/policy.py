"""Bandwidth-optimal split of the task set across the three service routes.

With F identical tasks, uniform request probabilities and per-task route
bandwidths B1 = 0 <= B2, B3, the per-task problem collapses to choosing counts
(x1, x2, x3): x1 tasks served from cache, x2 via download-then-local-compute,
x3 offloaded, minimizing x2*B2 + x3*B3 subject to

    x1 * I_remote <= cache_bits          (cache)
    k1*(x1 + x2) + k2*x3 <= avg_power_w  (power)
    x1 + x2 + x3 = F, all >= 0 integers.

The argmin has a closed form. Write Q = min(F, floor(C / I_remote)) for the
cache capacity in tasks and u = (Pbar - F*k2) / (k1 - k2) for the power
bound's real-valued location. Cached tasks cost no bandwidth, so x1 is always
pushed to its cap; the rest splits by which route is cheaper per Hz and which
direction the power budget cuts:

* k1 > k2 (local computing is the power-hungry option): the budget caps the
  number of locally computed tasks at U = floor(u).
  - B3 > B2: x1 = min(Q, U), x2 = max(0, min(F, U) - x1), x3 = rest.
  - B3 <= B2: x1 = min(Q, U), x2 = 0, x3 = rest (offload is cheaper in both
    bandwidth and power, so route 2 is never used).
* k1 <= k2 (offloading is the power-hungry option): the budget now puts a
  floor L = ceil(u) on the number of locally computed tasks (note u keeps the
  k1 - k2 denominator; both numerator and denominator flip sign together).
  - B3 > B2: offloading never helps: x1 = Q, x2 = F - Q, x3 = 0.
  - B3 <= B2: x1 = Q, x2 = max(0, L - x1), x3 = rest; x2 > 0 exactly when the
    power budget forces tasks off the otherwise-cheaper offload route.
* k1 == k2: the mix does not move total power, so the bound is treated as
  absent (only the F * k1 <= Pbar feasibility pre-check applies).

When a route cannot meet the deadline at any bandwidth the same objective is
minimized over the remaining routes; coverage is checked first (latency), then
the minimum achievable power (power), so infeasibility is reported with the
constraint that actually bites.

Configs classify into nine regimes: the sign of k1 - k2, the ordering of B2
and B3 (ties map to the B3 <= B2 branch), and where the power bound sits
relative to the cache capacity and F.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bandwidth import DEFAULT_BANDWIDTH_CAP, RouteCosts, route_costs
from .bounds import cache_task_capacity, ceil_eps, floor_eps, power_within_budget
from .errors import InfeasibleError, InvalidCountsError, InvalidFieldError
from .model import SystemConfig, validate_config

#: The nine regime labels (slash-separated; comma-free so CSV stays unquoted).
REGIME_LABELS = (
    "k1>k2/B3>B2/power-limited",
    "k1>k2/B3>B2/cache-then-power",
    "k1>k2/B3>B2/power-ample",
    "k1>k2/B3<=B2/power-limited",
    "k1>k2/B3<=B2/cache-limited",
    "k1>k2/B3<=B2/power-ample",
    "k1<=k2/B3>B2/local-always",
    "k1<=k2/B3<=B2/mec-unconstrained",
    "k1<=k2/B3<=B2/forced-local",
)

_BINDING_ORDER = ("cache", "power", "tasks", "latency")


@dataclass(frozen=True)
class Regime:
    """One of the nine operating regions, with its defining conditions."""

    label: str
    k1_gt_k2: bool
    b3_gt_b2: bool
    detail: str


@dataclass(frozen=True)
class PolicySolution:
    x1: int
    x2: int
    x3: int
    b_total_hz: float
    b_avg_hz: float
    regime: Regime
    binding: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "x1": self.x1, "x2": self.x2, "x3": self.x3,
            "b_total_hz": self.b_total_hz, "b_avg_hz": self.b_avg_hz,
            "regime": self.regime.label, "binding": list(self.binding),
        }


@dataclass(frozen=True)
class Assignment:
    """Per-task expansion of a count triple: cache flags, local-compute flags
    and route ids, each of length F (tasks are interchangeable, so the first
    x1 get the cache)."""

    cache_flags: tuple[int, ...]
    local_flags: tuple[int, ...]
    routes: tuple[int, ...]


@dataclass(frozen=True)
class _Analysis:
    costs: RouteCosts
    x1: int
    x2: int
    x3: int
    regime: Regime
    binding: tuple[str, ...]


def _power_floor(f: int, qf: int, costs: RouteCosts) -> float:
    """Minimum total power over mixes that respect route feasibility and cache."""
    k1, k2 = costs.k1, costs.k2
    r2, r3 = costs.route12_feasible, costs.route3_feasible
    if r2 and r3:
        return f * min(k1, k2)
    if r2:
        return f * k1
    if r3:
        if k2 <= k1:
            return f * k2
        return k1 * qf + k2 * (f - qf)
    return f * k1


def _analyze(config: SystemConfig, cap: float) -> _Analysis:
    validate_config(config)
    costs = route_costs(config, cap)
    f = config.task_count
    k1, k2 = costs.k1, costs.k2
    r2, r3 = costs.route12_feasible, costs.route3_feasible

    qf = cache_task_capacity(config.device.cache_bits, config.task.input_remote_bits, f) \
        if costs.route1_feasible else 0

    reachable = qf + (f if r2 else 0) + (f if r3 else 0)
    if reachable < f:
        raise InfeasibleError("latency", "feasible routes cannot cover the task set")
    pmin = _power_floor(f, qf, costs)
    if not pmin <= config.device.avg_power_w * (1.0 + 1e-9):
        raise InfeasibleError("power", "minimum achievable power exceeds the budget")

    k1_gt = k1 > k2
    k1_eq = k1 == k2
    u = None
    if not k1_eq:
        u = (config.device.avg_power_w - f * k2) / (k1 - k2)
    # Bounds on x1 + x2 from the power budget, clamped into [0, F] before the
    # integer rounding: a near-zero k1 - k2 can push u to huge magnitudes or
    # infinity, and beyond F (or below 0) its exact value carries no
    # information anyway.
    if k1_gt:
        upper = f if u >= f else max(0, floor_eps(u))
        lower = 0
    elif k1_eq:
        upper, lower = None, 0
    else:
        upper = None
        lower = 0 if u <= 0 else (f if u >= f else max(0, min(f, ceil_eps(u))))

    b2_eff = costs.b2 if r2 else float("inf")
    b3_eff = costs.b3 if r3 else float("inf")
    b3_gt_b2 = b3_eff > b2_eff

    if r2 and r3:
        if k1_gt:
            x1 = min(qf, upper)
            if b3_gt_b2:
                x2 = max(0, min(f, upper) - x1)
            else:
                x2 = 0
        else:
            x1 = qf
            x2 = (f - x1) if b3_gt_b2 else max(0, lower - x1)
    elif r2:
        x1 = qf
        x2 = f - x1
    elif r3:
        x1 = min(qf, upper) if k1_gt else qf
        x2 = 0
    else:
        x1 = min(qf, f)
        x2 = 0
    x3 = f - x1 - x2

    if k1_gt:
        if upper < f and upper <= qf:
            detail = "power-limited"
        elif upper < f:
            detail = "cache-then-power" if b3_gt_b2 else "cache-limited"
        else:
            detail = "power-ample"
    else:
        if b3_gt_b2:
            detail = "local-always"
        else:
            detail = "forced-local" if x2 > 0 else "mec-unconstrained"
    label = f"{'k1>k2' if k1_gt else 'k1<=k2'}/{'B3>B2' if b3_gt_b2 else 'B3<=B2'}/{detail}"
    regime = Regime(label=label, k1_gt_k2=k1_gt, b3_gt_b2=b3_gt_b2, detail=detail)

    binding = set()
    x1_bounds = {"cache": qf, "tasks": f}
    if k1_gt:
        x1_bounds["power"] = upper
    m = min(x1_bounds.values())
    for name, bound in x1_bounds.items():
        if bound == m:
            binding.add(name)
    if k1_gt and b3_gt_b2 and r2 and r3 and upper < f:
        binding.add("power")
    if not k1_gt and x2 > 0:
        binding.add("power")
    if not (costs.route1_feasible and r2 and r3):
        binding.add("latency")
    ordered = tuple(n for n in _BINDING_ORDER if n in binding)

    return _Analysis(costs=costs, x1=x1, x2=x2, x3=x3, regime=regime, binding=ordered)


def solve_optimal(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> PolicySolution:
    """Closed-form bandwidth-minimal route counts for the task set."""
    a = _analyze(config, cap)
    b_total = (a.costs.b2 * a.x2 if a.x2 else 0.0) + (a.costs.b3 * a.x3 if a.x3 else 0.0)
    return PolicySolution(x1=a.x1, x2=a.x2, x3=a.x3,
                          b_total_hz=b_total, b_avg_hz=b_total / config.task_count,
                          regime=a.regime, binding=a.binding)


def classify_regime(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> Regime:
    """Which of the nine operating regions the config sits in (unique)."""
    return _analyze(config, cap).regime


def expand_assignment(x1: int, x2: int, x3: int, config: SystemConfig) -> Assignment:
    """Per-task vectors realizing a count triple; tasks are interchangeable."""
    for name, x in (("x1", x1), ("x2", x2), ("x3", x3)):
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InvalidCountsError(f"{name} must be a nonnegative integer")
    f = config.task_count
    if x1 + x2 + x3 != f:
        raise InvalidCountsError(f"counts sum to {x1 + x2 + x3}, expected task_count {f}")
    if x1 > cache_task_capacity(config.device.cache_bits, config.task.input_remote_bits, f):
        raise InvalidCountsError(f"{x1} cached remote inputs exceed the cache size")
    return Assignment(
        cache_flags=tuple([1] * x1 + [0] * (x2 + x3)),
        local_flags=tuple([1] * (x1 + x2) + [0] * x3),
        routes=tuple([1] * x1 + [2] * x2 + [3] * x3),
    )


def baseline_policy(kind: str, config: SystemConfig,
                    cap: float = DEFAULT_BANDWIDTH_CAP) -> PolicySolution:
    """Fixed reference policies: "mec_only" offloads everything,
    "local_only" computes everything locally (cache first), "local_no_cache"
    computes locally without using the cache."""
    validate_config(config)
    costs = route_costs(config, cap)
    f = config.task_count
    budget = config.device.avg_power_w
    qf = cache_task_capacity(config.device.cache_bits, config.task.input_remote_bits, f) \
        if costs.route1_feasible else 0

    if kind == "mec_only":
        if not costs.route3_feasible:
            raise InfeasibleError("latency", "offload route cannot meet the deadline")
        if not power_within_budget(costs.k1, costs.k2, 0, f, budget):
            raise InfeasibleError("power", "offloading every task exceeds the power budget")
        x1, x2, x3 = 0, 0, f
        b_total = costs.b3 * f
    elif kind == "local_only":
        x1 = qf
        x2, x3 = f - x1, 0
        if x2 > 0 and not costs.route12_feasible:
            raise InfeasibleError("latency", "download-and-compute route cannot meet the deadline")
        if x2 == 0 and not costs.route1_feasible:
            raise InfeasibleError("latency", "local compute cannot meet the deadline")
        if not power_within_budget(costs.k1, costs.k2, f, 0, budget):
            raise InfeasibleError("power", "computing every task locally exceeds the power budget")
        b_total = costs.b2 * x2 if x2 else 0.0
    elif kind == "local_no_cache":
        if not costs.route12_feasible:
            raise InfeasibleError("latency", "download-and-compute route cannot meet the deadline")
        if not power_within_budget(costs.k1, costs.k2, f, 0, budget):
            raise InfeasibleError("power", "computing every task locally exceeds the power budget")
        x1, x2, x3 = 0, f, 0
        b_total = costs.b2 * f
    else:
        raise InvalidFieldError("kind", f"unknown baseline {kind!r}")

    return PolicySolution(x1=x1, x2=x2, x3=x3, b_total_hz=b_total,
                          b_avg_hz=b_total / f, regime=classify_regime(config, cap),
                          binding=())
