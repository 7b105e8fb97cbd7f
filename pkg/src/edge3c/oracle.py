"""Brute-force reference solvers used to validate the closed forms.

Nothing here shares algorithmic structure with the policy module: the count
oracle enumerates the whole (x1, x2) lattice, the per-task oracle enumerates
every route assignment of every task, and the bandwidth-split oracle runs a
one-dimensional golden-section search. They do share the package's boundary
conventions (epsilon floor for the cache capacity, power tolerance), so a
ratio one ulp away from an integer cannot manufacture a disagreement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .bandwidth import DEFAULT_BANDWIDTH_CAP, route_costs
from .bounds import REL_EPS, cache_task_capacity
from .errors import InfeasibleError, InvalidFieldError, TooLargeError
from .model import SystemConfig, validate_config

#: relative window within which two objective values count as tied
TIE_REL = 1e-12


@dataclass(frozen=True)
class OracleSolution:
    x1: int
    x2: int
    x3: int
    b_total_hz: float
    num_optima: int  # count of objective-tied count vectors (within TIE_REL)


def enumerate_optimal(config: SystemConfig, limit: int = 5000,
                      cap: float = DEFAULT_BANDWIDTH_CAP) -> OracleSolution:
    """Exhaustive minimum over all count triples (x1, x2, x3) summing to F.

    Filters the cache and power constraints and route feasibility directly;
    O(F^2) lattice, guarded by ``limit``.
    """
    validate_config(config)
    f = config.task_count
    if f > limit:
        raise TooLargeError(f, limit)
    costs = route_costs(config, cap)
    budget = config.device.avg_power_w

    x1g, x2g = np.meshgrid(np.arange(f + 1), np.arange(f + 1), indexing="ij")
    x3g = f - x1g - x2g
    valid = x3g >= 0

    qf = cache_task_capacity(config.device.cache_bits, config.task.input_remote_bits, f)
    valid &= x1g <= qf
    if not costs.route1_feasible:
        valid &= x1g == 0
    if not costs.route12_feasible:
        valid &= x2g == 0
    if not costs.route3_feasible:
        valid &= x3g == 0
    power = costs.k1 * (x1g + x2g) + costs.k2 * x3g
    valid &= power <= budget * (1.0 + REL_EPS) + 1e-300

    if not valid.any():
        # distinguish the two ways of having no feasible vector; cached tasks
        # still compute locally, so the cache covers nothing once route 1 fails
        reachable = (qf if costs.route1_feasible else 0) \
            + (f if costs.route12_feasible else 0) + (f if costs.route3_feasible else 0)
        if reachable < f:
            raise InfeasibleError("latency", "feasible routes cannot cover the task set")
        raise InfeasibleError("power", "no count vector fits the power budget")

    b2 = costs.b2 if costs.b2 is not None else 0.0
    b3 = costs.b3 if costs.b3 is not None else 0.0
    objective = b2 * x2g + b3 * x3g
    objective[~valid] = np.inf
    flat = int(np.argmin(objective))
    best = float(objective.flat[flat])
    ties = objective <= best + TIE_REL * max(1.0, abs(best))
    x1, x2 = flat // (f + 1), flat % (f + 1)
    return OracleSolution(x1=int(x1), x2=int(x2), x3=int(f - x1 - x2),
                          b_total_hz=best, num_optima=int(ties.sum()))


def enumerate_per_task(config: SystemConfig, limit: int = 10,
                       cap: float = DEFAULT_BANDWIDTH_CAP) -> OracleSolution:
    """Exhaustive minimum over all 3^F per-task route assignments.

    Validates the reduction from per-task decisions to counts: constraints are
    evaluated on the per-task cache/local flag vectors, not on counts.
    """
    validate_config(config)
    f = config.task_count
    if f > limit:
        raise TooLargeError(f, limit)
    costs = route_costs(config, cap)
    t = config.task
    budget = config.device.avg_power_w
    cache_bits = config.device.cache_bits
    eps = REL_EPS

    allowed = [r for r, ok in ((1, costs.route1_feasible),
                               (2, costs.route12_feasible),
                               (3, costs.route3_feasible)) if ok]
    if not allowed:
        raise InfeasibleError("latency", "no route can meet the deadline")

    bw = {1: 0.0, 2: costs.b2, 3: costs.b3}
    best = math.inf
    best_counts = None
    tied: set[tuple[int, int, int]] = set()
    found_any = False
    for routes in itertools.product(allowed, repeat=f):
        c = [1 if r == 1 else 0 for r in routes]
        d = [1 if r in (1, 2) else 0 for r in routes]
        if sum(ci * t.input_remote_bits for ci in c) > cache_bits * (1.0 + eps) + 1e-300:
            continue
        power = sum(costs.k1 if di else costs.k2 for di in d)
        if power > budget * (1.0 + eps) + 1e-300:
            continue
        found_any = True
        total = sum(bw[r] for r in routes)
        counts = (routes.count(1), routes.count(2), routes.count(3))
        tol = TIE_REL * max(1.0, abs(best)) if math.isfinite(best) else 0.0
        if total < best - tol:
            best = total
            best_counts = counts
            tied = {counts}
        elif total <= best + tol:
            tied.add(counts)
    if not found_any:
        capacity = cache_task_capacity(cache_bits, t.input_remote_bits, f) \
            if costs.route1_feasible else 0
        if capacity + (f if costs.route12_feasible else 0) \
                + (f if costs.route3_feasible else 0) < f:
            raise InfeasibleError("latency", "feasible routes cannot cover the task set")
        raise InfeasibleError("power", "no assignment fits the power budget")
    return OracleSolution(x1=best_counts[0], x2=best_counts[1], x3=best_counts[2],
                          b_total_hz=best, num_optima=len(tied))


def relative_error(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def run_verification(trials: int = 1000, seed: int = 0,
                     threads: int | None = None, tolerance: float = 1e-9) -> dict:
    """Compare the closed-form policy against the enumeration oracle on
    ``trials`` stratified random configs; deterministic for a given seed
    regardless of worker count."""
    from .parallel import ordered_map
    from .policy import solve_optimal
    from .sampling import sample_config

    def one(trial: int) -> tuple[float, str]:
        config = sample_config(seed, trial)
        solved = solve_optimal(config)
        reference = enumerate_optimal(config)
        return relative_error(solved.b_total_hz, reference.b_total_hz), solved.regime.label

    results = ordered_map(one, range(trials), threads)
    regimes: dict[str, int] = {}
    for _, label in results:
        regimes[label] = regimes.get(label, 0) + 1
    errors = [err for err, _ in results]
    max_err = max(errors) if errors else 0.0
    failures = [{"trial": i, "rel_error": err}
                for i, err in enumerate(errors) if err > tolerance][:10]
    return {
        "trials": trials,
        "seed": seed,
        "tolerance": tolerance,
        "max_rel_error": max_err,
        "pass": max_err <= tolerance,
        "regimes": {k: regimes[k] for k in sorted(regimes)},
        "failures": failures,
    }


def numeric_bandwidth_split(a1: float, a2: float, a3: float,
                            rtol: float = 1e-8) -> tuple[float, float]:
    """Golden-section search for the bandwidth-minimal (uplink, downlink) split.

    The downlink share is solved from the tight latency constraint
    ``a1/bu + a2/bd = a3``, leaving a one-dimensional convex problem in bu on
    (a1/a3, infinity); the optimum lies below 2*(a1+a2)/a3 because that value
    is already achievable. Converges to relative tolerance ``rtol``.
    """
    if not (a1 >= 0 and a2 >= 0):
        raise InvalidFieldError("a1/a2", "must be >= 0")
    if not a3 > 0:
        raise InvalidFieldError("a3", "must be > 0")
    if a1 + a2 == 0:
        raise InvalidFieldError("a1+a2", "must be > 0 (nothing to transfer)")
    if a1 == 0:
        return 0.0, a2 / a3
    if a2 == 0:
        return a1 / a3, 0.0

    def total(bu: float) -> float:
        return bu + a2 / (a3 - a1 / bu)

    lo = a1 / a3 * (1.0 + 1e-12)
    hi = 2.0 * (a1 + a2) / a3
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    m1 = hi - invphi * (hi - lo)
    m2 = lo + invphi * (hi - lo)
    f1, f2 = total(m1), total(m2)
    while (hi - lo) > rtol * max(1.0, abs(lo) + abs(hi)) / 2.0:
        if f1 <= f2:
            hi, m2, f2 = m2, m1, f1
            m1 = hi - invphi * (hi - lo)
            f1 = total(m1)
        else:
            lo, m1, f1 = m1, m2, f2
            m2 = lo + invphi * (hi - lo)
            f2 = total(m2)
    bu = (lo + hi) / 2.0
    return bu, a2 / (a3 - a1 / bu)
