"""Tradeoff analysis: turning points of the bandwidth-vs-cpu curve and
parameter sweeps.

As the device CPU speeds up (everything else fixed), the minimum total
bandwidth traverses up to four phases separated by three turning points:

* ``f1``: the download route's bandwidth falls below the offload route's
  (B2 crosses B3) and non-cached tasks switch from offloading to
  downloading; before this point the curve is flat, because B3 does not
  depend on the device CPU.
* ``f2``: local computing power k1 grows with cpu^2 until the budget stops
  covering all F tasks locally; solves k1(f2) * F = Pbar, giving
  ``f2 = sqrt(tau * Pbar / (mu * w * (I_local + I_remote)))``.
* ``f3``: the power cap on locally computed tasks drops to the cache
  capacity; solves (Pbar - F*k2)/(k1 - k2) = C/I_remote in its continuous
  form (integer floors dropped), giving
  ``f3 = sqrt(tau*F*(Pbar - F*k2)*I_remote / (mu*w*I_total*C)
              + tau*F*k2 / (mu*w*I_total))``.

Each point is absent (with a recorded reason) when its defining crossing
cannot occur. Sweeps re-solve the policy on a value grid for one parameter,
mark infeasible points rather than dropping them, and serialize to a fixed
CSV schema; regime-label changes between consecutive grid points locate the
turning points empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bandwidth import DEFAULT_BANDWIDTH_CAP, route_costs
from .errors import Edge3cError, InfeasibleError, InvalidConfigError, InvalidFieldError
from .model import SystemConfig, downlink_spectral_efficiency, replace_field, validate_config
from .parallel import ordered_map
from .policy import PolicySolution, baseline_policy, solve_optimal

SWEEP_PARAMETERS = {
    "cache_bits": "device.cache_bits",
    "device_cpu_hz": "device.cpu_hz",
    "avg_power_w": "device.avg_power_w",
    "deadline_s": "task.deadline_s",
}

BASELINE_KINDS = ("mec_only", "local_only", "local_no_cache")

#: literal token emitted for infeasible cells in CSV output
INF_TOKEN = "INF"


@dataclass(frozen=True)
class TurningPoints:
    f1_hz: float | None
    f2_hz: float | None
    f3_hz: float | None
    absence_reasons: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"f1_hz": self.f1_hz, "f2_hz": self.f2_hz, "f3_hz": self.f3_hz,
                "absent": dict(self.absence_reasons)}


def power_saturation_cpu_hz(tau: float, power_budget_w: float, mu: float,
                            cycles_per_bit: float, input_total_bits: float) -> float:
    """CPU speed at which computing every task locally exactly exhausts the
    power budget: sqrt(tau * Pbar / (mu * w * I_total))."""
    if mu <= 0:
        raise InvalidFieldError("switched_capacitance", "must be > 0 for turning points")
    if cycles_per_bit * input_total_bits <= 0:
        raise InvalidFieldError("cycles_per_bit*input_total_bits", "must be > 0 for turning points")
    return math.sqrt(tau * power_budget_w / (mu * cycles_per_bit * input_total_bits))


def cache_power_balance_cpu_hz(tau: float, task_count: int, input_remote_bits: float,
                               cache_bits: float, power_budget_w: float, k2: float,
                               mu: float, cycles_per_bit: float,
                               input_total_bits: float) -> float | None:
    """CPU speed at which the power cap on local tasks meets the cache
    capacity (continuous form; None when the crossing cannot occur)."""
    if mu <= 0:
        raise InvalidFieldError("switched_capacitance", "must be > 0 for turning points")
    if cycles_per_bit * input_total_bits <= 0:
        raise InvalidFieldError("cycles_per_bit*input_total_bits", "must be > 0 for turning points")
    if cache_bits <= 0 or input_remote_bits <= 0:
        return None
    denom = mu * cycles_per_bit * input_total_bits
    radicand = tau * task_count * (power_budget_w - task_count * k2) * input_remote_bits \
        / (denom * cache_bits) + tau * task_count * k2 / denom
    if radicand < 0:
        return None
    return math.sqrt(radicand)


def download_offload_crossover_cpu_hz(compute_cycles: float, tau: float,
                                      input_remote_bits: float, se_down: float,
                                      a1: float, a2: float, a3: float) -> float | None:
    """CPU speed where the download route's bandwidth equals the offload
    route's; None when the offload bandwidth stays below the download
    bandwidth at every speed."""
    peak = (math.sqrt(a1) + math.sqrt(a2)) ** 2
    if peak <= 0:
        return None
    denom = tau - a3 * input_remote_bits / (se_down * peak)
    if denom <= 0:
        return None
    return compute_cycles / denom


def turning_points(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> TurningPoints:
    """The up-to-three cpu-speed turning points of the config's bandwidth curve."""
    validate_config(config)
    t = config.task
    mu = config.device.switched_capacitance
    i_total = t.input_local_bits + t.input_remote_bits
    costs = route_costs(config, cap)
    absent: dict[str, str] = {}
    no_dynamic_power = mu <= 0 or t.cycles_per_bit * i_total <= 0

    if no_dynamic_power:
        f2 = None
        absent["f2"] = "local computing draws no dynamic power: the budget never saturates"
    else:
        f2 = power_saturation_cpu_hz(t.deadline_s, config.device.avg_power_w, mu,
                                     t.cycles_per_bit, i_total)

    f1 = None
    if t.input_remote_bits <= 0:
        absent["f1"] = "no remote input: the download route needs no bandwidth at any cpu speed"
    elif not costs.route3_feasible:
        absent["f1"] = "offload route infeasible: no crossing to reach"
    elif costs.b3 == 0:
        absent["f1"] = "offload route needs no bandwidth: the download route never crosses it"
    else:
        f1 = download_offload_crossover_cpu_hz(
            i_total * t.cycles_per_bit, t.deadline_s, t.input_remote_bits,
            downlink_spectral_efficiency(config), costs.a1, costs.a2, costs.a3)
        if f1 is None:
            absent["f1"] = "download bandwidth exceeds the offload bandwidth at every cpu speed"

    if t.input_remote_bits <= 0:
        f3 = None
        absent["f3"] = "no remote input: the cache bound never binds"
    elif config.device.cache_bits <= 0:
        f3 = None
        absent["f3"] = "empty cache: the cache bound is fixed at zero"
    elif no_dynamic_power:
        f3 = None
        absent["f3"] = "local computing draws no dynamic power: the cache bound never meets it"
    else:
        f3 = cache_power_balance_cpu_hz(t.deadline_s, config.task_count,
                                        t.input_remote_bits, config.device.cache_bits,
                                        config.device.avg_power_w, costs.k2, mu,
                                        t.cycles_per_bit, i_total)
        if f3 is None:
            absent["f3"] = "power budget below the offload-only draw: no speed balances cache and power"

    return TurningPoints(f1_hz=f1, f2_hz=f2, f3_hz=f3, absence_reasons=absent)


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    baselines: tuple[str, ...] = ()
    log_scale: bool = False

    def validate(self) -> "SweepSpec":
        if self.parameter not in SWEEP_PARAMETERS:
            raise InvalidFieldError("parameter",
                                    f"must be one of {sorted(SWEEP_PARAMETERS)}, got {self.parameter!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidFieldError("start/stop", "must be finite")
        if not self.start < self.stop:
            raise InvalidFieldError("start/stop", "start must be < stop")
        if self.steps < 2:
            raise InvalidFieldError("steps", "must be >= 2")
        if self.log_scale and self.start <= 0:
            raise InvalidFieldError("start", "must be > 0 for a log-scale grid")
        for b in self.baselines:
            if b not in BASELINE_KINDS:
                raise InvalidFieldError("baselines", f"unknown baseline {b!r}")
        return self


@dataclass(frozen=True)
class SweepRow:
    parameter: str
    value: float
    solution: PolicySolution | None
    error: str | None
    baselines: dict


def grid_values(spec: SweepSpec) -> list[float]:
    n = spec.steps
    if spec.log_scale:
        ratio = (spec.stop / spec.start) ** (1.0 / (n - 1))
        return [spec.start * ratio ** i for i in range(n)]
    step = (spec.stop - spec.start) / (n - 1)
    return [spec.start + step * i for i in range(n)]


def sweep(config: SystemConfig, spec: SweepSpec, cap: float = DEFAULT_BANDWIDTH_CAP,
          threads: int | None = None) -> list[SweepRow]:
    """Re-solve the policy over a value grid for one parameter.

    Infeasible grid points become error rows, not gaps. Rows are computed
    independently, so the result is identical for any worker count.
    """
    validate_config(config)
    spec.validate()
    dotted = SWEEP_PARAMETERS[spec.parameter]

    def one(value: float) -> SweepRow:
        cfg = replace_field(config, dotted, value)
        solution = None
        error = None
        try:
            solution = solve_optimal(cfg, cap)
        except (InfeasibleError, InvalidConfigError) as exc:
            error = exc.constraint if isinstance(exc, InfeasibleError) else "invalid_config"
        baselines = {}
        for kind in spec.baselines:
            try:
                baselines[kind] = baseline_policy(kind, cfg, cap).b_total_hz
            except Edge3cError:
                baselines[kind] = None
        return SweepRow(parameter=spec.parameter, value=value, solution=solution,
                        error=error, baselines=baselines)

    return ordered_map(one, grid_values(spec), threads)


def rows_to_csv(rows: list[SweepRow], baselines: tuple[str, ...] = ()) -> str:
    """Fixed-schema CSV: param,value,x1,x2,x3,b_total_hz,b_avg_hz,regime, then
    one <baseline>_hz column per requested baseline; INF marks infeasible cells.

    Floats use repr() (shortest round-trip), keeping output byte-stable.
    """
    header = ["param", "value", "x1", "x2", "x3", "b_total_hz", "b_avg_hz", "regime"]
    header += [f"{kind}_hz" for kind in baselines]
    lines = [",".join(header)]
    for row in rows:
        cells = [row.parameter, repr(float(row.value))]
        s = row.solution
        if s is None:
            cells += [INF_TOKEN] * 6
        else:
            cells += [str(s.x1), str(s.x2), str(s.x3),
                      repr(s.b_total_hz), repr(s.b_avg_hz), s.regime.label]
        for kind in baselines:
            v = row.baselines.get(kind)
            cells.append(INF_TOKEN if v is None else repr(float(v)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def detect_breakpoints(rows: list[SweepRow]) -> list[float]:
    """Grid values where the regime label changes from the previous row.

    Needs at least 3 rows with strictly ascending values from a single-
    parameter sweep; infeasible rows participate as their own label so a
    feasibility edge also counts as a breakpoint.
    """
    if len(rows) < 3:
        raise InvalidFieldError("rows", "need at least 3 sweep rows")
    params = {r.parameter for r in rows}
    if len(params) != 1:
        raise InvalidFieldError("rows", "rows mix different sweep parameters")
    values = [r.value for r in rows]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidFieldError("rows", "values must be strictly ascending")
    labels = [r.solution.regime.label if r.solution is not None else INF_TOKEN for r in rows]
    return [rows[i].value for i in range(1, len(rows)) if labels[i] != labels[i - 1]]
