"""Minimum per-task bandwidth of each service route.

Every route must finish inside the deadline ``tau``. The bandwidth a route
needs is found by making the deadline tight, which is optimal because latency
is strictly decreasing in allocated bandwidth:

* route 1 (cached input, local compute): no transfer, so 0 Hz; feasible iff
  the local compute time ``(I_remote + I_local) * w / f_D`` fits the deadline.
* route 2 (download then local compute): the remote input must be fetched in
  the slack left over after computing,
  ``B2 = I_remote / ((tau - compute_local) * SE_down)``.
* route 3 (offload): uplink and downlink shares are chosen jointly. With
  ``a1 = I_local / SE_up`` (uplink Hz-seconds), ``a2 = O / SE_down`` (downlink
  Hz-seconds) and ``a3 = tau - (I_remote + I_local) * w / f_S`` (air time
  available around the server's compute), minimizing ``B_up + B_down`` under
  ``a1/B_up + a2/B_down <= a3`` gives

      B_up  = (a1 + sqrt(a1*a2)) / a3
      B_down = (a2 + sqrt(a1*a2)) / a3
      B3    = (sqrt(a1) + sqrt(a2))^2 / a3

  with the constraint tight at the optimum.

Bandwidths beyond ``DEFAULT_BANDWIDTH_CAP`` are reported infeasible; the cap
guards near-singular denominators just before true infeasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateChannelError, InvalidFieldError, RouteInfeasibleError
from .model import (
    SystemConfig,
    downlink_spectral_efficiency,
    power_coefficients,
    uplink_spectral_efficiency,
)

DEFAULT_BANDWIDTH_CAP = 1e12  # Hz


@dataclass(frozen=True)
class RouteCosts:
    """Per-route bandwidths and power draws of a config, with feasibility flags.

    b2/b3 are None when the corresponding route cannot meet the deadline
    (conceptually infinite); b1 is 0 always. route12_feasible covers both
    local-compute routes; route1_feasible is the weaker condition that local
    compute alone fits the deadline (they differ only when the compute time
    exactly equals the deadline and a remote input still needs downloading).
    """

    b1: float
    b2: float | None
    b3: float | None
    bu3: float | None
    bd3: float | None
    a1: float
    a2: float
    a3: float
    k1: float
    k2: float
    route1_feasible: bool
    route12_feasible: bool
    route3_feasible: bool

    def to_dict(self) -> dict:
        return {
            "b1_hz": self.b1, "b2_hz": self.b2, "b3_hz": self.b3,
            "b3_up_hz": self.bu3, "b3_down_hz": self.bd3,
            "a1_hz_s": self.a1, "a2_hz_s": self.a2, "a3_s": self.a3,
            "k1_w": self.k1, "k2_w": self.k2,
            "route1_feasible": self.route1_feasible,
            "route12_feasible": self.route12_feasible,
            "route3_feasible": self.route3_feasible,
        }


def local_compute_latency(config: SystemConfig) -> float:
    t = config.task
    return (t.input_local_bits + t.input_remote_bits) * t.cycles_per_bit / config.device.cpu_hz


def server_compute_latency(config: SystemConfig) -> float:
    t = config.task
    return (t.input_local_bits + t.input_remote_bits) * t.cycles_per_bit / config.server.cpu_hz


def route1_bandwidth(config: SystemConfig) -> float:
    """0 Hz; the route exists only while local compute fits the deadline (boundary included)."""
    if local_compute_latency(config) > config.task.deadline_s:
        raise RouteInfeasibleError(1, "local compute time exceeds the deadline")
    return 0.0


def route2_bandwidth(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> float:
    t = config.task
    slack = t.deadline_s - local_compute_latency(config)
    if t.input_remote_bits == 0:
        if slack < 0:
            raise RouteInfeasibleError(2, "local compute time exceeds the deadline")
        return 0.0
    if slack <= 0:
        raise RouteInfeasibleError(2, "no time left to download after local compute")
    se_down = downlink_spectral_efficiency(config)
    if se_down <= 0:
        raise RouteInfeasibleError(2, "downlink spectral efficiency is 0")
    b2 = t.input_remote_bits / (slack * se_down)
    if b2 > cap:
        raise RouteInfeasibleError(2, f"required bandwidth {b2:.3e} Hz exceeds the cap {cap:.3e} Hz")
    return b2


def kkt_split(a1: float, a2: float, a3: float) -> tuple[float, float]:
    """Bandwidth-minimal (uplink, downlink) split for transfer costs a1, a2
    within air time a3. Degenerate legs (a1 or a2 zero) get exactly 0."""
    if not (a1 >= 0 and a2 >= 0):
        raise InvalidFieldError("a1/a2", "must be >= 0")
    if not a3 > 0:
        raise InvalidFieldError("a3", "must be > 0")
    if a1 + a2 == 0:
        return 0.0, 0.0
    g = math.sqrt(a1 * a2)
    return (a1 + g) / a3, (a2 + g) / a3


def route3_bandwidth(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> tuple[float, float, float]:
    """(total, uplink, downlink) bandwidth of the offload route."""
    t = config.task
    a3 = t.deadline_s - server_compute_latency(config)
    if a3 <= 0:
        raise RouteInfeasibleError(3, "no air time left around the server compute")
    if t.input_local_bits > 0:
        se_up = uplink_spectral_efficiency(config)
        if se_up <= 0:
            raise RouteInfeasibleError(3, "uplink spectral efficiency is 0")
        a1 = t.input_local_bits / se_up
    else:
        a1 = 0.0
    if t.output_bits > 0:
        se_down = downlink_spectral_efficiency(config)
        if se_down <= 0:
            raise RouteInfeasibleError(3, "downlink spectral efficiency is 0")
        a2 = t.output_bits / se_down
    else:
        a2 = 0.0
    bu, bd = kkt_split(a1, a2, a3)
    b3 = bu + bd
    if b3 > cap:
        raise RouteInfeasibleError(3, f"required bandwidth {b3:.3e} Hz exceeds the cap {cap:.3e} Hz")
    return b3, bu, bd


def route_latency(route: int, config: SystemConfig,
                  uplink_hz: float = 0.0, downlink_hz: float = 0.0) -> float:
    """End-to-end latency of one task on the given route at the given bandwidths.

    Transfer terms with zero payload contribute 0 regardless of bandwidth;
    a positive payload requires a positive bandwidth on its leg.
    """
    t = config.task

    def transfer(bits: float, bw: float, se: float, leg: str) -> float:
        if bits == 0:
            return 0.0
        if se <= 0:
            raise DegenerateChannelError(f"{leg} spectral efficiency is 0 with {bits} bits to move")
        if bw <= 0:
            raise InvalidFieldError(f"{leg}_hz", "must be > 0 when there are bits to move")
        return bits / (bw * se)

    if route == 1:
        return local_compute_latency(config)
    if route == 2:
        return transfer(t.input_remote_bits, downlink_hz, downlink_spectral_efficiency(config),
                        "downlink") + local_compute_latency(config)
    if route == 3:
        up = transfer(t.input_local_bits, uplink_hz, uplink_spectral_efficiency(config), "uplink")
        down = transfer(t.output_bits, downlink_hz, downlink_spectral_efficiency(config), "downlink")
        return up + server_compute_latency(config) + down
    raise InvalidFieldError("route", "must be 1, 2 or 3")


def route_power(route: int, config: SystemConfig) -> float:
    """Device-side per-task power draw of a route (local compute or uplink)."""
    k1, k2 = power_coefficients(config)
    if route in (1, 2):
        return k1
    if route == 3:
        return k2
    raise InvalidFieldError("route", "must be 1, 2 or 3")


def route_costs(config: SystemConfig, cap: float = DEFAULT_BANDWIDTH_CAP) -> RouteCosts:
    """Evaluate all three routes once, recording infeasibility in flags
    instead of exceptions so the policy layer can reason over subsets."""
    t = config.task
    tau = t.deadline_s
    r1ok = local_compute_latency(config) <= tau

    b2: float | None
    try:
        b2 = route2_bandwidth(config, cap)
        r2ok = True
    except (RouteInfeasibleError, DegenerateChannelError):
        b2 = None
        r2ok = False

    a3 = tau - server_compute_latency(config)
    se_up = uplink_spectral_efficiency(config)
    se_down = downlink_spectral_efficiency(config)
    a1 = t.input_local_bits / se_up if se_up > 0 else math.inf
    if t.input_local_bits == 0:
        a1 = 0.0
    a2 = t.output_bits / se_down if se_down > 0 else math.inf
    if t.output_bits == 0:
        a2 = 0.0

    b3 = bu3 = bd3 = None
    try:
        b3, bu3, bd3 = route3_bandwidth(config, cap)
        r3ok = True
    except (RouteInfeasibleError, DegenerateChannelError):
        r3ok = False

    k1, k2 = power_coefficients(config)
    return RouteCosts(b1=0.0, b2=b2, b3=b3, bu3=bu3, bd3=bd3,
                      a1=a1, a2=a2, a3=a3, k1=k1, k2=k2,
                      route1_feasible=r1ok, route12_feasible=r1ok and r2ok,
                      route3_feasible=r3ok)
