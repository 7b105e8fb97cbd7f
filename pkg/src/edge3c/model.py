"""System model: task/device/server/channel parameters and derived scalars.

A workload is ``task_count`` identical tasks, equally likely to be requested.
Each task needs two inputs: one generated at the device (must be uploaded if
the task runs remotely) and one originating remotely (must be downloaded or
cached if the task runs locally), plus it produces an output that lives where
the computation ran. Three service routes follow:

1. compute locally with the remote input already cached (no air traffic),
2. compute locally after downloading the remote input,
3. offload: upload the local input, compute at the server, download the output.

This module owns the configuration types, their validation, and the two
derived per-task power draws that drive the allocation policy:

* local computing power  ``k1 = mu * f_D^2 * w * (I_local + I_remote) / (tau * F)``
* uplink transmit power  ``k2 = P_U * I_local / (F * tau * SE_up)``

Spectral efficiency is ``log2(1 + psd * gain^2 / noise_psd)`` in bit/s/Hz; an
explicit SNR-in-dB override on the channel takes precedence over the PSD
triple (a warning is emitted at load time when both are usable).
"""

from __future__ import annotations

import dataclasses
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigParseError, DegenerateChannelError, InvalidConfigError, InvalidFieldError
from .units import parse_quantity

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class TaskSpec:
    input_local_bits: float        # generated at the device
    input_remote_bits: float       # originates remotely; cacheable
    output_bits: float
    cycles_per_bit: float
    deadline_s: float


@dataclass(frozen=True)
class DeviceParams:
    cpu_hz: float
    switched_capacitance: float    # effective switched capacitance of the CPU
    cache_bits: float
    avg_power_w: float             # average power budget across the task set
    uplink_psd: float              # transmit PSD, W/Hz


@dataclass(frozen=True)
class ServerParams:
    cpu_hz: float
    downlink_psd: float            # W/Hz


@dataclass(frozen=True)
class ChannelParams:
    gain: float                    # amplitude gain; SNR uses gain^2
    noise_psd: float               # W/Hz
    snr_up_db: float | None = None     # optional overrides; dB wins over the
    snr_down_db: float | None = None   # PSD triple when both are present


@dataclass(frozen=True)
class SystemConfig:
    task_count: int
    task: TaskSpec
    device: DeviceParams
    server: ServerParams
    channel: ChannelParams


def spectral_efficiency(psd: float, gain: float, noise_psd: float) -> float:
    """bit/s/Hz of a link with the given transmit PSD over this channel.

    Strictly increasing in psd; 0 exactly when the SNR rounds to 0, which for
    any practical gain and noise floor means psd == 0.
    """
    for name, v in (("psd", psd), ("gain", gain), ("noise_psd", noise_psd)):
        if not math.isfinite(v):
            raise InvalidFieldError(name, "must be finite")
    if psd < 0:
        raise InvalidFieldError("psd", "must be >= 0")
    if gain <= 0:
        raise InvalidFieldError("gain", "must be > 0")
    if noise_psd <= 0:
        raise InvalidFieldError("noise_psd", "must be > 0")
    # log1p keeps the result nonzero for tiny SNR, where 1 + x rounds to 1
    return math.log1p(psd * gain * gain / noise_psd) / _LN2


def snr_db_to_spectral_efficiency(snr_db: float) -> float:
    if not math.isfinite(snr_db):
        raise InvalidFieldError("snr_db", "must be finite")
    return math.log1p(10.0 ** (snr_db / 10.0)) / _LN2


def uplink_spectral_efficiency(config: SystemConfig) -> float:
    ch = config.channel
    if ch.snr_up_db is not None:
        return snr_db_to_spectral_efficiency(ch.snr_up_db)
    return spectral_efficiency(config.device.uplink_psd, ch.gain, ch.noise_psd)


def downlink_spectral_efficiency(config: SystemConfig) -> float:
    ch = config.channel
    if ch.snr_down_db is not None:
        return snr_db_to_spectral_efficiency(ch.snr_down_db)
    return spectral_efficiency(config.server.downlink_psd, ch.gain, ch.noise_psd)


def power_coefficients(config: SystemConfig) -> tuple[float, float]:
    """Per-task power draws (k1 local computing, k2 uplink transmission), in W.

    Both scale as 1/F and 1/tau; k1 additionally scales with f_D squared.
    """
    t, d = config.task, config.device
    f = config.task_count
    k1 = d.switched_capacitance * d.cpu_hz * d.cpu_hz * t.cycles_per_bit \
        * (t.input_local_bits + t.input_remote_bits) / (t.deadline_s * f)
    if t.input_local_bits > 0:
        se_up = uplink_spectral_efficiency(config)
        if se_up <= 0:
            raise DegenerateChannelError("uplink spectral efficiency is 0 but the local input must be uploaded")
        k2 = d.uplink_psd * t.input_local_bits / (f * t.deadline_s * se_up)
    else:
        k2 = 0.0
    return k1, k2


# --- validation ------------------------------------------------------------

def _check(violations, cond: bool, field: str, reason: str):
    if not cond:
        violations.append(InvalidFieldError(field, reason))


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def config_violations(config: SystemConfig) -> list[InvalidFieldError]:
    """All invariant violations of the config, in field order. Empty means valid."""
    v: list[InvalidFieldError] = []
    _check(v, isinstance(config.task_count, int) and not isinstance(config.task_count, bool),
           "task_count", "must be an integer")
    if isinstance(config.task_count, int) and not isinstance(config.task_count, bool):
        _check(v, config.task_count >= 1, "task_count", "must be >= 1")

    t = config.task
    for name in ("input_local_bits", "input_remote_bits", "output_bits", "cycles_per_bit"):
        x = getattr(t, name)
        if not _finite(x):
            v.append(InvalidFieldError(f"task.{name}", "must be a finite number"))
        elif x < 0:
            v.append(InvalidFieldError(f"task.{name}", "must be >= 0"))
    if not _finite(t.deadline_s) or t.deadline_s <= 0:
        v.append(InvalidFieldError("task.deadline_s", "must be a finite number > 0"))

    d = config.device
    for name, lo in (("cpu_hz", "pos"), ("switched_capacitance", "nonneg"),
                     ("cache_bits", "nonneg"), ("avg_power_w", "pos"), ("uplink_psd", "pos")):
        x = getattr(d, name)
        if not _finite(x):
            v.append(InvalidFieldError(f"device.{name}", "must be a finite number"))
        elif lo == "pos" and x <= 0:
            v.append(InvalidFieldError(f"device.{name}", "must be > 0"))
        elif lo == "nonneg" and x < 0:
            v.append(InvalidFieldError(f"device.{name}", "must be >= 0"))

    s = config.server
    for name in ("cpu_hz", "downlink_psd"):
        x = getattr(s, name)
        if not _finite(x) or x <= 0:
            v.append(InvalidFieldError(f"server.{name}", "must be a finite number > 0"))

    ch = config.channel
    for name in ("gain", "noise_psd"):
        x = getattr(ch, name)
        if not _finite(x) or x <= 0:
            v.append(InvalidFieldError(f"channel.{name}", "must be a finite number > 0"))
    for name in ("snr_up_db", "snr_down_db"):
        x = getattr(ch, name)
        if x is not None and not _finite(x):
            v.append(InvalidFieldError(f"channel.{name}", "must be a finite number when present"))
    return v


def validate_config(config: SystemConfig) -> SystemConfig:
    """Return the config unchanged iff every invariant holds; otherwise raise
    InvalidConfigError carrying the complete violation list."""
    violations = config_violations(config)
    if violations:
        raise InvalidConfigError(violations)
    return config


# --- loading / serialization ----------------------------------------------

# field -> unit dimension, per section
_SCHEMA = {
    "task": {
        "input_local_bits": "bits",
        "input_remote_bits": "bits",
        "output_bits": "bits",
        "cycles_per_bit": "dimensionless",
        "deadline_s": "seconds",
    },
    "device": {
        "cpu_hz": "hz",
        "switched_capacitance": "dimensionless",
        "cache_bits": "bits",
        "avg_power_w": "watts",
        "uplink_psd": "watts_per_hz",
    },
    "server": {
        "cpu_hz": "hz",
        "downlink_psd": "watts_per_hz",
    },
    "channel": {
        "gain": "dimensionless",
        "noise_psd": "watts_per_hz",
        "snr_up_db": "dimensionless",
        "snr_down_db": "dimensionless",
    },
}

_OPTIONAL = {("channel", "snr_up_db"), ("channel", "snr_down_db")}
_SECTION_TYPES = {"task": TaskSpec, "device": DeviceParams, "server": ServerParams, "channel": ChannelParams}


def config_from_dict(raw: dict) -> SystemConfig:
    """Build and validate a SystemConfig from a JSON-shaped dict.

    Accepts human units in string values ("400 MB", "4 GHz", "250 mW/180 kHz").
    Unknown keys are reported as violations rather than ignored.
    """
    if not isinstance(raw, dict):
        raise ConfigParseError("top level must be a JSON object")
    violations: list[InvalidFieldError] = []
    known_top = {"task_count", *_SCHEMA}
    for key in raw:
        if key not in known_top:
            violations.append(InvalidFieldError(key, "unknown top-level field"))

    task_count = raw.get("task_count")
    if task_count is None:
        violations.append(InvalidFieldError("task_count", "missing"))
        task_count = 1
    elif not isinstance(task_count, int) or isinstance(task_count, bool):
        violations.append(InvalidFieldError("task_count", "must be a JSON integer"))
        task_count = 1

    sections = {}
    for section, fields in _SCHEMA.items():
        src = raw.get(section)
        if src is None:
            violations.append(InvalidFieldError(section, "missing section"))
            src = {}
        elif not isinstance(src, dict):
            violations.append(InvalidFieldError(section, "must be an object"))
            src = {}
        values = {}
        for key in src:
            if key not in fields:
                violations.append(InvalidFieldError(f"{section}.{key}", "unknown field"))
        for name, dim in fields.items():
            if name not in src:
                if (section, name) in _OPTIONAL:
                    values[name] = None
                else:
                    violations.append(InvalidFieldError(f"{section}.{name}", "missing"))
                    values[name] = 1.0
                continue
            if src[name] is None and (section, name) in _OPTIONAL:
                values[name] = None
                continue
            try:
                values[name] = parse_quantity(src[name], dim, f"{section}.{name}")
            except InvalidFieldError as exc:
                violations.append(exc)
                values[name] = 1.0
        sections[section] = _SECTION_TYPES[section](**values)

    config = SystemConfig(task_count=task_count, task=sections["task"],
                          device=sections["device"], server=sections["server"],
                          channel=sections["channel"])
    violations.extend(config_violations(config))
    if violations:
        raise InvalidConfigError(violations)

    ch = config.channel
    if ch.snr_up_db is not None:
        warnings.warn("channel.snr_up_db overrides the uplink PSD/gain/noise triple", stacklevel=2)
    if ch.snr_down_db is not None:
        warnings.warn("channel.snr_down_db overrides the downlink PSD/gain/noise triple", stacklevel=2)
    return config


def load_config(path) -> SystemConfig:
    """Load, unit-normalize and validate a JSON config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return config_from_dict(raw)


def config_to_dict(config: SystemConfig) -> dict:
    out = dataclasses.asdict(config)
    ch = out["channel"]
    for key in ("snr_up_db", "snr_down_db"):
        if ch[key] is None:
            del ch[key]
    return out


def replace_field(config: SystemConfig, dotted: str, value) -> SystemConfig:
    """Return a copy with one dotted field replaced, e.g. ("device.cpu_hz", 2e9)."""
    section, _, name = dotted.partition(".")
    if not name:
        return dataclasses.replace(config, **{section: value})
    inner = getattr(config, section)
    return dataclasses.replace(config, **{section: dataclasses.replace(inner, **{name: value})})
