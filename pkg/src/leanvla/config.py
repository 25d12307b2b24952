"""INI-backed run configuration.

Four sections — ``[scheduler]``, ``[pruning]``, ``[cost]``, ``[sim]`` — mirror
the four config dataclasses.  Missing sections or keys fall back to defaults;
unknown sections or keys are hard errors so typos never silently revert a run
to defaults.  ``dump_config(parse_config(text))`` is stable: serialised floats
round-trip bit for bit via ``repr``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .actions import SchedulerConfig
from .canny import CannyParams
from .errors import ConfigError
from .sim.costs import CostModel
from .sim.episode import SimConfig
from .tokens import PruningConfig

__all__ = ["RunConfig", "parse_config", "load_config", "dump_config", "save_config"]


@dataclass(frozen=True)
class RunConfig:
    scheduler: SchedulerConfig
    pruning: PruningConfig
    cost: CostModel
    sim: SimConfig


def _default() -> RunConfig:
    return RunConfig(SchedulerConfig(), PruningConfig(), CostModel(), SimConfig())


_FLOAT = "float"
_INT = "int"
_STR = "str"
_OPT_FLOAT = "optional-float"

_SCHEMA: dict[str, dict[str, str]] = {
    "scheduler": {"v_min": _FLOAT, "v_max": _FLOAT, "tau": _FLOAT, "buffer_len": _INT},
    "pruning": {
        "v_p_min": _FLOAT,
        "v_p_max": _FLOAT,
        "t_ks": _OPT_FLOAT,
        "ridge_lambda": _FLOAT,
        "patch_size": _INT,
        "canny_sigma": _FLOAT,
        "canny_kernel_size": _INT,
        "canny_low": _FLOAT,
        "canny_high": _FLOAT,
    },
    "cost": {"c_full": _FLOAT, "c_tok": _FLOAT, "c_lwm": _FLOAT, "mode": _STR},
    "sim": {
        "episodes": _INT,
        "seed": _INT,
        "noise": _FLOAT,
        "step_cap": _INT,
        "success_tol": _FLOAT,
        "image_size": _INT,
        "v_cap": _FLOAT,
        "attn_seed": _INT,
        "out_dir": _STR,
    },
}


def _convert(section: str, key: str, raw: str, kind: str):
    try:
        if kind == _INT:
            return int(raw)
        if kind == _FLOAT:
            return float(raw)
        if kind == _OPT_FLOAT:
            return None if raw.strip().lower() in ("", "none") else float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r} as {kind}") from exc


def parse_config(text: str) -> RunConfig:
    """Build a :class:`RunConfig` from INI text, applying defaults for gaps."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    values: dict[str, dict[str, object]] = {name: {} for name in _SCHEMA}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        schema = _SCHEMA[section]
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            values[section][key] = _convert(section, key, raw, schema[key])

    sched = SchedulerConfig(**values["scheduler"])
    pr = dict(values["pruning"])
    canny_kwargs = {}
    for ini_key, field in (
        ("canny_sigma", "sigma"),
        ("canny_kernel_size", "kernel_size"),
        ("canny_low", "low_ratio"),
        ("canny_high", "high_ratio"),
    ):
        if ini_key in pr:
            canny_kwargs[field] = pr.pop(ini_key)
    if canny_kwargs:
        pr["canny"] = CannyParams(**canny_kwargs)
    pruning = PruningConfig(**pr)
    cost = CostModel(**values["cost"])
    sim = SimConfig(**values["sim"])
    return RunConfig(scheduler=sched, pruning=pruning, cost=cost, sim=sim)


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: RunConfig) -> str:
    """Serialise every knob explicitly, in schema order."""
    s, p, c, m = cfg.scheduler, cfg.pruning, cfg.cost, cfg.sim
    flat = {
        "scheduler": {
            "v_min": s.v_min,
            "v_max": s.v_max,
            "tau": s.tau,
            "buffer_len": s.buffer_len,
        },
        "pruning": {
            "v_p_min": p.v_p_min,
            "v_p_max": p.v_p_max,
            "t_ks": p.t_ks,
            "ridge_lambda": p.ridge_lambda,
            "patch_size": p.patch_size,
            "canny_sigma": p.canny.sigma,
            "canny_kernel_size": p.canny.kernel_size,
            "canny_low": p.canny.low_ratio,
            "canny_high": p.canny.high_ratio,
        },
        "cost": {"c_full": c.c_full, "c_tok": c.c_tok, "c_lwm": c.c_lwm, "mode": c.mode},
        "sim": {
            "episodes": m.episodes,
            "seed": m.seed,
            "noise": m.noise,
            "step_cap": m.step_cap,
            "success_tol": m.success_tol,
            "image_size": m.image_size,
            "v_cap": m.v_cap,
            "attn_seed": m.attn_seed,
            "out_dir": m.out_dir,
        },
    }
    lines: list[str] = []
    for section, keys in flat.items():
        lines.append(f"[{section}]")
        for key, value in keys.items():
            lines.append(f"{key} = {_fmt(value)}")
        lines.append("")
    return "\n".join(lines)


def save_config(cfg: RunConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_config(cfg))
