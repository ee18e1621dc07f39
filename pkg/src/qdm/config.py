"""Model configuration files and deterministic report serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .cells import CellComplex2, from_spec
from .cyclic import MatterAction, OrderViolation, make_action
from .space import DEFAULT_DIM_CAP, ModelSpace


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"config field '{field_name}': {message}")
        self.field = field_name


def _require_int(d, key, minimum=None):
    if key not in d:
        raise ConfigError(key, "missing")
    val = d[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(key, f"expected an integer, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigError(key, f"must be at least {minimum}")
    return val


@dataclass
class ModelConfig:
    group_order: int
    matter_dim: int
    action: list
    complex: dict | None = None
    excluded_vertices: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    parts: list | None = None
    at: list | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        if not isinstance(d, dict):
            raise ConfigError("<root>", "expected a JSON object")
        n = _require_int(d, "group_order", 1)
        m = _require_int(d, "matter_dim", 1)
        act = d.get("action")
        if not isinstance(act, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in act
        ):
            raise ConfigError("action", f"expected an integer array, got {act!r}")
        if len(act) != m:
            raise ConfigError("action", f"length {len(act)} differs from matter_dim {m}")
        if sorted(act) != list(range(m)):
            raise ConfigError("action", f"{act} is not a permutation of 0..{m - 1}")
        cfg = cls(n, m, list(act), d.get("complex"), list(d.get("excluded_vertices") or []),
                  dict(d.get("options") or {}), d.get("parts"), d.get("at"))
        try:
            cfg.build_action()
        except OrderViolation as err:
            raise ConfigError("action", str(err)) from err
        if cfg.complex is not None:
            c = cfg.build_complex()
            bad = [v for v in cfg.excluded_vertices
                   if not isinstance(v, int) or not 0 <= v < c.vertex_count]
            if bad:
                raise ConfigError("excluded_vertices", f"{bad} are not vertices of the complex")
        if cfg.parts is not None:
            if not isinstance(cfg.parts, list) or len(cfg.parts) != 2:
                raise ConfigError("parts", "expected a list of two complex specs")
            cfg.build_parts()
        return cfg

    @classmethod
    def load(cls, path) -> "ModelConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError("<file>", f"invalid JSON: {err}") from err
        except OSError as err:
            raise ConfigError("<file>", str(err)) from err
        return cls.from_dict(data)

    def build_action(self) -> MatterAction:
        return make_action(self.group_order, self.action)

    def build_complex(self) -> CellComplex2:
        if self.complex is None:
            raise ConfigError("complex", "missing")
        try:
            return from_spec(self.complex)
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError("complex", str(err)) from err

    def build_parts(self) -> list[CellComplex2]:
        try:
            return [from_spec(p) for p in self.parts]
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError("parts", str(err)) from err

    def build_space(self, dim_cap=None) -> ModelSpace:
        cap = dim_cap or self.options.get("dim_cap", DEFAULT_DIM_CAP)
        return ModelSpace(self.build_complex(), self.build_action(), cap)


def _round_floats(obj, digits=12):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        val = float(f"{obj:.{digits}g}")
        return 0.0 if val == 0 else val
    if isinstance(obj, dict):
        return {str(k): _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    if hasattr(obj, "item"):
        return _round_floats(obj.item(), digits)
    return obj


def dumps_report(report: dict) -> str:
    """JSON with insertion-ordered keys and floats cut to 12 significant digits."""
    return json.dumps(_round_floats(report), indent=2) + "\n"
