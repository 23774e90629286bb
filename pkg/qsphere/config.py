"""
Run configuration shared by the command line and the plugin tools.

Values are layered defaults < config file < explicit values. The config file is flat
``key=value`` text with ``#`` comments::

    # q-sphere run
    q = 0.5
    shells = 12
    z_re = 0
    z_im = 2
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Union

from qsphere.axioms import DEFAULT_TOLERANCE
from qsphere.errors import ConfigError
from qsphere.hilbert import DEFAULT_MARGIN, Truncation
from qsphere.operators import DiracParams
from qsphere.qnum import QContext, check_shell_range

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")

# keys accepted in config files and in RunConfig.from_mapping
CONFIG_KEYS = ("q", "shells", "z_re", "z_im", "p", "margin", "tol", "out", "format", "workers",
               "assert_j_equivariance")
_ALIASES = {"tolerance": "tol"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}


def _real(key: str, raw: Any) -> float:
    try:
        value = float(str(raw).strip()) if isinstance(raw, str) else float(raw)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"`{key}` must be a real number, got {raw!r}") from e
    if not math.isfinite(value):
        raise ConfigError(f"`{key}` must be finite, got {raw!r}")
    return value


def _integer(key: str, raw: Any) -> int:
    value = _real(key, raw)
    if value != int(value):
        raise ConfigError(f"`{key}` must be an integer, got {raw!r}")
    return int(value)


def _flag(key: str, raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"`{key}` must be a boolean, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    q: float = 0.5
    shells: int = 8
    z: complex = 1.0 + 0.0j
    p: Optional[float] = None
    margin: int = DEFAULT_MARGIN
    tolerance: float = DEFAULT_TOLERANCE
    out: Optional[str] = None
    format: Optional[str] = None
    workers: int = 1
    assert_j_equivariance: bool = False

    def __post_init__(self) -> None:
        QContext(self.q)
        if self.shells < 1:
            raise ConfigError(f"`shells` must be at least 1, got {self.shells}")
        if self.margin < 0:
            raise ConfigError(f"`margin` must be non-negative, got {self.margin}")
        if self.p is not None and not self.p > 0:
            raise ConfigError(f"`p` must be positive, got {self.p}")
        if self.z == 0 or not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
            raise ConfigError(f"`z` must be a finite nonzero complex number, got {self.z}")
        if not self.tolerance > 0:
            raise ConfigError(f"`tol` must be positive, got {self.tolerance}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"`format` must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.workers < 1:
            raise ConfigError(f"`workers` must be at least 1, got {self.workers}")

    @property
    def ctx(self) -> QContext:
        return QContext(self.q)

    @property
    def effective_p(self) -> float:
        return self.q if self.p is None else self.p

    @property
    def truncation(self) -> Truncation:
        return Truncation(self.shells, self.margin)

    @property
    def dirac_params(self) -> DiracParams:
        return DiracParams(self.z)

    def preflight(self) -> None:
        """Reject (q, shells) pairs whose q-powers leave the double range."""
        check_shell_range(self.ctx, self.shells)

    def output_format(self, default: str) -> str:
        return self.format or default

    def merged(self, values: Mapping[str, Any]) -> "RunConfig":
        """A copy with ``values`` (raw strings allowed) layered on top."""
        changes: dict[str, Any] = {}
        z_re, z_im = self.z.real, self.z.imag
        for raw_key, raw in values.items():
            if raw is None:
                continue
            key = _ALIASES.get(raw_key, raw_key)
            if key not in CONFIG_KEYS:
                raise ConfigError(f"unknown configuration key `{raw_key}`")
            if key == "q":
                changes["q"] = _real(key, raw)
            elif key == "shells":
                changes["shells"] = _integer(key, raw)
            elif key == "z_re":
                z_re = _real(key, raw)
            elif key == "z_im":
                z_im = _real(key, raw)
            elif key == "p":
                changes["p"] = _real(key, raw)
            elif key == "margin":
                changes["margin"] = _integer(key, raw)
            elif key == "tol":
                changes["tolerance"] = _real(key, raw)
            elif key == "out":
                changes["out"] = str(raw).strip() or None
            elif key == "format":
                changes["format"] = str(raw).strip().lower() or None
            elif key == "workers":
                changes["workers"] = _integer(key, raw)
            else:
                changes["assert_j_equivariance"] = _flag(key, raw)
        changes["z"] = complex(z_re, z_im)
        return replace(self, **changes)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any], base: Optional["RunConfig"] = None) -> "RunConfig":
        return (base or cls()).merged(values)

    def to_dict(self) -> dict:
        """The effective configuration echoed into reports; output location and worker count excluded."""
        return {
            "q": self.q,
            "shells": self.shells,
            "z": [self.z.real, self.z.imag],
            "p": self.effective_p,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "assert_j_equivariance": self.assert_j_equivariance,
        }


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    values: dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, value = stripped.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{number}: expected key=value, got {line.strip()!r}")
        if _ALIASES.get(key, key) not in CONFIG_KEYS:
            raise ConfigError(f"{source}:{number}: unknown configuration key `{key}`")
        values[key] = value.strip()
    return values


def load_config_file(path: Union[str, Path]) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror or e}") from e
    values = parse_config_text(text, str(path))
    logger.debug("config file %s: %s", path, sorted(values))
    return values


def parse_list(key: str, raw: Any, cast: Callable[[str], Any]) -> list:
    """'8,12,16' -> [8, 12, 16]; a single value gives a one-element list."""
    try:
        values = [cast(part.strip()) for part in str(raw).split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError(f"`{key}` must be a comma-separated list, got {raw!r}") from e
    if not values:
        raise ConfigError(f"`{key}` list is empty")
    return values


# plugin-level settings

DEFAULT_MAX_SHELLS = 40
TOOL_KEYS = ("q", "shells", "z_re", "z_im", "p", "margin", "tol", "assert_j_equivariance")


@dataclass(frozen=True)
class PluginSettings:
    default_tolerance: float = DEFAULT_TOLERANCE
    max_shells: int = DEFAULT_MAX_SHELLS


def plugin_settings(credentials: Mapping[str, Any]) -> PluginSettings:
    """Provider settings; blank values fall back to the defaults."""
    tolerance_raw = str(credentials.get("default_tolerance") or "").strip()
    max_shells_raw = str(credentials.get("max_shells") or "").strip()
    settings = PluginSettings(
        default_tolerance=_real("default_tolerance", tolerance_raw) if tolerance_raw else DEFAULT_TOLERANCE,
        max_shells=_integer("max_shells", max_shells_raw) if max_shells_raw else DEFAULT_MAX_SHELLS,
    )
    if not settings.default_tolerance > 0:
        raise ConfigError(f"`default_tolerance` must be positive, got {settings.default_tolerance}")
    if settings.max_shells < 1:
        raise ConfigError(f"`max_shells` must be at least 1, got {settings.max_shells}")
    return settings


def tool_config(parameters: Mapping[str, Any], credentials: Mapping[str, Any], **overrides: Any) -> RunConfig:
    """RunConfig for a plugin tool call: defaults < provider settings < tool parameters < overrides."""
    settings = plugin_settings(credentials)
    values = {key: parameters.get(key) for key in TOOL_KEYS if parameters.get(key) not in (None, "")}
    values.update(overrides)
    config = RunConfig.from_mapping(values, base=RunConfig(tolerance=settings.default_tolerance))
    if config.shells > settings.max_shells:
        raise ConfigError(f"`shells` = {config.shells} exceeds the plugin limit of {settings.max_shells}")
    return config
