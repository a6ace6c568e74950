"""Configuration loader with file and environment variable support.

Implements configuration precedence: ENV vars > config file > defaults.
Config files use JSON-compatible syntax; they are read with the YAML
loader, which accepts JSON unchanged.
"""

import difflib
import os
import typing
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import yaml
from pydantic import BaseModel, ValidationError

from ..core.errors import ConfigError, OutputError
from .defaults import THREADS_ENV_VAR
from .models import RunSpec


def load_config_file(config_path: str) -> Dict[str, Any]:
    """Load the raw key-value mapping of a config file.

    Args:
        config_path: Path to the config file

    Returns:
        Dictionary with the configuration values

    Raises:
        OutputError: If the file does not exist or cannot be read
        ConfigError: If the file cannot be parsed or is not a mapping
    """
    path = Path(config_path).expanduser()
    if not path.is_file():
        raise OutputError(f"Config file not found: {path}")

    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid config syntax in {path}: {e}")
    except OSError as e:
        raise OutputError(f"Failed to read config from {path}: {e}")

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config in {path} must be a key-value mapping")
    return data


def load_env_overrides() -> Dict[str, Any]:
    """Load configuration overrides from environment variables.

    Examples:
        KSJKO_THREADS -> sweep.max_threads

    Returns:
        Dictionary with nested configuration from env vars

    Raises:
        ConfigError: If a variable does not parse
    """
    config: Dict[str, Any] = {}
    if threads := os.getenv(THREADS_ENV_VAR):
        try:
            config["sweep"] = {"max_threads": int(threads)}
        except ValueError:
            raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got '{threads}'")
    return config


def merge_configs(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Deep merge two configuration dictionaries.

    Args:
        base: Base configuration
        override: Override configuration (takes precedence)

    Returns:
        Merged configuration dictionary
    """
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = merge_configs(result[key], value)
        elif value is not None:
            result[key] = value

    return result


def _model_classes(annotation: Any) -> list[type[BaseModel]]:
    candidates = typing.get_args(annotation) or (annotation,)
    return [c for c in candidates if isinstance(c, type) and issubclass(c, BaseModel)]


def _fields_at(loc: Sequence[Any]) -> list[str]:
    """Field names of the model that owns the last element of a loc path."""
    model: type[BaseModel] = RunSpec
    parts = list(loc[:-1])
    while parts:
        name = parts.pop(0)
        info = model.model_fields.get(str(name))
        if info is None:
            return []
        classes = _model_classes(info.annotation)
        if len(classes) > 1 and parts:
            # discriminated unions carry their tag in the loc path
            tag = parts.pop(0)
            classes = [c for c in classes if c.model_fields["type"].default == tag]
        if len(classes) != 1:
            return []
        model = classes[0]
    return list(model.model_fields)


def suggest_key(loc: Sequence[Any]) -> Optional[str]:
    """Nearest known key to an unknown one, by edit similarity."""
    matches = difflib.get_close_matches(str(loc[-1]), _fields_at(loc), n=1, cutoff=0.6)
    return matches[0] if matches else None


def _format_validation_error(e: ValidationError) -> str:
    error_messages = []
    for error in e.errors():
        field = ".".join(str(loc) for loc in error["loc"]) or "<root>"
        msg = error["msg"]
        if error["type"] == "extra_forbidden":
            suggestion = suggest_key(error["loc"])
            if suggestion:
                msg = f"{msg} (did you mean '{suggestion}'?)"
        error_messages.append(f"  - {field}: {msg}")
    return "Configuration validation failed:\n" + "\n".join(error_messages)


def validate_config(data: Dict[str, Any]) -> RunSpec:
    """Validate a raw mapping into a RunSpec.

    Raises:
        ConfigError: Listing every offending key path
    """
    try:
        return RunSpec(**data)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e))


def load_config(config_path: str) -> RunSpec:
    """Load and validate a run configuration.

    Configuration precedence (highest to lowest):
    1. Environment variables
    2. Config file
    3. Default values

    Args:
        config_path: Path to the config file

    Returns:
        Validated RunSpec

    Raises:
        OutputError: If the file is missing or unreadable
        ConfigError: If the configuration is invalid
    """
    file_config = load_config_file(config_path)
    env_config = load_env_overrides()
    return validate_config(merge_configs(file_config, env_config))
