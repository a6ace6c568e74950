"""Run configuration: defaults, schema and loader."""

from ksjko.config.loader import load_config, validate_config
from ksjko.config.models import RunSpec

__all__ = ["RunSpec", "load_config", "validate_config"]
