"""
Configuration for Littlestone Lab.
Resource caps and runtime options, read from the environment with defaults.
"""

import os
import logging
from typing import Any, Dict, Optional

try:
    from .data_validation import ValidationError
except ImportError:
    from data_validation import ValidationError

logger = logging.getLogger(__name__)

# Environment variable -> (config key, default)
_INT_SETTINGS = {
    'LLAB_CAP_CELLS': ('cap_cells', 2 ** 20),
    'LLAB_EXPERT_CAP': ('expert_cap', 250_000),
    'LLAB_RECURSION_BUDGET': ('recursion_budget', 2_000_000),
    'LLAB_MEMO_ENTRIES': ('memo_entries', 200_000),
    'LLAB_RADEMACHER_TREES': ('rademacher_trees', 2_000_000),
    'LLAB_WORKERS': ('workers', 4),
}


def _read_positive_int(env_name: str, default: int) -> int:
    raw = os.getenv(env_name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ValidationError(f"{env_name} must be an integer: {raw!r}")
    if value < 1:
        raise ValidationError(f"{env_name} must be positive: {value}")
    return value


def get_config(overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Get configuration based on environment.

    Args:
        overrides: Optional per-run values that replace environment settings

    Returns:
        Dictionary of resource caps and runtime options

    Raises:
        ValidationError: If an environment value or override is invalid
    """
    config: Dict[str, Any] = {
        key: _read_positive_int(env_name, default)
        for env_name, (key, default) in _INT_SETTINGS.items()
    }
    config['log_level'] = os.getenv('LLAB_LOG_LEVEL', 'INFO').upper()

    for key, value in (overrides or {}).items():
        if key not in config:
            raise ValidationError(f"Unknown configuration key: {key}")
        if key != 'log_level' and (not isinstance(value, int) or value < 1):
            raise ValidationError(f"Cap {key} must be a positive integer: {value}")
        config[key] = value

    return config


def get_cap(name: str, overrides: Optional[Dict[str, Any]] = None) -> int:
    """Return a single cap from the current configuration."""
    return get_config(overrides)[name]
