"""
Utility modules: validators, configuration and fixture persistence.
"""

from .validators import (
    validate_module,
    validate_algebra,
    validate_fan_data,
    validate_tor_table,
    get_validation_summary
)
from .config_manager import ConfigManager, load_settings

__all__ = [
    'validate_module',
    'validate_algebra',
    'validate_fan_data',
    'validate_tor_table',
    'get_validation_summary',
    'ConfigManager',
    'load_settings',
]
