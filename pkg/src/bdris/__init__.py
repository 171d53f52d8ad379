"""Performance analysis of multi-sector BD-RIS links under time switching."""

from bdris.channel import ConfigError, SystemConfig
from bdris.metrics import PowerModel

__all__ = ["ConfigError", "SystemConfig", "PowerModel"]
__version__ = "0.1.0"
