"""Engine configuration."""

from .settings import EngineSettings, settings

__all__ = [
    'EngineSettings',
    'settings',
]
