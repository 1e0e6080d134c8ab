"""Configuration package for the QHam Implosion Engine"""
from .settings import Settings, get_settings, load_tolerance_config, numeric_setting, resolve_tolerance

__all__ = ["Settings", "get_settings", "load_tolerance_config", "numeric_setting", "resolve_tolerance"]
