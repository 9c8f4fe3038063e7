"""Command-line interface, run configuration, Gram cache and reports."""
from .cache import GramCache
from .config import RunConfig, load_config
from .main import COMMANDS, main, run
from .report import SCHEMA, Report, emit

__all__ = ["COMMANDS", "GramCache", "Report", "RunConfig", "SCHEMA", "emit", "load_config", "main", "run"]
