"""
depfca: functional and multivalued dependency checking and discovery
through formal concept analysis.
"""

from .config import IngestOptions, Settings, get_settings, setup_logging
from .exceptions import CapacityError, ContractError, DepFCAError, IngestionError, InvariantViolation, UsageError
from .relation import Relation, load_csv, project

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ContractError",
    "DepFCAError",
    "IngestOptions",
    "IngestionError",
    "InvariantViolation",
    "Relation",
    "Settings",
    "UsageError",
    "get_settings",
    "load_csv",
    "project",
    "setup_logging",
]
