"""
Configuration and logging for depfca.
Settings come from the environment (prefix DEPFCA_) or a local .env file.
"""

import logging
import sys
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()

DEFAULT_MAX_TUPLES = 16
DEFAULT_MAX_ATTRIBUTES = 32
DEFAULT_MAX_PARTITION_ATTRIBUTES = 6

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


class Settings(BaseSettings):
    """Process-wide defaults; CLI flags override them per invocation"""

    model_config = SettingsConfigDict(env_prefix="DEPFCA_", env_file=".env", extra="ignore")

    max_tuples: int = DEFAULT_MAX_TUPLES
    max_attributes: int = DEFAULT_MAX_ATTRIBUTES
    max_partition_attributes: int = DEFAULT_MAX_PARTITION_ATTRIBUTES
    workers: int = 1
    log_level: str = "WARNING"


class IngestOptions(BaseModel):
    """Options controlling how a CSV file becomes a Relation"""

    dedupe_rows: bool = False
    null_distinct: bool = False
    delimiter: str = ","

    @field_validator("delimiter")
    @classmethod
    def _single_char(cls, value: str) -> str:
        if len(value) != 1:
            raise ValueError(f"delimiter must be a single character, got {value!r}")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()


def setup_logging(level: str = None) -> logging.Logger:
    """
    Route depfca log records to stderr. Root handlers installed by the host
    process are left alone; calling again replaces only the handler added here.

    Args:
        level: Log level name; defaults to the configured DEPFCA_LOG_LEVEL

    Returns:
        The package logger
    """
    level = (level or get_settings().log_level).upper()
    logger = logging.getLogger("depfca")
    for handler in [h for h in logger.handlers if getattr(h, "_depfca", False)]:
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._depfca = True
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, level, logging.WARNING))
    return logger
