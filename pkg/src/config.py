"""
Runtime settings for the ABP toolkit.

Values come from the environment (or a local .env file) so that the
guards can be loosened for a big run without touching code:

    ABP_EXPAND_GUARD=50000000 python -m src.cli verify --suite all
"""

import logging
import os

from dotenv import load_dotenv

load_dotenv()

EXPAND_GUARD = int(os.getenv("ABP_EXPAND_GUARD", "10000000"))
ORACLE_GUARD = int(os.getenv("ABP_ORACLE_GUARD", "10000000"))
ALGEBRA_GUARD = int(os.getenv("ABP_ALGEBRA_GUARD", "10000000"))
PATH_GUARD = int(os.getenv("ABP_PATH_GUARD", "10000000"))

DEFAULT_FIELD = os.getenv("ABP_FIELD", "rational")
LOG_LEVEL = os.getenv("ABP_LOG_LEVEL", "WARNING")
SEED = int(os.getenv("ABP_SEED", "2024"))

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def setup_logging(level=None):
    """Install the root handler once; later calls only adjust the level."""
    level = (level or LOG_LEVEL).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


def resolve_guard(value, default):
    """None means 'use the configured default'."""
    return default if value is None else value
