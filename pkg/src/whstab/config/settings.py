"""
Global settings for the weakly-hard stability toolkit.
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer, using {default}")
        return default
    return max(value, minimum)


# Parallelism
MAX_THREADS = _int_env("WHSTAB_THREADS", os.cpu_count() or 1)

# Enumeration and construction caps
ENUMERATION_CAP = _int_env("WHSTAB_ENUMERATION_CAP", 20)
WINDOW_CAP = _int_env("WHSTAB_WINDOW_CAP", 16)

# Branch-and-bound memory guard (walks held in one level)
MAX_FRONTIER = _int_env("WHSTAB_MAX_FRONTIER", 1_000_000)

# Logging
LOG_LEVEL = os.getenv("WHSTAB_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def worker_count(requested: Optional[int] = None) -> int:
    """Number of workers to use, capped by WHSTAB_THREADS."""
    if requested is None or requested < 1:
        return MAX_THREADS
    return min(requested, MAX_THREADS)
