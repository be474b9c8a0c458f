from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .config import WORKERS_ENV_VAR


log = logging.getLogger(__name__)

ENV_PATH = Path(".env")


def load_env() -> None:
    load_dotenv(dotenv_path=ENV_PATH, override=False)


def get_default_workers() -> Optional[int]:
    """Default replicate worker count from BIDOM_WORKERS, if set and valid."""
    raw = os.getenv(WORKERS_ENV_VAR)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        log.warning("Ignoring %s=%r: not an integer", WORKERS_ENV_VAR, raw)
        return None
    if value < 1:
        log.warning("Ignoring %s=%r: must be >= 1", WORKERS_ENV_VAR, raw)
        return None
    return value
