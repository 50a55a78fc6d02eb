"""Global bounds.  ``CUE_LAB_MAX_ENUM`` in the environment caps enumeration sizes."""

from __future__ import annotations

import os

PARTITION_BOUND = 30
DEGREE_BOUND = 16
DEFAULT_MAX_ENUM = 10**7
NODE_LIMIT = 10**8


def max_enum() -> int:
    raw = os.environ.get("CUE_LAB_MAX_ENUM")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ENUM
    return int(raw)
