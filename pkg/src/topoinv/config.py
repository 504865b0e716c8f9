"""Work-cap defaults, overridable through TOPOINV_WORK_CAP."""

from __future__ import annotations

import os

# Total Z2-dimension allowed in exhaustive cup-length search.
DEFAULT_ORACLE_DIMENSION_CAP = 1 << 14

# Monomial-count budget for a spectral-sequence window.
DEFAULT_SS_WORK_CAP = 1 << 21

ENV_WORK_CAP = "TOPOINV_WORK_CAP"


def resolve_cap(explicit: int | None, default: int) -> int:
    """Explicit argument wins, then the environment override, then the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(ENV_WORK_CAP)
    if env:
        return int(env)
    return default
