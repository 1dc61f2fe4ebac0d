"""Environment-driven defaults (flags given on the command line win)."""

from __future__ import annotations

import os

from .lattice import DEFAULT_HT_BOUND
from .lie_core import DEFAULT_DIM_CAP

ENV_PREFIX = "WONDERLAT_"


def env_int(name: str, default: int | None) -> int | None:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc
    return value


def dim_cap() -> int | None:
    cap = env_int("DIM_CAP", DEFAULT_DIM_CAP)
    # 0 or a negative value switches the cap off
    return cap if cap and cap > 0 else None


def ht_bound() -> int:
    return env_int("HT_BOUND", DEFAULT_HT_BOUND)


def threads() -> int:
    return max(1, env_int("THREADS", 1))
