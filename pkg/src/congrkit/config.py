"""Size caps for exhaustive computations.

Every cap can be overridden globally with the ``CONGRKIT_CAP`` environment
variable (a single integer applied to the *degree* caps) or per call.
"""

from __future__ import annotations

import os

ELEMENT_DEGREE_CAP = 4
PRODUCT_DEGREE_CAP = 3
GROUP_DEGREE_CAP = 5
TABLE_SIZE_CAP = 1000
LATTICE_SIZE_CAP = 150


class CapExceeded(ValueError):
    """Raised when a request exceeds a configured enumeration cap."""


def _env_cap() -> int | None:
    raw = os.environ.get("CONGRKIT_CAP")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CONGRKIT_CAP must be an integer, got {raw!r}") from None


def degree_cap(default: int, override: int | None = None) -> int:
    if override is not None:
        return override
    env = _env_cap()
    return default if env is None else env


def check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceeded(f"{what} {value} exceeds cap {cap}")
