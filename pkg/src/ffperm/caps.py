"""Size caps for exhaustive work, overridable per call or via environment."""

import os

DEFAULT_POINT_CAP = 1 << 20
DEFAULT_SCAN_CAP = 10**7


def point_cap(override: int | None = None) -> int:
    """Maximum number of evaluation points q^n for exhaustive operations."""
    if override is not None:
        return int(override)
    return int(os.environ.get("FFPERM_POINT_CAP", DEFAULT_POINT_CAP))


def scan_cap(override: int | None = None) -> int:
    """Maximum number of value tables a scan may enumerate."""
    if override is not None:
        return int(override)
    return int(os.environ.get("FFPERM_SCAN_CAP", DEFAULT_SCAN_CAP))
