from __future__ import annotations

import logging

from django.conf import settings

from aoforge.core.exceptions import ResourceLimit

logger = logging.getLogger(__name__)

# Guards that bound a state space rather than a vertex count ignore AOFORGE_MAX_N.
STATE_GUARDS = frozenset({"chain_states", "staircase_box"})


def guard_limit(name: str) -> int:
    limit = settings.AOFORGE_GUARD_RAILS[name]
    override = settings.AOFORGE_MAX_N
    if override is not None and name not in STATE_GUARDS:
        return max(limit, override)
    return limit


def check_limit(name: str, value: int, what: str = "n") -> None:
    """
    Refuse ``value`` above the configured guard rail ``name``.

    Raises:
        ResourceLimit: when the value exceeds the effective limit.
    """
    limit = guard_limit(name)
    if value > limit:
        raise ResourceLimit(f"{what}={value} exceeds the guard rail {name}={limit} (set AOFORGE_MAX_N to override)")

    default = settings.AOFORGE_GUARD_RAILS[name]
    if value > default:
        logger.warning("%s=%s is above the default guard rail %s=%s (AOFORGE_MAX_N)", what, value, name, default)
