"""Size guards for the exhaustive routines.

Guards are plain module-level defaults that every function accepts as an
override. ``NETDIST_GUARD`` in the environment replaces the correspondence
guard (the limit on n*m cells) for the whole process.
"""

import os

from .errors import GuardError

DEFAULT_CORRESPONDENCE_GUARD = 16
DEFAULT_BIJECTION_GUARD = 8
DEFAULT_MOTIF_GUARD = 10**6
DEFAULT_SUBSET_GUARD = 12
DEFAULT_DISBOX_GUARD = 10
DEFAULT_DELTA_BOX_GUARD = 9

ENV_VAR = "NETDIST_GUARD"


def correspondence_guard(override=None):
    if override is not None:
        return int(override)
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise GuardError(f"{ENV_VAR}={raw!r} is not an integer", ENV_VAR) from None
    return DEFAULT_CORRESPONDENCE_GUARD


def check_guard(name, requested, limit, hint=""):
    if requested > limit:
        msg = f"{name} exceeded: requested {requested}, limit {limit}"
        if hint:
            msg += f"; {hint}"
        raise GuardError(msg, name, limit, requested)
