"""Resource caps for the factorial-growth enumerations.

Defaults keep every documented operation at desk scale.  The environment
variable POLYKAP_CAPS overrides individual caps with a comma-separated
list, e.g. POLYKAP_CAPS="trees=9,hull_points=3000".
"""

import os
from dataclasses import dataclass, replace

from .errors import PreconditionError, ResourceLimitError


@dataclass(frozen=True)
class Caps:
    permutations: int = 8   # max n for S_n enumeration
    partitions: int = 8     # max n for ordered set partitions
    trees: int = 8          # max n for T_n enumeration
    hull_dim: int = 4       # max polytope dimension for the facet oracle
    hull_points: int = 2000  # max point count for the facet oracle
    cone_dim: int = 5       # max ambient dim for brute-force ray enumeration
    minkowski_points: int = 1_000_000  # max point combinations in a sum
    poset: int = 4          # max d for the abstract poset builders


def caps_from_env(base: Caps | None = None) -> Caps:
    base = base or Caps()
    text = os.environ.get("POLYKAP_CAPS", "")
    if not text.strip():
        return base
    updates = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise PreconditionError("bad POLYKAP_CAPS entry: %r" % item)
        key, value = item.split("=", 1)
        key = key.strip()
        if key not in Caps.__dataclass_fields__:
            raise PreconditionError("unknown cap: %r" % key)
        updates[key] = int(value)
    return replace(base, **updates)


def check_cap(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise ResourceLimitError(
            "%s = %d exceeds cap %d (override with POLYKAP_CAPS)" % (what, value, limit)
        )
