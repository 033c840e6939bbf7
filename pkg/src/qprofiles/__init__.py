"""Profile calculus for positive-characteristic hypersurfaces.

A profile a(t) prescribes how a degree-a(q) form decomposes into q-power
twists; this package decides profile validity, compares profiles under three
order relations, walks the multi-profile cover poset, and evaluates the
dimension thresholds (expected Fano dimensions, covering criteria, and the
recursive unirationality bounds r, n1, n2, n0) attached to it.
"""

from __future__ import annotations

from .bounds import (
    CLASSICAL_N0_REFERENCE,
    DEFAULT_NODE_CAP,
    RUN_THRESHOLD,
    BoundsRecord,
    n0,
    n0_auto,
    n1,
    n2,
    r0,
    r_bound,
)
from .cache import BoundsCache, CacheError, default_cache_path
from .errors import ResourceCapError
from .fano import (
    FanoReport,
    covered_by_planes,
    delta,
    delta_minus,
    dominance,
    fano_verdict,
    gamma,
    general_smooth_dim,
    plane_cover_thresholds,
)
from .orderings import OrderVerdict, contains, prec, squig
from .poset import (
    Cover,
    HasseEdge,
    HasseGraph,
    PhiInvariant,
    covers,
    interval,
    phi,
    pointed_line_multiprofile,
    type_decomposition,
)
from .primes import PrimePower
from .profiles import (
    EMPTY,
    MultiProfile,
    ParseError,
    Profile,
    ProfileStats,
    interval_below,
    interval_size,
    is_profile,
    parse_multiprofile,
    parse_profile,
    profile_stats,
    render_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsCache",
    "BoundsRecord",
    "CLASSICAL_N0_REFERENCE",
    "CacheError",
    "Cover",
    "DEFAULT_NODE_CAP",
    "EMPTY",
    "FanoReport",
    "HasseEdge",
    "HasseGraph",
    "MultiProfile",
    "OrderVerdict",
    "ParseError",
    "PhiInvariant",
    "PrimePower",
    "Profile",
    "ProfileStats",
    "ResourceCapError",
    "RUN_THRESHOLD",
    "contains",
    "covered_by_planes",
    "covers",
    "default_cache_path",
    "delta",
    "delta_minus",
    "dominance",
    "fano_verdict",
    "gamma",
    "general_smooth_dim",
    "interval",
    "interval_below",
    "interval_size",
    "is_profile",
    "n0",
    "n0_auto",
    "n1",
    "n2",
    "parse_multiprofile",
    "parse_profile",
    "phi",
    "plane_cover_thresholds",
    "pointed_line_multiprofile",
    "prec",
    "profile_stats",
    "r0",
    "r_bound",
    "render_profile",
    "squig",
    "type_decomposition",
]
