from .cover import (
    CoverConfig,
    CoverResult,
    CoverReport,
    DEFAULT_NODE_BUDGET,
    entropy,
    omega,
    count_bound,
    child_window,
    forced_child,
    forced_chain,
    orbit_digits,
    build_cover,
    brute_membership,
    covered,
    verify_cover,
)

__all__ = [
    "CoverConfig",
    "CoverResult",
    "CoverReport",
    "DEFAULT_NODE_BUDGET",
    "entropy",
    "omega",
    "count_bound",
    "child_window",
    "forced_child",
    "forced_chain",
    "orbit_digits",
    "build_cover",
    "brute_membership",
    "covered",
    "verify_cover",
]
