from .base import (
    SerilizationBase,
    format_float,
    plain,
    to_pickle,
    from_pickle,
    to_json,
    from_json,
    to_csv,
    from_csv,
)


__all__ = [
    "SerilizationBase",
    "format_float",
    "plain",
    "to_pickle",
    "from_pickle",
    "to_json",
    "from_json",
    "to_csv",
    "from_csv",
]
