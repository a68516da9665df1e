from ._gaugefree import (
    ResourceCapExceeded,
    analyze,
    ideal_chain,
    is_free,
    lpa_dimension_acyclic,
    verify,
)

__all__ = [
    "ResourceCapExceeded",
    "analyze",
    "ideal_chain",
    "is_free",
    "lpa_dimension_acyclic",
    "verify",
]
