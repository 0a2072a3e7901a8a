"""Run-wide configuration knobs.

A single enumeration budget governs every brute-force suite in the package.
It bounds the number of *candidates* an enumeration would have to visit
(vectors, matrices, algebra elements), not the size of the result.
"""

import os

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV_VAR = "CLIFPROJ_BUDGET"

#: largest prime modulus accepted for a coefficient field
MAX_PRIME = 13


def enumeration_budget(override=None):
    """Resolve the enumeration budget: explicit value > env var > default."""
    if override is not None:
        return int(override)
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET
