"""Global numerical tolerance.

Every residual check in the package takes an optional ``tol`` argument;
when it is None the default below applies.  The default is 1e-10 absolute
(all computations here are short products of unit-modulus entries) and can
be overridden globally through the ``RBW_TOLERANCE`` environment variable.
"""

import os

DEFAULT_TOLERANCE = 1e-10

#: Eigenvalues of a reconstructed density matrix below this value (or a
#: trace further than this from one) trigger a non-physicality warning.
PHYSICALITY_THRESHOLD = 1e-8


def default_tolerance() -> float:
    """Return the active default tolerance (env override included)."""
    raw = os.environ.get("RBW_TOLERANCE")
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"RBW_TOLERANCE is not a number: {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"RBW_TOLERANCE must be positive, got {value}")
    return value


def resolve(tol: float | None) -> float:
    """Resolve a per-call tolerance argument against the global default."""
    return default_tolerance() if tol is None else float(tol)
