"""Previously published lower bounds on f(n), the largest number of points
at pairwise distance >= 1 in the n-dimensional unit cube.

Only constructive lower records are kept; ``exact`` marks known values.
"""

KNOWN_LOWER = {
    1: 2,
    2: 4,
    3: 8,
    4: 17,
    5: 34,
    6: 76,
    7: 184,
    8: 481,
    9: 994,
    10: 2452,
    11: 5464,
    12: 14705,
}
EXACT = frozenset({1, 2, 3, 4})


def record_for(dim: int) -> str | None:
    if dim not in KNOWN_LOWER:
        return None
    rel = "=" if dim in EXACT else ">="
    return f"f({dim}) {rel} {KNOWN_LOWER[dim]}"
