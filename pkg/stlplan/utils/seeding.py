"""Seed parsing and generator construction."""
from typing import Optional

import numpy as np

from stlplan.core.errors import ConfigError

# Independent generator streams derived from one seed.
SOLVER_STREAM = None
FALSIFY_STREAM = 1


def make_rng(seed: int, stream: Optional[int] = SOLVER_STREAM) -> np.random.Generator:
    """Generator for `seed`; distinct `stream` values give independent sequences."""
    if stream is None:
        return np.random.default_rng(seed)
    return np.random.default_rng([seed, stream])


def parse_seeds(text: str) -> list[int]:
    """Parse "3", "0,1,5" or an inclusive range "0..9".

    Example:
        >>> parse_seeds("0..3")
        [0, 1, 2, 3]
    """
    text = text.strip()
    if not text:
        return []
    try:
        if ".." not in text:
            return [int(part) for part in text.split(",") if part.strip()]
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
    except ValueError as e:
        raise ConfigError(f"cannot parse seeds {text!r}", field="seeds") from e
    if stop < start:
        raise ConfigError(f"empty seed range {text!r}", field="seeds")
    return list(range(start, stop + 1))
