"""Seeded randomness. Every random draw in the package goes through here."""

import numpy as np


def make_rng(seed: int = 0) -> np.random.Generator:
    """Counter-based (Philox) generator; no ambient entropy."""
    return np.random.Generator(np.random.Philox(seed))
