"""Counter-based random streams keyed by (seed, stream ids)"""

from typing import Callable, List

import numpy as np

# Monte Carlo work is cut into chunks of this many draws; each chunk owns a stream.
CHUNK_SIZE = 16_384


def lab_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Philox generator for one logical stream.

    The same (seed, stream) always yields the same draws, regardless of which
    thread asks for it or in which order streams are opened.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *stream])))


def chunked_draws(
    seed: int,
    stream: int,
    samples: int,
    draw: Callable[[np.random.Generator, int], np.ndarray],
) -> np.ndarray:
    """Concatenate draw(rng, size) over fixed-size chunks with one stream per chunk"""
    parts: List[np.ndarray] = []
    remaining = samples
    chunk = 0
    while remaining > 0:
        size = min(CHUNK_SIZE, remaining)
        parts.append(draw(lab_rng(seed, stream, chunk), size))
        remaining -= size
        chunk += 1
    return np.concatenate(parts) if parts else np.empty(0)
