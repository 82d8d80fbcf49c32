"""Bitmask bases for fixed-magnetization sectors of a spin-1/2 chain.

A configuration of N sites is an N-bit integer; bit l-1 set means the spin
at site l points up. The sector with m up-spins collects the binomial(N, m)
configurations of that Hamming weight, ordered by increasing bitmask value
(colexicographic combinadic order), so rank/unrank are monotone bijections.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

MAX_SITES = 62  # configurations must fit a signed 64-bit integer


def popcount(masks):
    """Number of set bits, elementwise."""
    return np.bitwise_count(np.asarray(masks, dtype=np.int64)).astype(np.int64)


@lru_cache(maxsize=None)
def _masks_cached(n: int, m: int) -> np.ndarray:
    dim = comb(n, m)
    masks = np.zeros(dim, dtype=np.int64)
    # Vectorized combinadic unranking: walk bit positions from the top and
    # greedily place the c-th highest set bit at position p whenever the
    # remaining rank reaches comb(p, c).
    rank = np.arange(dim, dtype=np.int64)
    count = np.full(dim, m, dtype=np.int64)
    for p in range(n - 1, -1, -1):
        c = np.where(count > 0, count, 1)
        thresh = np.array([comb(p, ci) for ci in range(m + 2)], dtype=np.int64)
        take = (count > 0) & (rank >= thresh[c])
        masks[take] |= np.int64(1) << np.int64(p)
        rank[take] -= thresh[c[take]]
        count[take] -= 1
    masks.setflags(write=False)
    return masks


class SectorBasis:
    """Ordered basis of all N-site configurations with exactly m up-spins."""

    def __init__(self, n_sites: int, m: int):
        if not 0 <= m <= n_sites:
            raise ValueError(f"need 0 <= m <= N, got m={m}, N={n_sites}")
        if n_sites > MAX_SITES:
            raise ValueError(f"N={n_sites} exceeds the {MAX_SITES}-bit limit")
        self.n_sites = int(n_sites)
        self.m = int(m)
        self.masks = _masks_cached(self.n_sites, self.m)

    @property
    def dim(self) -> int:
        return self.masks.size

    def unrank(self, index):
        """Configuration bitmask(s) at the given basis index/indices."""
        return self.masks[index]

    def rank(self, mask):
        """Basis index of a configuration; raises if it is not in the sector."""
        mask = np.asarray(mask, dtype=np.int64)
        pos = np.searchsorted(self.masks, mask)
        pos_c = np.minimum(pos, self.dim - 1)
        if not np.all(self.masks[pos_c] == mask):
            raise ValueError("configuration not in this sector")
        return pos if mask.ndim else int(pos)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"SectorBasis(N={self.n_sites}, m={self.m}, dim={self.dim})"


def lookup_amplitudes(masks_sorted, amps, targets):
    """Amplitudes at `targets` in a sorted (masks, amps) table, 0 if absent."""
    if masks_sorted.size == 0:
        return np.zeros(np.shape(targets), dtype=complex)
    pos = np.searchsorted(masks_sorted, targets)
    pos_c = np.minimum(pos, masks_sorted.size - 1)
    hit = masks_sorted[pos_c] == targets
    return np.where(hit, amps[pos_c], 0.0)
