"""Closed-form results for the condensate (Dicke) states.

The m-magnon state with all wavenumbers zero is the Dicke state with m
up-spins. Its Pauli correlations reduce to three rational functions of
(N, m), the variance-covariance matrix takes an explicit circulant-like
pattern, and its full spectrum is known: six eigenvalue families with
multiplicities (N-1, 1, 1, 1, N-1, N-1). These formulas are evaluated in
exact integer/rational arithmetic and only converted to float at the end,
which makes them usable as an independent oracle for every numerical path
in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Tuple

import numpy as np

from .vcm import AdditiveOperator


def _w_fractions(n: int, m: int):
    if n < 2:
        raise ValueError("correlation parameters need N >= 2")
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= N, got m={m}, N={n}")
    w1 = Fraction(2 * m * (n - m), n * (n - 1))
    w2 = Fraction(n * n - 4 * m * n - n + 4 * m * m, n * (n - 1))
    w3 = Fraction(n - 2 * m, n)
    return w1, w2, w3


@dataclass(frozen=True)
class DickeVcmParams:
    """The three correlation numbers of a Dicke state.

    w1 = <dsx dsx> across sites, w2 = <sz sz> across sites and
    w3 = -<sz> (single site); everything else in the VCM follows.
    """

    n_sites: int
    m: int
    w1: float
    w2: float
    w3: float


def dicke_vcm_params(n: int, m: int) -> DickeVcmParams:
    w1, w2, w3 = _w_fractions(n, m)
    return DickeVcmParams(n, m, float(w1), float(w2), float(w3))


def dicke_vcm(n: int, m: int) -> np.ndarray:
    """The explicit 3N x 3N variance-covariance matrix of a Dicke state.

    x and y blocks: 1 on the diagonal, w1 off it. z block: 1 - w3^2 on the
    diagonal, w2 - w3^2 off it. Same-site x-y cross entries are -i*w3
    (x row) and +i*w3 (y row); all other cross entries vanish.
    """
    p = dicke_vcm_params(n, m)
    v = np.zeros((3 * n, 3 * n), dtype=complex)
    off = np.ones((n, n)) - np.eye(n)
    xx = np.eye(n) + p.w1 * off
    zz = (1.0 - p.w3 ** 2) * np.eye(n) + (p.w2 - p.w3 ** 2) * off
    v[0:n, 0:n] = xx
    v[n:2 * n, n:2 * n] = xx
    v[2 * n:, 2 * n:] = zz
    v[0:n, n:2 * n] = -1j * p.w3 * np.eye(n)
    v[n:2 * n, 0:n] = 1j * p.w3 * np.eye(n)
    return v


@dataclass(frozen=True)
class DickeSpectrum:
    """Six (eigenvalue, multiplicity) families of the Dicke VCM."""

    n_sites: int
    m: int
    pairs: Tuple[Tuple[float, int], ...]

    def expanded(self) -> np.ndarray:
        """All 3N eigenvalues sorted ascending."""
        vals = np.repeat([e for e, _ in self.pairs], [k for _, k in self.pairs])
        return np.sort(vals)

    def emax(self) -> float:
        return max(e for e, _ in self.pairs)

    def trace(self) -> float:
        return float(sum(e * k for e, k in self.pairs))


def dicke_spectrum(n: int, m: int) -> DickeSpectrum:
    """Closed-form VCM spectrum of a Dicke state.

    The families, in order: a bulk pair-correlation level (N-1 fold), the
    exact zero mode, the two collective raising/lowering levels (the larger
    one is the maximum; they cross into degeneracy at half filling N = 2m),
    and two more bulk levels (N-1 fold each).
    """
    w1, w2, w3 = _w_fractions(n, m)
    one = Fraction(1)
    e1 = one - w2
    e2 = one - w3 * w3 + (n - 1) * (w2 - w3 * w3)   # simplifies to exactly 0
    e3 = one + w3 + (n - 1) * w1
    e4 = one - w3 + (n - 1) * w1
    e5 = one + w3 - w1
    e6 = one - w3 - w1
    pairs = ((float(e1), n - 1), (float(e2), 1), (float(e3), 1),
             (float(e4), 1), (float(e5), n - 1), (float(e6), n - 1))
    return DickeSpectrum(n, m, pairs)


def dicke_emax(n: int, m: int) -> float:
    """Largest VCM eigenvalue of a Dicke state: 1 + (2mN - 2m^2 + N - 2m)/N."""
    _w_fractions(n, m)  # range validation
    return float(1 + Fraction(2 * m * n - 2 * m * m + n - 2 * m, n))


def dicke_max_operator(n: int, normalized: bool = True) -> AdditiveOperator:
    """The maximally fluctuating additive operator of a condensate state.

    Its coefficient vector is (1,..,1, i,..,i, 0,..,0)/2, i.e. the total
    spin-raising operator sum_l sigma_+(l); optionally rescaled to the
    standard normalization sum|c|^2 = N.
    """
    c = np.zeros((3, n), dtype=complex)
    c[0] = 0.5
    c[1] = 0.5j
    op = AdditiveOperator(c)
    return op.normalized() if normalized else op


def binomial_weight(n: int, m: int, theta: float) -> float:
    """Sector weight B_m = C(N,m) cos^2m(theta/2) sin^2(N-m)(theta/2) of a
    spin-coherent product state."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= N, got m={m}, N={n}")
    c2 = np.cos(theta / 2.0) ** 2
    s2 = np.sin(theta / 2.0) ** 2
    return float(comb(n, m) * c2 ** m * s2 ** (n - m))


def hypergeometric_weights(n: int, m: int):
    """Half-chain block weights of a Dicke state.

    Splitting m up-spins over two halves of N/2 sites puts m_a of them in
    the first half with probability C(N/2,m_a) C(N/2,m-m_a) / C(N,m).
    Returns (m_a values, weights), exact ratios converted to float.
    """
    if n % 2:
        raise ValueError("half-chain weights need even N")
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= N, got m={m}, N={n}")
    h = n // 2
    ma = np.arange(max(0, m - h), min(h, m) + 1)
    weights = np.array([float(Fraction(comb(h, int(a)) * comb(h, m - int(a)),
                                       comb(n, m))) for a in ma])
    return ma, weights


def dicke_halfchain_entropy(n: int, m: int) -> float:
    """Half-chain entanglement entropy of a Dicke state, in bits.

    Each fixed split (m_a, m - m_a) contributes a pure product of two
    smaller Dicke states, so the entropy is the Shannon entropy of the
    hypergeometric split distribution.
    """
    _, w = hypergeometric_weights(n, m)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))
