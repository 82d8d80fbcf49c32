"""Bipartite cuts, reduced density operators, Schmidt spectra and entropies.

The chain is cut into a contiguous prefix A (sites 1..n_a, the low bits)
and the remainder B. Magnon-number conservation makes the coefficient
matrix of a single-sector state block diagonal over the A-side magnon
number m_a, so reduced densities and Schmidt spectra are assembled block
by block and the full 2^(N/2) density matrix is never materialized.
States spread over several sectors (spin-coherent products, GHZ) keep
their cross-sector coherences: they are handled through one combined
coefficient matrix over the configurations actually present.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from .basis import popcount
from .errors import CapExceededError, NumericalError
from .states import PureState

RANK_TOL = 1e-12
TRACE_TOL = 1e-8
MAX_COEFF_ENTRIES = 1 << 26  # guard for the combined (non-blocked) path


@dataclass(frozen=True)
class BipartiteCut:
    """Contiguous bipartition: subsystem A is sites 1..n_a."""

    n_sites: int
    n_a: int

    def __post_init__(self):
        if not 1 <= self.n_a < self.n_sites:
            raise ValueError(f"need 1 <= n_a < N, got n_a={self.n_a}, N={self.n_sites}")

    @property
    def n_b(self) -> int:
        return self.n_sites - self.n_a


def half_cut(n_sites: int) -> BipartiteCut:
    """The half-chain cut; defined for even N only."""
    if n_sites % 2:
        raise ValueError(f"half-chain cut needs even N, got {n_sites}")
    return BipartiteCut(n_sites, n_sites // 2)


def _coefficient_blocks(state: PureState, cut: BipartiteCut):
    """Amplitude matrices M[a, b] with psi = sum_ab M[a,b] |a>|b>.

    Returns a list of (m_a label, a_masks, b_masks, matrix). Single-sector
    states give one block per A-side magnon number; anything else gives a
    single combined block labeled None.
    """
    if cut.n_sites != state.n_sites:
        raise ValueError("cut and state disagree on N")
    masks, amps = state.table()
    a_part = masks & np.int64((1 << cut.n_a) - 1)
    b_part = masks >> np.int64(cut.n_a)

    blocks = []
    if len(state.sectors) == 1:
        pops = popcount(a_part)
        for m_a in np.unique(pops):
            sel = pops == m_a
            blocks.append((int(m_a),) + _scatter(a_part[sel], b_part[sel], amps[sel]))
    else:
        if masks.size and np.unique(a_part).size * np.unique(b_part).size > MAX_COEFF_ENTRIES:
            raise CapExceededError(
                "combined coefficient matrix too large for the multi-sector "
                "path (magnonlab.entropy)")
        blocks.append((None,) + _scatter(a_part, b_part, amps))
    return blocks


def _scatter(a_part, b_part, amps):
    a_masks, a_idx = np.unique(a_part, return_inverse=True)
    b_masks, b_idx = np.unique(b_part, return_inverse=True)
    matrix = np.zeros((a_masks.size, b_masks.size), dtype=complex)
    matrix[a_idx, b_idx] = amps
    return a_masks, b_masks, matrix


class ReducedDensity:
    """Block-diagonal reduced density operator of subsystem A.

    Blocks are labeled by the A-side magnon number (label None for the
    combined multi-sector block). Each block is hermitian positive
    semidefinite over the A-configurations present; the labels partition
    the trace, which must be 1.
    """

    def __init__(self, cut, blocks):
        self.cut = cut
        self.blocks = blocks  # list of (label, a_masks, matrix)
        tr = self.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise NumericalError(f"reduced density trace {tr!r} deviates from 1")

    def trace(self) -> float:
        return float(sum(np.trace(mat).real for _, _, mat in self.blocks))

    def block_weights(self) -> dict:
        return {label: float(np.trace(mat).real) for label, _, mat in self.blocks}

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, ascending, concatenated over blocks."""
        vals = np.concatenate([np.linalg.eigvalsh(mat) for _, _, mat in self.blocks])
        return np.sort(vals)

    def dense(self) -> np.ndarray:
        """Assemble the full 2^n_a matrix (small subsystems only)."""
        if self.cut.n_a > 14:
            raise ValueError("dense assembly limited to n_a <= 14")
        n = 1 << self.cut.n_a
        out = np.zeros((n, n), dtype=complex)
        for _, a_masks, mat in self.blocks:
            out[np.ix_(a_masks, a_masks)] += mat
        return out


def reduced_density(state: PureState, cut: Optional[BipartiteCut] = None) -> ReducedDensity:
    """Partial trace over subsystem B, assembled per A-side magnon block."""
    if cut is None:
        cut = half_cut(state.n_sites)
    blocks = [(label, a_masks, mat @ mat.conj().T)
              for label, a_masks, _b_masks, mat in _coefficient_blocks(state, cut)]
    return ReducedDensity(cut, blocks)


@dataclass(frozen=True)
class SchmidtTerm:
    """One Schmidt pair: coefficient, A-block label and the two factors."""

    coefficient: float
    label: Optional[int]
    a_masks: np.ndarray
    a_amps: np.ndarray
    b_masks: np.ndarray
    b_amps: np.ndarray


class SchmidtSpectrum:
    """Schmidt coefficients of a bipartite cut, largest first.

    Coefficients below RANK_TOL are kept in the spectrum (they carry no
    entropy) but do not count toward the rank and get no vectors.
    """

    def __init__(self, cut, coefficients, labels, terms=None):
        order = np.argsort(coefficients)[::-1]
        self.cut = cut
        self.coefficients = np.asarray(coefficients, dtype=float)[order]
        self.labels = [labels[i] for i in order]
        self.terms = terms
        total = float(np.sum(self.coefficients ** 2))
        if abs(total - 1.0) > 1e-10:
            raise NumericalError(f"Schmidt weights sum to {total!r}, not 1")

    def weights(self) -> np.ndarray:
        return self.coefficients ** 2

    def rank(self, tol: float = RANK_TOL) -> int:
        return int(np.sum(self.coefficients > tol))

    def entropy(self, base: float = 2.0) -> float:
        return entropy_of_probabilities(self.weights(), base=base)


def schmidt_decomposition(state: PureState, cut: Optional[BipartiteCut] = None,
                          return_vectors: bool = False,
                          method: str = "gram") -> SchmidtSpectrum:
    """Exact Schmidt form of a state across a cut.

    Per coefficient block, the Gram matrix of the B-side columns is
    diagonalized (method "gram", the default); its eigenvalues are the
    squared Schmidt coefficients and its eigenvectors the B factors, from
    which the A factors follow. method "svd" runs a singular value
    decomposition instead, as an independent route to the same spectrum.
    """
    if cut is None:
        cut = half_cut(state.n_sites)
    if method not in ("gram", "svd"):
        raise ValueError(f"unknown Schmidt method {method!r}")
    coeffs: List[float] = []
    labels: List[Optional[int]] = []
    terms: List[SchmidtTerm] = [] if return_vectors else None
    for label, a_masks, b_masks, mat in _coefficient_blocks(state, cut):
        if method == "svd":
            u, s, vh = np.linalg.svd(mat, full_matrices=False)
            b_vecs = vh.conj().T
            a_vecs = u
            lam = s
        else:
            gram = mat.conj().T @ mat
            evals, evecs = np.linalg.eigh(gram)
            evals = np.clip(evals, 0.0, None)
            # eigh leaves O(eps * ||G||) dust on exact zero modes, whose
            # square root would masquerade as a genuine Schmidt weight
            if evals.size:
                evals[evals < evals[-1] * 1e-14] = 0.0
            lam = np.sqrt(evals)[::-1]
            b_vecs = evecs[:, ::-1]
            a_vecs = None  # built on demand below
        for i, s_i in enumerate(lam):
            coeffs.append(float(s_i))
            labels.append(label)
            if return_vectors and s_i > RANK_TOL:
                v = b_vecs[:, i]
                u_i = a_vecs[:, i] if a_vecs is not None else (mat @ v) / s_i
                terms.append(SchmidtTerm(float(s_i), label,
                                         a_masks, u_i, b_masks, v.conj()))
    return SchmidtSpectrum(cut, np.array(coeffs), labels, terms)


def reconstruct_state(spectrum: SchmidtSpectrum) -> PureState:
    """Rebuild sum_i lambda_i |u_i>|v_i> as a PureState (fidelity checks)."""
    if spectrum.terms is None:
        raise ValueError("decomposition was run without return_vectors=True")
    cut = spectrum.cut
    parts_m, parts_a = [], []
    for t in spectrum.terms:
        amp = t.coefficient * np.outer(t.a_amps, t.b_amps)
        masks = (t.a_masks[:, None] | (t.b_masks[None, :] << np.int64(cut.n_a)))
        parts_m.append(masks.reshape(-1))
        parts_a.append(amp.reshape(-1))
    from .states import _combine_terms

    masks, amps = _combine_terms(parts_m, parts_a)
    return PureState.from_sparse(cut.n_sites, masks, amps)


def entropy_of_probabilities(p, base: float = 2.0) -> float:
    """Shannon entropy -sum p log p with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -1e-9):
        raise NumericalError("negative probability in entropy input")
    total = float(np.sum(p))
    if abs(total - 1.0) > TRACE_TOL:
        raise NumericalError(f"probabilities sum to {total!r}, not 1")
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)) / np.log(base))


def von_neumann_entropy(obj, base: float = 2.0) -> float:
    """Entropy of a ReducedDensity, SchmidtSpectrum, density matrix or
    probability vector; base 2 by default (bits), base e for nats."""
    if isinstance(obj, ReducedDensity):
        return entropy_of_probabilities(np.clip(obj.eigenvalues(), 0.0, None), base)
    if isinstance(obj, SchmidtSpectrum):
        return obj.entropy(base=base)
    arr = np.asarray(obj)
    if arr.ndim == 2:
        if not np.allclose(arr, arr.conj().T, atol=1e-10):
            raise NumericalError("density matrix is not hermitian")
        return entropy_of_probabilities(
            np.clip(np.linalg.eigvalsh(arr), 0.0, None), base)
    return entropy_of_probabilities(arr, base)


def halfchain_entropy(state: PureState, base: float = 2.0) -> float:
    """Half-chain von Neumann entropy of a state, via the blocked Schmidt path."""
    return schmidt_decomposition(state).entropy(base=base)


def entropy_limit_distinct(m: int) -> float:
    """Large-N half-chain entropy of m magnons with all-distinct wavenumbers.

    Each magnon independently ends up in either half, giving Schmidt rank
    2^m with equal coefficients, hence m bits. Repeated wavenumbers merge
    Schmidt vectors and push the limit strictly below m.
    """
    if m < 0:
        raise ValueError("magnon count must be nonnegative")
    return float(m)
