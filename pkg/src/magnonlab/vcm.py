"""Pauli correlation engine: variance-covariance matrices of additive
observables, their maximum eigenvalue, and the resulting entanglement
classification.

The central object is the 3N x 3N hermitian matrix
V[(a,l),(b,l')] = <sigma_a(l) sigma_b(l')> - <sigma_a(l)><sigma_b(l')>
with row/column ordering (x,1)..(x,N),(y,1)..(y,N),(z,1)..(z,N). Its
largest eigenvalue e_max bounds the fluctuation of every normalized
additive operator via sup <dA+ dA> = N * e_max, and the growth of e_max
with N separates macroscopically entangled states (e_max ~ N) from
normal ones (e_max ~ 1).

Correlations are evaluated in one pass per site pair directly on the
stored amplitude table: a Pauli pair maps every configuration to one
target configuration with a phase, so each of the nine axis combinations
is a single gather-multiply-sum. Summation order is fixed by the basis
ordering, making results reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import lookup_amplitudes
from .errors import NumericalError
from .fits import ScalingSeries, loglog_fit
from .states import PureState

AXES = "xyz"
DENSE_EIG_LIMIT = 3000       # full diagonalization up to this matrix size
SLOPE_TOL = 0.2              # |slope| window for the p=1 / p=2 verdicts
NORMALIZATION_TOL = 1e-6


class AdditiveOperator:
    """Coefficients c[axis, site] of an additive operator
    A = sum_l sum_axis c[axis, l] sigma_axis(l).

    Coefficients may be complex (A need not be hermitian). The flat layout
    matches the VCM ordering: x sites 1..N, then y, then z.
    """

    def __init__(self, coeffs):
        coeffs = np.ascontiguousarray(coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] != 3:
            raise ValueError("coeffs must have shape (3, N)")
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self.n_sites = coeffs.shape[1]

    @classmethod
    def from_flat(cls, flat):
        flat = np.asarray(flat, dtype=complex)
        if flat.size % 3:
            raise ValueError("flat coefficient vector must have 3N entries")
        return cls(flat.reshape(3, flat.size // 3))

    @classmethod
    def uniform(cls, n_sites, axis, value=1.0):
        """c[axis, l] = value for every site, other axes zero."""
        c = np.zeros((3, n_sites), dtype=complex)
        c[AXES.index(axis)] = value
        return cls(c)

    @classmethod
    def staggered(cls, n_sites, axis):
        """c[axis, l] = (-1)^l, the staggered (order-parameter) pattern."""
        c = np.zeros((3, n_sites), dtype=complex)
        c[AXES.index(axis)] = [(-1.0) ** l for l in range(1, n_sites + 1)]
        return cls(c)

    @property
    def flat(self):
        return self.coeffs.reshape(-1)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def normalized(self) -> "AdditiveOperator":
        """Rescale to the additive-operator normalization sum|c|^2 = N."""
        return AdditiveOperator(self.coeffs * np.sqrt(self.n_sites / self.norm2()))

    def __repr__(self):
        return f"AdditiveOperator(N={self.n_sites}, norm2={self.norm2():.6g})"


def hermitian_parts(op: AdditiveOperator):
    """Split A = A' + i A'' into hermitian parts A'=(A+A+)/2, A''=(A-A+)/2i.

    Because the Pauli matrices are hermitian, taking the adjoint conjugates
    the coefficients, so A' and A'' carry Re(c) and Im(c).
    """
    return (AdditiveOperator(op.coeffs.real.astype(complex)),
            AdditiveOperator(op.coeffs.imag.astype(complex)))


class VcmMatrix:
    """Hermitian 3N x 3N variance-covariance matrix with spectrum accessors."""

    def __init__(self, matrix, n_sites):
        matrix = np.ascontiguousarray(matrix, dtype=complex)
        if matrix.shape != (3 * n_sites, 3 * n_sites):
            raise ValueError("matrix must be 3N x 3N")
        if not np.allclose(matrix, matrix.conj().T, atol=1e-12):
            raise NumericalError("variance-covariance matrix is not hermitian")
        matrix.setflags(write=False)
        self.matrix = matrix
        self.n_sites = n_sites
        self._eigh = None

    def _decomposition(self):
        if self._eigh is None:
            self._eigh = np.linalg.eigh(self.matrix)
        return self._eigh

    def eigenvalues(self) -> np.ndarray:
        """Full spectrum, ascending (dense path)."""
        return self._decomposition()[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def entry(self, axis, site, axis2, site2) -> complex:
        i = AXES.index(axis) * self.n_sites + site - 1
        j = AXES.index(axis2) * self.n_sites + site2 - 1
        return complex(self.matrix[i, j])


# -- correlation engine ------------------------------------------------------


def _site_signs(masks, site):
    """sigma_z eigenvalues (+-1) of every configuration at one site."""
    bit = np.int64(1) << np.int64(site - 1)
    return np.where((masks & bit) != 0, 1.0, -1.0)


def _single_site_means(masks, amps, n_sites):
    """<sigma_a(l)> for a in xyz, l in 1..N; real by hermiticity."""
    means = np.zeros((3, n_sites))
    prob = amps.real ** 2 + amps.imag ** 2
    for l in range(1, n_sites + 1):
        s = _site_signs(masks, l)
        bit = np.int64(1) << np.int64(l - 1)
        flipped = lookup_amplitudes(masks, amps, masks ^ bit)
        cross = np.conj(flipped) * amps
        means[0, l - 1] = np.sum(cross).real                  # x
        means[1, l - 1] = np.sum(cross * (1j * s)).real       # y
        means[2, l - 1] = np.sum(prob * s)                    # z
    return means


def _pair_moments(masks, amps, prob, l, lp):
    """3x3 matrix <sigma_a(l) sigma_b(l')> for distinct sites; real values.

    The y action on a ket is sigma_y|cfg> = i s |cfg ^ bit> with s = +-1
    the sigma_z eigenvalue, which gives every axis combination as one
    flip-gather against the amplitude table.
    """
    s1 = _site_signs(masks, l)
    s2 = _site_signs(masks, lp)
    b1 = np.int64(1) << np.int64(l - 1)
    b2 = np.int64(1) << np.int64(lp - 1)
    mom = np.zeros((3, 3))

    mom[2, 2] = np.sum(prob * s1 * s2)

    flip1 = np.conj(lookup_amplitudes(masks, amps, masks ^ b1)) * amps
    mom[0, 2] = np.sum(flip1 * s2).real                       # x z
    mom[1, 2] = np.sum(flip1 * (1j * s1) * s2).real           # y z

    flip2 = np.conj(lookup_amplitudes(masks, amps, masks ^ b2)) * amps
    mom[2, 0] = np.sum(flip2 * s1).real                       # z x
    mom[2, 1] = np.sum(flip2 * (1j * s2) * s1).real           # z y

    both = np.conj(lookup_amplitudes(masks, amps, masks ^ (b1 | b2))) * amps
    mom[0, 0] = np.sum(both).real                             # x x
    mom[0, 1] = np.sum(both * (1j * s2)).real                 # x y
    mom[1, 0] = np.sum(both * (1j * s1)).real                 # y x
    mom[1, 1] = np.sum(both * (-s1 * s2)).real                # y y
    return mom


def pauli_pair_expectation(state, axis, site, axis2=None, site2=None):
    """<sigma_axis(site) sigma_axis2(site2)>, or the single-operator mean
    when the second pair is omitted."""
    masks, amps = state.table()
    n = state.n_sites
    means = _single_site_means(masks, amps, n)
    if axis2 is None:
        return complex(means[AXES.index(axis), site - 1])
    a, b = AXES.index(axis), AXES.index(axis2)
    if site == site2:
        if a == b:
            return complex(1.0)
        eps = {(0, 1): (1, 2), (1, 0): (-1, 2), (1, 2): (1, 0),
               (2, 1): (-1, 0), (2, 0): (1, 1), (0, 2): (-1, 1)}
        sign, c = eps[(a, b)]
        return complex(1j * sign * means[c, site - 1])
    prob = amps.real ** 2 + amps.imag ** 2
    return complex(_pair_moments(masks, amps, prob, site, site2)[a, b])


def build_vcm(state: PureState) -> VcmMatrix:
    """Variance-covariance matrix of all 3N Pauli fluctuations of a state.

    Entries on and above the site diagonal are computed; the rest follow
    by conjugation, so the result is hermitian by construction. Cross-site
    moments of commuting hermitian pairs are real, and single-site means
    are real, so rounding dust in the imaginary parts is dropped where
    hermiticity demands it.
    """
    masks, amps = state.table()
    n = state.n_sites
    prob = amps.real ** 2 + amps.imag ** 2
    means = _single_site_means(masks, amps, n)

    v = np.zeros((3 * n, 3 * n), dtype=complex)
    for l in range(1, n + 1):
        # same site: sigma_a sigma_b = delta_ab + i eps_abc sigma_c
        mx, my, mz = means[:, l - 1]
        same = np.array([[1.0, 1j * mz, -1j * my],
                         [-1j * mz, 1.0, 1j * mx],
                         [1j * my, -1j * mx, 1.0]])
        same -= np.outer(means[:, l - 1], means[:, l - 1])
        for a in range(3):
            for b in range(3):
                v[a * n + l - 1, b * n + l - 1] = same[a, b]
    for l in range(1, n + 1):
        for lp in range(l + 1, n + 1):
            mom = _pair_moments(masks, amps, prob, l, lp)
            conn = mom - np.outer(means[:, l - 1], means[:, lp - 1])
            for a in range(3):
                for b in range(3):
                    v[a * n + l - 1, b * n + lp - 1] = conn[a, b]
                    v[b * n + lp - 1, a * n + l - 1] = conn[a, b]
    return VcmMatrix(v, n)


# -- spectrum and fluctuations ----------------------------------------------


def _fix_phase(vec):
    """Deterministic gauge: first non-negligible component made positive real."""
    idx = np.flatnonzero(np.abs(vec) > 1e-8 * np.abs(vec).max())
    lead = vec[idx[0]]
    return vec * (np.conj(lead) / abs(lead))


def max_eigen(vcm: VcmMatrix, method: str = "auto"):
    """Largest VCM eigenvalue and its eigenvector as an AdditiveOperator.

    The eigenvector is scaled to the additive normalization sum|c|^2 = N
    and phase-fixed for reproducibility. Dense diagonalization is used up
    to 3N = 3000; beyond that a Lanczos largest-eigenpair solve with a
    small degeneracy-resolving block takes over.
    """
    size = vcm.matrix.shape[0]
    if method not in ("auto", "dense", "iterative"):
        raise ValueError(f"unknown eigensolver mode {method!r}")
    if method == "dense" or (method == "auto" and size <= DENSE_EIG_LIMIT):
        evals, evecs = vcm._decomposition()
        e_max = float(evals[-1])
        vec = evecs[:, -1]
    else:
        from scipy.sparse.linalg import ArpackNoConvergence, eigsh

        k = min(6, size - 1)
        try:
            evals, evecs = eigsh(vcm.matrix, k=k, which="LA", tol=1e-12)
        except ArpackNoConvergence as exc:
            raise NumericalError("largest-eigenpair iteration did not converge") from exc
        order = np.argsort(evals)
        e_max = float(evals[order[-1]])
        vec = evecs[:, order[-1]]
    vec = _fix_phase(vec)
    return e_max, AdditiveOperator.from_flat(vec * np.sqrt(vcm.n_sites))


def additive_fluctuation(state: PureState, op: AdditiveOperator) -> float:
    """<dA+ dA> for a normalized additive operator, by direct application.

    This route applies A to the state and never touches the VCM, so it can
    cross-check the quadratic form c+ V c. The operator must satisfy
    sum|c|^2 = N.
    """
    n = state.n_sites
    if op.n_sites != n:
        raise ValueError(f"operator is for N={op.n_sites}, state has N={n}")
    if abs(op.norm2() - n) > NORMALIZATION_TOL:
        raise ValueError(f"operator violates sum|c|^2 = N (got {op.norm2():.9g})")
    masks, amps = state.table()

    cx, cy, cz = op.coeffs
    diag = np.zeros(masks.size, dtype=complex)
    for l in range(1, n + 1):
        if cz[l - 1] != 0:
            diag += cz[l - 1] * _site_signs(masks, l)
    parts_m, parts_a = [masks], [diag * amps]
    for l in range(1, n + 1):
        if cx[l - 1] == 0 and cy[l - 1] == 0:
            continue
        w = cx[l - 1] + 1j * cy[l - 1] * _site_signs(masks, l)
        bit = np.int64(1) << np.int64(l - 1)
        parts_m.append(masks ^ bit)
        parts_a.append(w * amps)

    phi_masks, phi_amps = _combine_chunked(parts_m, parts_a)
    a2 = float(np.sum(phi_amps.real ** 2 + phi_amps.imag ** 2))
    overlap = np.sum(np.conj(lookup_amplitudes(masks, amps, phi_masks)) * phi_amps)
    return a2 - abs(overlap) ** 2


def _combine_chunked(masks_parts, amps_parts, chunk=8):
    """Duplicate-merging concatenation, chunked to bound peak memory."""
    from .states import _combine_terms

    cur_m, cur_a = masks_parts[0], amps_parts[0]
    for i in range(1, len(masks_parts), chunk):
        group_m = [cur_m] + masks_parts[i:i + chunk]
        group_a = [cur_a] + amps_parts[i:i + chunk]
        cur_m, cur_a = _combine_terms(group_m, group_a)
    return cur_m, cur_a


def fluctuation_quadratic_form(vcm: VcmMatrix, op: AdditiveOperator) -> float:
    """<dA+ dA> = c+ V c evaluated on a prebuilt VCM (any normalization)."""
    c = op.flat
    return float(np.real(np.conj(c) @ (vcm.matrix @ c)))


# -- scaling classification ---------------------------------------------------


@dataclass(frozen=True)
class PClassification:
    """Outcome of the e_max-vs-N scaling fit.

    slope is the exponent of e_max = O(N^slope); the entanglement index is
    p = slope + 1. The verdict windows are module constants: p=2 needs
    |slope - 1| <= 0.2, p=1 needs |slope| <= 0.2, anything else is
    indeterminate.
    """

    slope: float
    stderr: float
    verdict: str

    @property
    def p_estimate(self) -> float:
        return self.slope + 1.0


def classify_slope(slope: float) -> str:
    if abs(slope - 1.0) <= SLOPE_TOL:
        return "p=2"
    if abs(slope) <= SLOPE_TOL:
        return "p=1"
    return "indeterminate"


def estimate_p(series: ScalingSeries) -> PClassification:
    """Fit log e_max against log N and classify the entanglement index."""
    if len(series) < 4:
        raise ValueError(f"need at least 4 points to classify, got {len(series)}")
    fit = loglog_fit(series)
    return PClassification(slope=fit.slope, stderr=fit.slope_stderr,
                           verdict=classify_slope(fit.slope))
