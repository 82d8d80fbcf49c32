"""Pure states of a spin-1/2 chain and builders for many-magnon states.

States live on N sites with periodic boundary conditions. Wavenumbers are
kept as exact integer Brillouin indices j with -N/2 < j <= N/2; the radian
value k = 2*pi*j/N only ever appears inside phase factors, so no float
drift accumulates in the zone bookkeeping.

Amplitudes are stored either per magnon-number sector (dense over the
sector basis, one or several sectors) or as a sparse configuration map.
All states are immutable after construction; builders return normalized
states, while raw operator applications (`magnon_create`, `apply_pauli`)
leave normalization to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd, pi
from typing import Optional, Sequence

import numpy as np

from .basis import SectorBasis, lookup_amplitudes, popcount
from .errors import SpecError, VanishingStateError

NORM_TOL = 1e-12
SPARSE_PRUNE_TOL = 1e-15


def check_brillouin(j: int, n: int) -> int:
    """Validate a Brillouin-zone index -N/2 < j <= N/2 and return it."""
    j = int(j)
    if not -n / 2 < j <= n / 2:
        raise SpecError(f"wavenumber index j={j} outside (-{n}/2, {n}/2] for N={n}")
    return j


def wavenumber(j: int, n: int) -> float:
    """Radian wavenumber k = 2*pi*j/N of a Brillouin index."""
    return 2.0 * pi * j / n


def magnon_energy(j: int, n: int, coupling: float = 1.0) -> float:
    """Excitation energy 8*J*sin^2(k/2) of a single magnon with k = 2*pi*j/N."""
    k = wavenumber(check_brillouin(j, n), n)
    return 8.0 * coupling * np.sin(k / 2.0) ** 2


class PureState:
    """Amplitude vector of an N-site chain, stored per sector or sparsely.

    `blocks` maps magnon number m to a dense complex array over
    SectorBasis(N, m); `sparse` states carry a sorted configuration array
    plus amplitudes instead. Builders always normalize; intermediate
    operator results may carry any norm.
    """

    def __init__(self, n_sites, *, blocks=None, masks=None, amps=None):
        self.n_sites = int(n_sites)
        if (blocks is None) == (masks is None):
            raise ValueError("exactly one of blocks / (masks, amps) required")
        if blocks is not None:
            clean = {}
            for m, arr in sorted(blocks.items()):
                arr = np.ascontiguousarray(arr, dtype=complex)
                if arr.size != comb(self.n_sites, m):
                    raise ValueError(f"sector m={m} expects {comb(self.n_sites, m)} "
                                     f"amplitudes, got {arr.size}")
                arr.setflags(write=False)
                clean[int(m)] = arr
            self.blocks = clean
            self.masks = None
            self.amps = None
        else:
            masks = np.asarray(masks, dtype=np.int64)
            amps = np.asarray(amps, dtype=complex)
            order = np.argsort(masks, kind="stable")
            masks, amps = masks[order], amps[order]
            if masks.size and np.any(masks[1:] == masks[:-1]):
                raise ValueError("duplicate configurations in sparse state")
            keep = np.abs(amps) > SPARSE_PRUNE_TOL
            self.masks = np.ascontiguousarray(masks[keep])
            self.amps = np.ascontiguousarray(amps[keep])
            self.masks.setflags(write=False)
            self.amps.setflags(write=False)
            self.blocks = None
        self._table = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_sector(cls, n_sites, m, amps):
        return cls(n_sites, blocks={m: amps})

    @classmethod
    def from_blocks(cls, n_sites, blocks):
        return cls(n_sites, blocks=blocks)

    @classmethod
    def from_sparse(cls, n_sites, masks, amps):
        return cls(n_sites, masks=masks, amps=amps)

    # -- views ----------------------------------------------------------

    @property
    def rep(self) -> str:
        if self.blocks is None:
            return "sparse"
        return "sector" if len(self.blocks) == 1 else "multi-sector"

    @property
    def sectors(self):
        if self.blocks is not None:
            return tuple(self.blocks)
        return tuple(np.unique(popcount(self.masks)).tolist())

    def table(self):
        """Flat (masks, amplitudes) view sorted by configuration value."""
        if self._table is None:
            if self.blocks is None:
                self._table = (self.masks, self.amps)
            else:
                masks = np.concatenate(
                    [SectorBasis(self.n_sites, m).masks for m in self.blocks])
                amps = np.concatenate(list(self.blocks.values()))
                order = np.argsort(masks, kind="stable")
                masks, amps = masks[order], amps[order]
                masks.setflags(write=False)
                amps.setflags(write=False)
                self._table = (masks, amps)
        return self._table

    def block(self, m) -> np.ndarray:
        """Dense amplitudes of sector m aligned with SectorBasis(N, m)."""
        if self.blocks is not None:
            if m not in self.blocks:
                return np.zeros(comb(self.n_sites, m), dtype=complex)
            return self.blocks[m]
        basis = SectorBasis(self.n_sites, m)
        sel = popcount(self.masks) == m
        out = np.zeros(basis.dim, dtype=complex)
        out[basis.rank(self.masks[sel])] = self.amps[sel]
        return out

    def amplitude(self, mask) -> complex:
        masks, amps = self.table()
        return complex(lookup_amplitudes(masks, amps, np.int64(mask)))

    def norm(self) -> float:
        _, amps = self.table()
        return float(np.sqrt(np.sum(amps.real ** 2 + amps.imag ** 2)))

    def normalized(self) -> "PureState":
        n = self.norm()
        if n < NORM_TOL:
            raise VanishingStateError("state norm below 1e-12; nothing to normalize")
        return self._scaled(1.0 / n)

    def _scaled(self, factor) -> "PureState":
        if self.blocks is not None:
            return PureState(self.n_sites,
                             blocks={m: a * factor for m, a in self.blocks.items()})
        return PureState(self.n_sites, masks=self.masks, amps=self.amps * factor)

    def sector_weights(self) -> dict:
        """Total weight sum(|amplitude|^2) per magnon number."""
        if self.blocks is not None:
            return {m: float(np.sum(np.abs(a) ** 2)) for m, a in self.blocks.items()}
        pops = popcount(self.masks)
        return {int(m): float(np.sum(np.abs(self.amps[pops == m]) ** 2))
                for m in np.unique(pops)}

    def dense_vector(self) -> np.ndarray:
        """Full 2^N amplitude vector (small N only; meant for cross-checks)."""
        if self.n_sites > 24:
            raise ValueError("dense vector limited to N <= 24")
        masks, amps = self.table()
        vec = np.zeros(1 << self.n_sites, dtype=complex)
        vec[masks] = amps
        return vec

    def __repr__(self):
        return f"PureState(N={self.n_sites}, rep={self.rep}, sectors={self.sectors})"


def all_down(n_sites: int) -> PureState:
    """The fully polarized state with every spin down (the magnon vacuum)."""
    return PureState.from_sector(n_sites, 0, np.ones(1, dtype=complex))


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.n_sites != b.n_sites:
        raise ValueError(f"site-count mismatch: {a.n_sites} vs {b.n_sites}")
    am, aa = a.table()
    bm, ba = b.table()
    if am.size > bm.size:
        return complex(np.conj(inner_product(b, a)))
    vals = lookup_amplitudes(bm, ba, am)
    return complex(np.sum(np.conj(aa) * vals))


def apply_pauli(state: PureState, axis: str, site: int) -> PureState:
    """sigma_axis(site)|state>, axis in 'xyz+-'; output is not normalized."""
    n = state.n_sites
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")
    masks, amps = state.table()
    bit = np.int64(1) << np.int64(site - 1)
    up = (masks & bit) != 0
    if axis == "z":
        out_masks = masks
        out_amps = np.where(up, amps, -amps)
    elif axis == "x":
        out_masks = masks ^ bit
        out_amps = amps
    elif axis == "y":
        # sigma_y|up> = i|down>, sigma_y|down> = -i|up>
        out_masks = masks ^ bit
        out_amps = np.where(up, 1j, -1j) * amps
    elif axis == "+":
        out_masks = masks[~up] ^ bit
        out_amps = amps[~up]
    elif axis == "-":
        out_masks = masks[up] ^ bit
        out_amps = amps[up]
    else:
        raise ValueError(f"unknown Pauli axis {axis!r}")
    return PureState.from_sparse(n, out_masks, out_amps)


def _raise_block(n, m, amps, j):
    """sigma_+ phase sum applied to one sector block: m -> m+1 amplitudes."""
    src = SectorBasis(n, m)
    dst = SectorBasis(n, m + 1)
    out = np.zeros(dst.dim, dtype=complex)
    phase = np.exp(2j * pi * j / n * np.arange(1, n + 1)) / np.sqrt(n)
    for l in range(1, n + 1):
        bit = np.int64(1) << np.int64(l - 1)
        down = (src.masks & bit) == 0
        if not np.any(down):
            continue
        idx = np.searchsorted(dst.masks, src.masks[down] | bit)
        np.add.at(out, idx, phase[l - 1] * amps[down])
    return out


def magnon_create(state: PureState, j: int) -> PureState:
    """Apply the magnon creation operator (1/sqrt(N)) sum_l e^{ikl} sigma_+(l).

    Raises every sector by one magnon. The result is returned as-is (not
    renormalized); a vanishing result (norm < 1e-12 times the input norm)
    raises VanishingStateError.
    """
    n = state.n_sites
    j = check_brillouin(j, n)
    if state.blocks is not None:
        raised = {m + 1: _raise_block(n, m, a, j)
                  for m, a in state.blocks.items() if m < n}
        if not raised:
            raise VanishingStateError("all spins up: creation annihilates the state")
        out = PureState.from_blocks(n, raised)
    else:
        masks, amps = state.table()
        parts_m, parts_a = [], []
        phase = np.exp(2j * pi * j / n * np.arange(1, n + 1)) / np.sqrt(n)
        for l in range(1, n + 1):
            bit = np.int64(1) << np.int64(l - 1)
            down = (masks & bit) == 0
            parts_m.append(masks[down] | bit)
            parts_a.append(phase[l - 1] * amps[down])
        out_masks, out_amps = _combine_terms(parts_m, parts_a)
        out = PureState.from_sparse(n, out_masks, out_amps)
    if out.norm() < NORM_TOL * max(state.norm(), 1.0):
        raise VanishingStateError(f"magnon creation with j={j} annihilated the state")
    return out


def magnon_annihilate(state: PureState, j: int) -> PureState:
    """Adjoint of magnon_create: (1/sqrt(N)) sum_l e^{-ikl} sigma_-(l). Not normalized."""
    n = state.n_sites
    j = check_brillouin(j, n)
    masks, amps = state.table()
    phase = np.exp(-2j * pi * j / n * np.arange(1, n + 1)) / np.sqrt(n)
    parts_m, parts_a = [], []
    for l in range(1, n + 1):
        bit = np.int64(1) << np.int64(l - 1)
        up = (masks & bit) != 0
        parts_m.append(masks[up] ^ bit)
        parts_a.append(phase[l - 1] * amps[up])
    out_masks, out_amps = _combine_terms(parts_m, parts_a)
    return PureState.from_sparse(n, out_masks, out_amps)


def _combine_terms(masks_parts, amps_parts):
    """Merge duplicate configurations in a concatenated coordinate list."""
    masks = np.concatenate(masks_parts) if masks_parts else np.empty(0, np.int64)
    amps = np.concatenate(amps_parts) if amps_parts else np.empty(0, complex)
    if masks.size == 0:
        return masks, amps
    order = np.argsort(masks, kind="stable")
    masks, amps = masks[order], amps[order]
    boundary = np.empty(masks.size, dtype=bool)
    boundary[0] = True
    boundary[1:] = masks[1:] != masks[:-1]
    starts = np.flatnonzero(boundary)
    summed = np.add.reduceat(amps, starts)
    return masks[starts], summed


def m_magnon_state(n_sites: int, js: Sequence[int]) -> PureState:
    """Normalized m-magnon state with Brillouin indices js (any order).

    Creation operators commute, so the indices are applied in ascending
    order for a canonical floating-point result; the single normalization
    at the end absorbs the bosonic factorials and the hard-core correction.
    """
    js = [check_brillouin(j, n_sites) for j in js]
    if not 1 <= len(js) <= n_sites:
        raise SpecError(f"need 1 <= m <= N magnons, got m={len(js)}, N={n_sites}")
    state = all_down(n_sites)
    for j in sorted(js):
        state = magnon_create(state, j)
    return state.normalized()


def dicke_state(n_sites: int, m: int) -> PureState:
    """Equal-amplitude superposition of all configurations with m up-spins.

    Identical to m_magnon_state with m zero wavenumbers, built directly.
    """
    if not 0 <= m <= n_sites:
        raise SpecError(f"need 0 <= m <= N, got m={m}, N={n_sites}")
    dim = comb(n_sites, m)
    return PureState.from_sector(n_sites, m,
                                 np.full(dim, 1.0 / np.sqrt(dim), dtype=complex))


def w_state(n_sites: int) -> PureState:
    """Single k=0 magnon on the vacuum: N equal amplitudes 1/sqrt(N)."""
    return m_magnon_state(n_sites, [0])


def ghz_state(n_sites: int) -> PureState:
    """(|all down> + |all up>)/sqrt(2)."""
    masks = np.array([0, (1 << n_sites) - 1], dtype=np.int64)
    amps = np.full(2, 1.0 / np.sqrt(2.0), dtype=complex)
    return PureState.from_sparse(n_sites, masks, amps)


def band_wavenumbers(n_sites: int, m: int) -> list:
    """Brillouin indices 0, +1, -1, +2, -2, ... filling the zone from the bottom.

    The magnon dispersion depends on |k| only, so +j/-j pairs are
    degenerate; ties are broken +j first. -N/2 is outside the zone, so for
    m = N the final index is +N/2 alone.
    """
    if not 0 <= m <= n_sites:
        raise SpecError(f"band filling needs m <= N, got m={m}, N={n_sites}")
    js = [0][:m]
    step = 1
    while len(js) < m:
        js.append(check_brillouin(step, n_sites))
        if len(js) < m and -step > -n_sites / 2:
            js.append(-step)
        step += 1
    return js


def band_state(n_sites: int, m: int, extras: Sequence[int] = ()) -> PureState:
    """m magnons with all-distinct wavenumbers filling the zone from the
    bottom, plus optional extra Brillouin indices appended afterwards."""
    js = band_wavenumbers(n_sites, m) + [check_brillouin(j, n_sites) for j in extras]
    return m_magnon_state(n_sites, js)


def product_state(n_sites: int, theta: float, alpha: float) -> PureState:
    """Spin-coherent product state with direction angles (theta, alpha).

    Every site carries e^{-i alpha} cos(theta/2)|up> + sin(theta/2)|down>;
    the sector-m projection is e^{-i m alpha} sqrt(B_m) times the m-magnon
    condensate, with B_m the binomial weight.
    """
    if not 0 <= theta <= pi:
        raise SpecError(f"need 0 <= theta <= pi, got {theta}")
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    blocks = {}
    for m in range(n_sites + 1):
        per_config = np.exp(-1j * m * alpha) * c ** m * s ** (n_sites - m)
        if abs(per_config) < SPARSE_PRUNE_TOL:  # rounding dust at theta = 0, pi
            continue
        blocks[m] = np.full(comb(n_sites, m), per_config, dtype=complex)
    return PureState.from_blocks(n_sites, blocks).normalized()


def modexp_state(n1: int, x: int, modulus: int) -> PureState:
    """Uniform superposition sum_a |a>|x^a mod M> over a first register of
    n1 qubits, with the second register sized to hold values below M.

    Register 1 occupies sites 1..n1 (low bits), register 2 the remaining
    ceil(log2 M) sites. Requires gcd(x, M) = 1 so the modular powers cycle.
    """
    if modulus < 3:
        raise SpecError(f"modulus must be >= 3, got {modulus}")
    if gcd(x, modulus) != 1:
        raise SpecError(f"x={x} and modulus={modulus} share a factor")
    if n1 < 1:
        raise SpecError("first register needs at least one qubit")
    n2 = int(modulus - 1).bit_length()
    masks = np.empty(1 << n1, dtype=np.int64)
    value = 1 % modulus
    for a in range(1 << n1):
        masks[a] = a | (value << n1)
        value = (value * x) % modulus
    amps = np.full(1 << n1, 2.0 ** (-n1 / 2.0), dtype=complex)
    return PureState.from_sparse(n1 + n2, masks, amps)


def translated(state: PureState, shift: int = 1) -> PureState:
    """Cyclically move every site l to l+shift (site N wraps to 1)."""
    n = state.n_sites
    shift %= n
    masks, amps = state.table()
    full = np.int64((1 << n) - 1)
    rot = ((masks << shift) | (masks >> (n - shift))) & full if shift else masks
    return PureState.from_sparse(n, rot, amps)


# -- parsed state descriptions ---------------------------------------------


@dataclass(frozen=True)
class StateSpec:
    """Concrete description of one buildable state family.

    For modexp, `n` is the first-register width and the chain length is
    n + ceil(log2 modulus).
    """

    family: str
    n: int
    m: Optional[int] = None
    ks: tuple = ()
    extras: tuple = ()
    theta: Optional[float] = None
    alpha: Optional[float] = None
    x: Optional[int] = None
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.family not in _BUILDERS:
            raise SpecError(f"unknown state family {self.family!r}")
        if self.n < 1:
            raise SpecError(f"need at least one site, got N={self.n}")
        if self.family in ("dicke", "band") and not 0 <= self.m <= self.n:
            raise SpecError(f"need 0 <= m <= N, got m={self.m}, N={self.n}")
        if self.family == "magnons":
            if not 1 <= len(self.ks) <= self.n:
                raise SpecError(f"need 1 <= m <= N magnons, got {len(self.ks)}")
            for j in self.ks:
                check_brillouin(j, self.n)
        if self.family == "band":
            for j in self.extras:
                check_brillouin(j, self.n)
        if self.family == "modexp":
            if self.modulus is None or self.modulus < 3:
                raise SpecError(f"modulus must be >= 3, got {self.modulus}")
            if gcd(self.x, self.modulus) != 1:
                raise SpecError(f"x={self.x} and modulus={self.modulus} "
                                "share a factor")

    @property
    def n_sites(self) -> int:
        if self.family == "modexp":
            return self.n + int(self.modulus - 1).bit_length()
        return self.n

    def magnon_count(self) -> Optional[int]:
        """Total magnons of the built state, when the family conserves them."""
        if self.family == "magnons":
            return len(self.ks)
        if self.family == "dicke":
            return self.m
        if self.family == "band":
            return self.m + len(self.extras)
        if self.family == "w":
            return 1
        return None


_BUILDERS = {
    "magnons": lambda s: m_magnon_state(s.n, s.ks),
    "dicke": lambda s: dicke_state(s.n, s.m),
    "band": lambda s: band_state(s.n, s.m, s.extras),
    "product": lambda s: product_state(s.n, s.theta, s.alpha),
    "ghz": lambda s: ghz_state(s.n),
    "w": lambda s: w_state(s.n),
    "modexp": lambda s: modexp_state(s.n, s.x, s.modulus),
}


def build_state(spec: StateSpec) -> PureState:
    """Construct the state a StateSpec describes."""
    return _BUILDERS[spec.family](spec)
