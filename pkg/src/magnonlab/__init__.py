"""Many-magnon states on a spin-1/2 chain: builders, macroscopic-fluctuation
analysis via the Pauli variance-covariance matrix, and bipartite entropies."""

from .analytic import (
    DickeSpectrum,
    DickeVcmParams,
    binomial_weight,
    dicke_emax,
    dicke_halfchain_entropy,
    dicke_max_operator,
    dicke_spectrum,
    dicke_vcm,
    dicke_vcm_params,
    hypergeometric_weights,
)
from .basis import SectorBasis, popcount
from .entropy import (
    BipartiteCut,
    ReducedDensity,
    SchmidtSpectrum,
    entropy_limit_distinct,
    half_cut,
    halfchain_entropy,
    reconstruct_state,
    reduced_density,
    schmidt_decomposition,
    von_neumann_entropy,
)
from .errors import (
    CapExceededError,
    MagnonlabError,
    NumericalError,
    SpecError,
    VanishingStateError,
)
from .fits import FitResult, ScalingSeries, linear_fit, loglog_fit
from .states import (
    PureState,
    StateSpec,
    all_down,
    apply_pauli,
    band_state,
    band_wavenumbers,
    build_state,
    check_brillouin,
    dicke_state,
    ghz_state,
    inner_product,
    m_magnon_state,
    magnon_annihilate,
    magnon_create,
    magnon_energy,
    modexp_state,
    product_state,
    translated,
    w_state,
    wavenumber,
)
from .vcm import (
    AdditiveOperator,
    PClassification,
    VcmMatrix,
    additive_fluctuation,
    build_vcm,
    estimate_p,
    fluctuation_quadratic_form,
    hermitian_parts,
    max_eigen,
    pauli_pair_expectation,
)

__version__ = "0.1.0"
