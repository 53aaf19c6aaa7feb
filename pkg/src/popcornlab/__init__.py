"""popcornlab: the Thomae popcorn function, spectral densities of
exponentially weighted chain ensembles, Dedekind eta magnitudes near the
real axis, and the lattice-sum identities connecting all three."""

from .chain import (
    ChainEnsemble,
    PeakPoint,
    PeakSeries,
    SpectralGrid,
    build_peak_series,
    edge_series,
    interior_series,
    lifshitz_fit,
    path_eigenvalues,
    peak_intensity,
    peak_position,
    spectral_density,
    spectral_density_grid,
)
from .dyson import DysonChain, borwein_G, dos_edge_asymptote, integrated_dos, theta_of_lambda
from .ensemble import (
    RNG_ALGORITHM,
    SampledEnsemble,
    dense_eigenvalues,
    empirical_density,
    laplacian_shift,
    pooled_eigenvalues,
    sample_blocks,
    squared_frequencies,
)
from .eta import (
    LogEtaValue,
    ModularPoint,
    cusp_asymptote_ratio,
    duality_check,
    h,
    log_abs_eta,
    log_abs_eta_cusp,
    log_abs_eta_qseries,
    log_h,
    reduce_to_fundamental,
)
from .lattice import (
    EULER_GAMMA,
    EpsteinSum,
    QuadraticFormQ,
    epstein_zeta_truncated,
    kronecker_rhs,
    popcorn_from_eta,
    residual_check,
    rho_from_eta,
    theta_peak,
    theta_peak_lattice,
)
from .rationals import (
    ContinuedFraction,
    continued_fraction_of,
    detect_rational,
    farey_sequence,
    mediant,
    orchard_projection,
    popcorn,
    quotient_distribution,
)

__version__ = "0.1.0"
