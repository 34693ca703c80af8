"""Sampling grids, aliasing analysis and aliased spectra for spin-weighted
fields on the sphere.
"""

__version__ = "0.1.0"

from .aliasing import (
    AliasClass,
    AliasEntry,
    AliasMap,
    aliased_coefficient,
    aliased_eb,
    distance_bound_report,
    enumerate_aliases,
    h_q,
    h_q_direct,
    i_n,
    i_n_halfgrid,
    tau,
)
from .fieldsim import (
    FieldSamples,
    MonteCarloReport,
    SpinCoefficients,
    analyze,
    monte_carlo_spectrum,
    sample_gaussian_coeffs,
    synthesize,
)
from .sampling import (
    SamplingGrid,
    SamplingScheme,
    SymmetryReport,
    build_grid_equiangular,
    build_grid_gauss,
    gauss_nodes,
    gauss_weights_from_derivative,
    validate_symmetry,
)
from .special import (
    HarmonicIndex,
    h_factor,
    jacobi,
    jacobi_deriv,
    jacobi_norm,
    spin_sph_harm,
    wigner_d,
)
from .spectrum import (
    AngularPowerSpectrum,
    BandlimitReport,
    XiFactors,
    aliased_spectrum,
    circular_covariance,
    verify_bandlimit,
    xi_factors,
)

__all__ = [
    "__version__",
    "AliasClass",
    "AliasEntry",
    "AliasMap",
    "AngularPowerSpectrum",
    "BandlimitReport",
    "FieldSamples",
    "HarmonicIndex",
    "MonteCarloReport",
    "SamplingGrid",
    "SamplingScheme",
    "SpinCoefficients",
    "SymmetryReport",
    "XiFactors",
    "aliased_coefficient",
    "aliased_eb",
    "aliased_spectrum",
    "analyze",
    "build_grid_equiangular",
    "build_grid_gauss",
    "circular_covariance",
    "distance_bound_report",
    "enumerate_aliases",
    "gauss_nodes",
    "gauss_weights_from_derivative",
    "h_factor",
    "h_q",
    "h_q_direct",
    "i_n",
    "i_n_halfgrid",
    "jacobi",
    "jacobi_deriv",
    "jacobi_norm",
    "monte_carlo_spectrum",
    "sample_gaussian_coeffs",
    "spin_sph_harm",
    "synthesize",
    "tau",
    "validate_symmetry",
    "verify_bandlimit",
    "wigner_d",
    "xi_factors",
]
