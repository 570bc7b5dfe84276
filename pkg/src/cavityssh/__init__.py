"""Cavity photons coupled to a dimerized chain: bands, spectra, nonlinearities."""

from .biphoton import (
    BiphotonState,
    EntropyScanRow,
    SchmidtSpectrum,
    analytic_schmidt,
    apply_vertex,
    edge_momentum_map,
    entropy_scan,
    input_state,
    schmidt_decompose,
)
from .cavity import (
    BubbleTable,
    CavityParams,
    SpectralMap,
    bubble_integral,
    dressed_propagator,
    hopfield_branches,
    photon_self_energy,
    photon_self_energy_n,
    self_energy_spectrum,
    spectral_function,
    spectral_map,
)
from .dressing import (
    DressedBands,
    FermionSelfEnergy,
    bare_photon_green,
    dressed_bands,
    lamb_shift,
    sigma_band,
    sigma_band_dispersive,
    sigma_matrix,
)
from .errors import (
    BelowThresholdError,
    CavitySshError,
    ComputationFailedError,
    ConfigInvalidError,
    CriticalPointError,
    DegenerateDesignError,
    GaplessPointError,
    GridTooNarrowError,
    NoConvergenceError,
    NonFiniteEntryError,
    NonFiniteSampleError,
    NonPositiveFrequencyError,
    PoleOnBoundaryError,
    ZeroNormError,
    ZeroRangeError,
    ZeroSpectralWeightError,
)
from .keldysh import (
    ThermalState,
    bose_occupation,
    keldysh_green,
    keldysh_self_energy,
    occupation,
    retarded_green,
)
from .kerr import (
    KerrResult,
    KerrScanRow,
    kerr_closed_form,
    kerr_from_fit,
    kerr_scan,
    solve_omega_n,
    solve_omega_sequence,
)
from .lattice import (
    BandEdgeParams,
    SshParams,
    band_edge_params,
    band_energies,
    band_gap,
    bloch_phase,
    dipole,
    zak_phase,
)
from .numerics import (
    ComplexSpectrum,
    FrequencyGrid,
    bz_integrate,
    complex_newton,
    pairwise_sum,
    principal_value,
    simpson_integrate,
)
from .vertex import (
    InteractionKernel,
    SaddleSolution,
    gamma4_direct,
    gamma4_direct_grid,
    gamma4_stationary,
    interaction_kernel,
    saddle_points,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SshParams",
    "BandEdgeParams",
    "band_gap",
    "band_energies",
    "dipole",
    "bloch_phase",
    "zak_phase",
    "band_edge_params",
    "CavityParams",
    "SpectralMap",
    "BubbleTable",
    "bubble_integral",
    "photon_self_energy",
    "photon_self_energy_n",
    "self_energy_spectrum",
    "dressed_propagator",
    "spectral_function",
    "spectral_map",
    "hopfield_branches",
    "ThermalState",
    "bose_occupation",
    "keldysh_self_energy",
    "retarded_green",
    "keldysh_green",
    "occupation",
    "KerrResult",
    "KerrScanRow",
    "solve_omega_sequence",
    "solve_omega_n",
    "kerr_from_fit",
    "kerr_closed_form",
    "kerr_scan",
    "InteractionKernel",
    "SaddleSolution",
    "interaction_kernel",
    "gamma4_direct",
    "gamma4_direct_grid",
    "saddle_points",
    "gamma4_stationary",
    "BiphotonState",
    "SchmidtSpectrum",
    "EntropyScanRow",
    "input_state",
    "apply_vertex",
    "schmidt_decompose",
    "analytic_schmidt",
    "edge_momentum_map",
    "entropy_scan",
    "FermionSelfEnergy",
    "DressedBands",
    "bare_photon_green",
    "sigma_band",
    "sigma_matrix",
    "sigma_band_dispersive",
    "lamb_shift",
    "dressed_bands",
    "FrequencyGrid",
    "ComplexSpectrum",
    "pairwise_sum",
    "bz_integrate",
    "simpson_integrate",
    "principal_value",
    "complex_newton",
    "CavitySshError",
    "GaplessPointError",
    "CriticalPointError",
    "NoConvergenceError",
    "BelowThresholdError",
    "ZeroRangeError",
    "ZeroNormError",
    "GridTooNarrowError",
    "ConfigInvalidError",
    "ComputationFailedError",
    "NonFiniteSampleError",
    "NonFiniteEntryError",
    "NonPositiveFrequencyError",
    "DegenerateDesignError",
    "PoleOnBoundaryError",
    "ZeroSpectralWeightError",
]
