"""Statistical scattering laboratory for bound three-body interactions.

Measures the chaotic absorptivity of binary-single encounters on grids
over the binary's orbital elements, runs outcome campaigns from a fixed
reference configuration, and compares the flux-based prediction for the
distribution of post-interaction binaries against the measured one.
"""
from .dynamics import (BodyState, ConservedCharges, Decomposition, PairId,
                       SingularConfigurationError, ThreeBodyState,
                       binary_constant, conserved_charges, decompose,
                       most_bound_pair, pair_energy, total_angular_momentum,
                       total_energy)
from .kepler import (OrbitalElements, cartesian_to_elements,
                     elements_to_cartesian, orbital_period,
                     solve_kepler_elliptic, solve_kepler_hyperbolic)
from .integrator import Integrator, IntegratorSettings, integrate_until
from .classify import (ClassifierPolicy, DemocracyCounter,
                       TrajectoryClassifier, hierarchy_ratio,
                       is_chaotic_escape, tidal_factor)
from .scattering import (ChargeSet, GenerationError, allowed_region,
                         draw_absorptivity_state, draw_outcome_state,
                         l_b_max, realization_rng, reference_charges)
from .grids import (DiskGrid, LinearInterpolator2D, bivariate_points,
                    chebyshev_disk_grid, combined_disk_grid,
                    uniform_disk_grid)
from .flux import (DensityMap2D, allowed_area, boundary_corrected_histogram,
                   flux_disk_density, flux_joint, flux_marginal,
                   normalize_by_median, ratio_band)
from .config import CampaignConfig, ConfigError, load_config

__version__ = "0.1.0"
