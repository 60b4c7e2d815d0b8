"""Fractional optical vortices, n-section spiral phase plate states and a CHSH test built on them."""

from .bell import (
    AnalyzerSettings,
    BellResult,
    FringeTable,
    chsh_parameter,
    coincidence_probability,
    correlation_E,
    fringe_scan,
    sample_fringe,
    standard_settings,
)
from .closed_form import (
    OverlapResult,
    overlap_amplitude_base,
    overlap_amplitude_rotated,
    overlap_probability_n,
    product_amplitude,
    self_rotation_amplitude,
    superposed_overlap_amplitude,
)
from .oracle import inner_product, overlap_probability_oracle
from .phase_core import (
    DegenerateSuperposition,
    FractionalCharge,
    PiecewiseExpField,
    canonical_add,
    canonical_angle,
    fractional_vortex_field,
    mode_coefficient,
    rotate_field,
)
from .superposition import (
    ModeSpectrum,
    SuperposedState,
    build_spp_profile,
    build_superposed,
    decompose_superposed,
    symmetry_residual,
    unnormalized_norm,
)

__version__ = "0.1.0"
