"""Semi-discrete curve shortening flow for closed polylines.

Each time step resamples the curve at uniform arclength and then solves the
heat equation on the samples exactly in Fourier space, with diffusivity set
by the current length.
"""

from .diagnostics import (
    CircleLaw,
    circle_length,
    circle_recursion,
    compare_to_dcs_limit,
    dcs_first_step_length,
    dcs_heated_length,
    isoperimetric_ratio,
)
from .flow import (
    CollapseError,
    FlowConfig,
    FlowState,
    Record,
    SingularEvent,
    Trajectory,
    detect_events,
    initial_state,
    run,
    self_convergence,
    step,
)
from .geometry import (
    ClosedPolyline,
    DegenerateCurveError,
    arclength_table,
    aspect_ratio,
    centroid,
    chord_total_curvature,
    extremity_count,
    polygon_length,
    recenter_rescale,
    resample_uniform,
    signed_area,
    turning_total_curvature,
)
from .shapes import KINDS, ShapeSpec, generate, mode_projection, verify_symmetry
from .spectral import dft, frequencies, heat_multiplier, heat_step, idft, spectral_curvature

__version__ = "0.1.0"
