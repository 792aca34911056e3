"""Ambient manifolds and classical surface geometry."""
from brackpy.geo._ambient import (
    AmbientManifold,
    christoffel,
    metric_at,
    metric_jet,
    riemann_tensor,
    riemann_term,
)
from brackpy.geo._classical import (
    FramePoint,
    ambient_derivative_tangent,
    classical_complex_structure,
    classical_gaussian_curvature,
    classical_mean_curvature,
    covariant_derivative_normal,
    density_jet,
    frame_at,
    induced_christoffel,
    induced_covariant_derivative,
    tangent_components,
    tangent_vector,
)
from brackpy.geo._surface import (
    DegenerateSurfaceError,
    Density,
    DensityError,
    GridSpec,
    SurfaceSpec,
)
