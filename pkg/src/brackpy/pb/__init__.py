"""Poisson-bracket formulation of surface geometry."""
from brackpy.pb._complex import (
    complex_structure_map,
    complex_structure_poisson,
    kahler_bracket,
    kahler_form,
    projected_normal_frame,
    projection,
)
from brackpy.pb._maps import (
    TangentMap,
    bracket,
    bracket_jet1,
    compound_components,
    compound_maps,
    p_map,
    s_map,
    s_operator,
    traces,
)
from brackpy.pb._theorems import (
    gauss_formula_rewrite,
    gaussian_curvature_flat,
    gaussian_curvature_poisson,
    gaussian_curvature_sqrt_g,
    mean_curvature_flat,
    mean_curvature_poisson,
    mean_curvature_sqrt_g,
    normal_connection,
    weingarten_reconstruct,
)
from brackpy.pb._znormals import (
    MultiIndex,
    ZFrame,
    distinct_index_sets,
    h_nested,
    k_nested,
    multi_indices,
    s_trace_scaling,
    z_frame,
    z_gram_schmidt_frame,
    z_vector,
    z_vectors,
)
