"""Small dense linear algebra."""
from brackpy.la._eigen import ConvergenceError, sym_eigen
from brackpy.la._tensor import (
    det,
    gram_schmidt,
    inner,
    inverse,
    levi_civita,
    levi_civita_array,
    normal_projector,
    orthonormal_coframe,
    projector_distance,
)
