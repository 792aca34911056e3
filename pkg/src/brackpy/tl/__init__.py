"""Grid evaluation: identity checks, curvature tables and point digests."""
from brackpy.tl._check import Report, check_grid, resolve_tolerances
from brackpy.tl._point import PointChecks, evaluate_point, point_digest
from brackpy.tl._table import curvature_table, write_table
