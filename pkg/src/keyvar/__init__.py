"""Exact verification toolkit for the Type R and Type IR key varieties.

The package is organised bottom-up:

- ``poly`` and ``linalg``: exact weighted polynomial rings and linear algebra
- ``pfaffian``: 5x5 skew matrices, Pfaffians and G(2,5)
- ``membership``: ideal membership certificates and span matrices
- ``type_r`` and ``type_ir``: the explicit equations and their checks
- ``intersection``: the rank-2 intersection form computations
- ``registry`` and ``cli``: named checks and the command-line driver
"""

from .poly import (INHOMOGENEOUS, Poly, PolyMap, WeightedRing, evaluate, jacobian, poly_arith,
                   ring, substitute, to_rational, weighted_degree)
from .linalg import PolyMatrix, RatMatrix, rat_det, rat_nullspace, rat_rank, rat_solve
from .pfaffian import (SkewPolyMatrix5, line_quadric_profile, mu_map, pfaffian4, plucker,
                       wedge2)
from .membership import (GeneratorSet, MembershipCertificate, SpanMatrix, equal_mod_ideal,
                         find_certificate, linear_span_matrix, map_preserves)

__version__ = "0.1.0"
