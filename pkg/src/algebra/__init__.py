from .graded_algebra import GradedQuotientAlgebra, TruncationError, BasisElement, NormalForm, SubalgebraBasis
from .jacobian import (
    truncation_bound, build_frozen_jacobian, interior_check, vertex_test, default_grading, FrozenJacobian
)
from .boundary import (
    verify_phi, preprojective_check, pi_surjectivity, zigzag_redundancy, generated_subalgebra
)
