from .laurent import LaurentPoly, LaurentDivisionError, laurent_exact_div, variable_names
from .seed import (
    Seed, POLARISED, PRINCIPAL, COEFFICIENT_FREE, exchange_matrix, initial_seed, initial_seed_pp,
    mutate, mutate_sequence, mutate_matrix, exchange_monomials, specialise_minus
)
from .grading import (
    GradingMatrix, grading_matrix, degree_of, g_matrix, c_matrix, check_gc_identity, sign_coherent,
    check_invariants
)
from .exchange_graph import ExchangeGraph, exchange_graph, matches_coefficient_free, random_walks
