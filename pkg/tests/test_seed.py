"""
Tests for seeds, mutation, specialisation and the grading matrix.
"""

import sys
from itertools import product
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

import pytest

from src.cluster.laurent import LaurentPoly
from src.cluster.seed import (
    Seed, POLARISED, PRINCIPAL, COEFFICIENT_FREE, exchange_matrix, initial_seed, initial_seed_pp,
    mutate, mutate_sequence, mutate_matrix, specialise_minus
)
from src.cluster.grading import (
    grading_matrix, degree_of, g_matrix, c_matrix, check_gc_identity, sign_coherent, check_invariants
)
from src.quiver import validate
from src.utils import load_input

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def load(name):
    return load_input(str(FIXTURES / f"{name}.json"))[0]


def test_exchange_matrix():
    assert exchange_matrix(load("a2")) == ((0, -1), (1, 0))
    assert exchange_matrix(load("kronecker")) == ((0, -2), (2, 0))
    assert exchange_matrix(load("a3-linear")) == ((0, -1, 0), (1, 0, -1), (0, 1, 0))

    two_cycle = validate({"vertices": ["1", "2"], "arrows": [
        {"id": "a", "tail": "1", "head": "2"}, {"id": "b", "tail": "2", "head": "1"}]})
    with pytest.raises(ValueError, match="2-cycle"):
        exchange_matrix(two_cycle)


def test_initial_seeds():
    print("\n" + "=" * 80)
    print("TEST: Initial seeds of A2")
    print("=" * 80)

    Q = load("a2")
    polarised = initial_seed_pp(Q)
    assert polarised.coefficients == POLARISED
    assert polarised.b_ext == ((0, -1), (1, 0), (1, 0), (0, 1), (-1, 0), (0, -1))
    assert len(polarised.frozen) == 4

    principal = initial_seed(Q, PRINCIPAL)
    assert principal.b_ext == ((0, -1), (1, 0), (1, 0), (0, 1))

    plain = initial_seed(Q, COEFFICIENT_FREE)
    assert plain.b_ext == ((0, -1), (1, 0))
    assert plain.frozen == ()
    with pytest.raises(ValueError):
        plain.c_matrix()

    with pytest.raises(ValueError, match="Unknown coefficient"):
        initial_seed(Q, "tropical")
    print(f"  {polarised!r}")


def test_mutation_a2():
    Q = load("a2")
    seed = mutate(initial_seed_pp(Q), 1)
    assert seed.variables[0].render() == "(x2*yp1 + ym1)/x1"
    assert seed.variables[1] == initial_seed_pp(Q).variables[1]
    assert seed.b == ((0, 1), (-1, 0))
    assert seed.c_matrix() == ((-1, 0), (0, 1))


def test_mutation_coefficient_free():
    Q = load("a2")
    seed = mutate(initial_seed(Q, COEFFICIENT_FREE), 1)
    expected = LaurentPoly.from_terms(2, [(1, (-1, 1, 0, 0, 0, 0)), (1, (-1, 0, 0, 0, 0, 0))])
    assert seed.variables[0] == expected


def test_mutation_is_involution():
    for name in ("a2", "a3-linear", "kronecker"):
        start = initial_seed_pp(load(name))
        for k in range(1, start.n + 1):
            assert mutate(mutate(start, k), k) == start


def test_mutation_index_range():
    start = initial_seed_pp(load("a2"))
    with pytest.raises(ValueError, match="1..2"):
        mutate(start, 0)
    with pytest.raises(ValueError):
        mutate(start, 3)


def test_mutate_matrix_rule():
    b = ((0, 2), (-2, 0), (1, 0), (0, 1))
    # b'_ij = b_ij + sgn(b_ik) max(b_ik b_kj, 0) away from column/row k
    assert mutate_matrix(b, 0) == ((0, -2), (2, 0), (-1, 2), (0, 1))


def test_a2_period_five():
    start = initial_seed(load("a2"), COEFFICIENT_FREE)
    seed = mutate_sequence(start, [1, 2, 1, 2, 1])
    # after five alternating mutations the cluster returns with its entries swapped
    assert set(seed.variables) == set(start.variables)


def test_specialise_commutes_with_mutation():
    print("\n" + "=" * 80)
    print("TEST: Specialising ym to 1 commutes with mutation")
    print("=" * 80)

    start = initial_seed_pp(load("a2"))
    words = 0
    for length in range(7):
        for word in product((1, 2), repeat=length):
            mutated_first = specialise_minus(mutate_sequence(start, list(word)))
            specialised_first = mutate_sequence(specialise_minus(start), list(word))
            assert mutated_first == specialised_first, word
            words += 1
    print(f"  ✓ {words} words checked")


def test_specialise_requires_polarised():
    with pytest.raises(ValueError, match="polarised"):
        specialise_minus(initial_seed(load("a2"), PRINCIPAL))
    assert specialise_minus(initial_seed_pp(load("a2"))).coefficients == PRINCIPAL


def test_seed_serialisation():
    seed = mutate_sequence(initial_seed_pp(load("a3-linear")), [1, 3, 2])
    assert Seed.from_dict(seed.to_dict()) == seed

    data = seed.to_dict()
    data["b_ext"][0][1] = 5
    with pytest.raises(ValueError, match="skew-symmetric"):
        Seed.from_dict(data)

    data = seed.to_dict()
    data["variables"] = data["variables"][:2]
    with pytest.raises(ValueError, match="mutable variables"):
        Seed.from_dict(data)


def test_grading_matrix_a2():
    g = grading_matrix(load("a2"))
    assert g.rows == ((1, 0), (0, 1), (0, -1), (1, 0), (0, 0), (0, 0))
    assert g.to_dict()["yp1"] == [0, -1]


def test_degree_of_mutated_variable():
    Q = load("a2")
    g = grading_matrix(Q)
    seed = mutate(initial_seed_pp(Q), 1)
    result = degree_of(seed.variables[0], g)
    assert result.homogeneous
    assert result.degree == (-1, 0)
    assert g_matrix(seed, g) == ((-1, 0), (0, 1))

    x1, x2 = seed.variables[1], LaurentPoly.variable(2, "x1")
    mixed = degree_of(x1 + x2, g)
    assert not mixed.homogeneous
    assert mixed.monomial_degrees == [(0, 1), (1, 0)]


def test_gc_identity_and_sign_coherence():
    for name in ("a2", "a3-linear", "kronecker"):
        Q = load(name)
        seed = mutate_sequence(initial_seed_pp(Q), [1, 2, 1])
        assert check_gc_identity(seed, Q)
        assert sign_coherent(c_matrix(seed))
        report = check_invariants(seed, Q)
        assert report.passed, report.messages


def test_sign_coherence_detects_mixed_column():
    assert sign_coherent(((1, 0), (0, -1)))
    assert not sign_coherent(((1, 0), (-1, 1)))


def test_sign_coherence_reads_columns():
    # rows mix signs, columns (1, 1) and (-1, 0) do not
    assert sign_coherent(((1, -1), (1, 0)))
    assert not sign_coherent(((1, 1), (-1, 0)))
