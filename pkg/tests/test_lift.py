"""
Tests for the lifted ice quiver, its relations and the boundary presentation.
"""

import sys
from fractions import Fraction
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

import pytest

from src.data_structures import Path
from src.lift import (
    lift_qp, relation_set, closed_form_relation, zigzags, gamma_presentation,
    gamma_grading, phi_arrow_images, phi_image, preprojective_images
)
from src.potential import AlgebraElement, GradingFn, lift_grading, cyclic_derivative
from src.quiver import validate
from src.utils import load_input

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def load(name):
    return load_input(str(FIXTURES / f"{name}.json"))


def test_lift_a2_sets():
    print("\n" + "=" * 80)
    print("TEST: Lifted ice quiver of A2")
    print("=" * 80)

    Q, W, _ = load("a2")
    L = lift_qp(Q, W)
    assert L.quiver.vertices == ("1", "2", "1+", "2+", "1-", "2-")
    assert len(L.quiver.arrows) == 8
    assert L.ice.frozen_vertices == frozenset({"1+", "2+", "1-", "2-"})
    assert L.ice.frozen_arrows == frozenset({"delta_1", "delta_2", "delta_a"})

    delta_a = L.quiver.arrow("delta_a")
    assert (delta_a.tail, delta_a.head) == ("2+", "1-")
    assert L.origin_of("beta_2") == ("beta", "2")
    print(f"  {L!r}")


def test_lifted_potential_a2():
    Q, W, _ = load("a2")
    L = lift_qp(Q, W)
    coefficients = {cycle.arrows: c for c, cycle in L.potential.terms}
    assert coefficients == {
        ("alpha_1", "delta_1", "beta_1"): Fraction(1),
        ("alpha_2", "delta_2", "beta_2"): Fraction(1),
        ("a", "alpha_2", "delta_a", "beta_1"): Fraction(-1),
    }


def test_lift_rejects_loops_and_collisions():
    from src.data_structures import Arrow, Quiver
    from src.potential import normalize_potential
    looped = Quiver(("1",), (Arrow("a", "1", "1"),))
    with pytest.raises(ValueError, match="Loop"):
        lift_qp(looped, normalize_potential(looped, []))

    clash = validate({"vertices": ["1", "2"], "arrows": [{"id": "alpha_1", "tail": "1", "head": "2"}]})
    with pytest.raises(ValueError, match="collides"):
        lift_qp(clash, normalize_potential(clash, []))


def test_relation_set_a2():
    Q, W, _ = load("a2")
    L = lift_qp(Q, W)
    presentation = relation_set(L)
    assert presentation.names == ("d_a", "d_alpha_1", "d_beta_1", "d_alpha_2", "d_beta_2")

    # d_a W~ = -(beta_1 delta_a alpha_2)
    expected = AlgebraElement.from_path(Path.of(L.quiver, ("alpha_2", "delta_a", "beta_1")), -1)
    assert presentation.relation("d_a") == expected

    # d_alpha_1 W~ = beta_1 delta_1 (no arrows into 1)
    assert presentation.relation("d_alpha_1").render() == "beta_1·delta_1"
    # d_alpha_2 W~ = beta_2 delta_2 - a beta_1 delta_a
    rendered = presentation.relation("d_alpha_2")
    assert rendered.terms == {
        Path("2+", "2", ("delta_2", "beta_2")): Fraction(1),
        Path("2+", "2", ("delta_a", "beta_1", "a")): Fraction(-1),
    }


@pytest.mark.parametrize("name", ["a1", "a2", "a3-linear", "kronecker", "cycle3"])
def test_closed_forms_match_derivatives(name):
    Q, W, _ = load(name)
    L = lift_qp(Q, W)
    for arrow in L.ice.mutable_arrows:
        assert closed_form_relation(L, arrow.id) == cyclic_derivative(L.potential, arrow.id)
    assert len(relation_set(L).relations) == len(L.ice.mutable_arrows)


def test_closed_form_rejects_frozen_arrow():
    Q, W, _ = load("a2")
    with pytest.raises(ValueError, match="frozen"):
        closed_form_relation(lift_qp(Q, W), "delta_1")


def test_lift_grading_matches_potential_degree():
    Q, W, _ = load("cycle3")
    L = lift_qp(Q, W)
    deg = lift_grading(Q, W, GradingFn.constant(Q, 1))
    assert {deg.of_path(cycle) for _, cycle in L.potential.terms} == {9}


def test_zigzags_a2():
    Q, _, _ = load("a2")
    found = zigzags(Q)
    assert len(found) == 4
    strict = [z for z in found if z.strict]
    assert len(strict) == 1
    assert strict[0].render() == "(e_1, a, e_2)"
    assert (strict[0].tail, strict[0].head) == ("2", "1")


def test_zigzags_need_acyclic():
    Q, _, _ = load("cycle3")
    with pytest.raises(ValueError):
        zigzags(Q)
    with pytest.raises(ValueError, match="acyclic"):
        gamma_presentation(Q)


def test_gamma_presentation_a3():
    print("\n" + "=" * 80)
    print("TEST: Boundary presentation of A3")
    print("=" * 80)

    Q, _, _ = load("a3-linear")
    gamma = gamma_presentation(Q)
    assert len(gamma.quiver.vertices) == 6
    assert len(gamma.quiver.arrows) == 11
    long_arrow = gamma.quiver.arrow("dbar_b.a")
    assert (long_arrow.tail, long_arrow.head) == ("1-", "3+")

    # 6 paths give 12 relations of types r1/r2; the rest are zig-zag relations
    r12 = [n for n in gamma.names if n.startswith(("r1", "r2"))]
    assert len(r12) == 12
    assert len(gamma.relations) == 12 + len(zigzags(Q))
    print(f"  {len(gamma.relations)} relations")


def test_gamma_r1_a2():
    Q, _, _ = load("a2")
    gamma = gamma_presentation(Q)
    # r1(e_2) = dbar_2 delta_2 - dbar_a delta_a
    r1 = gamma.relation("r1(e_2)")
    assert r1.terms == {
        Path("2+", "2+", ("delta_2", "dbar_2")): Fraction(1),
        Path("2+", "2+", ("delta_a", "dbar_a")): Fraction(-1),
    }


def test_gamma_grading_a2():
    Q, W, _ = load("a2")
    deg = lift_grading(Q, W, GradingFn.constant(Q, 1))
    gdeg = gamma_grading(Q, deg)
    assert gdeg["delta_1"] == 2
    assert gdeg["delta_a"] == 1
    assert gdeg["dbar_1"] == 2
    assert gdeg["dbar_a"] == 3


def test_phi_images_a2():
    Q, _, _ = load("a2")
    images = phi_arrow_images(Q)
    assert images["dbar_a"] == Path("1-", "2+", ("beta_1", "a", "alpha_2"))
    assert images["delta_a"].arrows == ("delta_a",)

    gamma = gamma_presentation(Q)
    x = AlgebraElement.from_path(Path.of(gamma.quiver, ("delta_a", "dbar_1")))
    image = phi_image(Q, x)
    assert image.terms == {Path("2+", "1+", ("delta_a", "beta_1", "alpha_1")): Fraction(1)}

    trivial = AlgebraElement.from_path(Path.trivial("1+"))
    assert phi_image(Q, trivial) == trivial


def test_preprojective_images_a2():
    Q, W, _ = load("a2")
    L = lift_qp(Q, W)
    images = dict(preprojective_images(L))
    assert len(images) == 6
    # delta_1* = d_delta_1 W~ = alpha_1 beta_1
    assert images["delta_1*"].render() == "alpha_1·beta_1"
    assert images["delta_a*"].terms == {Path("1-", "2+", ("beta_1", "a", "alpha_2")): Fraction(-1)}
