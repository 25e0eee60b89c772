"""
Tests for the simple-module complexes and the exactness certificate.
"""

import sys
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

from fractions import Fraction

import pytest

from src.data_structures import Path
from src.potential import AlgebraElement
from src.algebra.jacobian import build_frozen_jacobian
from src.algebra.linear_algebra import compose_is_zero
from src.homcheck import (
    MUTABLE, PLUS, MINUS, build_simple_complex, check_vertex, cy_certificate, degree_range,
    potential_degree, kernel_witness, get_executor
)
from src.utils import load_input

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def load(name):
    return load_input(str(FIXTURES / f"{name}.json"))


@pytest.fixture(scope="module")
def a2_jacobian():
    Q, W, _ = load("a2")
    return build_frozen_jacobian(Q, W)


def test_vertex_kinds(a2_jacobian):
    A, L = a2_jacobian.algebra, a2_jacobian.lifted
    assert build_simple_complex(A, L, "1").kind == MUTABLE
    assert build_simple_complex(A, L, "2+").kind == PLUS
    assert build_simple_complex(A, L, "2-").kind == MINUS
    with pytest.raises(ValueError, match="Unknown vertex"):
        build_simple_complex(A, L, "7")


def test_complex_summands_a2(a2_jacobian):
    A, L = a2_jacobian.algebra, a2_jacobian.lifted
    c = build_simple_complex(A, L, "1")
    assert [a.id for a in c.in_arrows] == ["beta_1"]
    assert sorted(a.id for a in c.out_arrows) == ["a", "alpha_1"]

    # the M2 entry toward alpha_1 is right multiplication by delta_1
    delta_1 = AlgebraElement.from_path(Path.of(L.quiver, ("delta_1",)))
    assert c.blocks[("beta_1", "alpha_1")] == delta_1

    minus = build_simple_complex(A, L, "1-")
    assert minus.in_arrows == []
    plus = build_simple_complex(A, L, "1+")
    assert [a.id for a in plus.in_arrows] == ["alpha_1"]


def test_potential_degree(a2_jacobian):
    assert potential_degree(a2_jacobian.algebra, a2_jacobian.lifted) == 4


def test_complex_property_every_degree(a2_jacobian):
    A, L = a2_jacobian.algebra, a2_jacobian.lifted
    first, last = degree_range(A, 4)
    for v in L.quiver.vertices:
        c = build_simple_complex(A, L, v)
        for N in range(first, last + 1):
            maps = c.degree(N)
            assert compose_is_zero(maps.m2, maps.m3), (v, N)
            assert compose_is_zero(maps.m1, maps.m2), (v, N)
            if c.kind != MUTABLE:
                assert maps.dims[0] == 0


def test_check_vertex_a2(a2_jacobian):
    A, L = a2_jacobian.algebra, a2_jacobian.lifted
    for v in L.quiver.vertices:
        entry = check_vertex(A, L, v)
        assert entry.passed, [d.to_dict() for d in entry.failures]


@pytest.mark.parametrize("name", ["a1", "a2", "a3-linear", "a4-linear"])
def test_certificate_passes_complete(name):
    print("\n" + "=" * 80)
    print(f"TEST: Exactness certificate for {name}")
    print("=" * 80)

    Q, W, _ = load(name)
    certificate = cy_certificate(Q, W)
    assert certificate.complete
    assert certificate.passed
    assert len(certificate.vertices) == 3 * len(Q.vertices)
    print(f"  ✓ {len(certificate.vertices)} vertices, degrees {certificate.degree_range}")


def test_certificate_a1_degree_range():
    Q, W, _ = load("a1")
    certificate = cy_certificate(Q, W)
    # top degree 2 plus deg(W~) = 4
    assert certificate.degree_range == (0, 6)
    assert certificate.to_dict()["passed"] is True


def test_certificate_cyclic_truncated():
    Q, W, _ = load("cycle3")
    certificate = cy_certificate(Q, W)
    # 3 · deg(W~) with deg(W~) = 9
    assert certificate.bound == 27
    assert certificate.passed
    assert not certificate.complete
    assert certificate.degree_range == (0, 27)
    assert certificate.to_dict()["complete"] is False


def test_certificate_with_workers():
    Q, W, _ = load("a2")
    sequential = cy_certificate(Q, W)
    parallel = cy_certificate(Q, W, workers=2)
    assert parallel.passed
    assert [v.vertex for v in parallel.vertices] == [v.vertex for v in sequential.vertices]
    assert parallel.to_dict() == sequential.to_dict()


def test_kernel_witness_avoids_image():
    # ker = span(e_0, e_1), im = span(e_0): only e_1 witnesses missing exactness
    kernel = [{0: Fraction(1)}, {1: Fraction(1)}]
    image = [{0: Fraction(2)}]
    assert kernel_witness(kernel, image, 2) == {1: Fraction(1)}
    assert kernel_witness(kernel) == {0: Fraction(1)}
    assert kernel_witness([], image, 2) is None
    assert kernel_witness([{0: Fraction(1)}], image, 2) is None


def test_failing_check_without_kernel_has_no_witness(monkeypatch):
    import src.homcheck as homcheck

    Q, W, _ = load("a1")
    fj = build_frozen_jacobian(Q, W)
    # a failing rank comparison with an empty kernel must not raise
    monkeypatch.setattr(homcheck, "map_kernel", lambda columns, n_rows: [])
    monkeypatch.setattr(homcheck, "map_rank", lambda columns, n_rows: 0)
    entry = check_vertex(fj.algebra, fj.lifted, "1")
    assert not entry.passed
    assert all(d.witness is None for d in entry.degrees)


def test_executor_is_reused_above_cpu_count():
    import multiprocessing as mp

    first = get_executor(mp.cpu_count() + 8)
    assert get_executor(mp.cpu_count() + 8) is first
    assert get_executor(mp.cpu_count()) is first
