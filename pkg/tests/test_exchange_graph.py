"""
Tests for exchange-graph search and random mutation walks.
"""

import sys
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

import networkx as nx
import pytest

from src.cluster.seed import COEFFICIENT_FREE, PRINCIPAL
from src.cluster.exchange_graph import exchange_graph, matches_coefficient_free, random_walks
from config.workbench_config import DEFAULT_WALKS, DEFAULT_WALK_LENGTH
from src.utils import load_input

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def load(name):
    return load_input(str(FIXTURES / f"{name}.json"))[0]


@pytest.mark.parametrize("name, seeds, edges", [("a1", 2, 1), ("a2", 5, 5), ("a3-linear", 14, 21)])
def test_finite_type_sizes(name, seeds, edges):
    print("\n" + "=" * 80)
    print(f"TEST: Exchange graph of {name}")
    print("=" * 80)

    result = exchange_graph(load(name))
    assert result.exhaustive
    assert result.size == seeds
    assert result.graph.number_of_edges() == edges
    print(f"  ✓ {seeds} seeds, {edges} edges")


def test_a2_is_a_pentagon():
    result = exchange_graph(load("a2"))
    assert nx.is_isomorphic(result.graph, nx.cycle_graph(5))


def test_coefficient_systems_agree():
    for name in ("a2", "a3-linear"):
        assert matches_coefficient_free(load(name))
    Q = load("a2")
    assert exchange_graph(Q, coefficients=PRINCIPAL).size == exchange_graph(Q, coefficients=COEFFICIENT_FREE).size


def test_limits_cut_search_short():
    Q = load("kronecker")
    result = exchange_graph(Q, max_seeds=10)
    assert not result.exhaustive
    assert result.size == 10

    shallow = exchange_graph(load("a3-linear"), max_depth=1)
    assert not shallow.exhaustive
    assert shallow.size == 4

    with pytest.raises(ValueError):
        exchange_graph(Q, max_seeds=0)


def test_graph_exports():
    result = exchange_graph(load("a2"))
    data = result.to_dict()
    assert data["seeds"] == 5
    assert data["clusters"]["0"] == ["x1", "x2"]
    assert data["adjacency"]["0"] == [1, 2]
    dot = result.to_dot()
    assert dot.startswith("graph exchange {")
    assert '0 -- 1 [label="1"];' in dot


@pytest.mark.parametrize("name", ["a2", "a3-linear", "kronecker"])
def test_random_walks_keep_invariants(name):
    print("\n" + "=" * 80)
    print(f"TEST: Random mutation walks on {name}")
    print("=" * 80)

    report = random_walks(load(name), walks=DEFAULT_WALKS, length=DEFAULT_WALK_LENGTH, prng_seed=7)
    assert report.walks == 100
    assert report.passed, report.failures
    assert report.seeds_checked > 0
    assert report.deterministic == (name != "a3-linear")
    print(f"  ✓ {report.seeds_checked} distinct seeds checked")


def test_random_walks_are_reproducible():
    Q = load("a3-linear")
    first = random_walks(Q, walks=5, length=6, prng_seed=3)
    second = random_walks(Q, walks=5, length=6, prng_seed=3)
    assert first.to_dict() == second.to_dict()


def test_random_walks_on_single_vertex():
    report = random_walks(load("a1"), walks=3, length=4)
    assert report.passed
    # with a single index every walk alternates between two seeds
    assert report.seeds_checked == 2
    assert report.deterministic
    assert report.to_dict()["deterministic"] is True


def test_rank_two_walks_share_one_path():
    # after the first step the no-repeat rule forces alternation
    report = random_walks(load("a2"), walks=DEFAULT_WALKS, length=DEFAULT_WALK_LENGTH, prng_seed=11)
    assert report.deterministic
    # one path per choice of first index
    assert report.seeds_checked <= 2 * DEFAULT_WALK_LENGTH + 1
