"""
Tests for quiver validation, path enumeration and export.
"""

import sys
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

import pytest

from src.data_structures import Quiver, IceQuiver, Path
from src.quiver import validate, enumerate_paths, all_paths, is_acyclic, longest_path_length, to_dot
from src.utils import load_input

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def a3():
    return validate({"vertices": ["1", "2", "3"], "arrows": [
        {"id": "a", "tail": "1", "head": "2"}, {"id": "b", "tail": "2", "head": "3"}]})


def test_validate_plain_quiver():
    print("\n" + "=" * 80)
    print("TEST: Quiver validation")
    print("=" * 80)

    q = a3()
    assert isinstance(q, Quiver)
    assert q.vertices == ("1", "2", "3")
    assert q.arrow("b").tail == "2"
    assert [a.id for a in q.arrows_from("2")] == ["b"]
    assert [a.id for a in q.arrows_into("2")] == ["a"]
    print("  ✓ A3 parsed")


def test_validate_labels_and_roundtrip():
    raw = {"vertices": [{"id": "1", "label": "one"}, "2"], "arrows": [{"id": "a", "tail": "1", "head": "2"}]}
    q = validate(raw)
    assert q.label("1") == "one"
    assert q.label("2") == "2"
    assert validate(q.to_dict()) == q


@pytest.mark.parametrize("raw, message", [
    ({"vertices": ["1", "1"]}, "Duplicate vertex"),
    ({"vertices": ["1", "2"], "arrows": [{"id": "a", "tail": "1", "head": "2"},
                                         {"id": "a", "tail": "2", "head": "1"}]}, "Duplicate arrow"),
    ({"vertices": ["1"], "arrows": [{"id": "a", "tail": "1", "head": "1"}]}, "Loop"),
    ({"vertices": ["1"], "arrows": [{"id": "a", "tail": "1", "head": "9"}]}, "undeclared"),
    ({"vertices": ["1", "a"], "arrows": [{"id": "a", "tail": "1", "head": "a"}]}, "clashes"),
    ({"arrows": []}, "vertices"),
])
def test_validate_rejects(raw, message):
    with pytest.raises(ValueError, match=message):
        validate(raw)


def test_validate_ice_quiver():
    raw = {"vertices": ["1", "2", "3"],
           "arrows": [{"id": "a", "tail": "1", "head": "2"}, {"id": "f", "tail": "2", "head": "3"}],
           "frozen_vertices": ["2", "3"], "frozen_arrows": ["f"]}
    q = validate(raw)
    assert isinstance(q, IceQuiver)
    assert q.mutable_vertices == ["1"]
    assert [a.id for a in q.mutable_arrows] == ["a"]

    raw["frozen_arrows"] = ["a"]
    with pytest.raises(ValueError, match="unfrozen endpoint"):
        validate(raw)


def test_enumerate_paths():
    q = a3()
    paths = enumerate_paths(q, 2)
    assert len(paths) == 6
    assert paths[-1] == Path("1", "3", ("a", "b"))
    assert paths[-1].render() == "b·a"
    assert len(enumerate_paths(q, 0)) == 3


def test_all_paths_and_longest_path():
    q = load_input(str(FIXTURES / "a4-linear.json"))[0]
    assert longest_path_length(q) == 3
    # 4 trivial + 3 + 2 + 1
    assert len(all_paths(q)) == 10

    kronecker = load_input(str(FIXTURES / "kronecker.json"))[0]
    assert longest_path_length(kronecker) == 1
    assert len(all_paths(kronecker)) == 4


def test_cyclic_quiver():
    q = load_input(str(FIXTURES / "cycle3.json"))[0]
    assert not is_acyclic(q)
    with pytest.raises(ValueError):
        longest_path_length(q)
    with pytest.raises(ValueError):
        all_paths(q)
    # paths of length <= 3 from each of 3 vertices: 1 + 1 + 1 + 1 each
    assert len(enumerate_paths(q, 3)) == 12


def test_path_of_checks_composition():
    q = a3()
    with pytest.raises(ValueError, match="do not compose"):
        Path.of(q, ("b", "a"))
    with pytest.raises(ValueError):
        Path.of(q, ())
    assert Path.of(q, (), "2") == Path.trivial("2")
    assert Path.trivial("2").render() == "e_2"


def test_to_dot_marks_frozen():
    raw = {"vertices": ["1", "2"], "arrows": [{"id": "f", "tail": "1", "head": "2"}],
           "frozen_vertices": ["1", "2"], "frozen_arrows": ["f"]}
    dot = to_dot(validate(raw))
    assert "shape=box" in dot
    assert "style=dashed" in dot
    assert dot.startswith('digraph "Q"')
