"""
Tests for the command-line front end and the interactive mutation session.
"""

import json
import sys
from pathlib import Path as FilePath

# Add parent directory to path so imports work from tests folder
sys.path.insert(0, str(FilePath(__file__).parent.parent))

import pytest

import src.cli as cli
from src.cli import run, EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR
from src.cluster.seed import initial_seed_pp, mutate_sequence
from src.homcheck import ExactnessCertificate, VertexCertificate, DegreeCheck, MUTABLE
from src.repl import MutationSession, run_repl
from src.utils import load_input, load_seed

FIXTURES = FilePath(__file__).parent.parent / "fixtures"


def fixture(name):
    return str(FIXTURES / f"{name}.json")


def run_json(capsys, argv):
    status = run(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return status, json.loads(out) if out else None, out


def test_lift_json_is_deterministic(capsys):
    print("\n" + "=" * 80)
    print("TEST: Canonical JSON output")
    print("=" * 80)
    capsys.readouterr()

    status, data, first = run_json(capsys, ["lift", fixture("a2")])
    assert status == EXIT_OK
    assert sorted(data["quiver"]["frozen_vertices"]) == ["1+", "1-", "2+", "2-"]
    _, _, second = run_json(capsys, ["lift", fixture("a2")])
    assert first == second


def test_table_output(capsys):
    assert run(["relations", fixture("a2")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "RELATIONS OF THE FROZEN JACOBIAN ALGEBRA" in out
    assert "d_alpha_1 = beta_1·delta_1" in out


def test_dot_output(capsys):
    assert run(["gamma", fixture("a3-linear"), "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith('digraph "gamma"')


def test_dim_and_check_cy(capsys):
    status, data, _ = run_json(capsys, ["dim", fixture("a1")])
    assert status == EXIT_OK
    assert data["total"] == 7
    assert data["certified"] is True

    status, data, _ = run_json(capsys, ["check-cy", fixture("a2")])
    assert status == EXIT_OK
    assert data["passed"] is True
    assert data["complete"] is True


def test_boundary_verify(capsys):
    status, data, _ = run_json(capsys, ["boundary-verify", fixture("a2")])
    assert status == EXIT_OK
    assert data["phi"]["passed"] is True

    status, data, _ = run_json(capsys, ["boundary-verify", fixture("cycle3"), "--bound", "18"])
    assert status == EXIT_OK
    assert data["preprojective"] is True
    assert data["phi"].startswith("skipped")


def test_check_failure_exit_code(capsys, monkeypatch):
    failing = DegreeCheck(0, (1, 0, 0, 0), 0, 0, 0, True, False, "ker M3 ∋ 1·e_1[1]")
    certificate = ExactnessCertificate([VertexCertificate("1", MUTABLE, [failing])], (0, 0), True, 0)
    monkeypatch.setattr(cli, "cy_certificate", lambda *args, **kwargs: certificate)
    assert run(["check-cy", fixture("a2")]) == EXIT_CHECK_FAILED
    out = capsys.readouterr().out
    assert "ker M3" in out


@pytest.mark.parametrize("argv", [
    ["lift", "no-such-file.json"],
    ["frobnicate", "x.json"],
    ["dim", fixture("a1"), "--format", "dot"],
    ["dim", fixture("a1"), "--bound", "-1"],
    ["gamma", fixture("cycle3")],
    ["seed", "mutate", fixture("a2"), "3"],
    ["seed", "mutate", "1"],
    ["seed", "init", fixture("a2"), "1"],
])
def test_input_errors(argv, capsys):
    assert run(argv) == EXIT_INPUT_ERROR


def test_malformed_file(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["lift", str(broken)]) == EXIT_INPUT_ERROR

    frozen = tmp_path / "frozen.json"
    frozen.write_text(json.dumps({"vertices": ["1"], "frozen_vertices": ["1"]}))
    assert run(["lift", str(frozen)]) == EXIT_INPUT_ERROR
    assert "frozen" in capsys.readouterr().err


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK


def test_seed_roundtrip_through_files(tmp_path, capsys):
    saved = tmp_path / "seed.json"
    assert run(["seed", "mutate", fixture("a3-linear"), "1", "--out", str(saved)]) == EXIT_OK
    capsys.readouterr()
    status, data, _ = run_json(capsys, ["seed", "mutate", fixture("a3-linear"), "2", "--in", str(saved)])
    assert status == EXIT_OK

    Q = load_input(fixture("a3-linear"))[0]
    expected = mutate_sequence(initial_seed_pp(Q), [1, 2])
    assert data == expected.to_dict()
    assert load_seed(str(saved)) == mutate_sequence(initial_seed_pp(Q), [1])


def test_seed_rank_must_match_quiver(tmp_path, capsys):
    saved = tmp_path / "a3-seed.json"
    assert run(["seed", "init", fixture("a3-linear"), "--out", str(saved)]) == EXIT_OK
    capsys.readouterr()

    assert run(["grade", fixture("a2"), "1", "--in", str(saved)]) == EXIT_INPUT_ERROR
    assert "rank 3" in capsys.readouterr().err
    assert run(["seed", "mutate", fixture("a2"), "1", "--in", str(saved)]) == EXIT_INPUT_ERROR


def test_grade(capsys):
    status, data, _ = run_json(capsys, ["grade", fixture("a2"), "1"])
    assert status == EXIT_OK
    assert data["g_vectors"] == [[-1, 0], [0, 1]]
    assert data["c_matrix"] == [[-1, 0], [0, 1]]
    assert data["invariants"]["passed"] is True


def test_explore(capsys):
    status, data, _ = run_json(capsys, ["explore", fixture("a2"), "--walks", "5", "--walk-length", "6"])
    assert status == EXIT_OK
    assert data["seeds"] == 5
    assert data["isomorphic_to_coefficient_free"] is True
    assert data["walks"]["passed"] is True


# ----------------------------------------------------------------------
# REPL
# ----------------------------------------------------------------------
def a2_session():
    Q = load_input(fixture("a2"))[0]
    return MutationSession(initial_seed_pp(Q), Q), Q


def test_session_commands():
    print("\n" + "=" * 80)
    print("TEST: Mutation session")
    print("=" * 80)

    session, _ = a2_session()
    out = session.execute("mu 1")
    assert "x1 = (x2*yp1 + ym1)/x1" in out
    assert session.execute("show c") == "[[-1, 0], [0, 1]]"
    assert session.execute("show g") == "[[-1, 0], [0, 1]]"
    assert "✗" not in session.execute("check")
    session.execute("undo")
    assert session.word == []
    with pytest.raises(ValueError, match="Nothing to undo"):
        session.execute("undo")
    assert session.execute("quit") is None
    assert session.execute("") == ""


def test_session_double_mutation_returns_home():
    session, _ = a2_session()
    home = session.show("vars")
    session.execute("mu 1")
    assert session.execute("mu 1") == home
    assert session.current == session.history[0]


def test_session_rejects_bad_input():
    session, _ = a2_session()
    for line in ("mu", "mu x", "mu 5", "show nothing", "fly"):
        with pytest.raises(ValueError):
            session.execute(line)
    assert session.word == []


def test_session_save(tmp_path):
    session, _ = a2_session()
    session.execute("mu 2")
    target = tmp_path / "out.json"
    assert session.execute(f"save {target}") == f"saved to {target}"
    assert load_seed(str(target)) == session.current


def test_session_save_reports_unwritable_path(tmp_path):
    session, _ = a2_session()
    # a directory cannot be written as a file
    target = tmp_path
    with pytest.raises(ValueError, match="Cannot save"):
        session.execute(f"save {target}")

    written = []
    lines = iter([f"save {target}", "mu 1"])

    def read(prompt):
        try:
            return next(lines)
        except StopIteration:
            raise EOFError

    Q = load_input(fixture("a2"))[0]
    session = run_repl(initial_seed_pp(Q), Q, read=read, write=written.append)
    assert any(w.startswith("error: Cannot save") for w in written)
    assert session.word == [1]


def test_repl_matches_batch_mutation():
    Q = load_input(fixture("a3-linear"))[0]
    lines = iter(["mu 1", "mu 3", "bogus", "mu 2", "show vars"])
    written = []

    def read(prompt):
        try:
            return next(lines)
        except StopIteration:
            raise EOFError

    session = run_repl(initial_seed_pp(Q), Q, read=read, write=written.append)
    assert session.word == [1, 3, 2]
    assert session.current == mutate_sequence(initial_seed_pp(Q), [1, 3, 2])
    assert any(w.startswith("error:") for w in written)
