"""
Interactive mutation session.

Commands: mu k, undo, show vars|matrix|c|g, check, save <path>, help, quit.
"""

import logging
from typing import Callable, List, Optional

from src.data_structures import Quiver
from src.cluster.seed import Seed, mutate
from src.cluster.grading import grading_matrix, g_matrix, check_invariants
from src.utils import save_json, format_matrix, verdict

logger = logging.getLogger(__name__)

HELP = """Commands:
  mu k                     mutate at k (1-based)
  undo                     undo the last mutation
  show vars|matrix|c|g     cluster variables, b_ext, c-matrix, g-vectors
  check                    homogeneity, b'g' = (c')^t b and sign coherence
  save <path>              write the current seed as canonical JSON
  help                     this text
  quit                     leave"""


class MutationSession:
    """
    A stack of seeds reached from a root seed by mutation.

    Attributes:
        quiver: The initial quiver (for the grading and the initial b)
        history: Seeds from the root to the current one
        word: Mutation indices applied so far
    """

    def __init__(self, seed: Seed, quiver: Quiver):
        self.quiver = quiver
        self.history: List[Seed] = [seed]
        self.word: List[int] = []
        self.grading = grading_matrix(quiver)

    @property
    def current(self) -> Seed:
        return self.history[-1]

    def mutate(self, k: int) -> Seed:
        seed = mutate(self.current, k)
        self.history.append(seed)
        self.word.append(k)
        return seed

    def undo(self) -> Seed:
        if len(self.history) == 1:
            raise ValueError("Nothing to undo: already at the initial seed")
        self.history.pop()
        self.word.pop()
        return self.current

    def show(self, what: str) -> str:
        seed = self.current
        if what == "vars":
            return "\n".join(f"x{i + 1} = {v.render()}" for i, v in enumerate(seed.variables))
        if what == "matrix":
            return format_matrix(seed.b_ext)
        if what == "c":
            return format_matrix(seed.c_matrix())
        if what == "g":
            return format_matrix(g_matrix(seed, self.grading))
        raise ValueError(f"show expects vars, matrix, c or g, got {what!r}")

    def check(self) -> str:
        report = check_invariants(self.current, self.quiver, self.grading)
        lines = [
            f"homogeneous variables: {verdict(report.homogeneous)}",
            f"homogeneous exchange relations: {verdict(report.exchange_homogeneous)}",
            f"b'g' = (c')^t b: {verdict(report.gc_identity)}",
            f"c-vectors sign-coherent: {verdict(report.sign_coherent)}",
        ]
        return "\n".join(lines + report.messages)

    def execute(self, line: str) -> Optional[str]:
        """
        Run one command line and return its output (None for quit).

        Raises:
            ValueError: On an unknown command or invalid argument
        """
        parts = line.split()
        if not parts:
            return ""
        command, rest = parts[0], parts[1:]
        if command in ("quit", "exit"):
            return None
        if command == "help":
            return HELP
        if command == "mu":
            if len(rest) != 1 or not rest[0].lstrip("-").isdigit():
                raise ValueError("usage: mu k")
            self.mutate(int(rest[0]))
            return self.show("vars")
        if command == "undo":
            self.undo()
            return self.show("vars")
        if command == "show":
            if len(rest) != 1:
                raise ValueError("usage: show vars|matrix|c|g")
            return self.show(rest[0])
        if command == "check":
            return self.check()
        if command == "save":
            if len(rest) != 1:
                raise ValueError("usage: save <path>")
            try:
                save_json(rest[0], self.current.to_dict())
            except OSError as e:
                raise ValueError(f"Cannot save to {rest[0]}: {e.strerror or e}") from e
            return f"saved to {rest[0]}"
        raise ValueError(f"Unknown command {command!r} (try help)")


def run_repl(seed: Seed, quiver: Quiver, read: Callable[[str], str] = input,
             write: Callable[[str], None] = print) -> MutationSession:
    """
    Read-eval-print loop over a MutationSession. Errors are reported and the
    session continues; end of input leaves the loop.
    """
    session = MutationSession(seed, quiver)
    write("Mutation session. Type help for commands.")
    while True:
        try:
            line = read("mu> ")
        except EOFError:
            break
        try:
            output = session.execute(line)
        except ValueError as e:
            write(f"error: {e}")
            continue
        if output is None:
            break
        if output:
            write(output)
    return session
