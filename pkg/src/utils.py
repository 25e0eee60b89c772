"""
Utility functions for the workbench.
Handles JSON input/output and the printed reports of the CLI and REPL.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Tuple

from src.data_structures import Quiver, IceQuiver
from src.quiver import validate
from src.potential import Potential, GradingFn
from src.cluster.seed import Seed


def canonical_json(data) -> str:
    """Sorted keys and fixed indentation, so equal data gives identical text."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def save_json(path: str, data):
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as fh:
        fh.write(canonical_json(data) + "\n")


def load_json(path: str):
    """
    Raises:
        FileNotFoundError: If the file does not exist
        json.JSONDecodeError: If it is not JSON
    """
    source = Path(path)
    if not source.exists():
        raise FileNotFoundError(f"No such file: {path}")
    with source.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_input(raw: Dict) -> Tuple[Quiver, Potential, Optional[GradingFn]]:
    """
    Quiver, potential (default zero) and optional grading from a parsed input file.

    Raises:
        ValueError: If the quiver carries frozen data, or the potential or grading is malformed
    """
    q = validate(raw)
    if isinstance(q, IceQuiver):
        raise ValueError("Expected a quiver without frozen vertices; the lift adds its own")
    W = Potential.from_dict(q, raw.get("potential", []))
    grading = None
    if "grading" in raw:
        mapping = {str(k): int(v) for k, v in raw["grading"].items()}
        missing = [a.id for a in q.arrows if a.id not in mapping]
        if missing:
            raise ValueError(f"Grading has no degree for arrows {missing}")
        unknown = [a for a in mapping if not q.has_arrow(a)]
        if unknown:
            raise ValueError(f"Grading names unknown arrows {unknown}")
        grading = GradingFn.from_mapping(mapping)
    return q, W, grading


def load_input(path: str) -> Tuple[Quiver, Potential, Optional[GradingFn]]:
    return parse_input(load_json(path))


def load_seed(path: str) -> Seed:
    return Seed.from_dict(load_json(path))


# ----------------------------------------------------------------------
# printing
# ----------------------------------------------------------------------
def verdict(ok: bool) -> str:
    return "✓" if ok else "✗"


def print_header(title: str):
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80)


def format_table(headers: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Left-aligned columns sized to their widest entry."""
    rows = [[str(x) for x in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(x)) for w, x in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)))
    return "\n".join(lines)


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in rows) + "]"


def print_dimension_report(report: Dict):
    print_header("ALGEBRA DIMENSIONS")
    print(f"\nBound: {report['bound']}   complete: {verdict(report['complete'])}   "
          f"top degree: {report['top_degree']}   total: {report['total']}")
    print("\nBy degree:")
    print(format_table(["degree", "dim"], sorted(((int(k), v) for k, v in report["by_degree"].items()))))
    print("\nBy vertex pair (tail->head):")
    print(format_table(["block", "dim"], sorted(report["by_block"].items())))


def print_certificate(certificate: Dict):
    print_header("EXACTNESS CERTIFICATE")
    first, last = certificate["degree_range"]
    completeness = "complete" if certificate["complete"] else f"truncated at {certificate['bound']} (checked degrees only)"
    print(f"\nDegrees {first}..{last}, algebra {completeness}")
    rows = []
    for entry in certificate["vertices"]:
        failures = [c for c in entry["degrees"] if not c["passed"]]
        rows.append([entry["vertex"], entry["kind"], verdict(entry["passed"]),
                     ", ".join(str(c["degree"]) for c in failures) or "-"])
    print(format_table(["vertex", "kind", "pass", "failing degrees"], rows))
    for entry in certificate["vertices"]:
        for c in entry["degrees"]:
            if c["witness"]:
                print(f"  {entry['vertex']} degree {c['degree']}: {c['witness']}")
    print(f"\nOverall: {verdict(certificate['passed'])}")


def print_report(title: str, report: Dict):
    """Generic key/value report with verdict markers for booleans."""
    print_header(title)
    for key in sorted(report):
        value = report[key]
        if isinstance(value, bool):
            value = verdict(value)
        elif isinstance(value, list) and value and not isinstance(value[0], (str, int)):
            value = canonical_json(value)
        print(f"  {key}: {value}")
