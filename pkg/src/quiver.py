"""
Quiver validation, path enumeration and export.
"""

import logging
from typing import Dict, List, Union

import networkx as nx

from src.data_structures import Arrow, Quiver, IceQuiver, Path

logger = logging.getLogger(__name__)


def validate(raw: Dict) -> Union[Quiver, IceQuiver]:
    """
    Build a validated quiver from its JSON description.

    Vertices may be given as plain ids or as {"id", "label"} objects.
    An IceQuiver is returned when either frozen field is present.

    Args:
        raw: Parsed JSON description

    Returns:
        Quiver or IceQuiver

    Raises:
        ValueError: On duplicate ids, dangling endpoints, loops, or a frozen
            arrow with an unfrozen endpoint
    """
    if "vertices" not in raw:
        raise ValueError("Quiver description has no 'vertices' field")

    vertices = []
    labels = []
    for entry in raw["vertices"]:
        if isinstance(entry, dict):
            vid = str(entry["id"])
            if "label" in entry:
                labels.append((vid, str(entry["label"])))
        else:
            vid = str(entry)
        if vid in vertices:
            raise ValueError(f"Duplicate vertex id: {vid!r}")
        vertices.append(vid)

    vertex_set = set(vertices)
    arrows = []
    seen_arrows = set()
    for entry in raw.get("arrows", []):
        arrow = Arrow.from_dict(entry)
        if arrow.id in seen_arrows:
            raise ValueError(f"Duplicate arrow id: {arrow.id!r}")
        if arrow.id in vertex_set:
            raise ValueError(f"Arrow id {arrow.id!r} clashes with a vertex id")
        for end in (arrow.tail, arrow.head):
            if end not in vertex_set:
                raise ValueError(f"Arrow {arrow.id!r} has undeclared endpoint {end!r}")
        if arrow.tail == arrow.head:
            raise ValueError(f"Loop at vertex {arrow.tail!r}: arrow {arrow.id!r}")
        seen_arrows.add(arrow.id)
        arrows.append(arrow)

    quiver = Quiver(tuple(vertices), tuple(arrows), tuple(labels))

    if "frozen_vertices" not in raw and "frozen_arrows" not in raw:
        return quiver

    frozen_vertices = frozenset(str(v) for v in raw.get("frozen_vertices", []))
    frozen_arrows = frozenset(str(a) for a in raw.get("frozen_arrows", []))
    for v in sorted(frozen_vertices):
        if v not in vertex_set:
            raise ValueError(f"Frozen vertex {v!r} is not a vertex")
    for a in sorted(frozen_arrows):
        if a not in seen_arrows:
            raise ValueError(f"Frozen arrow {a!r} is not an arrow")
        arrow = quiver.arrow(a)
        if arrow.tail not in frozen_vertices or arrow.head not in frozen_vertices:
            raise ValueError(f"Frozen arrow {a!r} has an unfrozen endpoint (F must be a subquiver)")
    return IceQuiver(quiver, frozen_vertices, frozen_arrows)


def underlying(q: Union[Quiver, IceQuiver]) -> Quiver:
    return q.quiver if isinstance(q, IceQuiver) else q


def to_networkx(q: Union[Quiver, IceQuiver]) -> nx.MultiDiGraph:
    """Convert to a networkx MultiDiGraph keyed by arrow id."""
    quiver = underlying(q)
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(quiver.vertices)
    for a in quiver.arrows:
        graph.add_edge(a.tail, a.head, key=a.id)
    return graph


def is_acyclic(q: Union[Quiver, IceQuiver]) -> bool:
    """True iff the quiver has no directed cycle."""
    return nx.is_directed_acyclic_graph(to_networkx(q))


def enumerate_paths(q: Union[Quiver, IceQuiver], max_length: int) -> List[Path]:
    """
    Enumerate all paths of length at most max_length, trivial paths included.

    Paths are grown by appending arrows at the head, so the output is closed
    under taking subpaths. Order: by length, then arrow ids.

    Args:
        q: The quiver
        max_length: Maximal number of arrows

    Returns:
        List of paths
    """
    quiver = underlying(q)
    outgoing: Dict[str, List[Arrow]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        outgoing[a.tail].append(a)

    paths = [Path.trivial(v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(max_length):
        grown = []
        for p in frontier:
            for a in outgoing[p.head]:
                grown.append(Path(p.tail, a.head, p.arrows + (a.id,)))
        if not grown:
            break
        paths.extend(grown)
        frontier = grown
    paths.sort(key=lambda p: (p.length, p.arrows, p.tail))
    return paths


def all_paths(q: Union[Quiver, IceQuiver]) -> List[Path]:
    """
    All paths of an acyclic quiver.

    Raises:
        ValueError: If the quiver has a directed cycle
    """
    return enumerate_paths(q, longest_path_length(q))


def longest_path_length(q: Union[Quiver, IceQuiver]) -> int:
    """
    Length of the longest directed path of an acyclic quiver.

    Raises:
        ValueError: If the quiver has a directed cycle
    """
    if not is_acyclic(q):
        raise ValueError("Quiver has a directed cycle; longest path is unbounded")
    graph = to_networkx(q)
    if graph.number_of_edges() == 0:
        return 0
    # parallel arrows do not change path lengths
    return nx.dag_longest_path_length(nx.DiGraph(graph))


def to_dot(q: Union[Quiver, IceQuiver], name: str = "Q") -> str:
    """
    Render a quiver as DOT text.
    Frozen vertices are boxed and frozen arrows dashed.
    """
    quiver = underlying(q)
    frozen_v = q.frozen_vertices if isinstance(q, IceQuiver) else frozenset()
    frozen_a = q.frozen_arrows if isinstance(q, IceQuiver) else frozenset()

    lines = [f'digraph "{name}" {{']
    for v in quiver.vertices:
        shape = "box" if v in frozen_v else "circle"
        lines.append(f'  "{v}" [label="{quiver.label(v)}", shape={shape}];')
    for a in quiver.arrows:
        style = ", style=dashed" if a.id in frozen_a else ""
        lines.append(f'  "{a.tail}" -> "{a.head}" [label="{a.id}"{style}];')
    lines.append("}")
    return "\n".join(lines)
