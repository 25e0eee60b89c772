"""
Core data structures for the workbench.
Quivers, ice quivers and paths: the combinatorial substrate of every construction.
"""

from typing import Dict, List, Optional, Tuple, FrozenSet
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Arrow:
    """
    A single arrow of a quiver.

    Attributes:
        id: Unique arrow id
        tail: Vertex the arrow starts at
        head: Vertex the arrow ends at
    """
    id: str
    tail: str
    head: str

    def __repr__(self):
        return f"{self.id}: {self.tail}→{self.head}"

    def to_dict(self) -> Dict:
        return {"id": self.id, "tail": self.tail, "head": self.head}

    @classmethod
    def from_dict(cls, data: Dict) -> "Arrow":
        return cls(str(data["id"]), str(data["tail"]), str(data["head"]))


@dataclass(frozen=True)
class Quiver:
    """
    A finite quiver (directed multigraph).

    Vertex ids are opaque strings. Parallel arrows are allowed; loops are
    rejected by validation (see src.quiver.validate).

    Attributes:
        vertices: Vertex ids in declaration order
        arrows: Arrows in declaration order
        labels: Optional display labels per vertex id
    """
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    labels: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "_arrow_index", {a.id: a for a in self.arrows})

    def arrow(self, arrow_id: str) -> Arrow:
        """
        Look up an arrow by id.

        Raises:
            ValueError: If the quiver has no such arrow
        """
        try:
            return self._arrow_index[arrow_id]
        except KeyError:
            raise ValueError(f"Unknown arrow: {arrow_id!r}")

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._arrow_index

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.tail == vertex]

    def arrows_into(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.head == vertex]

    @property
    def arrow_ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def label(self, vertex: str) -> str:
        return dict(self.labels).get(vertex, vertex)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def to_dict(self) -> Dict:
        labels = dict(self.labels)
        vertices = [
            {"id": v, "label": labels[v]} if v in labels else v
            for v in self.vertices
        ]
        return {"vertices": vertices, "arrows": [a.to_dict() for a in self.arrows]}


@dataclass(frozen=True)
class IceQuiver:
    """
    A quiver together with a frozen subquiver F.

    Attributes:
        quiver: The underlying quiver Q
        frozen_vertices: F_0
        frozen_arrows: F_1 (every frozen arrow has frozen endpoints)
    """
    quiver: Quiver
    frozen_vertices: FrozenSet[str] = frozenset()
    frozen_arrows: FrozenSet[str] = frozenset()

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def mutable_vertices(self) -> List[str]:
        return [v for v in self.quiver.vertices if v not in self.frozen_vertices]

    @property
    def mutable_arrows(self) -> List[Arrow]:
        return [a for a in self.quiver.arrows if a.id not in self.frozen_arrows]

    def is_frozen_vertex(self, vertex: str) -> bool:
        return vertex in self.frozen_vertices

    def is_frozen_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self.frozen_arrows

    def __repr__(self):
        return (f"IceQuiver({len(self.quiver.vertices)} vertices, {len(self.quiver.arrows)} arrows, "
                f"{len(self.frozen_vertices)} frozen vertices, {len(self.frozen_arrows)} frozen arrows)")

    def to_dict(self) -> Dict:
        data = self.quiver.to_dict()
        data["frozen_vertices"] = [v for v in self.quiver.vertices if v in self.frozen_vertices]
        data["frozen_arrows"] = [a.id for a in self.quiver.arrows if a.id in self.frozen_arrows]
        return data


@dataclass(frozen=True, order=True)
class Path:
    """
    A path in a quiver, stored in traversal order.

    arrows[0] is traversed first. Rendering follows composition order
    (right to left), so the path a then b renders as "b·a".
    A trivial path carries only its vertex (tail == head, no arrows).

    Attributes:
        tail: Start vertex t(p)
        head: End vertex h(p)
        arrows: Arrow ids in traversal order
    """
    tail: str
    head: str
    arrows: Tuple[str, ...] = ()

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    @classmethod
    def of(cls, quiver: Quiver, arrow_ids, vertex: Optional[str] = None) -> "Path":
        """
        Build a path from arrow ids in traversal order.

        Args:
            quiver: Quiver the arrows belong to
            arrow_ids: Arrow ids, first traversed first
            vertex: Required for the trivial path

        Raises:
            ValueError: If consecutive arrows do not compose
        """
        arrow_ids = tuple(arrow_ids)
        if not arrow_ids:
            if vertex is None:
                raise ValueError("Trivial path needs a vertex")
            return cls.trivial(vertex)
        arrows = [quiver.arrow(i) for i in arrow_ids]
        for first, second in zip(arrows, arrows[1:]):
            if first.head != second.tail:
                raise ValueError(f"Arrows {first.id} and {second.id} do not compose")
        return cls(arrows[0].tail, arrows[-1].head, arrow_ids)

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return bool(self.arrows) and self.tail == self.head

    def then(self, other: "Path") -> Optional["Path"]:
        """Traverse self, then other. None when the endpoints do not meet."""
        if self.head != other.tail:
            return None
        return Path(self.tail, other.head, self.arrows + other.arrows)

    def key(self) -> Tuple:
        """Ordering key: length first, then arrow ids lexicographically."""
        return (len(self.arrows), self.arrows)

    def render(self) -> str:
        if not self.arrows:
            return f"e_{self.tail}"
        return "·".join(reversed(self.arrows))

    def __repr__(self):
        return self.render()

    def to_dict(self) -> Dict:
        if not self.arrows:
            return {"vertex": self.tail, "arrows": []}
        return {"arrows": list(self.arrows)}

    @classmethod
    def from_dict(cls, quiver: Quiver, data: Dict) -> "Path":
        return cls.of(quiver, data.get("arrows", []), data.get("vertex"))
