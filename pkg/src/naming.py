"""
Generated ids for the lifted quiver and the boundary presentation.
"""

from typing import Iterable

from src.data_structures import Path


def plus_vertex(v: str) -> str:
    return f"{v}+"


def minus_vertex(v: str) -> str:
    return f"{v}-"


def alpha_arrow(v: str) -> str:
    return f"alpha_{v}"


def beta_arrow(v: str) -> str:
    return f"beta_{v}"


def delta_vertex_arrow(v: str) -> str:
    return f"delta_{v}"


def delta_arrow(a: str) -> str:
    return f"delta_{a}"


def dbar_arrow(p: Path) -> str:
    """Id of the boundary arrow for path p: dbar_<v> if trivial, else dbar_<b.a> (composition order)."""
    if p.is_trivial:
        return f"dbar_{p.tail}"
    return "dbar_" + ".".join(reversed(p.arrows))


def check_collisions(ids: Iterable[str]):
    """
    Raise if any generated id appears twice.

    Raises:
        ValueError: Naming the first clashing id
    """
    seen = set()
    for i in ids:
        if i in seen:
            raise ValueError(f"Generated id {i!r} collides with an existing id")
        seen.add(i)
