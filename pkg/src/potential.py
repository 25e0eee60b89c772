"""
Potentials, path-algebra elements, cyclic and right derivatives, and positive gradings.

Multiplication follows composition order: x * y means "traverse y, then x",
so for arrows a: 1→2 and b: 2→3 the path b·a equals b * a.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from src.data_structures import Quiver, IceQuiver, Path
from src.naming import (
    alpha_arrow, beta_arrow, delta_vertex_arrow, delta_arrow
)

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction, str]


def as_fraction(c: Coefficient) -> Fraction:
    """Parse an exact coefficient (int, Fraction or "p/q" string)."""
    if isinstance(c, float):
        raise ValueError(f"Floating point coefficient {c!r} is not exact")
    return Fraction(c)


class AlgebraElement:
    """
    A finite linear combination of paths with exact rational coefficients.

    Zero coefficients are never stored. Elements are immutable by convention.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Path, Fraction]] = None):
        cleaned = {}
        for path, coeff in (terms or {}).items():
            coeff = as_fraction(coeff)
            if coeff != 0:
                cleaned[path] = coeff
        self._terms = cleaned

    @classmethod
    def from_path(cls, path: Path, coeff: Coefficient = 1) -> "AlgebraElement":
        return cls({path: as_fraction(coeff)})

    @classmethod
    def from_terms(cls, quiver: Quiver, terms: Iterable[Tuple[Coefficient, Iterable[str]]],
                   vertex: Optional[str] = None) -> "AlgebraElement":
        """
        Build an element from (coefficient, arrow ids in traversal order) pairs.

        Args:
            quiver: Quiver the arrows live in
            terms: Pairs of coefficient and traversal-order arrow ids
            vertex: Vertex for trivial-path terms
        """
        result = cls()
        for coeff, ids in terms:
            result = result + cls.from_path(Path.of(quiver, ids, vertex), coeff)
        return result

    @property
    def terms(self) -> Dict[Path, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Path, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0].key(), kv[0].tail))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        terms = dict(self._terms)
        for path, coeff in other._terms.items():
            terms[path] = terms.get(path, Fraction(0)) + coeff
        return AlgebraElement(terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Coefficient) -> "AlgebraElement":
        c = as_fraction(c)
        return AlgebraElement({p: c * v for p, v in self._terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Composition: traverse other first, then self."""
        terms: Dict[Path, Fraction] = {}
        for q, cq in other._terms.items():
            for p, cp in self._terms.items():
                joined = q.then(p)
                if joined is not None:
                    terms[joined] = terms.get(joined, Fraction(0)) + cp * cq
        return AlgebraElement(terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def endpoints(self) -> Optional[Tuple[str, str]]:
        """(tail, head) shared by all terms, or None if the terms are not parallel."""
        ends = {(p.tail, p.head) for p in self._terms}
        return next(iter(ends)) if len(ends) == 1 else None

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for path, coeff in self.items():
            if coeff == 1:
                parts.append(f"+ {path.render()}")
            elif coeff == -1:
                parts.append(f"- {path.render()}")
            elif coeff < 0:
                parts.append(f"- {-coeff}*{path.render()}")
            else:
                parts.append(f"+ {coeff}*{path.render()}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return self.render()

    def to_dict(self) -> List[Dict]:
        return [{"coefficient": str(c), **p.to_dict()} for p, c in self.items()]

    @classmethod
    def from_dict(cls, quiver: Quiver, data: List[Dict]) -> "AlgebraElement":
        result = cls()
        for term in data:
            result = result + cls.from_path(Path.from_dict(quiver, term), term["coefficient"])
        return result


def canonical_rotation(cycle: Tuple[str, ...]) -> Tuple[str, ...]:
    """Lexicographically least rotation of a cycle's arrow sequence."""
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


class Potential:
    """
    A finite potential: rational combination of cycles up to rotation.

    Each cycle is stored in its canonical rotation; no two stored cycles are
    cyclically equivalent and no coefficient is zero. Build through
    normalize_potential.
    """

    def __init__(self, quiver: Quiver, terms: Tuple[Tuple[Fraction, Path], ...]):
        self.quiver = quiver
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def arrows_used(self) -> set:
        return {a for _, cycle in self.terms for a in cycle.arrows}

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return AlgebraElement({p: c for c, p in self.terms}).render()

    def __repr__(self):
        return f"W = {self.render()}"

    def to_dict(self) -> List[Dict]:
        return [{"coefficient": str(c), "cycle": list(p.arrows)} for c, p in self.terms]

    @classmethod
    def from_dict(cls, quiver: Quiver, data: List[Dict]) -> "Potential":
        return normalize_potential(
            quiver, [(term["coefficient"], term["cycle"]) for term in data]
        )


def normalize_potential(quiver: Quiver,
                        terms: Iterable[Tuple[Coefficient, Union[Path, Iterable[str]]]]) -> Potential:
    """
    Merge cyclically equivalent cycles and drop zero terms.

    Args:
        quiver: Quiver the cycles live in
        terms: (coefficient, cycle) pairs; a cycle is a Path or traversal-order arrow ids

    Returns:
        Normalized Potential

    Raises:
        ValueError: If a term is not a cycle of length at least 2
    """
    merged: Dict[Tuple[str, ...], Fraction] = {}
    for coeff, cycle in terms:
        path = cycle if isinstance(cycle, Path) else Path.of(quiver, cycle)
        if not path.is_cycle:
            raise ValueError(f"Potential term {path.render()} is not a cycle")
        if path.length < 2:
            raise ValueError(f"Potential term {path.render()} is a cycle of length < 2")
        key = canonical_rotation(path.arrows)
        merged[key] = merged.get(key, Fraction(0)) + as_fraction(coeff)

    normalized = []
    for key in sorted(merged):
        if merged[key] != 0:
            normalized.append((merged[key], Path.of(quiver, key)))
    return Potential(quiver, tuple(normalized))


def cyclic_derivative(W: Potential, arrow_id: str) -> AlgebraElement:
    """
    Cyclic derivative of W with respect to an arrow.

    Each occurrence of the arrow in a cycle contributes the path that starts
    right after it and wraps around to just before it.

    Raises:
        ValueError: If the arrow is not in W's quiver
    """
    arrow = W.quiver.arrow(arrow_id)
    result: Dict[Path, Fraction] = {}
    for coeff, cycle in W.terms:
        ids = cycle.arrows
        for i, a in enumerate(ids):
            if a != arrow_id:
                continue
            rest = ids[i + 1:] + ids[:i]
            path = Path.of(W.quiver, rest, arrow.head) if rest else Path.trivial(arrow.head)
            result[path] = result.get(path, Fraction(0)) + coeff
    return AlgebraElement(result)


def right_derivative(x: AlgebraElement, arrow_id: str, quiver: Quiver) -> AlgebraElement:
    """
    Strip the arrow from every path that traverses it first; other paths vanish.

    Raises:
        ValueError: If the arrow is not in the quiver
    """
    arrow = quiver.arrow(arrow_id)
    result: Dict[Path, Fraction] = {}
    for path, coeff in x.items():
        if path.arrows and path.arrows[0] == arrow_id:
            stripped = Path(arrow.head, path.head, path.arrows[1:])
            result[stripped] = result.get(stripped, Fraction(0)) + coeff
    return AlgebraElement(result)


@dataclass(frozen=True)
class GradingFn:
    """
    Integer degrees on arrows.

    Attributes:
        degrees: Tuple of (arrow id, degree) pairs
    """
    degrees: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.degrees))

    @classmethod
    def from_mapping(cls, mapping: Dict[str, int]) -> "GradingFn":
        return cls(tuple(sorted((str(k), int(v)) for k, v in mapping.items())))

    @classmethod
    def constant(cls, quiver: Quiver, value: int = 1) -> "GradingFn":
        return cls.from_mapping({a.id: value for a in quiver.arrows})

    def as_dict(self) -> Dict[str, int]:
        return self._table

    def __getitem__(self, arrow_id: str) -> int:
        try:
            return self._table[arrow_id]
        except KeyError:
            raise ValueError(f"Grading has no degree for arrow {arrow_id!r}")

    @property
    def max_degree(self) -> int:
        return max((d for _, d in self.degrees), default=1)

    def of_path(self, path: Path) -> int:
        return sum(self._table[a] for a in path.arrows)

    def homogeneous_degree(self, x: AlgebraElement) -> Optional[int]:
        """Common degree of all terms, or None if x is zero or inhomogeneous."""
        table = self._table
        found = {sum(table[a] for a in p.arrows) for p in x.terms}
        return next(iter(found)) if len(found) == 1 else None

    def to_dict(self) -> Dict[str, int]:
        return dict(self._table)


@dataclass(frozen=True)
class GradingReport:
    """Outcome of check_grading."""
    positive: bool
    homogeneous: bool
    degree_of_W: Optional[int]

    def to_dict(self) -> Dict:
        return {"positive": self.positive, "homogeneous": self.homogeneous,
                "degree_of_W": self.degree_of_W}


def check_grading(q: Union[Quiver, IceQuiver], W: Potential, deg: GradingFn) -> GradingReport:
    """
    Report positivity of deg on q's arrows and homogeneity of W under deg.

    d = deg(W) is reported only when W is non-zero and homogeneous.
    """
    quiver = q.quiver if isinstance(q, IceQuiver) else q
    table = deg.as_dict()
    positive = all(table.get(a.id, 0) > 0 for a in quiver.arrows)
    degrees = {sum(table[a] for a in cycle.arrows) for _, cycle in W.terms}
    homogeneous = len(degrees) <= 1
    d = next(iter(degrees)) if len(degrees) == 1 else None
    return GradingReport(positive, homogeneous, d)


def lift_grading(Q: Quiver, W: Potential, deg0: GradingFn) -> GradingFn:
    """
    Extend a positive grading of (Q, W) to the lifted quiver.

    With W = 0 every lifted arrow has degree 1 except delta_i, which has degree 2.
    Otherwise arrows of W are scaled by the least K with K*deg0(W) - deg0(a) >= 1
    for every arrow a outside W, all degrees are tripled, and the new arrows get
    alpha = beta = 1, delta_v = d - 2, delta_a = d - 2 - deg(a), where d = deg(W~).

    Args:
        Q: The quiver
        W: Potential on Q
        deg0: Positive grading of (Q, W)

    Returns:
        Positive grading of the lifted quiver with potential

    Raises:
        ValueError: If deg0 is not positive or W is not homogeneous under deg0
    """
    report = check_grading(Q, W, deg0)
    if not report.positive:
        raise ValueError("Grading is not positive")
    if not report.homogeneous:
        raise ValueError("Potential is not homogeneous under the grading")

    degrees: Dict[str, int] = {}
    if W.is_zero():
        for a in Q.arrows:
            degrees[a.id] = 1
            degrees[delta_arrow(a.id)] = 1
        for v in Q.vertices:
            degrees[alpha_arrow(v)] = 1
            degrees[beta_arrow(v)] = 1
            degrees[delta_vertex_arrow(v)] = 2
        return GradingFn.from_mapping(degrees)

    d0 = report.degree_of_W
    in_W = W.arrows_used()
    outside = [deg0[a.id] for a in Q.arrows if a.id not in in_W]
    K = 1
    while any(K * d0 - x < 1 for x in outside):
        K += 1
    logger.debug("lift_grading: deg0(W)=%d, K=%d", d0, K)

    base = {a.id: (K * deg0[a.id] if a.id in in_W else deg0[a.id]) for a in Q.arrows}
    d = 3 * K * d0
    for a in Q.arrows:
        degrees[a.id] = 3 * base[a.id]
        degrees[delta_arrow(a.id)] = d - 2 - degrees[a.id]
    for v in Q.vertices:
        degrees[alpha_arrow(v)] = 1
        degrees[beta_arrow(v)] = 1
        degrees[delta_vertex_arrow(v)] = d - 2
    return GradingFn.from_mapping(degrees)
