"""
Degree-truncated quotients of path algebras by homogeneous two-sided ideals.

The algebra is built degree by degree. A_k is presented as a quotient of

    V_k = ⊕_a  a · A_{k - deg a}      (a an arrow, composable with the basis element)

whose kernel is spanned by the products r · b for every relation r and every
basis element b of A_{k - deg r}. Products with a non-trivial factor after r
already vanish in V_k, since their prefix lies in the ideal in lower degree.
Each (tail, head) block is row-reduced over QQ with larger paths to the left,
so normal forms are built from the smallest surviving paths.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.data_structures import Quiver, Path
from src.potential import AlgebraElement, GradingFn
from src.lift import Presentation
from src.algebra.linear_algebra import SparseVector, rref, rank

logger = logging.getLogger(__name__)

# (degree, index within that degree)
BasisKey = Tuple[int, int]
Coordinates = Dict[BasisKey, Fraction]


class TruncationError(ValueError):
    """Reduction requested above the bound of an incomplete algebra."""


@dataclass(frozen=True)
class BasisElement:
    """
    A normal-form basis element of one graded piece.

    Attributes:
        degree: Internal degree
        index: Position within the degree
        path: Representative path
    """
    degree: int
    index: int
    path: Path

    @property
    def tail(self) -> str:
        return self.path.tail

    @property
    def head(self) -> str:
        return self.path.head

    @property
    def key(self) -> BasisKey:
        return (self.degree, self.index)

    def __repr__(self):
        return f"[{self.degree}:{self.index}] {self.path.render()}"


@dataclass
class NormalForm:
    """Result of a reduction: coordinates in the basis and the matching element."""
    coordinates: Coordinates
    element: AlgebraElement

    def is_zero(self) -> bool:
        return not self.coordinates


@dataclass
class SubalgebraBasis:
    """
    Basis of the corner e A e for a set of vertices.

    Attributes:
        idempotent: The vertex set V
        basis: Basis elements of A with both endpoints in V
        generators: Basis elements not in the span of products of two
            positive-degree corner elements
    """
    idempotent: Tuple[str, ...]
    basis: List[BasisElement]
    generators: List[BasisElement]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def dimensions_by_degree(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for b in self.basis:
            dims[b.degree] = dims.get(b.degree, 0) + 1
        return dims

    def to_dict(self) -> Dict:
        return {
            "idempotent": list(self.idempotent),
            "dimension": self.dimension,
            "basis": [{"degree": b.degree, **b.path.to_dict()} for b in self.basis],
            "generators": [{"degree": b.degree, **b.path.to_dict()} for b in self.generators],
        }


class GradedQuotientAlgebra:
    """
    A positively graded quotient K Q / I, computed up to a truncation degree.

    Attributes:
        presentation: Quiver and relation generators
        grading: Positive grading on the arrows
        bound: Truncation degree D
        complete: Whether every component above the computed range is zero
        top_degree: Largest degree with a non-zero component (when complete)
    """

    def __init__(self, presentation: Presentation, grading: GradingFn, bound: int):
        self.presentation = presentation
        self.grading = grading
        self.bound = bound
        self.complete = False
        self.top_degree: Optional[int] = None

        self.quiver: Quiver = presentation.quiver
        self._arrows = {a.id: a for a in self.quiver.arrows}
        self._basis: Dict[int, List[BasisElement]] = {}
        # (arrow id, degree, index) -> coordinates of arrow·basis element in degree + deg(arrow)
        self._left: Dict[Tuple[str, int, int], Dict[int, Fraction]] = {}
        self._reduce_cache: Dict[Tuple, Tuple[int, Dict[int, Fraction]]] = {}

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def build(cls, presentation: Presentation, grading: GradingFn, bound: int,
              certified: bool = False) -> "GradedQuotientAlgebra":
        """
        Build the quotient in degrees 0..bound.

        The algebra is flagged complete if the bound is certified by the caller,
        or if some window of max-arrow-degree consecutive degrees is entirely zero
        (every longer path then has a prefix inside the window). Construction
        stops at such a window.

        Args:
            presentation: Quiver and relations
            grading: Positive grading on every arrow
            bound: Truncation degree D >= 0
            certified: The caller guarantees all components above D vanish

        Raises:
            ValueError: On a non-positive degree, a missing degree, an
                inhomogeneous relation, or a relation of degree 0
        """
        algebra = cls(presentation, grading, bound)
        algebra._check_inputs()
        algebra._construct(certified)
        return algebra

    def _check_inputs(self):
        if self.bound < 0:
            raise ValueError("Truncation bound must be non-negative")
        table = self.grading.as_dict()
        for a in self.quiver.arrows:
            if a.id not in table:
                raise ValueError(f"Grading has no degree for arrow {a.id!r}")
            if table[a.id] <= 0:
                raise ValueError(f"Arrow {a.id!r} has non-positive degree {table[a.id]}")
        self._relations: Dict[int, List[Tuple[str, AlgebraElement]]] = {}
        for name, r in self.presentation.named():
            if r.is_zero():
                continue
            d = self.grading.homogeneous_degree(r)
            if d is None:
                raise ValueError(f"Relation {name} is not homogeneous")
            if d == 0:
                raise ValueError(f"Relation {name} has degree 0")
            self._relations.setdefault(d, []).append((name, r))

    def _construct(self, certified: bool):
        width = max((self.grading[a.id] for a in self.quiver.arrows), default=1)
        self._basis[0] = [
            BasisElement(0, i, Path.trivial(v)) for i, v in enumerate(self.quiver.vertices)
        ]
        self._vertex_index = {v: i for i, v in enumerate(self.quiver.vertices)}
        zero_run = 0
        for k in range(1, self.bound + 1):
            self._build_degree(k)
            zero_run = zero_run + 1 if not self._basis[k] else 0
            logger.debug("degree %d: dim %d", k, len(self._basis[k]))
            if zero_run >= width:
                self.complete = True
                break
        if certified:
            self.complete = True
        if self.complete:
            nonzero = [k for k, b in self._basis.items() if b]
            self.top_degree = max(nonzero) if nonzero else 0
        logger.info("Built algebra: bound %d, total dim %d, complete=%s",
                    self.bound, self.total_dimension(), self.complete)

    def _build_degree(self, k: int):
        columns: List[Tuple[str, int, int]] = []
        for a in self.quiver.arrows:
            m = k - self.grading[a.id]
            if m < 0:
                continue
            for b in self._basis[m]:
                if b.head == a.tail:
                    columns.append((a.id, m, b.index))

        blocks: Dict[Tuple[str, str], List[Tuple[str, int, int]]] = {}
        for col in columns:
            a, m, j = col
            blocks.setdefault((self._basis[m][j].tail, self._arrows[a].head), []).append(col)

        position: Dict[Tuple[str, int, int], Tuple[Tuple[str, str], int]] = {}
        for block, cols in blocks.items():
            cols.sort(key=lambda c: self._column_path(c).key(), reverse=True)
            for idx, col in enumerate(cols):
                position[col] = (block, idx)

        generators: Dict[Tuple[str, str], List[SparseVector]] = {b: [] for b in blocks}
        for d, rels in self._relations.items():
            m = k - d
            if m < 0:
                continue
            for _, r in rels:
                r_tail, r_head = r.endpoints()
                for b in self._basis[m]:
                    if b.head != r_tail:
                        continue
                    vector = self._relation_times_basis(r, b, position)
                    if vector:
                        generators[(b.tail, r_head)].append(vector)

        basis: List[BasisElement] = []
        for block in sorted(blocks):
            cols = blocks[block]
            rows, pivots = rref(generators[block], len(cols))
            pivot_set = set(pivots)
            new_index = {}
            for idx, col in enumerate(cols):
                if idx not in pivot_set:
                    new_index[idx] = len(basis)
                    basis.append(BasisElement(k, len(basis), self._column_path(col)))
            for idx, col in enumerate(cols):
                if idx in new_index:
                    self._left[col] = {new_index[idx]: Fraction(1)}
            for row, p in zip(rows, pivots):
                image = {new_index[q]: -v for q, v in row.items() if q != p}
                self._left[cols[p]] = image
        self._basis[k] = basis

    def _column_path(self, col: Tuple[str, int, int]) -> Path:
        a, m, j = col
        b = self._basis[m][j]
        return Path(b.tail, self._arrows[a].head, b.path.arrows + (a,))

    def _relation_times_basis(self, r: AlgebraElement, b: BasisElement, position) -> Dict[int, Fraction]:
        """r·b written in the columns of V_k (one block)."""
        vector: Dict[int, Fraction] = {}
        for path, coeff in r.items():
            last = path.arrows[-1]
            prefix = b.path.arrows + path.arrows[:-1]
            m, coords = self._reduce_arrows(b.tail, prefix)
            for j, c in coords.items():
                _, idx = position[(last, m, j)]
                vector[idx] = vector.get(idx, Fraction(0)) + coeff * c
        return {i: v for i, v in vector.items() if v != 0}

    # ------------------------------------------------------------------
    # reduction
    # ------------------------------------------------------------------
    def _reduce_arrows(self, tail: str, arrows: Tuple[str, ...]) -> Tuple[int, Dict[int, Fraction]]:
        """
        Coordinates of the path (tail; arrows) in its degree, by successive
        left multiplication starting from e_tail.

        Raises:
            TruncationError: If the path degree exceeds the bound of an incomplete algebra
        """
        cache_key = (tail, arrows)
        if cache_key in self._reduce_cache:
            return self._reduce_cache[cache_key]

        degree = 0
        coords: Dict[int, Fraction] = {self._vertex_index[tail]: Fraction(1)}
        for pos, a in enumerate(arrows):
            if not coords:
                # a zero prefix kills the whole path
                degree += sum(self.grading[b] for b in arrows[pos:])
                break
            target = degree + self.grading[a]
            if target not in self._basis:
                if not self.complete:
                    raise TruncationError(
                        f"Degree {target} exceeds the truncation bound {self.bound} of an incomplete algebra"
                    )
                degree += sum(self.grading[b] for b in arrows[pos:])
                coords = {}
                break
            new: Dict[int, Fraction] = {}
            for j, c in coords.items():
                for i, v in self._left.get((a, degree, j), {}).items():
                    new[i] = new.get(i, Fraction(0)) + c * v
            coords = {i: v for i, v in new.items() if v != 0}
            degree = target
        result = (degree, coords)
        self._reduce_cache[cache_key] = result
        return result

    def reduce_path(self, path: Path) -> Coordinates:
        degree, coords = self._reduce_arrows(path.tail, path.arrows)
        return {(degree, j): c for j, c in coords.items()}

    def reduce(self, x: AlgebraElement) -> NormalForm:
        """
        Normal form of an element; zero iff x lies in the ideal (within the truncation).
        Inhomogeneous elements are reduced componentwise.

        Raises:
            TruncationError: If a term's degree exceeds the bound of an incomplete algebra
        """
        coords: Coordinates = {}
        for path, coeff in x.items():
            for key, c in self.reduce_path(path).items():
                coords[key] = coords.get(key, Fraction(0)) + coeff * c
        coords = {k: v for k, v in coords.items() if v != 0}
        return NormalForm(coords, self.element(coords))

    def element(self, coords: Coordinates) -> AlgebraElement:
        """The algebra element with the given basis coordinates."""
        return AlgebraElement({self._basis[d][j].path: c for (d, j), c in coords.items()})

    def is_zero(self, x: AlgebraElement) -> bool:
        return self.reduce(x).is_zero()

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> NormalForm:
        """Normal form of x·y (y traversed first)."""
        return self.reduce(x * y)

    def times_path(self, b: BasisElement, path: Path) -> Coordinates:
        """Coordinates of b·path: the path traversed first, then b's representative."""
        if path.head != b.tail:
            return {}
        degree, coords = self._reduce_arrows(path.tail, path.arrows + b.path.arrows)
        return {(degree, j): c for j, c in coords.items()}

    def left_multiply(self, arrow_id: str, degree: int, vector: SparseVector) -> SparseVector:
        """
        arrow·x for x given by coordinates within A_degree; the result lies in
        degree + deg(arrow).

        Raises:
            TruncationError: If the target degree exceeds the bound of an incomplete algebra
        """
        target = degree + self.grading[arrow_id]
        if target not in self._basis:
            if self.complete:
                return {}
            raise TruncationError(f"Degree {target} exceeds the truncation bound {self.bound}")
        out: Dict[int, Fraction] = {}
        for j, c in vector.items():
            for i, v in self._left.get((arrow_id, degree, j), {}).items():
                out[i] = out.get(i, Fraction(0)) + c * v
        return {i: v for i, v in out.items() if v != 0}

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    def basis(self, degree: int) -> List[BasisElement]:
        if degree < 0:
            return []
        if degree not in self._basis:
            if self.complete:
                return []
            raise TruncationError(f"Degree {degree} exceeds the truncation bound {self.bound}")
        return list(self._basis[degree])

    def built_degrees(self) -> List[int]:
        return sorted(self._basis)

    def all_basis(self) -> List[BasisElement]:
        return [b for k in self.built_degrees() for b in self._basis[k]]

    def dimension(self, degree: int) -> int:
        return len(self.basis(degree))

    def dimensions(self) -> Dict[int, int]:
        return {k: len(self._basis[k]) for k in self.built_degrees()}

    def total_dimension(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def block_dimensions(self) -> Dict[Tuple[str, str], int]:
        dims: Dict[Tuple[str, str], int] = {}
        for b in self.all_basis():
            dims[(b.tail, b.head)] = dims.get((b.tail, b.head), 0) + 1
        return dims

    def dimension_report(self) -> Dict:
        return {
            "bound": self.bound,
            "complete": self.complete,
            "top_degree": self.top_degree,
            "total": self.total_dimension(),
            "by_degree": {str(k): v for k, v in self.dimensions().items()},
            "by_block": {f"{t}->{h}": v for (t, h), v in sorted(self.block_dimensions().items())},
        }

    def require_complete(self, operation: str):
        if not self.complete:
            raise ValueError(f"{operation} needs a complete algebra (truncated at {self.bound})")

    def gabriel_quiver(self) -> Dict[Tuple[str, str], int]:
        """
        Arrow multiplicities v -> w of the Gabriel quiver: dim e_w (rad/rad^2) e_v.

        Raises:
            ValueError: If the algebra is not complete
        """
        self.require_complete("gabriel_quiver")
        result: Dict[Tuple[str, str], int] = {}
        for k in self.built_degrees():
            if k == 0 or not self._basis[k]:
                continue
            decomposable: Dict[Tuple[str, str], List[SparseVector]] = {}
            for a in self.quiver.arrows:
                m = k - self.grading[a.id]
                if m <= 0:
                    continue
                for b in self._basis[m]:
                    image = self._left.get((a.id, m, b.index))
                    if image:
                        decomposable.setdefault((b.tail, self._arrows[a.id].head), []).append(image)
            for block, dim in self._block_counts(k).items():
                r = rank(decomposable.get(block, []), len(self._basis[k]))
                if dim - r > 0:
                    result[block] = result.get(block, 0) + dim - r
        return result

    def _block_counts(self, k: int) -> Dict[Tuple[str, str], int]:
        counts: Dict[Tuple[str, str], int] = {}
        for b in self._basis[k]:
            counts[(b.tail, b.head)] = counts.get((b.tail, b.head), 0) + 1
        return counts

    def corner(self, vertices: Iterable[str]) -> SubalgebraBasis:
        """
        The corner e A e for the idempotent of a vertex set.

        Raises:
            ValueError: If the algebra is not complete or a vertex is unknown
        """
        self.require_complete("corner")
        chosen = tuple(vertices)
        for v in chosen:
            if v not in self._vertex_index:
                raise ValueError(f"Unknown vertex: {v!r}")
        members = set(chosen)
        basis = [b for b in self.all_basis() if b.tail in members and b.head in members]

        generators = []
        for k in self.built_degrees():
            in_degree = [b for b in basis if b.degree == k]
            if not in_degree:
                continue
            if k == 0:
                generators.extend(in_degree)
                continue
            products = []
            for x in basis:
                for y in basis:
                    if 0 < x.degree < k and y.degree == k - x.degree and y.head == x.tail:
                        coords = self.times_path(x, y.path)
                        products.append({j: c for (_, j), c in coords.items()})
            generators.extend(_greedy_complement(products, in_degree, len(self._basis[k])))
        return SubalgebraBasis(chosen, basis, generators)


def _greedy_complement(span: List[SparseVector], candidates: Sequence[BasisElement],
                       n_cols: int) -> List[BasisElement]:
    """Candidates that extend the given span, chosen greedily in order."""
    chosen = []
    rows = list(span)
    current = rank(rows, n_cols)
    for c in candidates:
        trial = rows + [{c.index: Fraction(1)}]
        r = rank(trial, n_cols)
        if r > current:
            rows, current = trial, r
            chosen.append(c)
    return chosen
