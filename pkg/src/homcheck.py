"""
Exactness certificate for the frozen Jacobian algebra.

For every vertex v of the lifted quiver the projective resolution of A tensored
with the simple S_v gives, in each internal degree N, the complex

    (A e_v)_{N-d} --M3--> ⊕_a (A e_t(a))_{N-d+deg a} --M2--> ⊕_b (A e_h(b))_{N-deg b} --M1--> (A e_v)_N

with a over unfrozen arrows into v and b over all arrows out of v. The left
term is zero at frozen v. The certificate asks M3 to be injective and
ker M2 = im M3 at mutable vertices, M2 to be injective at i+, and the two
left terms to vanish at i-.
"""

import logging
import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.data_structures import Quiver, Path
from src.naming import plus_vertex
from src.potential import AlgebraElement, GradingFn, Potential, cyclic_derivative, right_derivative, check_grading
from src.lift import LiftedIQP
from src.algebra.graded_algebra import GradedQuotientAlgebra, BasisElement
from src.algebra.jacobian import build_frozen_jacobian
from src.algebra.linear_algebra import SparseVector, map_rank, map_kernel, compose_is_zero, rank

logger = logging.getLogger(__name__)

MUTABLE = "mutable"
PLUS = "plus"
MINUS = "minus"

_executor = None
_n_workers = 0


def get_executor(workers: int) -> ProcessPoolExecutor:
    global _executor, _n_workers
    workers = max(1, min(workers, mp.cpu_count()))
    if _executor is None or _n_workers != workers:
        if _executor is not None:
            _executor.shutdown()
        _n_workers = workers
        _executor = ProcessPoolExecutor(max_workers=_n_workers)
    return _executor


# (summand label, basis element)
Summand = List[Tuple[str, BasisElement]]


@dataclass
class DegreeMaps:
    """The three maps of a simple complex in one internal degree, as sparse columns."""
    degree: int
    p3: Summand
    p2: Summand
    p1: Summand
    p0: Summand
    m3: List[SparseVector]
    m2: List[SparseVector]
    m1: List[SparseVector]

    @property
    def dims(self) -> Tuple[int, int, int, int]:
        return len(self.p3), len(self.p2), len(self.p1), len(self.p0)


class SimpleComplex:
    """
    The complex res(A) ⊗ S_v for one vertex v, evaluated degree by degree.

    Attributes:
        vertex: The vertex v
        kind: MUTABLE, PLUS or MINUS
        in_arrows: Unfrozen arrows into v (the summands of P2)
        out_arrows: All arrows out of v (the summands of P1)
        blocks: (a, b) -> right derivative of d_a W~ at b, the entry of M2
    """

    def __init__(self, A: GradedQuotientAlgebra, L: LiftedIQP, vertex: str):
        if vertex not in L.quiver.vertices:
            raise ValueError(f"Unknown vertex: {vertex!r}")
        self.A = A
        self.L = L
        self.vertex = vertex
        self.kind = _vertex_kind(L, vertex)
        self.d = potential_degree(A, L)
        self.in_arrows = [a for a in L.quiver.arrows_into(vertex) if not L.ice.is_frozen_arrow(a.id)]
        self.out_arrows = L.quiver.arrows_from(vertex)
        self.blocks: Dict[Tuple[str, str], AlgebraElement] = {}
        for a in self.in_arrows:
            derivative = cyclic_derivative(L.potential, a.id)
            for b in self.out_arrows:
                entry = right_derivative(derivative, b.id, L.quiver)
                if not entry.is_zero():
                    self.blocks[(a.id, b.id)] = entry

    def _summand(self, label: str, tail: str, degree: int) -> Summand:
        if degree < 0:
            return []
        return [(label, b) for b in self.A.basis(degree) if b.tail == tail]

    def degree(self, N: int) -> DegreeMaps:
        A, g = self.A, self.A.grading
        v, d = self.vertex, self.d
        # the degree -3 term only has summands at mutable vertices
        p3 = self._summand(v, v, N - d) if self.kind == MUTABLE else []
        p2 = [s for a in self.in_arrows for s in self._summand(a.id, a.tail, N - d + g[a.id])]
        p1 = [s for b in self.out_arrows for s in self._summand(b.id, b.head, N - g[b.id])]
        p0 = self._summand(v, v, N)

        rows2 = _row_index(p2)
        rows1 = _row_index(p1)
        rows0 = _row_index(p0)

        m3 = []
        for _, y in p3:
            column: SparseVector = {}
            for a in self.in_arrows:
                _add_into(column, rows2, a.id, _times(A, y, AlgebraElement.from_path(_arrow_path(self.L, a.id)), -1))
            m3.append(column)
        m2 = []
        for label, x in p2:
            column = {}
            for b in self.out_arrows:
                entry = self.blocks.get((label, b.id))
                if entry is not None:
                    _add_into(column, rows1, b.id, _times(A, x, entry, 1))
            m2.append(column)
        m1 = []
        for label, x in p1:
            column = {}
            _add_into(column, rows0, v, _times(A, x, AlgebraElement.from_path(_arrow_path(self.L, label)), -1))
            m1.append(column)
        return DegreeMaps(N, p3, p2, p1, p0, m3, m2, m1)


def potential_degree(A: GradedQuotientAlgebra, L: LiftedIQP) -> int:
    """deg(W~) under the algebra's grading."""
    return check_grading(L.ice, L.potential, A.grading).degree_of_W or 0


def _vertex_kind(L: LiftedIQP, vertex: str) -> str:
    if not L.ice.is_frozen_vertex(vertex):
        return MUTABLE
    if vertex in {plus_vertex(v) for v in L.base.vertices}:
        return PLUS
    return MINUS


def _arrow_path(L: LiftedIQP, arrow_id: str) -> Path:
    return Path.of(L.quiver, (arrow_id,))


def _row_index(summand: Summand) -> Dict[Tuple[str, int], int]:
    return {(label, b.index): i for i, (label, b) in enumerate(summand)}


def _times(A: GradedQuotientAlgebra, b: BasisElement, r: AlgebraElement, sign: int) -> Dict[int, Fraction]:
    """Coordinates of sign·b·r (r traversed first), all in one degree."""
    out: Dict[int, Fraction] = {}
    for path, coeff in r.items():
        for (_, j), c in A.times_path(b, path).items():
            out[j] = out.get(j, Fraction(0)) + sign * coeff * c
    return {j: c for j, c in out.items() if c != 0}


def _add_into(column: SparseVector, rows: Dict[Tuple[str, int], int], label: str, coords: Dict[int, Fraction]):
    for j, c in coords.items():
        i = rows[(label, j)]
        column[i] = column.get(i, Fraction(0)) + c
        if column[i] == 0:
            del column[i]


def build_simple_complex(A: GradedQuotientAlgebra, L: LiftedIQP, vertex: str) -> SimpleComplex:
    """
    Build the complex res(A) ⊗ S_v.

    Raises:
        ValueError: If v is not a vertex of the lifted quiver
    """
    return SimpleComplex(A, L, vertex)


@dataclass
class DegreeCheck:
    """Ranks and verdicts in one internal degree."""
    degree: int
    dims: Tuple[int, int, int, int]
    rank_m3: int
    rank_m2: int
    kernel_m2: int
    is_complex: bool
    passed: bool
    witness: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "dims": list(self.dims),
            "rank_m3": self.rank_m3,
            "rank_m2": self.rank_m2,
            "kernel_m2": self.kernel_m2,
            "is_complex": self.is_complex,
            "passed": self.passed,
            "witness": self.witness,
        }


@dataclass
class VertexCertificate:
    """Per-vertex certificate entries."""
    vertex: str
    kind: str
    degrees: List[DegreeCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.degrees)

    @property
    def failures(self) -> List[DegreeCheck]:
        return [c for c in self.degrees if not c.passed]

    def to_dict(self) -> Dict:
        return {
            "vertex": self.vertex,
            "kind": self.kind,
            "passed": self.passed,
            "degrees": [c.to_dict() for c in self.degrees if any(c.dims) or not c.passed],
        }


@dataclass
class ExactnessCertificate:
    """
    Aggregated certificate over all vertices.

    Attributes:
        vertices: Per-vertex entries in vertex order
        degree_range: (first, last) internal degree checked
        complete: Whether the algebra was complete (otherwise the result only
            covers the checked degrees)
        bound: Truncation degree of the algebra
    """
    vertices: List[VertexCertificate]
    degree_range: Tuple[int, int]
    complete: bool
    bound: int

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.vertices)

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "complete": self.complete,
            "bound": self.bound,
            "degree_range": list(self.degree_range),
            "vertices": [v.to_dict() for v in self.vertices],
        }


def _render_witness(summand: Summand, vector: SparseVector) -> str:
    parts = []
    for i, c in sorted(vector.items()):
        label, b = summand[i]
        parts.append(f"{c}·{b.path.render()}[{label}]")
    return " + ".join(parts)


def kernel_witness(kernel: Sequence[SparseVector], image: Sequence[SparseVector] = (),
                   n: int = 0) -> Optional[SparseVector]:
    """
    First kernel vector outside the span of image (vectors of length n), or None.

    With no image every non-zero kernel vector qualifies.
    """
    base = rank(list(image), n) if image else 0
    for v in kernel:
        if not v:
            continue
        if not image or rank(list(image) + [v], n) > base:
            return v
    return None


def _witness(prefix: str, summand: Summand, vector: Optional[SparseVector]) -> Optional[str]:
    if vector is None:
        return None
    return prefix + _render_witness(summand, vector)


def degree_range(A: GradedQuotientAlgebra, d: int) -> Tuple[int, int]:
    """Internal degrees to check: up to top + d when complete, up to the bound otherwise."""
    if A.complete:
        return 0, (A.top_degree or 0) + d
    return 0, A.bound


def check_vertex(A: GradedQuotientAlgebra, L: LiftedIQP, vertex: str,
                 degrees: Optional[Tuple[int, int]] = None) -> VertexCertificate:
    """
    Rank computations establishing the exactness conditions at one vertex.

    Mutable v: M3 injective and dim ker M2 = rank M3. v = i+: P3 = 0 and M2
    injective. v = i-: P3 = P2 = 0. In every case M2·M3 = 0 and M1·M2 = 0.
    Failures carry a kernel vector as witness.
    """
    complex_ = build_simple_complex(A, L, vertex)
    first, last = degrees or degree_range(A, complex_.d)
    certificate = VertexCertificate(vertex, complex_.kind)
    for N in range(first, last + 1):
        maps = complex_.degree(N)
        n3, n2, n1, n0 = maps.dims
        rank3 = map_rank(maps.m3, n2)
        rank2 = map_rank(maps.m2, n1)
        kernel2 = n2 - rank2
        is_complex = compose_is_zero(maps.m2, maps.m3) and compose_is_zero(maps.m1, maps.m2)

        witness = None
        if complex_.kind == MUTABLE:
            passed = rank3 == n3 and kernel2 == rank3
            if rank3 < n3:
                witness = _witness("ker M3 ∋ ", maps.p3, kernel_witness(map_kernel(maps.m3, n2)))
            elif kernel2 != rank3:
                # a cycle of M2 that is not a boundary of M3
                witness = _witness("ker M2 ∋ ", maps.p2,
                                   kernel_witness(map_kernel(maps.m2, n1), maps.m3, n2))
        elif complex_.kind == PLUS:
            passed = n3 == 0 and kernel2 == 0
            if kernel2:
                witness = _witness("ker M2 ∋ ", maps.p2, kernel_witness(map_kernel(maps.m2, n1)))
        else:
            passed = n3 == 0 and n2 == 0
        passed = passed and is_complex
        certificate.degrees.append(DegreeCheck(N, maps.dims, rank3, rank2, kernel2, is_complex, passed, witness))
    logger.debug("vertex %s (%s): %s", vertex, complex_.kind, "pass" if certificate.passed else "FAIL")
    return certificate


def _check_vertices_worker(Q: Quiver, W: Potential, deg0: Optional[GradingFn], bound: Optional[int],
                           vertices: Sequence[str]) -> List[VertexCertificate]:
    fj = build_frozen_jacobian(Q, W, deg0, bound)
    return [check_vertex(fj.algebra, fj.lifted, v) for v in vertices]


def cy_certificate(Q: Quiver, W: Potential, deg0: Optional[GradingFn] = None,
                   bound: Optional[int] = None, workers: int = 1) -> ExactnessCertificate:
    """
    Run lift, relations, build and the per-vertex checks for all vertices.

    Args:
        Q: The quiver
        W: Potential on Q
        deg0: Positive grading of (Q, W) (default: all arrows in degree 1)
        bound: Truncation override
        workers: Worker processes; each rebuilds the algebra for its share of vertices

    Raises:
        ValueError: If no positive grading is supplied or derivable
    """
    fj = build_frozen_jacobian(Q, W, deg0, bound)
    A, L = fj.algebra, fj.lifted
    vertices = list(L.quiver.vertices)

    if workers <= 1:
        results = [check_vertex(A, L, v) for v in vertices]
    else:
        executor = get_executor(workers)
        chunks = [vertices[i::workers] for i in range(workers)]
        futures = {executor.submit(_check_vertices_worker, Q, W, deg0, A.bound, chunk): i
                   for i, chunk in enumerate(chunks) if chunk}
        by_vertex = {}
        for future in as_completed(futures):
            for entry in future.result():
                by_vertex[entry.vertex] = entry
        results = [by_vertex[v] for v in vertices]

    certificate = ExactnessCertificate(results, degree_range(A, potential_degree(A, L)), A.complete, A.bound)
    logger.info("certificate: %s over %d vertices (complete=%s)",
                "pass" if certificate.passed else "FAIL", len(vertices), A.complete)
    return certificate
