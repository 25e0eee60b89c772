"""
Frozen Jacobian algebras of lifted quivers with potential: the certified
truncation bound, the build pipeline, the interior quotient and the vertex test.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from config.workbench_config import CYCLIC_BOUND_FACTOR
from src.data_structures import Quiver, Path
from src.naming import beta_arrow
from src.potential import (
    Potential, GradingFn, AlgebraElement, check_grading, lift_grading, cyclic_derivative
)
from src.lift import LiftedIQP, Presentation, lift_qp, relation_set
from src.quiver import is_acyclic, all_paths, enumerate_paths
from src.algebra.graded_algebra import GradedQuotientAlgebra
from src.algebra.linear_algebra import SparseVector, rref, map_rank

logger = logging.getLogger(__name__)

# nonzero paths avoiding Q1 have length at most this
MAX_OUTER_LENGTH = 4


def default_grading(Q: Quiver, W: Potential) -> GradingFn:
    """
    Every arrow in degree 1.

    Raises:
        ValueError: If W is not homogeneous under it (no grading can be derived)
    """
    deg = GradingFn.constant(Q, 1)
    if not check_grading(Q, W, deg).homogeneous:
        raise ValueError("No positive grading supplied and W is not homogeneous in path length")
    return deg


def truncation_bound(L: LiftedIQP, deg: Optional[GradingFn] = None) -> int:
    """
    Certified degree bound for the frozen Jacobian algebra of an acyclic Q with W = 0.

    Every non-zero path has the shape q2·p'·q1 with p' a path of Q and q1, q2
    paths of length at most 4 that avoid the arrows of Q; a path avoiding Q
    entirely has length at most 4. The bound is the largest degree of such a shape.

    Args:
        L: Lifted quiver with potential
        deg: Lifted grading (default: the W = 0 grading)

    Raises:
        ValueError: If Q has a directed cycle or W is non-zero
    """
    Q = L.base
    if not is_acyclic(Q):
        raise ValueError("No certified truncation bound: Q has a directed cycle")
    if not L.base_potential.is_zero():
        raise ValueError("No certified truncation bound: W is non-zero")
    deg = deg or lift_grading(Q, L.base_potential, GradingFn.constant(Q, 1))

    original = set(Q.arrow_ids)
    outer = Quiver(L.quiver.vertices, tuple(a for a in L.quiver.arrows if a.id not in original))
    outer_paths = enumerate_paths(outer, MAX_OUTER_LENGTH)

    best = max(deg.of_path(p) for p in outer_paths)
    ending = {v: 0 for v in Q.vertices}
    starting = {v: 0 for v in Q.vertices}
    for p in outer_paths:
        if p.head in ending:
            ending[p.head] = max(ending[p.head], deg.of_path(p))
        if p.tail in starting:
            starting[p.tail] = max(starting[p.tail], deg.of_path(p))
    for p in all_paths(Q):
        best = max(best, ending[p.tail] + deg.of_path(p) + starting[p.head])
    logger.debug("truncation bound %d", best)
    return best


@dataclass
class FrozenJacobian:
    """A lifted quiver with potential together with its built algebra."""
    lifted: LiftedIQP
    grading: GradingFn
    relations: Presentation
    algebra: GradedQuotientAlgebra
    certified: bool


def build_frozen_jacobian(Q: Quiver, W: Potential, deg0: Optional[GradingFn] = None,
                          bound: Optional[int] = None) -> FrozenJacobian:
    """
    Lift (Q, W), derive the lifted grading, and build the frozen Jacobian algebra.

    For acyclic Q with W = 0 the certified bound is used (or any larger user
    bound, which stays certified). Otherwise the user bound is used, defaulting
    to CYCLIC_BOUND_FACTOR·deg(W~); such algebras are only complete if a zero
    window is found.

    Raises:
        ValueError: If no positive grading is supplied or derivable
    """
    deg0 = deg0 or default_grading(Q, W)
    L = lift_qp(Q, W)
    deg = lift_grading(Q, W, deg0)
    relations = relation_set(L)

    certified = False
    if is_acyclic(Q) and W.is_zero():
        certified_bound = truncation_bound(L, deg)
        if bound is None or bound >= certified_bound:
            certified = True
            bound = certified_bound if bound is None else bound
    if bound is None:
        d = check_grading(L.ice, L.potential, deg).degree_of_W
        bound = CYCLIC_BOUND_FACTOR * d
        logger.warning("No certified truncation bound; using %d = %d·deg(W~)", bound, CYCLIC_BOUND_FACTOR)

    algebra = GradedQuotientAlgebra.build(relations, deg, bound, certified=certified)
    if not algebra.complete:
        logger.warning("Algebra truncated at degree %d without a completeness certificate", bound)
    return FrozenJacobian(L, deg, relations, algebra, certified)


def frozen_ideal_dimensions(A: GradedQuotientAlgebra, frozen: set) -> Dict[int, int]:
    """
    Per-degree dimension of the ideal A e A generated by the frozen idempotents.

    A path lies in A e A iff it visits a frozen vertex: its prefix does, or its
    last arrow ends at one.
    """
    spans: Dict[int, List[SparseVector]] = {}
    dims: Dict[int, int] = {}
    for k in A.built_degrees():
        size = len(A.basis(k))
        if k == 0:
            rows = [{b.index: Fraction(1)} for b in A.basis(0) if b.tail in frozen]
        else:
            rows = []
            for a in A.quiver.arrows:
                m = k - A.grading[a.id]
                if m < 0:
                    continue
                if a.head in frozen:
                    for b in A.basis(m):
                        if b.head == a.tail:
                            rows.append(A.left_multiply(a.id, m, {b.index: Fraction(1)}))
                else:
                    for s in spans.get(m, []):
                        rows.append(A.left_multiply(a.id, m, s))
        reduced, _ = rref([r for r in rows if r], size)
        spans[k] = reduced
        dims[k] = len(reduced)
    return dims


def _coords_in_degree(coords, k: int) -> SparseVector:
    return {j: c for (d, j), c in coords.items() if d == k}


@dataclass
class InteriorReport:
    """Comparison of A/<e> with the Jacobian algebra Jac(Q, W)."""
    relations_match: bool
    dimensions_match: bool
    quotient_dims: Dict[int, int]
    jacobian_dims: Dict[int, int]
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.relations_match and self.dimensions_match

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "relations_match": self.relations_match,
            "dimensions_match": self.dimensions_match,
            "quotient_dims": {str(k): v for k, v in self.quotient_dims.items()},
            "jacobian_dims": {str(k): v for k, v in self.jacobian_dims.items()},
            "mismatches": self.mismatches,
        }


def _avoids(path: Path, quiver: Quiver, frozen: set) -> bool:
    if path.tail in frozen:
        return False
    return all(quiver.arrow(a).head not in frozen for a in path.arrows)


def interior_check(Q: Quiver, W: Potential, deg0: Optional[GradingFn] = None,
                   bound: Optional[int] = None) -> InteriorReport:
    """
    Check that killing the frozen idempotent leaves the Jacobian algebra of (Q, W).

    Dropping every relation term through a frozen vertex must leave d_a W for
    a in Q1 and zero for alpha_i, beta_i; the per-degree dimensions of A/AeA and
    of KQ/<d_a W> must agree.
    """
    fj = build_frozen_jacobian(Q, W, deg0, bound)
    L, A = fj.lifted, fj.algebra
    frozen = set(L.ice.frozen_vertices)

    mismatches = []
    for name, r in fj.relations.named():
        kept = AlgebraElement({p: c for p, c in r.terms.items() if _avoids(p, L.quiver, frozen)})
        kind, source = L.origin_of(name[len("d_"):])
        expected = cyclic_derivative(W, source) if kind == "arrow" else AlgebraElement()
        if kept != expected:
            mismatches.append(f"{name}: {kept.render()} != {expected.render()}")

    restricted = GradingFn.from_mapping({a.id: fj.grading[a.id] for a in Q.arrows})
    jac_relations = Presentation(
        Q, tuple(cyclic_derivative(W, a.id) for a in Q.arrows), tuple(f"d_{a.id}" for a in Q.arrows)
    )
    jacobian = GradedQuotientAlgebra.build(jac_relations, restricted, A.bound)

    ideal = frozen_ideal_dimensions(A, frozen)
    quotient_dims = {k: A.dimension(k) - ideal[k] for k in A.built_degrees()}
    jacobian_dims = {k: jacobian.dimension(k) for k in A.built_degrees()}
    dims_match = all(quotient_dims[k] == jacobian_dims[k] for k in quotient_dims)
    if not dims_match:
        mismatches.append("per-degree dimensions of A/AeA and Jac(Q, W) differ")
    return InteriorReport(not any(m.startswith("d_") for m in mismatches), dims_match,
                          quotient_dims, jacobian_dims, mismatches)


def vertex_test(A: GradedQuotientAlgebra, L: LiftedIQP, vertex: str) -> bool:
    """
    For a mutable vertex i: right multiplication by beta_i is injective on A·e_i
    in every checked degree (y·beta_i = 0 implies y = 0).
    """
    beta = Path.of(L.quiver, (beta_arrow(vertex),))
    top = A.top_degree if A.complete else A.bound - A.grading[beta_arrow(vertex)]
    for k in range(0, top + 1):
        domain = [b for b in A.basis(k) if b.tail == vertex]
        if not domain:
            continue
        target = k + A.grading[beta_arrow(vertex)]
        columns = [_coords_in_degree(A.times_path(b, beta), target) for b in domain]
        n_rows = len(A.basis(target))
        if map_rank(columns, n_rows) < len(domain):
            return False
    return True
