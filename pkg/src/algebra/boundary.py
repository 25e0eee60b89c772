"""
The boundary algebra e A e of the lifted quiver of an acyclic Q, compared
against the presentation K Gamma_Q / I through the map Phi.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.data_structures import Quiver, Path
from src.potential import AlgebraElement, GradingFn, Potential, normalize_potential
from src.lift import (
    LiftedIQP, Presentation, gamma_presentation, gamma_grading, phi_arrow_images, phi_image,
    preprojective_images
)
from src.algebra.graded_algebra import GradedQuotientAlgebra
from src.algebra.jacobian import build_frozen_jacobian
from src.algebra.linear_algebra import SparseVector, rref

logger = logging.getLogger(__name__)


def generated_subalgebra(A: GradedQuotientAlgebra, generators: Sequence[AlgebraElement],
                         vertices: Sequence[str]) -> Dict[int, int]:
    """
    Per-degree dimension of the subalgebra generated by the idempotents of a
    vertex set and the given homogeneous elements.

    S_0 is spanned by the idempotents and S_k by the products g·s with
    deg g + deg s = k, s in S_{k - deg g}.

    Raises:
        ValueError: If the algebra is incomplete or a generator is inhomogeneous
    """
    A.require_complete("generated_subalgebra")
    by_degree: Dict[int, List[AlgebraElement]] = {}
    for g in generators:
        if g.is_zero():
            continue
        d = A.grading.homogeneous_degree(g)
        if d is None or d == 0:
            raise ValueError(f"Generator {g.render()} is not homogeneous of positive degree")
        by_degree.setdefault(d, []).append(g)

    index = {b.path: b.index for b in A.basis(0)}
    spans: Dict[int, List[SparseVector]] = {
        0: [{index[Path.trivial(v)]: Fraction(1)} for v in vertices]
    }
    dims = {0: len(spans[0])}
    for k in A.built_degrees():
        if k == 0:
            continue
        rows = []
        for d, gens in by_degree.items():
            for s in spans.get(k - d, []):
                s_element = A.element({(k - d, j): c for j, c in s.items()})
                for g in gens:
                    product = A.multiply(g, s_element).coordinates
                    row = {j: c for (degree, j), c in product.items() if degree == k}
                    if row:
                        rows.append(row)
        spans[k], _ = rref(rows, len(A.basis(k)))
        dims[k] = len(spans[k])
    return dims


@dataclass
class PhiReport:
    """Outcome of the three Phi checks."""
    well_defined: bool
    surjective: bool
    dimensions_match: bool
    corner_dims: Dict[int, int]
    image_dims: Dict[int, int]
    gamma_dims: Dict[int, int]
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.well_defined and self.surjective and self.dimensions_match

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "well_defined": self.well_defined,
            "surjective": self.surjective,
            "dimensions_match": self.dimensions_match,
            "corner_dims": {str(k): v for k, v in sorted(self.corner_dims.items())},
            "image_dims": {str(k): v for k, v in sorted(self.image_dims.items())},
            "gamma_dims": {str(k): v for k, v in sorted(self.gamma_dims.items())},
            "counterexamples": self.counterexamples,
        }


def _nonzero(dims: Dict[int, int]) -> Dict[int, int]:
    return {k: v for k, v in dims.items() if v}


def verify_phi(Q: Quiver, deg0: Optional[GradingFn] = None) -> PhiReport:
    """
    Check that Phi: K Gamma_Q / I -> e A e is an isomorphism for an acyclic Q.

    (i) every relation of I maps to zero in A, (ii) the images of the arrows of
    Gamma_Q generate e A e, (iii) K Gamma_Q / I and e A e have equal dimension
    in every degree.

    Raises:
        ValueError: If Q has a directed cycle
    """
    gamma = gamma_presentation(Q)
    W = normalize_potential(Q, [])
    fj = build_frozen_jacobian(Q, W, deg0)
    A, L = fj.algebra, fj.lifted
    frozen = [v for v in L.quiver.vertices if L.ice.is_frozen_vertex(v)]

    gdeg = gamma_grading(Q, fj.grading)
    images = phi_arrow_images(Q)

    counterexamples = []
    for name, r in gamma.named():
        if not A.is_zero(phi_image(Q, r, images)):
            counterexamples.append(f"Phi({name}) != 0")
    well_defined = not counterexamples

    corner_dims = _nonzero(A.corner(frozen).dimensions_by_degree())
    generators = [AlgebraElement.from_path(images[a.id]) for a in gamma.quiver.arrows]
    image_dims = _nonzero(generated_subalgebra(A, generators, frozen))
    surjective = image_dims == corner_dims
    if not surjective:
        counterexamples.append("image of Phi is a proper subalgebra of e A e")

    # a window of max-degree zeros above the corner's top certifies the quotient
    gamma_bound = (A.top_degree or 0) + gdeg.max_degree
    B = GradedQuotientAlgebra.build(gamma, gdeg, gamma_bound)
    gamma_dims = _nonzero(B.dimensions())
    dimensions_match = B.complete and gamma_dims == corner_dims
    if not dimensions_match:
        counterexamples.append("dimensions of K Gamma_Q / I and e A e differ")

    logger.info("verify_phi: well_defined=%s surjective=%s dims=%s",
                well_defined, surjective, dimensions_match)
    return PhiReport(well_defined, surjective, dimensions_match,
                     corner_dims, image_dims, gamma_dims, counterexamples)


def preprojective_check(A: GradedQuotientAlgebra, L: LiftedIQP) -> bool:
    """
    Whether sum over frozen arrows delta of [delta, d_delta W~] vanishes in A.
    """
    total = AlgebraElement()
    images = dict(preprojective_images(L))
    for arrow in L.quiver.arrows:
        if not L.ice.is_frozen_arrow(arrow.id):
            continue
        delta = images[arrow.id]
        star = images[f"{arrow.id}*"]
        total = total + delta * star - star * delta
    return A.is_zero(total)


@dataclass
class SurjectivityReport:
    """Whether pi: Pi(F~) -> e A e reaches every degree of the corner."""
    surjective: bool
    corner_dims: Dict[int, int]
    image_dims: Dict[int, int]

    @property
    def missing_degrees(self) -> List[int]:
        return sorted(k for k, v in self.corner_dims.items() if self.image_dims.get(k, 0) < v)

    def to_dict(self) -> Dict:
        return {
            "surjective": self.surjective,
            "corner_dims": {str(k): v for k, v in sorted(self.corner_dims.items())},
            "image_dims": {str(k): v for k, v in sorted(self.image_dims.items())},
            "missing_degrees": self.missing_degrees,
        }


def pi_surjectivity(Q: Quiver, W: Optional[Potential] = None,
                    deg0: Optional[GradingFn] = None) -> SurjectivityReport:
    """
    Compare the subalgebra generated by the images of the doubled frozen quiver
    with the boundary algebra.

    Raises:
        ValueError: If the algebra cannot be certified complete
    """
    W = W if W is not None else normalize_potential(Q, [])
    fj = build_frozen_jacobian(Q, W, deg0)
    A, L = fj.algebra, fj.lifted
    frozen = [v for v in L.quiver.vertices if L.ice.is_frozen_vertex(v)]
    corner_dims = _nonzero(A.corner(frozen).dimensions_by_degree())
    image_dims = _nonzero(generated_subalgebra(A, [x for _, x in preprojective_images(L)], frozen))
    return SurjectivityReport(image_dims == corner_dims, corner_dims, image_dims)


def zigzag_redundancy(Q: Quiver, deg0: Optional[GradingFn] = None) -> List[Tuple[str, bool]]:
    """
    For each zig-zag relation, whether it already lies in the ideal generated by
    the r1 and r2 relations.

    Returns:
        (relation name, redundant) pairs in presentation order
    """
    gamma = gamma_presentation(Q)
    W = normalize_potential(Q, [])
    fj = build_frozen_jacobian(Q, W, deg0)
    gdeg = gamma_grading(Q, fj.grading)

    linear = [(n, r) for n, r in gamma.named() if not n.startswith("r3")]
    zigzag_relations = [(n, r) for n, r in gamma.named() if n.startswith("r3")]
    if not zigzag_relations:
        return []
    reduced = Presentation(gamma.quiver, tuple(r for _, r in linear), tuple(n for n, _ in linear))
    top = max(gdeg.homogeneous_degree(r) for _, r in zigzag_relations)
    B = GradedQuotientAlgebra.build(reduced, gdeg, top)
    return [(n, B.is_zero(r)) for n, r in zigzag_relations]
