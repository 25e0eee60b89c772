"""
The lifted ice quiver with potential of a quiver with potential, its relation
set, the boundary presentation Gamma_Q with relations r1, r2, r3, and zig-zags.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, FrozenSet

from src.data_structures import Arrow, Quiver, IceQuiver, Path
from src.naming import (
    plus_vertex, minus_vertex, alpha_arrow, beta_arrow,
    delta_vertex_arrow, delta_arrow, dbar_arrow, check_collisions
)
from src.potential import (
    AlgebraElement, Potential, GradingFn, normalize_potential, cyclic_derivative
)
from src.quiver import is_acyclic, all_paths, to_dot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftedIQP:
    """
    The lifted ice quiver with potential (Q~, F~, W~) of (Q, W).

    Attributes:
        base: The original quiver Q
        base_potential: The original potential W
        ice: (Q~, F~)
        potential: W~
        origin: Arrow id of Q~ -> (kind, source id); kind is one of
            "arrow", "alpha", "beta", "delta_vertex", "delta_arrow"
    """
    base: Quiver
    base_potential: Potential
    ice: IceQuiver
    potential: Potential
    origin: Tuple[Tuple[str, Tuple[str, str]], ...]

    @property
    def quiver(self) -> Quiver:
        return self.ice.quiver

    def origin_of(self, arrow_id: str) -> Tuple[str, str]:
        return dict(self.origin)[arrow_id]

    def __repr__(self):
        return f"LiftedIQP({self.ice!r}, {self.potential!r})"

    def to_dict(self) -> Dict:
        return {
            "quiver": self.ice.to_dict(),
            "potential": self.potential.to_dict(),
            "origin": {a: list(o) for a, o in self.origin},
        }

    def to_dot(self) -> str:
        return to_dot(self.ice, "lifted")


@dataclass(frozen=True)
class Presentation:
    """
    A quiver with a list of relation generators.

    Every generator is a combination of parallel paths.

    Attributes:
        quiver: The quiver
        relations: Relation generators
        names: One display name per generator
        frozen_vertices: Frozen vertices, if the quiver carries an ice structure
        frozen_arrows: Frozen arrows, likewise
    """
    quiver: Quiver
    relations: Tuple[AlgebraElement, ...]
    names: Tuple[str, ...]
    frozen_vertices: FrozenSet[str] = frozenset()
    frozen_arrows: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if len(self.relations) != len(self.names):
            raise ValueError("Each relation needs exactly one name")
        for name, r in zip(self.names, self.relations):
            if not r.is_zero() and r.endpoints() is None:
                raise ValueError(f"Relation {name} is not a combination of parallel paths")

    def named(self) -> List[Tuple[str, AlgebraElement]]:
        return list(zip(self.names, self.relations))

    def relation(self, name: str) -> AlgebraElement:
        return dict(self.named())[name]

    def to_dict(self) -> Dict:
        data = {
            "quiver": IceQuiver(self.quiver, self.frozen_vertices, self.frozen_arrows).to_dict()
            if self.frozen_vertices or self.frozen_arrows else self.quiver.to_dict(),
            "relations": [{"name": n, "terms": r.to_dict()} for n, r in self.named()],
        }
        return data

    def to_dot(self, name: str = "presentation") -> str:
        return to_dot(IceQuiver(self.quiver, self.frozen_vertices, self.frozen_arrows), name)


@dataclass(frozen=True)
class ZigZag:
    """
    A zig-zag (q, a, p): paths p and q of Q meeting the arrow a with
    h(p) = h(a) and t(q) = t(a). It runs from t(p) to h(q).

    Attributes:
        q: Path leaving t(a)
        a: Arrow id
        p: Path entering h(a)
        strict: p does not end with a and q does not start with a
    """
    q: Path
    a: str
    p: Path
    strict: bool

    @property
    def tail(self) -> str:
        return self.p.tail

    @property
    def head(self) -> str:
        return self.q.head

    def render(self) -> str:
        return f"({self.q.render()}, {self.a}, {self.p.render()})"

    def __repr__(self):
        return self.render()

    def to_dict(self) -> Dict:
        return {"q": self.q.to_dict(), "a": self.a, "p": self.p.to_dict(), "strict": self.strict}


def lift_qp(Q: Quiver, W: Potential) -> LiftedIQP:
    """
    Construct (Q~, F~, W~) from (Q, W).

    Q~ has vertices Q0, i+ and i- for every vertex i, and arrows Q1 together with
    alpha_i: i -> i+, beta_i: i- -> i, delta_i: i+ -> i-, and
    delta_a: h(a)+ -> t(a)- for every arrow a. F~ is the full subquiver on the
    i+ and i- with all delta arrows. The potential is
    W~ = W + sum_i beta_i delta_i alpha_i - sum_a a beta_t(a) delta_a alpha_h(a).

    Raises:
        ValueError: If Q has a loop or a generated id collides with an existing one
    """
    for a in Q.arrows:
        if a.tail == a.head:
            raise ValueError(f"Loop at vertex {a.tail!r}: arrow {a.id!r}")

    vertices = list(Q.vertices)
    vertices += [plus_vertex(v) for v in Q.vertices]
    vertices += [minus_vertex(v) for v in Q.vertices]

    arrows = list(Q.arrows)
    origin = [(a.id, ("arrow", a.id)) for a in Q.arrows]
    for v in Q.vertices:
        arrows.append(Arrow(alpha_arrow(v), v, plus_vertex(v)))
        arrows.append(Arrow(beta_arrow(v), minus_vertex(v), v))
        arrows.append(Arrow(delta_vertex_arrow(v), plus_vertex(v), minus_vertex(v)))
        origin += [(alpha_arrow(v), ("alpha", v)), (beta_arrow(v), ("beta", v)),
                   (delta_vertex_arrow(v), ("delta_vertex", v))]
    for a in Q.arrows:
        arrows.append(Arrow(delta_arrow(a.id), plus_vertex(a.head), minus_vertex(a.tail)))
        origin.append((delta_arrow(a.id), ("delta_arrow", a.id)))

    check_collisions(vertices + [a.id for a in arrows])

    lifted = Quiver(tuple(vertices), tuple(arrows), Q.labels)
    frozen_vertices = frozenset(vertices[len(Q.vertices):])
    frozen_arrows = frozenset(
        [delta_vertex_arrow(v) for v in Q.vertices] + [delta_arrow(a.id) for a in Q.arrows]
    )
    ice = IceQuiver(lifted, frozen_vertices, frozen_arrows)

    terms = [(c, Path.of(lifted, cycle.arrows)) for c, cycle in W.terms]
    for v in Q.vertices:
        terms.append((1, (alpha_arrow(v), delta_vertex_arrow(v), beta_arrow(v))))
    for a in Q.arrows:
        terms.append((-1, (alpha_arrow(a.head), delta_arrow(a.id), beta_arrow(a.tail), a.id)))
    potential = normalize_potential(lifted, terms)

    logger.info("Lifted quiver: %d vertices, %d arrows, %d potential terms",
                len(vertices), len(arrows), len(potential.terms))
    return LiftedIQP(Q, W, ice, potential, tuple(origin))


def _path(quiver: Quiver, *ids: str) -> AlgebraElement:
    return AlgebraElement.from_path(Path.of(quiver, ids))


def closed_form_relation(L: LiftedIQP, arrow_id: str) -> AlgebraElement:
    """The cyclic derivative of W~ at an unfrozen arrow, written out directly."""
    Q, lifted = L.base, L.quiver
    kind, source = L.origin_of(arrow_id)
    if kind == "arrow":
        a = Q.arrow(source)
        return cyclic_derivative(L.base_potential, a.id) - _path(
            lifted, alpha_arrow(a.head), delta_arrow(a.id), beta_arrow(a.tail))
    if kind == "alpha":
        result = _path(lifted, delta_vertex_arrow(source), beta_arrow(source))
        for g in Q.arrows_into(source):
            result = result - _path(lifted, delta_arrow(g.id), beta_arrow(g.tail), g.id)
        return result
    if kind == "beta":
        result = _path(lifted, alpha_arrow(source), delta_vertex_arrow(source))
        for g in Q.arrows_from(source):
            result = result - _path(lifted, g.id, alpha_arrow(g.head), delta_arrow(g.id))
        return result
    raise ValueError(f"Arrow {arrow_id!r} is frozen")


def relation_set(L: LiftedIQP) -> Presentation:
    """
    The relations {d_alpha W~ : alpha unfrozen} of the frozen Jacobian algebra.

    Each generic cyclic derivative is cross-checked against its closed form.

    Raises:
        RuntimeError: If a generic derivative disagrees with the closed form
    """
    relations = []
    names = []
    for arrow in L.ice.mutable_arrows:
        generic = cyclic_derivative(L.potential, arrow.id)
        closed = closed_form_relation(L, arrow.id)
        if generic != closed:
            raise RuntimeError(
                f"Cyclic derivative at {arrow.id} disagrees with its closed form: "
                f"{generic.render()} != {closed.render()}"
            )
        relations.append(generic)
        names.append(f"d_{arrow.id}")
    return Presentation(L.quiver, tuple(relations), tuple(names),
                        L.ice.frozen_vertices, L.ice.frozen_arrows)


def zigzags(Q: Quiver) -> List[ZigZag]:
    """
    All zig-zags (q, a, p) of an acyclic quiver, with strictness flagged.

    Raises:
        ValueError: If Q has a directed cycle
    """
    paths = all_paths(Q)
    result = []
    for a in Q.arrows:
        into_head = [p for p in paths if p.head == a.head]
        from_tail = [q for q in paths if q.tail == a.tail]
        for q in from_tail:
            for p in into_head:
                strict = not (p.arrows and p.arrows[-1] == a.id) \
                    and not (q.arrows and q.arrows[0] == a.id)
                result.append(ZigZag(q, a.id, p, strict))
    return result


def gamma_presentation(Q: Quiver) -> Presentation:
    """
    The presentation K Gamma_Q / I of the boundary algebra of an acyclic quiver.

    Gamma_Q is F~ with an arrow dbar_p: t(p)- -> h(p)+ for every path p of Q.
    Relations, for every path p and every zig-zag (q, a, p):
        r1(p) = dbar_p delta_t(p) - sum_{h(a)=t(p)} dbar_pa delta_a
        r2(p) = delta_h(p) dbar_p - sum_{t(a)=h(p)} delta_a dbar_ap
        r3(q, a, p) = dbar_q delta_a dbar_p
    All zig-zag relations are emitted, including redundant ones.

    Raises:
        ValueError: If Q has a directed cycle
    """
    if not is_acyclic(Q):
        raise ValueError("Gamma_Q needs an acyclic quiver (its path set is infinite otherwise)")

    paths = all_paths(Q)
    vertices = []
    for v in Q.vertices:
        vertices += [plus_vertex(v), minus_vertex(v)]
    arrows = [Arrow(delta_vertex_arrow(v), plus_vertex(v), minus_vertex(v)) for v in Q.vertices]
    arrows += [Arrow(delta_arrow(a.id), plus_vertex(a.head), minus_vertex(a.tail)) for a in Q.arrows]
    arrows += [Arrow(dbar_arrow(p), minus_vertex(p.tail), plus_vertex(p.head)) for p in paths]
    check_collisions(vertices + [a.id for a in arrows])
    gamma = Quiver(tuple(vertices), tuple(arrows))

    relations = []
    names = []
    for p in paths:
        r1 = _path(gamma, delta_vertex_arrow(p.tail), dbar_arrow(p))
        for a in Q.arrows_into(p.tail):
            pa = Path(a.tail, p.head, (a.id,) + p.arrows)
            r1 = r1 - _path(gamma, delta_arrow(a.id), dbar_arrow(pa))
        relations.append(r1)
        names.append(f"r1({p.render()})")

        r2 = _path(gamma, dbar_arrow(p), delta_vertex_arrow(p.head))
        for a in Q.arrows_from(p.head):
            ap = Path(p.tail, a.head, p.arrows + (a.id,))
            r2 = r2 - _path(gamma, dbar_arrow(ap), delta_arrow(a.id))
        relations.append(r2)
        names.append(f"r2({p.render()})")

    for z in zigzags(Q):
        relations.append(_path(gamma, dbar_arrow(z.p), delta_arrow(z.a), dbar_arrow(z.q)))
        names.append(f"r3{z.render()}")

    logger.info("Gamma_Q: %d vertices, %d arrows, %d relations",
                len(vertices), len(arrows), len(relations))
    return Presentation(gamma, tuple(relations), tuple(names))


def gamma_grading(Q: Quiver, deg: GradingFn) -> GradingFn:
    """
    Grading of Gamma_Q induced by a lifted grading: dbar_p gets the degree of
    its image alpha_h(p) p beta_t(p).
    """
    degrees = {}
    for v in Q.vertices:
        degrees[delta_vertex_arrow(v)] = deg[delta_vertex_arrow(v)]
    for a in Q.arrows:
        degrees[delta_arrow(a.id)] = deg[delta_arrow(a.id)]
    for p in all_paths(Q):
        degrees[dbar_arrow(p)] = deg[alpha_arrow(p.head)] + deg.of_path(p) + deg[beta_arrow(p.tail)]
    return GradingFn.from_mapping(degrees)


def phi_arrow_images(Q: Quiver) -> Dict[str, Path]:
    """
    Images of the arrows of Gamma_Q in the lifted quiver:
    delta arrows map to themselves, dbar_p to alpha_h(p) p beta_t(p).
    """
    images = {}
    for v in Q.vertices:
        images[delta_vertex_arrow(v)] = Path(plus_vertex(v), minus_vertex(v), (delta_vertex_arrow(v),))
    for a in Q.arrows:
        images[delta_arrow(a.id)] = Path(plus_vertex(a.head), minus_vertex(a.tail), (delta_arrow(a.id),))
    for p in all_paths(Q):
        images[dbar_arrow(p)] = Path(
            minus_vertex(p.tail), plus_vertex(p.head),
            (beta_arrow(p.tail),) + p.arrows + (alpha_arrow(p.head),)
        )
    return images


def phi_image(Q: Quiver, x: AlgebraElement, images: Optional[Dict[str, Path]] = None) -> AlgebraElement:
    """Apply Phi to an element of K Gamma_Q, giving an element of K Q~."""
    images = images if images is not None else phi_arrow_images(Q)
    result: Dict[Path, Fraction] = {}
    for path, coeff in x.items():
        if path.is_trivial:
            image = path
        else:
            ids: Tuple[str, ...] = ()
            for a in path.arrows:
                ids += images[a].arrows
            image = Path(images[path.arrows[0]].tail, images[path.arrows[-1]].head, ids)
        result[image] = result.get(image, Fraction(0)) + coeff
    return AlgebraElement(result)


def preprojective_images(L: LiftedIQP) -> List[Tuple[str, AlgebraElement]]:
    """
    Images of the doubled frozen quiver under pi: each frozen arrow delta, and
    delta* mapped to d_delta W~.
    """
    images = []
    for arrow in L.quiver.arrows:
        if L.ice.is_frozen_arrow(arrow.id):
            images.append((arrow.id, AlgebraElement.from_path(Path.of(L.quiver, (arrow.id,)))))
            images.append((f"{arrow.id}*", cyclic_derivative(L.potential, arrow.id)))
    return images
