"""
The grading g~ = [I; b; 0] of the polarised cluster algebra, g-vectors,
c-vectors and the identity b'g' = (c')^t b.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy import Matrix

from src.data_structures import Quiver
from src.cluster.laurent import LaurentPoly, variable_names
from src.cluster.seed import Seed, exchange_matrix, exchange_monomials, initial_seed_pp

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class GradingMatrix:
    """
    A (3n) x n integer matrix; row r is the degree of the r-th variable.
    """
    rows: Tuple[Vector, ...]

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def to_matrix(self) -> Matrix:
        return Matrix(len(self.rows), self.n, [e for row in self.rows for e in row])

    def to_dict(self) -> Dict:
        names = variable_names(self.n)
        return {name: list(row) for name, row in zip(names, self.rows)}


def grading_matrix(Q: Quiver) -> GradingMatrix:
    """
    g~ with rows x_i -> e_i, yp_i -> row i of b, ym_i -> 0.

    Raises:
        RuntimeError: If b~^t g~ != 0 at the initial seed
    """
    b = exchange_matrix(Q)
    n = len(Q.vertices)
    identity = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    zero = [(0,) * n for _ in range(n)]
    g = GradingMatrix(tuple(identity + list(b) + zero))
    seed = initial_seed_pp(Q)
    if n and not (_matrix(seed.b_ext).T * g.to_matrix()).is_zero_matrix:
        raise RuntimeError("b~^t g~ is not zero for the initial polarised seed")
    return g


def _matrix(rows) -> Matrix:
    rows = [list(r) for r in rows]
    return Matrix(len(rows), len(rows[0]) if rows else 0, [e for r in rows for e in r])


@dataclass
class DegreeResult:
    """The g-vector of a Laurent polynomial, or the differing monomial degrees."""
    degree: Optional[Vector]
    monomial_degrees: List[Vector] = field(default_factory=list)

    @property
    def homogeneous(self) -> bool:
        return self.degree is not None


def degree_of(f: LaurentPoly, g: GradingMatrix) -> DegreeResult:
    """
    The common g~-degree of all monomials of f.

    The degree of a monomial is sum_r exponent_r · g~[r].
    """
    degrees = set()
    for exponents, _ in f.terms():
        d = [0] * g.n
        for e, row in zip(exponents, g.rows):
            if e:
                for j, x in enumerate(row):
                    d[j] += e * x
        degrees.add(tuple(d))
    if len(degrees) == 1:
        return DegreeResult(next(iter(degrees)))
    return DegreeResult(None, sorted(degrees))


def g_matrix(seed: Seed, g: GradingMatrix) -> Tuple[Vector, ...]:
    """
    Rows are the g-vectors of the mutable variables.

    Raises:
        ValueError: If a mutable variable is not homogeneous
    """
    rows = []
    for i, v in enumerate(seed.variables):
        result = degree_of(v, g)
        if not result.homogeneous:
            raise ValueError(f"Variable x{i + 1}' = {v.render()} is not homogeneous: {result.monomial_degrees}")
        rows.append(result.degree)
    return tuple(rows)


def c_matrix(seed: Seed) -> Tuple[Vector, ...]:
    return seed.c_matrix()


def check_gc_identity(seed: Seed, Q: Quiver, g: Optional[GradingMatrix] = None) -> bool:
    """
    Whether b'g' = (c')^t b, with b the initial exchange matrix of Q.

    Raises:
        ValueError: If a mutable variable is not homogeneous
    """
    g = g or grading_matrix(Q)
    b0 = _matrix(exchange_matrix(Q))
    if seed.n == 0:
        return True
    left = _matrix(seed.b) * _matrix(g_matrix(seed, g))
    right = _matrix(seed.c_matrix()).T * b0
    return left == right


def sign_coherent(c: Tuple[Vector, ...]) -> bool:
    """
    Every column of c is all non-negative or all non-positive.

    The c-vectors are the columns of the middle block of b_ext, the convention
    under which b'g' = (c')^t b holds.
    """
    n = len(c)
    for j in range(n):
        column = [c[i][j] for i in range(n)]
        if any(x > 0 for x in column) and any(x < 0 for x in column):
            return False
    return True


@dataclass
class InvariantReport:
    """The invariant suite at one seed."""
    homogeneous: bool
    exchange_homogeneous: bool
    gc_identity: bool
    sign_coherent: bool
    messages: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.homogeneous and self.exchange_homogeneous and self.gc_identity and self.sign_coherent

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "homogeneous": self.homogeneous,
            "exchange_homogeneous": self.exchange_homogeneous,
            "gc_identity": self.gc_identity,
            "sign_coherent": self.sign_coherent,
            "messages": self.messages,
        }


def check_invariants(seed: Seed, Q: Quiver, g: Optional[GradingMatrix] = None) -> InvariantReport:
    """
    Homogeneity of the variables and of every exchange relation, the
    identity b'g' = (c')^t b, and sign coherence of the c-vectors.
    """
    g = g or grading_matrix(Q)
    messages = []

    homogeneous = True
    for i, v in enumerate(seed.variables):
        if not degree_of(v, g).homogeneous:
            homogeneous = False
            messages.append(f"x{i + 1} = {v.render()} is not homogeneous")

    exchange_ok = True
    for k in range(1, seed.n + 1):
        positive, negative = exchange_monomials(seed, k)
        if degree_of(positive, g).degree != degree_of(negative, g).degree:
            exchange_ok = False
            messages.append(f"exchange monomials at {k} have different degrees")

    identity_ok = homogeneous and check_gc_identity(seed, Q, g)
    if homogeneous and not identity_ok:
        messages.append("b'g' != (c')^t b")

    coherent = sign_coherent(seed.c_matrix())
    if not coherent:
        messages.append(f"c-vectors are not sign-coherent: {seed.c_matrix()}")
    return InvariantReport(homogeneous, exchange_ok, identity_ok, coherent, messages)
