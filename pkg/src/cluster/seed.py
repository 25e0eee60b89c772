"""
Seeds of geometric type and Fomin-Zelevinsky mutation.

The extended exchange matrix b_ext has n columns and one row per variable:
rows 1..n for the mutable x_i, then the frozen rows. With polarised
coefficients the frozen rows are 1+..n+ then 1-..n-, and b_ext = [b; I; -I].
Principal coefficients keep [b; I]; the coefficient-free engine keeps b alone.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.data_structures import Quiver
from src.cluster.laurent import LaurentPoly, variable_names

logger = logging.getLogger(__name__)

POLARISED = "polarised"
PRINCIPAL = "principal"
COEFFICIENT_FREE = "none"

Matrix = Tuple[Tuple[int, ...], ...]


def exchange_matrix(Q: Quiver) -> Matrix:
    """
    b_ij = #(arrows j -> i) - #(arrows i -> j), indexed by Q's vertex order.

    Raises:
        ValueError: If Q has a loop or a 2-cycle
    """
    index = {v: i for i, v in enumerate(Q.vertices)}
    n = len(Q.vertices)
    b = [[0] * n for _ in range(n)]
    pairs = set()
    for a in Q.arrows:
        if a.tail == a.head:
            raise ValueError(f"Loop at vertex {a.tail!r}: arrow {a.id!r}")
        if (a.head, a.tail) in pairs:
            raise ValueError(f"2-cycle between {a.tail!r} and {a.head!r}")
        pairs.add((a.tail, a.head))
        i, j = index[a.head], index[a.tail]
        b[i][j] += 1
        b[j][i] -= 1
    return tuple(tuple(row) for row in b)


@dataclass(frozen=True)
class Seed:
    """
    A seed (x, b_ext): n mutable variables, its frozen variables and the
    extended exchange matrix.

    Attributes:
        vertices: Vertex labels for columns 1..n
        coefficients: POLARISED, PRINCIPAL or COEFFICIENT_FREE
        variables: Mutable cluster variables x_1..x_n
        frozen: Frozen variables, one per frozen row of b_ext
        b_ext: Rows of the extended exchange matrix
    """
    vertices: Tuple[str, ...]
    coefficients: str
    variables: Tuple[LaurentPoly, ...]
    frozen: Tuple[LaurentPoly, ...]
    b_ext: Matrix

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def b(self) -> Matrix:
        return self.b_ext[:self.n]

    def row_variable(self, r: int) -> LaurentPoly:
        return self.variables[r] if r < self.n else self.frozen[r - self.n]

    def c_matrix(self) -> Matrix:
        """The middle block (rows 1+..n+): its columns are the c-vectors."""
        if self.coefficients == COEFFICIENT_FREE:
            raise ValueError("A coefficient-free seed has no c-vectors")
        return self.b_ext[self.n:2 * self.n]

    def cluster_key(self) -> Tuple:
        """The cluster as an unordered set, in canonical form."""
        return tuple(sorted(v.canonical() for v in self.variables))

    def __repr__(self):
        return f"Seed(n={self.n}, {self.coefficients}, [{', '.join(v.render() for v in self.variables)}])"

    def to_dict(self) -> Dict:
        return {
            "vertices": list(self.vertices),
            "coefficients": self.coefficients,
            "variables": [v.to_dict() for v in self.variables],
            "frozen": [f.to_dict() for f in self.frozen],
            "b_ext": [list(row) for row in self.b_ext],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Seed":
        vertices = tuple(str(v) for v in data["vertices"])
        n = len(vertices)
        coefficients = data.get("coefficients", POLARISED)
        if coefficients not in (POLARISED, PRINCIPAL, COEFFICIENT_FREE):
            raise ValueError(f"Unknown coefficient system {coefficients!r}")
        variables = tuple(LaurentPoly.from_dict(n, v) for v in data["variables"])
        frozen = tuple(LaurentPoly.from_dict(n, f) for f in data["frozen"])
        b_ext = tuple(tuple(int(x) for x in row) for row in data["b_ext"])
        seed = cls(vertices, coefficients, variables, frozen, b_ext)
        _validate_seed(seed)
        return seed


def _validate_seed(seed: Seed):
    n = seed.n
    if len(seed.variables) != n:
        raise ValueError(f"Seed needs {n} mutable variables, got {len(seed.variables)}")
    if len(seed.b_ext) != n + len(seed.frozen):
        raise ValueError("b_ext needs one row per mutable and frozen variable")
    if any(len(row) != n for row in seed.b_ext):
        raise ValueError(f"Every row of b_ext needs {n} entries")
    b = seed.b
    for i in range(n):
        for j in range(n):
            if b[i][j] != -b[j][i]:
                raise ValueError(f"Exchange matrix is not skew-symmetric at ({i + 1}, {j + 1})")


def initial_seed(Q: Quiver, coefficients: str = POLARISED) -> Seed:
    """
    The initial seed of Q: x_i as variables and b_ext built from b.

    Raises:
        ValueError: On a loop, a 2-cycle, or an unknown coefficient system
    """
    b = exchange_matrix(Q)
    n = len(Q.vertices)
    names = variable_names(n)
    x = tuple(LaurentPoly.variable(n, names[i]) for i in range(n))
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    negative = tuple(tuple(-e for e in row) for row in identity)
    yp = tuple(LaurentPoly.variable(n, names[n + i]) for i in range(n))
    ym = tuple(LaurentPoly.variable(n, names[2 * n + i]) for i in range(n))

    if coefficients == POLARISED:
        return Seed(Q.vertices, POLARISED, x, yp + ym, b + identity + negative)
    if coefficients == PRINCIPAL:
        return Seed(Q.vertices, PRINCIPAL, x, yp, b + identity)
    if coefficients == COEFFICIENT_FREE:
        return Seed(Q.vertices, COEFFICIENT_FREE, x, (), b)
    raise ValueError(f"Unknown coefficient system {coefficients!r}")


def initial_seed_pp(Q: Quiver) -> Seed:
    """The initial seed with polarised principal coefficients."""
    return initial_seed(Q, POLARISED)


def _check_index(seed: Seed, k: int):
    if not 1 <= k <= seed.n:
        raise ValueError(f"Mutable index must be in 1..{seed.n}, got {k}")


def mutate_matrix(b_ext: Matrix, k: int) -> Matrix:
    """Matrix mutation at column k (0-based) over every row of b_ext."""
    rows = []
    for i, row in enumerate(b_ext):
        new = []
        for j, bij in enumerate(row):
            if i == k or j == k:
                new.append(-bij)
            else:
                bik, bkj = b_ext[i][k], b_ext[k][j]
                sign = (bik > 0) - (bik < 0)
                new.append(bij + sign * max(bik * bkj, 0))
        rows.append(tuple(new))
    return tuple(rows)


def exchange_monomials(seed: Seed, k: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    The two monomials of the exchange relation at k (1-based):
    prod over rows of v_r^[b_rk]+ and prod of v_r^[-b_rk]+.
    """
    _check_index(seed, k)
    col = k - 1
    positive = LaurentPoly.one(seed.n)
    negative = LaurentPoly.one(seed.n)
    for r, row in enumerate(seed.b_ext):
        e = row[col]
        if e > 0:
            positive = positive * seed.row_variable(r) ** e
        elif e < 0:
            negative = negative * seed.row_variable(r) ** (-e)
    return positive, negative


def mutate(seed: Seed, k: int) -> Seed:
    """
    Mutate at k (1-based).

    Raises:
        ValueError: If k is out of range
        LaurentDivisionError: If the exchange division is not exact
    """
    positive, negative = exchange_monomials(seed, k)
    new_variable = (positive + negative).exact_div(seed.variables[k - 1])
    variables = seed.variables[:k - 1] + (new_variable,) + seed.variables[k:]
    logger.debug("mutate at %d: %s", k, new_variable.render())
    return Seed(seed.vertices, seed.coefficients, variables, seed.frozen, mutate_matrix(seed.b_ext, k - 1))


def mutate_sequence(seed: Seed, word: List[int]) -> Seed:
    for k in word:
        seed = mutate(seed, k)
    return seed


def specialise_minus(seed: Seed) -> Seed:
    """
    Set every ym_i to 1 and drop the 1-..n- rows: polarised to principal coefficients.

    Raises:
        ValueError: If the seed is not polarised
    """
    if seed.coefficients != POLARISED:
        raise ValueError("Only polarised seeds can be specialised")
    n = seed.n
    minus = variable_names(n)[2 * n:]
    variables = tuple(v.substitute_one(minus) for v in seed.variables)
    return Seed(seed.vertices, PRINCIPAL, variables, seed.frozen[:n], seed.b_ext[:2 * n])
