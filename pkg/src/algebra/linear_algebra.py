"""
Exact linear algebra over QQ on sparse row vectors, backed by sympy's DomainMatrix.

Vectors are dicts {column index: Fraction}. No floating point is involved.
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

SparseVector = Dict[int, Fraction]


def to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def build_matrix(rows: Sequence[SparseVector], n_cols: int) -> DomainMatrix:
    """Sparse DomainMatrix over QQ from a list of sparse row vectors."""
    data = {}
    for i, row in enumerate(rows):
        entries = {j: to_qq(v) for j, v in row.items() if v != 0}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), n_cols), QQ)


def _sparse_rows(matrix: DomainMatrix) -> Dict[int, Dict[int, Fraction]]:
    rep = matrix.to_sparse().rep
    return {i: {j: from_qq(v) for j, v in row.items()} for i, row in rep.items()}


def rref(rows: Sequence[SparseVector], n_cols: int) -> Tuple[List[SparseVector], Tuple[int, ...]]:
    """
    Reduced row echelon form of the span of the given rows.

    Pivots are the leftmost non-zero columns, so columns should be ordered
    with the entries to eliminate first.

    Returns:
        (non-zero rref rows in pivot order, pivot columns)
    """
    if not rows or n_cols == 0:
        return [], ()
    reduced, pivots = build_matrix(rows, n_cols).rref()
    sparse = _sparse_rows(reduced)
    out = [sparse.get(i, {}) for i in range(len(pivots))]
    return out, tuple(pivots)


def rank(rows: Sequence[SparseVector], n_cols: int) -> int:
    if not rows or n_cols == 0:
        return 0
    return build_matrix(rows, n_cols).rank()


def nullspace(rows: Sequence[SparseVector], n_cols: int) -> List[SparseVector]:
    """
    Basis of {x : M x = 0} where M has the given rows, read off the rref.
    """
    if n_cols == 0:
        return []
    reduced, pivots = rref(rows, n_cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vector = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            if free in row:
                vector[p] = -row[free]
        basis.append(vector)
    return basis


def columns_to_rows(columns: Sequence[SparseVector]) -> Dict[int, SparseVector]:
    """Transpose a list of sparse column vectors into {row index: sparse row}."""
    rows: Dict[int, SparseVector] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return rows


def map_rank(columns: Sequence[SparseVector], n_rows: int) -> int:
    """Rank of the linear map whose matrix has the given sparse columns."""
    if not columns or n_rows == 0:
        return 0
    rows = columns_to_rows(columns)
    return rank([rows.get(i, {}) for i in range(n_rows)], len(columns))


def map_kernel(columns: Sequence[SparseVector], n_rows: int) -> List[SparseVector]:
    """Kernel of the linear map with the given sparse columns, as domain vectors."""
    if not columns:
        return []
    rows = columns_to_rows(columns)
    return nullspace([rows.get(i, {}) for i in range(n_rows)], len(columns))


def compose_is_zero(outer: Sequence[SparseVector], inner: Sequence[SparseVector]) -> bool:
    """
    Whether outer∘inner = 0, both maps given by sparse columns
    (inner's codomain indexes outer's columns).
    """
    for col in inner:
        image: SparseVector = {}
        for j, v in col.items():
            for i, w in outer[j].items():
                image[i] = image.get(i, Fraction(0)) + v * w
        if any(x != 0 for x in image.values()):
            return False
    return True
