"""
Laurent polynomials in the variables x_i, yp_i, ym_i of a rank-n seed.

A Laurent polynomial is stored as a sympy PolyElement numerator over ZZ
(graded lexicographic order) with no monomial factor, together with an
integer shift vector: the value is numerator · x^shift.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


class LaurentDivisionError(ArithmeticError):
    """An exchange division that is not exact in the Laurent ring."""


def variable_names(n: int) -> Tuple[str, ...]:
    """Registry order: x1..xn, yp1..ypn, ym1..ymn."""
    return tuple([f"x{i}" for i in range(1, n + 1)]
                 + [f"yp{i}" for i in range(1, n + 1)]
                 + [f"ym{i}" for i in range(1, n + 1)])


@lru_cache(maxsize=None)
def laurent_ring(n: int):
    """The polynomial ring over ZZ in the 3n variables of a rank-n seed."""
    return ring(",".join(variable_names(n)), ZZ, grlex)[0]


class LaurentPoly:
    """
    An element of ZZ[x^±, yp^±, ym^±] for a fixed rank n.

    Zero has a zero numerator and zero shift.
    """

    __slots__ = ("n", "numerator", "shift")

    def __init__(self, n: int, numerator, shift: Optional[Exponents] = None):
        self.n = n
        size = 3 * n
        shift = tuple(shift) if shift is not None else (0,) * size
        if not numerator:
            self.numerator = laurent_ring(n).zero
            self.shift = (0,) * size
            return
        lowest = list(numerator.terms()[0][0])
        for monom, _ in numerator.terms():
            lowest = [min(a, b) for a, b in zip(lowest, monom)]
        if any(lowest):
            numerator = numerator.exquo(laurent_ring(n).from_dict({tuple(lowest): 1}))
        self.numerator = numerator
        self.shift = tuple(s + e for s, e in zip(shift, lowest))

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n, laurent_ring(n).zero)

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls(n, laurent_ring(n).one)

    @classmethod
    def variable(cls, n: int, name: str) -> "LaurentPoly":
        names = variable_names(n)
        if name not in names:
            raise ValueError(f"Unknown variable {name!r} for rank {n}")
        exponents = [0] * (3 * n)
        exponents[names.index(name)] = 1
        return cls.monomial(n, exponents)

    @classmethod
    def monomial(cls, n: int, exponents: Sequence[int], coefficient: int = 1) -> "LaurentPoly":
        return cls(n, laurent_ring(n).from_dict({(0,) * (3 * n): coefficient}), tuple(exponents))

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[int, Sequence[int]]]) -> "LaurentPoly":
        """Sum of coefficient·monomial terms, exponents possibly negative."""
        terms = [(int(c), tuple(e)) for c, e in terms if c]
        if not terms:
            return cls.zero(n)
        low = [min(e[i] for _, e in terms) for i in range(3 * n)]
        data: Dict[Exponents, int] = {}
        for c, e in terms:
            key = tuple(a - b for a, b in zip(e, low))
            data[key] = data.get(key, 0) + c
        return cls(n, laurent_ring(n).from_dict({k: v for k, v in data.items() if v}), tuple(low))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.n != other.n:
            raise ValueError(f"Laurent polynomials of ranks {self.n} and {other.n} do not mix")

    def _aligned(self, low: Exponents):
        """Numerator of self written over the monomial x^low (low <= shift)."""
        offset = tuple(s - l for s, l in zip(self.shift, low))
        if not any(offset):
            return self.numerator
        return self.numerator * laurent_ring(self.n).from_dict({offset: 1})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.n, self._aligned(low) + other._aligned(low), low)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, -self.numerator, self.shift)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.n, self.numerator * other.numerator, shift)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("Negative powers are only defined for monomials; use exact_div")
        result = LaurentPoly.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """
        The Laurent polynomial h with self = other·h.

        Raises:
            ZeroDivisionError: If other is zero
            LaurentDivisionError: If no such h exists
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero Laurent polynomial")
        try:
            quotient = self.numerator.exquo(other.numerator)
        except ExactQuotientFailed:
            raise LaurentDivisionError(f"{self.render()} is not divisible by {other.render()}")
        shift = tuple(a - b for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.n, quotient, shift)

    def substitute_one(self, names: Iterable[str]) -> "LaurentPoly":
        """Set the given variables to 1."""
        registry = variable_names(self.n)
        positions = {registry.index(name) for name in names}
        return LaurentPoly.from_terms(self.n, [
            (c, tuple(0 if i in positions else e for i, e in enumerate(exps)))
            for exps, c in self.terms()
        ])

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.numerator

    def terms(self) -> List[Tuple[Exponents, int]]:
        """(exponents, coefficient) pairs with the shift applied, sorted."""
        out = []
        for monom, c in self.numerator.terms():
            out.append((tuple(m + s for m, s in zip(monom, self.shift)), int(c)))
        return sorted(out)

    def canonical(self) -> Tuple[Tuple[Exponents, int], ...]:
        return tuple(self.terms())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.n, self.canonical()))

    def render(self) -> str:
        """Numerator over a monomial denominator, e.g. (x2*yp1 + ym1)/x1."""
        if self.is_zero():
            return "0"
        names = variable_names(self.n)
        positive = tuple(max(s, 0) for s in self.shift)
        negative = tuple(max(-s, 0) for s in self.shift)
        numerator = LaurentPoly(self.n, self.numerator, positive)
        top = " + ".join(_render_term(c, e, names) for e, c in reversed(numerator.terms()))
        top = top.replace("+ -", "- ")
        if not any(negative):
            return top
        bottom = _render_monomial(negative, names)
        if len(numerator.terms()) > 1:
            top = f"({top})"
        return f"{top}/{bottom}" if "*" not in bottom else f"{top}/({bottom})"

    def __repr__(self):
        return f"LaurentPoly({self.render()})"

    def to_dict(self) -> List[Dict]:
        names = variable_names(self.n)
        return [
            {"coefficient": c, "exponents": {names[i]: e for i, e in enumerate(exps) if e}}
            for exps, c in self.terms()
        ]

    @classmethod
    def from_dict(cls, n: int, data: List[Dict]) -> "LaurentPoly":
        names = variable_names(n)
        terms = []
        for term in data:
            exps = [0] * (3 * n)
            for name, e in term["exponents"].items():
                if name not in names:
                    raise ValueError(f"Unknown variable {name!r} for rank {n}")
                exps[names.index(name)] = int(e)
            terms.append((int(term["coefficient"]), exps))
        return cls.from_terms(n, terms)


def _render_monomial(exponents: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exponents):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _render_term(c: int, exponents: Sequence[int], names: Sequence[str]) -> str:
    monomial = _render_monomial([max(e, 0) for e in exponents], names)
    if monomial == "1":
        return str(c)
    if c == 1:
        return monomial
    if c == -1:
        return f"-{monomial}"
    return f"{c}*{monomial}"


def laurent_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """
    h with f = g·h.

    Raises:
        LaurentDivisionError: If f is not divisible by g in the Laurent ring
    """
    return f.exact_div(g)
