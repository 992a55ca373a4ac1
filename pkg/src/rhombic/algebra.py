"""Exact rationals and Laurent polynomials in three variables (alpha, beta, q).

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`LaurentPolynomial` maps exponent triples ``(ea, eb, eq)`` to nonzero
rational coefficients; negative exponents are allowed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError, ParseError

Exponent = tuple[int, int, int]
Scalar = Union[int, Fraction]

VARIABLES = ("a", "b", "q")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class LaurentPolynomial:
    """Immutable sparse polynomial in alpha^{+-1}, beta^{+-1}, q^{+-1}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | Iterable[tuple[Exponent, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, c in items:
            if len(exp) != 3:
                raise ValueError(f"exponent must be a triple, got {exp!r}")
            key = (int(exp[0]), int(exp[1]), int(exp[2]))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in sorted(acc.items()) if v != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPolynomial:
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> LaurentPolynomial:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, ea: int = 0, eb: int = 0, eq: int = 0, c: Scalar = 1) -> LaurentPolynomial:
        return cls({(ea, eb, eq): c})

    @classmethod
    def from_counts(cls, counts: Mapping[Exponent, int]) -> LaurentPolynomial:
        """Build from a multiset of monomials (exponent -> multiplicity)."""
        return cls(counts)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, ea: int, eb: int, eq: int) -> Fraction:
        return self._terms.get((ea, eb, eq), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> LaurentPolynomial | None:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[Exponent, Fraction] = {}
        for (a1, b1, q1), c1 in self._terms.items():
            for (a2, b2, q2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2, q1 + q2)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> LaurentPolynomial:
        c = Fraction(c)
        return LaurentPolynomial({k: v * c for k, v in self._terms.items()})

    def __pow__(self, e: int) -> LaurentPolynomial:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise DomainError("only monomials have Laurent inverses")
            ((ea, eb, eq), c), = self._terms.items()
            return LaurentPolynomial({(ea * e, eb * e, eq * e): c ** e})
        result = LaurentPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, a: Scalar, b: Scalar, q: Scalar) -> Fraction:
        point = (Fraction(a), Fraction(b), Fraction(q))
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for name, x, e in zip(VARIABLES, point, exp):
                if e < 0 and x == 0:
                    raise DomainError(f"cannot substitute {name}=0 into a negative power")
                term *= x ** e
            total += term
        return total

    def specialize(self, *, a: Scalar | None = None, b: Scalar | None = None,
                   q: Scalar | None = None) -> LaurentPolynomial:
        """Substitute values for a subset of the variables."""
        point = (a, b, q)
        acc: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new_exp = list(exp)
            for i, x in enumerate(point):
                if x is None:
                    continue
                x = Fraction(x)
                if exp[i] < 0 and x == 0:
                    raise DomainError(f"cannot substitute {VARIABLES[i]}=0 into a negative power")
                c = c * x ** exp[i]
                new_exp[i] = 0
            key = tuple(new_exp)
            acc[key] = acc.get(key, Fraction(0)) + c
        return LaurentPolynomial(acc)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"ea": ea, "eb": eb, "eq": eq, "c": format_rational(c)}
            for (ea, eb, eq), c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data) -> LaurentPolynomial:
        try:
            return cls(((t["ea"], t["eb"], t["eq"]), parse_rational(str(t["c"]))) for t in data)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in sorted(self._terms.items(), reverse=True):
            factors = []
            for name, e in zip(VARIABLES, exp):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"


ALPHA = LaurentPolynomial.monomial(ea=1)
BETA = LaurentPolynomial.monomial(eb=1)
Q = LaurentPolynomial.monomial(eq=1)
ONE = LaurentPolynomial.constant(1)
ZERO = LaurentPolynomial.zero()
