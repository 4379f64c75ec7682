"""Exact arithmetic in Z[q, X], rational functions, and truncated series.

Everything downstream is an identity between polynomials in the two
commuting indeterminates ``q`` (residue cardinality / branching symbol) and
``X`` (the series variable), so coefficients are plain Python integers and
no floating point appears anywhere.  Terms are kept in a canonical order
sorted by ``(x_exponent, q_exponent)`` with zero coefficients dropped, so
structural equality of term tuples is mathematical equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import NonUnitDenominator, NotDivisible

# One term: (q_exponent, x_exponent, coefficient).
Term = tuple[int, int, int]


def _canonical(terms: Iterable[Term]) -> tuple[Term, ...]:
    acc: dict[tuple[int, int], int] = {}
    for qe, xe, c in terms:
        if qe < 0 or xe < 0:
            raise ValueError("exponents must be nonnegative")
        key = (qe, xe)
        acc[key] = acc.get(key, 0) + c
    out = [(qe, xe, c) for (qe, xe), c in acc.items() if c != 0]
    out.sort(key=lambda t: (t[1], t[0]))
    return tuple(out)


@dataclass(frozen=True)
class BiPoly:
    """A polynomial in q and X with integer coefficients, in canonical form."""

    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical(self.terms))

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c: int) -> BiPoly:
        return BiPoly(((0, 0, c),))

    @staticmethod
    def term(q_exp: int, x_exp: int, coeff: int = 1) -> BiPoly:
        return BiPoly(((q_exp, x_exp, coeff),))

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_q_free(self) -> bool:
        return all(qe == 0 for qe, _, _ in self.terms)

    def x_degree(self) -> int:
        """Degree in X; -1 for the zero polynomial."""
        return max((xe for _, xe, _ in self.terms), default=-1)

    def coefficient(self, q_exp: int, x_exp: int) -> int:
        for qe, xe, c in self.terms:
            if qe == q_exp and xe == x_exp:
                return c
        return 0

    def x_coefficients(self) -> dict[int, BiPoly]:
        """Coefficient of each power of X, as a polynomial in q."""
        by_x: dict[int, list[Term]] = {}
        for qe, xe, c in self.terms:
            by_x.setdefault(xe, []).append((qe, 0, c))
        return {xe: BiPoly(tuple(ts)) for xe, ts in by_x.items()}

    def as_int(self) -> int:
        """The value of a constant polynomial."""
        if self.is_zero():
            return 0
        if self.terms == ((0, 0, self.terms[0][2]),):
            return self.terms[0][2]
        raise ValueError(f"not a constant polynomial: {self}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: Union[BiPoly, int]) -> BiPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return BiPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly(tuple((qe, xe, -c) for qe, xe, c in self.terms))

    def __sub__(self, other: Union[BiPoly, int]) -> BiPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union[BiPoly, int]) -> BiPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Union[BiPoly, int]) -> BiPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        prod = [
            (qa + qb, xa + xb, ca * cb)
            for qa, xa, ca in self.terms
            for qb, xb, cb in other.terms
        ]
        return BiPoly(tuple(prod))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def subs_q(self, q0: int) -> BiPoly:
        """Substitute the integer q0 for q, leaving a polynomial in X."""
        return BiPoly(tuple((0, xe, c * q0**qe) for qe, xe, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for qe, xe, c in self.terms:
            factors = []
            if qe:
                factors.append("q" if qe == 1 else f"q^{qe}")
            if xe:
                factors.append("X" if xe == 1 else f"X^{xe}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _coerce(value: Union[BiPoly, int]) -> BiPoly | None:
    if isinstance(value, BiPoly):
        return value
    if isinstance(value, int):
        return BiPoly.const(value)
    return None


ZERO = BiPoly()
ONE = BiPoly.const(1)
Q = BiPoly.term(1, 0)
X = BiPoly.term(0, 1)


def x_pow(k: int) -> BiPoly:
    return BiPoly.term(0, k)


def q_pow(k: int) -> BiPoly:
    return BiPoly.term(k, 0)


def exact_div(a: BiPoly, b: BiPoly) -> BiPoly:
    """Exact quotient a/b in Z[q, X].

    Division runs against the leading term of ``b`` in the canonical
    ``(x_exponent, q_exponent)`` order; for a single divisor the remainder
    of that process vanishes exactly when ``b`` divides ``a``, so a failed
    step raises :class:`NotDivisible` (which is how identity checks report
    a mismatch).
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lb_q, lb_x, lb_c = b.terms[-1]
    rem = dict(((qe, xe), c) for qe, xe, c in a.terms)
    quo: list[Term] = []
    while rem:
        (rq, rx) = max(rem, key=lambda k: (k[1], k[0]))
        rc = rem[(rq, rx)]
        if rq < lb_q or rx < lb_x or rc % lb_c != 0:
            raise NotDivisible(f"({a}) is not divisible by ({b})")
        tq, tx, tc = rq - lb_q, rx - lb_x, rc // lb_c
        quo.append((tq, tx, tc))
        for bq, bx, bc in b.terms:
            key = (tq + bq, tx + bx)
            nc = rem.get(key, 0) - tc * bc
            if nc:
                rem[key] = nc
            else:
                rem.pop(key, None)
    return BiPoly(tuple(quo))


@dataclass(frozen=True, eq=False)
class RationalFn:
    """A ratio of two BiPoly, never reduced to lowest terms.

    Equality is cross-multiplication (num*other.den == other.num*den), which
    is how the identities downstream are stated; hashing is deliberately
    disabled.
    """

    num: BiPoly
    den: BiPoly = ONE

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: RationalFn) -> RationalFn:
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: Union[RationalFn, BiPoly, int]) -> RationalFn:
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        factor = _coerce(other)
        if factor is None:
            return NotImplemented
        return RationalFn(self.num * factor, self.den)

    __rmul__ = __mul__

    def subs_q(self, q0: int) -> RationalFn:
        return RationalFn(self.num.subs_q(q0), self.den.subs_q(q0))

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients of X^0..X^D of a power series, each a polynomial in q."""

    truncation_degree: int
    coefficients: tuple[BiPoly, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation_degree + 1:
            raise ValueError("coefficient list must have length D + 1")
        for c in self.coefficients:
            if any(xe != 0 for _, xe, _ in c.terms):
                raise ValueError("series coefficients must be polynomials in q")

    def __getitem__(self, k: int) -> BiPoly:
        return self.coefficients[k]

    def at_q(self, q0: int) -> list[int]:
        return [c.subs_q(q0).as_int() for c in self.coefficients]


def series_expand(f: RationalFn, degree: int) -> SeriesPrefix:
    """First ``degree + 1`` coefficients of the power series of ``f`` in X.

    Requires the denominator's constant term (q^0 X^0 coefficient) to be 1,
    which holds for every denominator this package produces (products of
    (1 - X) and (1 - X^2) factors).
    """
    if degree < 0:
        raise ValueError("truncation degree must be nonnegative")
    den_by_x = f.den.x_coefficients()
    if den_by_x.get(0, ZERO) != ONE:
        raise NonUnitDenominator(f"denominator constant term is not 1: {f.den}")
    num_by_x = f.num.x_coefficients()
    coeffs: list[BiPoly] = []
    for k in range(degree + 1):
        s = num_by_x.get(k, ZERO)
        for j in range(1, k + 1):
            dj = den_by_x.get(j)
            if dj is not None:
                s = s - dj * coeffs[k - j]
        coeffs.append(s)
    return SeriesPrefix(degree, tuple(coeffs))
