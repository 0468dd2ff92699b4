"""Exact arithmetic: integer polynomials in ``n``, rational functions, and
dense exact linear algebra (inverse, pseudo-inverse, group inverse).

Rationals are :class:`fractions.Fraction`. Polynomials are dense over the
integers; rational functions are kept normalized after every operation
(``gcd(numer, denom) = 1``, integer content removed, positive leading
denominator coefficient).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .errors import PoleError, SingularMatrixError, SizeMismatchError

BigRational = Fraction


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class IntPolynomial:
    """Univariate polynomial in ``n`` with integer coefficients.

    ``coeffs[d]`` is the coefficient of ``n**d``. The zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple) -> IntPolynomial:
        # caller guarantees a stripped tuple of ints
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls._raw((int(c),) if c else ())

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        if not coeff:
            return ZERO_POLY
        return cls._raw((0,) * degree + (int(coeff),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        elif not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return IntPolynomial._raw(tuple(out))

    __radd__ = __add__

    def __sub__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        elif not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> IntPolynomial:
        return (-self) + other

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            if not other:
                return ZERO_POLY
            return IntPolynomial._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPolynomial:
        result = ONE_POLY
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule at an int, Fraction or float."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        if g == 1:
            return self
        return IntPolynomial._raw(tuple(c // g for c in self.coeffs))

    def exact_div(self, other: IntPolynomial | int) -> IntPolynomial:
        """Quotient of an exact division over the integers."""
        if isinstance(other, int):
            if any(c % other for c in self.coeffs):
                raise ArithmeticError("inexact integer division of polynomial")
            return IntPolynomial._raw(tuple(c // other for c in self.coeffs))
        b = other.coeffs
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(b) == 1:
            return self.exact_div(b[0])
        rem = list(self.coeffs)
        db = len(b) - 1
        lb = b[-1]
        if len(rem) < len(b):
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return ZERO_POLY
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            qc, r = divmod(c, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[i - db] = qc
            base = i - db
            for j in range(db):
                rem[base + j] -= qc * b[j]
            rem[i] = 0
        if any(rem[:db]):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(q)

    def pseudo_rem(self, other: IntPolynomial) -> IntPolynomial:
        """Pseudo-remainder ``prem(self, other)``; ``other`` must be nonzero."""
        b = other.coeffs
        rem = list(self.coeffs)
        db = len(b) - 1
        lb = b[-1]
        while len(rem) - 1 >= db and rem:
            lr = rem[-1]
            shift = len(rem) - 1 - db
            rem = [c * lb for c in rem]
            for j in range(db + 1):
                rem[shift + j] -= lr * b[j]
            while rem and rem[-1] == 0:
                rem.pop()
        return IntPolynomial._raw(tuple(rem))

    def to_sparse(self) -> str:
        """Sparse text form ``"c*n^d + c*n^d"`` used by the table cache."""
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"{c}*n^{d}" for d, c in reversed(list(enumerate(self.coeffs))) if c
        )

    @classmethod
    def from_sparse(cls, text: str) -> IntPolynomial:
        text = text.strip()
        if text == "0":
            return ZERO_POLY
        coeffs: dict[int, int] = {}
        for term in text.split(" + "):
            m = re.fullmatch(r"\s*(-?\d+)\*n\^(\d+)\s*", term)
            if not m:
                raise ValueError(f"bad sparse polynomial term {term!r}")
            d = int(m.group(2))
            coeffs[d] = coeffs.get(d, 0) + int(m.group(1))
        top = max(coeffs)
        return cls(coeffs.get(d, 0) for d in range(top + 1))

    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                var = "n" if d == 1 else f"n^{d}"
                body = var if a == 1 else f"{a}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


ZERO_POLY = IntPolynomial._raw(())
ONE_POLY = IntPolynomial._raw((1,))
N_POLY = IntPolynomial._raw((0, 1))


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd of two integer polynomials (primitive PRS).

    Integer content is ignored; the result is primitive with positive
    leading coefficient, and ``gcd(0, 0) = 0``.
    """
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b.degree > 0:
        r = a.pseudo_rem(b)
        a, b = b, r.primitive()
        if not b:
            return a
    return ONE_POLY


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _as_poly_pair(x) -> tuple[IntPolynomial, IntPolynomial]:
    if isinstance(x, RationalFunction):
        return x.numer, x.denom
    if isinstance(x, IntPolynomial):
        return x, ONE_POLY
    if isinstance(x, int):
        return IntPolynomial.constant(x), ONE_POLY
    if isinstance(x, Rational):
        return (IntPolynomial.constant(x.numerator),
                IntPolynomial.constant(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFunction")


class RationalFunction:
    """Exact ratio of integer polynomials in ``n``, always normalized."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer=0, denom=1):
        p, q = _as_poly_pair(numer)
        r, s = _as_poly_pair(denom)
        self.numer, self.denom = _normalize(p * s, q * r)

    @classmethod
    def _raw(cls, numer: IntPolynomial, denom: IntPolynomial) -> RationalFunction:
        f = object.__new__(cls)
        f.numer = numer
        f.denom = denom
        return f

    @classmethod
    def coerce(cls, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    @classmethod
    def n_power(cls, d: int) -> RationalFunction:
        """The monomial ``n**d`` (``d`` may be negative)."""
        if d >= 0:
            return cls._raw(IntPolynomial.monomial(d), ONE_POLY)
        return cls._raw(ONE_POLY, IntPolynomial.monomial(-d))

    def __bool__(self) -> bool:
        return bool(self.numer)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(Fraction(self.numer.lc, self.denom.lc))
        return hash((self.numer, self.denom))

    def __neg__(self) -> RationalFunction:
        return RationalFunction._raw(-self.numer, self.denom)

    def __add__(self, other) -> RationalFunction:
        try:
            c, d = _as_poly_pair(other)
        except TypeError:
            return NotImplemented
        a, b = self.numer, self.denom
        if b == d:
            return RationalFunction._raw(*_normalize(a + c, b))
        g = poly_gcd(b, d)
        if g == ONE_POLY:
            return RationalFunction._raw(*_normalize(a * d + c * b, b * d))
        bg, dg = b.exact_div(g), d.exact_div(g)
        return RationalFunction._raw(*_normalize(a * dg + c * bg, bg * d))

    __radd__ = __add__

    def __sub__(self, other) -> RationalFunction:
        try:
            c, d = _as_poly_pair(other)
        except TypeError:
            return NotImplemented
        return self + RationalFunction._raw(-c, d)

    def __rsub__(self, other) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other) -> RationalFunction:
        try:
            c, d = _as_poly_pair(other)
        except TypeError:
            return NotImplemented
        a, b = self.numer, self.denom
        if not a or not c:
            return RATFUNC_ZERO
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        if g1 != ONE_POLY:
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2 != ONE_POLY:
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RationalFunction._raw(*_normalize(a * c, b * d, reduced=True))

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        try:
            c, d = _as_poly_pair(other)
        except TypeError:
            return NotImplemented
        if not c:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction._raw(d, c)

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) / self

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return RATFUNC_ONE / (self ** (-e))
        return RationalFunction._raw(self.numer ** e, self.denom ** e)

    def is_constant(self) -> bool:
        return self.numer.degree <= 0 and self.denom.degree == 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.numer.lc, self.denom.lc)

    def __call__(self, n0) -> Fraction:
        return evaluate_at(self, n0)

    def leading_term(self) -> tuple[Fraction, int]:
        """``(c, d)`` with ``self ~ c * n**d`` as ``n -> infinity``."""
        if not self.numer:
            return Fraction(0), 0
        return (Fraction(self.numer.lc, self.denom.lc),
                self.numer.degree - self.denom.degree)

    def __str__(self) -> str:
        num = str(self.numer)
        if self.denom == ONE_POLY:
            return num
        if self.numer.term_count() > 1:
            num = f"({num})"
        den = str(self.denom)
        simple = self.denom.term_count() == 1 and (
            self.denom.degree == 0 or self.denom.lc == 1)
        return f"{num}/{den}" if simple else f"{num}/({den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def to_sparse(self) -> str:
        return f"{self.numer.to_sparse()} / {self.denom.to_sparse()}"

    @classmethod
    def from_sparse(cls, text: str) -> RationalFunction:
        num, _, den = text.partition(" / ")
        return cls(IntPolynomial.from_sparse(num), IntPolynomial.from_sparse(den or "1*n^0"))


def _normalize(p: IntPolynomial, q: IntPolynomial, reduced: bool = False):
    if not q:
        raise ZeroDivisionError("zero denominator")
    if not p:
        return ZERO_POLY, ONE_POLY
    if not reduced and q.degree > 0:
        g = poly_gcd(p, q)
        if g.degree > 0:
            p, q = p.exact_div(g), q.exact_div(g)
    c = math.gcd(p.content(), q.content())
    if q.lc < 0:
        c = -c
    if c != 1:
        p, q = p.exact_div(c), q.exact_div(c)
    return p, q


RATFUNC_ZERO = RationalFunction._raw(ZERO_POLY, ONE_POLY)
RATFUNC_ONE = RationalFunction._raw(ONE_POLY, ONE_POLY)
N = RationalFunction._raw(N_POLY, ONE_POLY)


def poly_arith(a, b, op: str) -> RationalFunction:
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}`` to two rational functions."""
    a, b = RationalFunction.coerce(a), RationalFunction.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def evaluate_at(f, n0) -> Fraction:
    """Exact value of ``f`` at the rational point ``n0``.

    Raises :class:`PoleError` when the denominator vanishes at ``n0``.
    """
    if not isinstance(f, RationalFunction):
        return Fraction(f)
    n0 = Fraction(n0)
    den = f.denom(n0)
    if den == 0:
        raise PoleError(n0)
    return Fraction(f.numer(n0)) / den


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Immutable dense matrix of Fractions or RationalFunctions."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(_coerce_entry(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise SizeMismatchError("ragged matrix rows")

    @classmethod
    def _raw(cls, rows) -> ExactMatrix:
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def identity(cls, size: int, symbolic: bool = False) -> ExactMatrix:
        one, zero = (RATFUNC_ONE, RATFUNC_ZERO) if symbolic else (Fraction(1), Fraction(0))
        return cls._raw([[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, symbolic: bool = False) -> ExactMatrix:
        zero = RATFUNC_ZERO if symbolic else Fraction(0)
        return cls._raw([[zero] * ncols for _ in range(nrows)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, RationalFunction) for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    def transpose(self) -> ExactMatrix:
        return ExactMatrix._raw(zip(*self.rows)) if self.rows else self

    T = property(transpose)

    def map(self, func: Callable) -> ExactMatrix:
        return ExactMatrix._raw([[func(x) for x in r] for r in self.rows])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape[1] != other.shape[0]:
            raise SizeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        symbolic = self.is_symbolic or other.is_symbolic
        zero = RATFUNC_ZERO if symbolic else Fraction(0)
        out = []
        for r in self.rows:
            out.append([_dot(r, c, zero) for c in cols])
        if not cols:
            out = [[] for _ in self.rows]
        return ExactMatrix._raw(out)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix._raw([[a + b for a, b in zip(ra, rb)]
                                 for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix._raw([[a - b for a, b in zip(ra, rb)]
                                 for ra, rb in zip(self.rows, other.rows)])

    def scale(self, c) -> ExactMatrix:
        return self.map(lambda x: x * c)

    def is_symmetric(self) -> bool:
        return self.shape[0] == self.shape[1] and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(len(self.rows)) for j in range(i))

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def evaluate_at(self, n0) -> ExactMatrix:
        return self.map(lambda x: evaluate_at(x, n0))


def _coerce_entry(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, IntPolynomial):
        return RationalFunction(x)
    return Fraction(x)


def _dot(row, col, zero):
    acc = zero
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _row_scaled_ring_matrix(m: ExactMatrix):
    """Clear denominators row by row.

    Returns ``(rows, scales, one, div)`` where ``rows`` is a list of lists
    over the integer ring (``int`` or :class:`IntPolynomial`) equal to
    ``diag(scales) @ m``.
    """
    if m.is_symbolic:
        rows, scales = [], []
        for r in m.rows:
            entries = [RationalFunction.coerce(x) for x in r]
            lcm = ONE_POLY
            for x in entries:
                g = poly_gcd(lcm, x.denom)
                lcm = lcm * x.denom.exact_div(g)
            # keep the integer content of denominators too
            c = 1
            for x in entries:
                c = c * x.denom.content() // math.gcd(c, x.denom.content())
            lcm = lcm * c
            rows.append([x.numer * lcm.exact_div(x.denom) for x in entries])
            scales.append(lcm)
        return rows, scales, ONE_POLY, IntPolynomial.exact_div
    rows, scales = [], []
    for r in m.rows:
        l = 1
        for x in r:
            l = l * x.denominator // math.gcd(l, x.denominator)
        rows.append([x.numerator * (l // x.denominator) for x in r])
        scales.append(l)
    return rows, scales, 1, _int_exact_div


def _int_exact_div(a: int, b: int) -> int:
    return a // b


def _bareiss_gauss_jordan(aug: list[list], size: int, one, div) -> tuple:
    """Fraction-free Gauss-Jordan elimination of ``aug`` in place.

    The left ``size x size`` block ends as ``d * I``; the function returns
    ``d``. Raises :class:`SingularMatrixError` (rank filled in by the caller)
    when a pivot column is empty.
    """
    prev = one
    for k in range(size):
        p = k
        while p < size and not aug[p][k]:
            p += 1
        if p == size:
            raise SingularMatrixError(-1, size)
        if p != k:
            aug[k], aug[p] = aug[p], aug[k]
        pivot_row = aug[k]
        pk = pivot_row[k]
        first = k == 0
        for i in range(size):
            if i == k:
                continue
            row = aug[i]
            f = row[k]
            if first:
                if f:
                    aug[i] = [pk * a - f * b for a, b in zip(row, pivot_row)]
                else:
                    aug[i] = [pk * a for a in row]
            elif f:
                aug[i] = [div(pk * a - f * b, prev) if (a or b) else a
                          for a, b in zip(row, pivot_row)]
            else:
                aug[i] = [div(pk * a, prev) if a else a for a in row]
        prev = pk
    return prev


def _ring_zero(one):
    return ZERO_POLY if isinstance(one, IntPolynomial) else 0


def _ring_to_field(x, den):
    """Exact quotient ``x / den`` of ring elements, as Fraction or RationalFunction."""
    if isinstance(den, IntPolynomial):
        return RationalFunction(x, den)
    return Fraction(x, den)


def exact_inverse(m: ExactMatrix) -> ExactMatrix:
    """Inverse by fraction-free (Bareiss) Gauss-Jordan elimination.

    Entries may be Fractions or RationalFunctions; denominators are cleared
    row-wise so elimination runs over ``Z`` or ``Z[n]``.
    """
    size, cols = m.shape
    if size != cols:
        raise SizeMismatchError(f"inverse of non-square matrix {m.shape}")
    if size == 0:
        return m
    rows, scales, one, div = _row_scaled_ring_matrix(m)
    zero = _ring_zero(one)
    aug = [r + [one if i == j else zero for j in range(size)] for i, r in enumerate(rows)]
    try:
        d = _bareiss_gauss_jordan(aug, size, one, div)
    except SingularMatrixError:
        raise SingularMatrixError(matrix_rank(m), size) from None
    # aug right block = d * (diag(scales) m)^{-1} = d * m^{-1} diag(scales)^{-1}
    out = []
    for i in range(size):
        right = aug[i][size:]
        out.append([_ring_to_field(right[j] * scales[j], d) for j in range(size)])
    return ExactMatrix._raw(out)


def exact_solve(m: ExactMatrix, rhs: Sequence) -> list:
    """Solve ``m x = rhs`` exactly for an invertible square ``m``."""
    size = m.shape[0]
    if m.shape[1] != size or len(rhs) != size:
        raise SizeMismatchError("exact_solve needs a square system")
    rows, scales, one, div = _row_scaled_ring_matrix(m)
    symbolic = isinstance(one, IntPolynomial)
    # scale rhs entries consistently and clear their denominators
    if symbolic:
        b = [RationalFunction.coerce(_coerce_entry(x)) * s for x, s in zip(rhs, scales)]
        common = ONE_POLY
        for x in b:
            common = common * x.denom.exact_div(poly_gcd(common, x.denom))
        bring = [x.numer * common.exact_div(x.denom) for x in b]
    else:
        b = [Fraction(x) * s for x, s in zip(rhs, scales)]
        common = 1
        for x in b:
            common = common * x.denominator // math.gcd(common, x.denominator)
        bring = [x.numerator * (common // x.denominator) for x in b]
    aug = [r + [v] for r, v in zip(rows, bring)]
    try:
        d = _bareiss_gauss_jordan(aug, size, one, div)
    except SingularMatrixError:
        raise SingularMatrixError(matrix_rank(m), size) from None
    return [_ring_to_field(aug[i][size], d * common) for i in range(size)]


def gauss_jordan_inverse(m: ExactMatrix) -> ExactMatrix:
    """Textbook field elimination; slow reference used to cross-check Bareiss."""
    size = m.shape[0]
    symbolic = m.is_symbolic
    one, zero = (RATFUNC_ONE, RATFUNC_ZERO) if symbolic else (Fraction(1), Fraction(0))
    a = [list(r) + [one if i == j else zero for j in range(size)]
         for i, r in enumerate(m.rows)]
    for k in range(size):
        p = next((r for r in range(k, size) if a[r][k]), None)
        if p is None:
            raise SingularMatrixError(matrix_rank(m), size)
        a[k], a[p] = a[p], a[k]
        inv = one / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(size):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return ExactMatrix._raw([r[size:] for r in a])


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form over the field of the entries, and pivot columns."""
    nrows, ncols = m.shape
    symbolic = m.is_symbolic
    one = RATFUNC_ONE if symbolic else Fraction(1)
    a = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix._raw(a), pivots


def matrix_rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def rank_factorization(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """``m = C @ F`` with ``C`` the pivot columns of ``m`` and ``F`` the nonzero rows of its RREF."""
    r, pivots = rref(m)
    c = ExactMatrix._raw([[row[j] for j in pivots] for row in m.rows])
    f = ExactMatrix._raw(r.rows[: len(pivots)])
    return c, f


def penrose_identities(m: ExactMatrix, w: ExactMatrix) -> bool:
    """True iff ``w`` is the Moore-Penrose pseudo-inverse of real ``m``."""
    mw, wm = m @ w, w @ m
    return (mw @ m == m and wm @ w == w
            and mw.transpose() == mw and wm.transpose() == wm)


def exact_pseudo_inverse(m: ExactMatrix, verify: bool = True) -> ExactMatrix:
    """Moore-Penrose pseudo-inverse of a symmetric rational matrix.

    Uses the rank factorization ``m = C F`` and
    ``W = F^T (F F^T)^{-1} (C^T C)^{-1} C^T``.
    """
    if m.is_symbolic:
        raise TypeError("pseudo-inverse is only available for rational (numeric) matrices")
    if not m.is_symmetric():
        raise ValueError("pseudo-inverse requires a symmetric matrix")
    size = m.shape[0]
    c, f = rank_factorization(m)
    if not f.rows:
        return ExactMatrix.zeros(size, size)
    ft, ct = f.transpose(), c.transpose()
    w = ft @ exact_inverse(f @ ft) @ exact_inverse(ct @ c) @ ct
    if verify and not penrose_identities(m, w):
        raise ArithmeticError("pseudo-inverse failed the Penrose identities")
    return w


def group_inverse(m: ExactMatrix) -> ExactMatrix:
    """Group (Drazin index-1) inverse ``m# = C (F C)^{-2} F`` of a square rational matrix.

    For a matrix diagonalizable with a real spectrum that is self-adjoint in
    *some* inner product, this coincides with the Moore-Penrose inverse taken
    in that inner product, which makes it basis independent.
    """
    size = m.shape[0]
    c, f = rank_factorization(m)
    if not f.rows:
        return ExactMatrix.zeros(size, size, symbolic=m.is_symbolic)
    fc = f @ c
    inv = exact_inverse(fc)
    return c @ inv @ inv @ f
