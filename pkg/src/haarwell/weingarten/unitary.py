"""Independent routes to the unitary Weingarten function.

* character expansion over Young diagrams,
* the ``1/n`` series whose coefficients count monotone factorizations,
* Weingarten's orthogonality recursion, used as a check on the Gram route,
* the leading-order Moebius function and the full-cycle closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import CapExceededError
from ..exactmath import N, RATFUNC_ZERO, IntPolynomial, RationalFunction
from ..symmetric import (
    DEFAULT_MAX_FACTORIZATION_LENGTH,
    CycleType,
    Permutation,
    character,
    count_monotone_factorizations,
    cycle_type,
    dimension_sn,
    dimension_un_poly,
    enumerate_group,
    partitions,
)
from .tables import WeingartenTable, GroupKind, get_table

MAX_CHARACTER_K = 8


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def _as_cycle_type(sigma) -> CycleType:
    if isinstance(sigma, Permutation):
        return cycle_type(sigma)
    return CycleType(sorted(sigma, reverse=True))


# ---------------------------------------------------------------------------
# Character expansion
# ---------------------------------------------------------------------------


def wg_unitary_character(sigma, n0=None) -> RationalFunction | Fraction:
    """``Wg(n, sigma) = (1/k!^2) sum_lambda chi_lambda(e)^2 chi_lambda(sigma) / dim V_lambda(n)``.

    ``sigma`` is a permutation or a cycle type. With ``n0`` given the sum is
    restricted to diagrams with at most ``n0`` rows (the others have
    ``dim V_lambda(n0) = 0``), which yields the pseudo-inverse value when
    ``n0 < k``.
    """
    mu = _as_cycle_type(sigma)
    k = mu.size
    if k > MAX_CHARACTER_K:
        raise CapExceededError("k", k, MAX_CHARACTER_K)
    scale = math.factorial(k) ** 2
    if n0 is not None:
        n0 = Fraction(n0)
        total = Fraction(0)
        for lam in partitions(k):
            if len(lam) > n0:
                continue
            f = dimension_sn(lam)
            num, den = dimension_un_poly(lam)
            total += Fraction(f * f * character(lam, mu) * den) / num(n0)
        return total / scale
    total = RATFUNC_ZERO
    for lam in partitions(k):
        f = dimension_sn(lam)
        num, den = dimension_un_poly(lam)
        total = total + RationalFunction(f * f * character(lam, mu) * den, num)
    return total / scale


def wg_unitary_character_table(k: int, n0=None) -> WeingartenTable:
    n0 = None if n0 is None else Fraction(n0)
    values = {CycleType(p): wg_unitary_character(CycleType(p), n0) for p in partitions(k)}
    return WeingartenTable(GroupKind.UNITARY, k, n0, values, pseudo=n0 is not None and n0 < k)


# ---------------------------------------------------------------------------
# Monotone factorization series
# ---------------------------------------------------------------------------


def wg_unitary_series(sigma: Permutation, order: int,
                      max_length: int = DEFAULT_MAX_FACTORIZATION_LENGTH) -> list[int]:
    """Counts ``#P(sigma, l)`` for ``l = 0..order``.

    ``Wg(n, sigma) = n^-k * sum_l #P(sigma, l) * (-1/n)^l``; the signs are
    applied by :func:`series_value`.
    """
    if order > max_length:
        raise CapExceededError("order", order, max_length)
    return [count_monotone_factorizations(sigma, l, max_length) for l in range(order + 1)]


def series_value(coeffs: list[int], k: int, n0=None) -> RationalFunction | Fraction:
    """Truncated series ``n^-k sum_l c_l (-1/n)^l``, symbolic or at ``n0``."""
    if n0 is None:
        total = RATFUNC_ZERO
        for l, c in enumerate(coeffs):
            if c:
                total = total + RationalFunction.n_power(-k - l) * (c if l % 2 == 0 else -c)
        return total
    n0 = Fraction(n0)
    return sum((Fraction(c) * (-1) ** l / n0 ** (k + l) for l, c in enumerate(coeffs)),
               Fraction(0))


@dataclass
class SeriesCheck:
    sigma: str
    n0: Fraction
    order: int
    exact: Fraction
    truncated: Fraction
    remainder: Fraction
    next_order: int
    next_term: Fraction
    ratio: Fraction
    ok: bool


def series_truncation_check(sigma: Permutation, n0, order: int,
                            exact=None, max_length: int = DEFAULT_MAX_FACTORIZATION_LENGTH) -> SeriesCheck:
    """Compare the order-``order`` truncation with the exact value at ``n0``.

    Nonzero coefficients all have the parity of ``|sigma|``, so every term of
    the tail has the same sign and the remainder is at least the first
    omitted term ``T``. The check requires the remainder to have ``T``'s
    sign and ``1 <= remainder / T <= 2``.
    """
    k = sigma.k
    n0 = Fraction(n0)
    if exact is None:
        exact = get_table(GroupKind.UNITARY, k).wg(sigma)(n0)
    m = order + 1
    coeffs = wg_unitary_series(sigma, order, max_length)
    while m <= max_length and count_monotone_factorizations(sigma, m, max_length) == 0:
        m += 1
    c_next = count_monotone_factorizations(sigma, m, max_length) if m <= max_length else 0
    truncated = series_value(coeffs, k, n0)
    remainder = exact - truncated
    next_term = Fraction(c_next * (-1) ** m) / n0 ** (k + m)
    ratio = remainder / next_term if next_term else Fraction(0)
    # no further nonzero term: the truncation must already be exact
    ok = 1 <= ratio <= 2 if next_term else remainder == 0
    return SeriesCheck(str(sigma), n0, order, exact, truncated, remainder, m, next_term, ratio, ok)


# ---------------------------------------------------------------------------
# Orthogonality recursion
# ---------------------------------------------------------------------------


def _restrict_first(sigma: Permutation) -> Permutation:
    """Drop the fixed point 1 and relabel ``2..k`` as ``1..k-1``."""
    return Permutation(tuple(x - 1 for x in sigma.images[1:]))


@dataclass
class RecursionReport:
    k: int
    mode: str
    checked: int
    violations: list = field(default_factory=list)
    max_violation: object = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def wg_unitary_recursion_check(k: int, n0=None) -> RecursionReport:
    """Check ``n Wg(sigma) + sum_{i=2..k} Wg((1 i) sigma) = delta_{1, sigma(1)} Wg(sigma|_{2..k})`` for all ``sigma``.

    Values come from the Gram route; symbolic when ``n0`` is None.
    """
    if k > 6:
        raise CapExceededError("k", k, 6)
    if n0 is not None and n0 < k:
        raise ValueError(f"recursion check needs n0 >= k, got {n0} < {k}")
    table = get_table(GroupKind.UNITARY, k, n0)
    lower = get_table(GroupKind.UNITARY, k - 1, n0) if k > 1 else None
    n = N if n0 is None else Fraction(n0)
    report = RecursionReport(k, table.mode, 0)
    worst = 0
    for sigma in enumerate_group(k):
        lhs = n * table.wg(sigma)
        for i in range(2, k + 1):
            lhs = lhs + table.wg(Permutation.transposition(1, i, k) * sigma)
        if sigma(1) == 1:
            rhs = lower.wg(_restrict_first(sigma)) if lower is not None else 1
        else:
            rhs = 0
        diff = lhs - rhs
        report.checked += 1
        if diff:
            report.violations.append((str(sigma), str(diff)))
            if n0 is not None:
                worst = max(worst, abs(diff))
            else:
                worst = diff
    report.max_violation = worst
    return report


# ---------------------------------------------------------------------------
# Leading order
# ---------------------------------------------------------------------------


def moebius(sigma) -> int:
    """``Moeb(sigma) = prod_cycles (-1)^{|c|-1} Catalan(|c|-1)``."""
    mu = _as_cycle_type(sigma)
    out = 1
    for length in mu:
        out *= (-1) ** (length - 1) * catalan(length - 1)
    return out


def full_cycle_closed_form(k: int, catalan_index: int | None = None) -> RationalFunction:
    """``Wg(n, (1..k)) = (-1)^{k+1} c / prod_{j=-k+1}^{k-1} (n + j)``.

    ``c`` is ``Catalan(k-1)`` by default, which is what Gram inversion
    produces; pass ``catalan_index=k`` to get the variant with ``Catalan(k)``.
    """
    idx = k - 1 if catalan_index is None else catalan_index
    denom = IntPolynomial((1,))
    for j in range(-k + 1, k):
        denom = denom * IntPolynomial((j, 1))
    return RationalFunction((-1) ** (k + 1) * catalan(idx), denom)
