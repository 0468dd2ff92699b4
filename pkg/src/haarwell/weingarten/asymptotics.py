"""Large-``n`` behaviour of Weingarten functions: Moebius normalization,
almost multiplicativity, uniform two-sided bounds, monotonicity surveys."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..errors import CapExceededError
from ..symmetric import CycleType, Permutation, cycle_type, partitions
from .tables import GroupKind, get_table, wg_free
from .unitary import moebius


def _wg_exact(sigma, n0) -> Fraction:
    mu = sigma if isinstance(sigma, CycleType) else cycle_type(sigma)
    return get_table(GroupKind.UNITARY, mu.size).wg(mu)(n0)


def asymptotic_ratio(sigma, n0) -> Fraction:
    """``n0^{k+|sigma|} Wg(n0, sigma) / Moeb(sigma)``; tends to 1 as ``n0`` grows."""
    mu = sigma if isinstance(sigma, CycleType) else cycle_type(sigma)
    n0 = Fraction(n0)
    return n0 ** (mu.size + mu.length) * _wg_exact(mu, n0) / moebius(mu)


def ratio_decay(sigma, n0) -> tuple[Fraction, Fraction]:
    """``(|ratio(n0) - 1|, |ratio(2 n0) - 1|)``."""
    return abs(asymptotic_ratio(sigma, n0) - 1), abs(asymptotic_ratio(sigma, 2 * n0) - 1)


def disjoint_union(a: Permutation, b: Permutation) -> Permutation:
    """``a`` on ``{1..ka}`` and ``b`` shifted onto ``{ka+1..ka+kb}``."""
    return Permutation(a.images + tuple(x + a.k for x in b.images))


def multiplicativity_defect(a: Permutation, b: Permutation, n0) -> Fraction:
    """``|Wg(a ⊔ b) / (Wg(a) Wg(b)) - 1|`` at ``n0``."""
    n0 = Fraction(n0)
    whole = _wg_exact(disjoint_union(a, b), n0)
    return abs(whole / (_wg_exact(a, n0) * _wg_exact(b, n0)) - 1)


@dataclass
class BoundRow:
    cycle_type: tuple
    ratio: Fraction
    lower: Fraction
    lower_ok: bool
    upper_applies: bool
    upper_ok: bool | None
    tight: bool


@dataclass
class BoundReport:
    k: int
    n0: int
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.lower_ok and r.upper_ok is not False for r in self.rows)


def _upper_holds(ratio: Fraction, n0: Fraction, k: int) -> bool:
    # ratio <= 1 / (1 - 6 k^{7/2} / n0^2)  <=>  (1 - 1/ratio) n0^2 / 6 <= k^{7/2}
    lhs = (1 - 1 / ratio) * n0 * n0 / 6
    return lhs <= 0 or lhs * lhs <= Fraction(k) ** 7


def uniform_bound_check(k: int, n0: int) -> BoundReport:
    """Evaluate ``1/(1-(k-1)/n^2) <= n^{k+|s|} Wg / Moeb <= 1/(1-6k^{7/2}/n^2)`` exactly.

    The lower bound is checked for every ``n0 >= k``; the upper one only
    when ``n0 > sqrt(6) k^{7/4}``, i.e. ``n0^4 > 36 k^7``.
    """
    if k > 6:
        raise CapExceededError("k", k, 6)
    if n0 < k:
        raise ValueError(f"bounds need n0 >= k, got {n0} < {k}")
    n0 = Fraction(n0)
    lower = 1 / (1 - Fraction(k - 1) / (n0 * n0))
    upper_applies = n0 ** 4 > 36 * k ** 7
    report = BoundReport(k, int(n0))
    for p in partitions(k):
        mu = CycleType(p)
        r = asymptotic_ratio(mu, n0)
        report.rows.append(BoundRow(
            tuple(mu), r, lower, r >= lower, upper_applies,
            _upper_holds(r, n0, k) if upper_applies else None, r == lower))
    return report


@dataclass
class MonotonicityRow:
    cycle_type: tuple
    sign: int
    direction: str
    monotone: bool


def unitary_monotonicity(k: int, n_values: Iterable[int] | None = None) -> list[MonotonicityRow]:
    """Per class: sign of Wg and whether ``|Wg(n)|`` is monotone over ``n_values``
    (default ``k+1 .. 4k``)."""
    ns = list(n_values) if n_values is not None else list(range(k + 1, 4 * k + 1))
    table = get_table(GroupKind.UNITARY, k)
    rows = []
    for p in partitions(k):
        mu = CycleType(p)
        vals = [table.wg(mu)(n) for n in ns]
        mags = [abs(v) for v in vals]
        signs = {(v > 0) - (v < 0) for v in vals}
        dec = all(b <= a for a, b in zip(mags, mags[1:]))
        inc = all(b >= a for a, b in zip(mags, mags[1:]))
        direction = "decreasing" if dec else "increasing" if inc else "none"
        rows.append(MonotonicityRow(tuple(mu), signs.pop() if len(signs) == 1 else 0,
                                    direction, dec or inc))
    return rows


@dataclass
class FreeSurvey:
    k: int
    samples: list
    entries: int
    zeros: list = field(default_factory=list)
    monotonicity_violations: list = field(default_factory=list)
    sign_changes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.zeros or self.monotonicity_violations or self.sign_changes)


def free_sign_survey(k: int, samples: Iterable) -> FreeSurvey:
    """Evaluate every ``O_n^+`` Weingarten entry on the sample grid.

    Reports zero entries, entries whose absolute value increases between
    consecutive (sorted) samples, and entries changing sign.
    """
    if k > 12:
        raise CapExceededError("k", k, 12)
    pts = sorted(Fraction(s) for s in samples)
    tables = [wg_free(k, s) for s in pts]
    keys = list(tables[0].values)
    survey = FreeSurvey(k, pts, len(keys))
    for key in keys:
        vals = [t.values[key] for t in tables]
        label = f"{key[0]}|{key[1]}"
        for s, v in zip(pts, vals):
            if v == 0:
                survey.zeros.append((label, s))
        for (s1, v1), (s2, v2) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
            if abs(v2) > abs(v1):
                survey.monotonicity_violations.append((label, s1, s2))
            if (v1 > 0) != (v2 > 0):
                survey.sign_changes.append((label, s1, s2))
    return survey
