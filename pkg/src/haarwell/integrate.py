"""Haar integrals of monomials in matrix entries.

A query such as ``"u[1,1] u[2,2] ~u[1,2] ~u[2,1]"`` is an ordered product of
entries ``u_ij`` and conjugates ``~u_ij``. The integral is a sum of
Weingarten values over pairs of index-compatible pairings; the dimension
enters only through the Weingarten table.

Unitary convention: with ``k'`` plain and ``k'`` conjugated factors, a
permutation ``sigma`` is row-compatible when the row of the ``p``-th plain
factor equals the row of the ``sigma(p)``-th conjugated factor, and
similarly for columns with ``tau``. The pair contributes
``Wg(n, tau sigma^-1)``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ParseError
from .exactmath import RATFUNC_ZERO, RationalFunction, evaluate_at
from .pairings import PairPartition, enumerate_noncrossing, loop_type
from .symmetric import CycleType, _cycle_type_tuple
from .weingarten.tables import GroupKind, get_table

_TOKEN = re.compile(r"\s*(~?)u\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*")


@dataclass(frozen=True)
class MomentQuery:
    """Ordered monomial in Haar matrix entries.

    ``factors`` holds ``(row, col, conjugated)`` triples, 1-indexed; ``n`` is
    ``None`` for a symbolic answer.
    """

    group: GroupKind
    factors: tuple[tuple[int, int, bool], ...]
    n: int | Fraction | None = None

    @property
    def degree(self) -> int:
        return len(self.factors)

    def plain(self) -> list[tuple[int, int]]:
        return [(r, c) for r, c, conj in self.factors if not conj]

    def conjugated(self) -> list[tuple[int, int]]:
        return [(r, c) for r, c, conj in self.factors if conj]

    def __str__(self) -> str:
        return " ".join(f"{'~' if conj else ''}u[{r},{c}]" for r, c, conj in self.factors)


def parse_monomial(text: str, group="unitary", n=None) -> MomentQuery:
    """Parse a product of ``u[i,j]`` / ``~u[i,j]`` factors (whitespace-insensitive)."""
    factors = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"malformed factor at {text[pos:]!r}")
        row, col = int(m.group(2)), int(m.group(3))
        if row < 1 or col < 1:
            raise ParseError(f"indices must be >= 1 in {m.group(0).strip()!r}")
        factors.append((row, col, bool(m.group(1))))
        pos = m.end()
    return MomentQuery(GroupKind.parse(group), tuple(factors), n)


def unbalanced_zero(q: MomentQuery) -> bool:
    """For ``U(n)``: true iff plain and conjugated factor counts differ (integral is 0)."""
    if q.group is not GroupKind.UNITARY:
        raise ValueError("balance rule applies to unitary queries only")
    return len(q.plain()) != len(q.conjugated())


def _matchings(left: Sequence[int], right: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Bijections ``s`` (0-indexed tuples) with ``left[p] == right[s[p]]``."""
    k = len(left)
    used = [False] * k
    current = [0] * k

    def rec(p: int):
        if p == k:
            yield tuple(current)
            return
        for j in range(k):
            if not used[j] and right[j] == left[p]:
                used[j] = True
                current[p] = j
                yield from rec(p + 1)
                used[j] = False

    yield from rec(0)


def _pairings_matching(labels: Sequence[int]) -> Iterator[PairPartition]:
    """Pair partitions ``pi`` with ``delta(pi, labels) = 1``."""

    def rec(remaining: list[int]):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for idx, other in enumerate(rest):
            if labels[first] == labels[other]:
                for m in rec(rest[:idx] + rest[idx + 1:]):
                    yield [(first + 1, other + 1)] + m

    for m in rec(list(range(len(labels)))):
        yield PairPartition(tuple(m))


def _combine(counts: Counter, table) -> RationalFunction | Fraction:
    total = RATFUNC_ZERO if table.symbolic else Fraction(0)
    for key, c in counts.items():
        total = total + table.values[key] * c
    return total


def _zero(n):
    return RATFUNC_ZERO if n is None else Fraction(0)


def _table_for(group: GroupKind, k: int, n, store):
    """Numeric table for ``n >= 1``; symbolic otherwise (evaluated later)."""
    if n is not None and Fraction(n) >= 1:
        if group is not GroupKind.FREE and Fraction(n).denominator != 1:
            raise ValueError(f"n must be an integer for {group.value}")
        return get_table(group, k, n, store=store)
    return get_table(group, k, None, store=store)


def _finish(value, table, n):
    if n is not None and table.symbolic:
        return evaluate_at(value, n)
    return value


def integrate(q: MomentQuery, store=None) -> RationalFunction | Fraction:
    """Exact Haar integral (``O_n^+``: Haar state) of the monomial ``q``.

    Returns a RationalFunction in ``n`` when ``q.n`` is None, else a Fraction.
    Non-positive ``n`` evaluates the symbolic answer and may raise PoleError.
    """
    if q.group is GroupKind.UNITARY:
        return _integrate_unitary(q, store)
    return _integrate_pairings(q, store)


def _integrate_unitary(q: MomentQuery, store) -> RationalFunction | Fraction:
    plain, conj = q.plain(), q.conjugated()
    if len(plain) != len(conj):
        return _zero(q.n)
    kp = len(plain)
    if kp == 0:
        return RationalFunction(1) if q.n is None else Fraction(1)
    table = _table_for(GroupKind.UNITARY, kp, q.n, store)
    sigmas = list(_matchings([r for r, _ in plain], [r for r, _ in conj]))
    taus = list(_matchings([c for _, c in plain], [c for _, c in conj]))
    if not sigmas or not taus:
        return _zero(q.n)
    counts: Counter = Counter()
    for s in sigmas:
        s_inv = [0] * kp
        for i, x in enumerate(s):
            s_inv[x] = i
        for t in taus:
            counts[_cycle_type_tuple(tuple(t[y] for y in s_inv))] += 1
    counts = Counter({CycleType(key): c for key, c in counts.items()})
    return _finish(_combine(counts, table), table, q.n)


def _integrate_pairings(q: MomentQuery, store) -> RationalFunction | Fraction:
    k = q.degree
    if k % 2:
        return _zero(q.n)
    if k == 0:
        return RationalFunction(1) if q.n is None else Fraction(1)
    rows = [r for r, _, _ in q.factors]
    cols = [c for _, c, _ in q.factors]
    table = _table_for(q.group, k, q.n, store)
    if q.group is GroupKind.ORTHOGONAL:
        pis = list(_pairings_matching(rows))
        rhos = list(_pairings_matching(cols))
        counts = Counter(loop_type(p, r) for p in pis for r in rhos)
    else:
        nc = [p for p in enumerate_noncrossing(k)]
        pis = [p for p in nc if all(rows[a - 1] == rows[b - 1] for a, b in p.blocks)]
        rhos = [p for p in nc if all(cols[a - 1] == cols[b - 1] for a, b in p.blocks)]
        counts = Counter((p, r) for p in pis for r in rhos)
    if not counts:
        return _zero(q.n)
    return _finish(_combine(counts, table), table, q.n)
