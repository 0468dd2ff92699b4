"""Weingarten tables from Gram matrix (pseudo-)inversion.

For ``U(n)`` and ``O(n)`` the Gram matrix commutes with the natural action
of ``S_k``, so its (pseudo-)inverse is constant on orbits: conjugacy classes
of ``tau sigma^-1`` for ``U(n)``, loop types of ``(pi, rho)`` for ``O(n)``.
The builders solve the Gram system restricted to orbit-constant matrices,
which is a ``p(k) x p(k)`` system instead of a ``k! x k!`` one. When the Gram
matrix is singular (small integer ``n``) the restricted operator's group
inverse is used; it agrees with the Moore-Penrose inverse of the full Gram
matrix because both commute with the symmetry and the restricted operator
is self-adjoint for the inherited inner product.

``O_n^+`` has no such symmetry reduction; its Gram matrix over ``NC_2(k)`` is
inverted directly.
"""

from __future__ import annotations

import enum
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..errors import CapExceededError, SingularMatrixError
from ..exactmath import (
    ExactMatrix,
    IntPolynomial,
    RationalFunction,
    evaluate_at,
    exact_inverse,
    exact_pseudo_inverse,
    exact_solve,
    group_inverse,
)
from ..pairings import (
    PairPartition,
    enumerate_noncrossing,
    enumerate_pairings,
    loop_type,
    loops,
)
from ..symmetric import (
    CycleType,
    Permutation,
    _cycle_type_tuple,
    cycle_type,
    enumerate_group,
    partitions,
)

MAX_UNITARY_K = 7
MAX_ORTHOGONAL_K = 10
MAX_FREE_K_NUMERIC = 16
MAX_FREE_K_SYMBOLIC = 10


class GroupKind(str, enum.Enum):
    UNITARY = "unitary"
    ORTHOGONAL = "orthogonal"
    FREE = "free"

    @classmethod
    def parse(cls, text) -> GroupKind:
        if isinstance(text, GroupKind):
            return text
        aliases = {"u": "unitary", "o": "orthogonal", "free_orthogonal": "free",
                   "freeorthogonal": "free", "o+": "free"}
        t = str(text).strip().lower()
        return cls(aliases.get(t, t))


def _mode_str(n0) -> str:
    return "symbolic" if n0 is None else f"numeric({n0})"


@dataclass(frozen=True)
class WeingartenTable:
    """Exact Weingarten values for one ``(group, k, mode)``.

    ``values`` keys: a :class:`CycleType` for ``U(n)`` (``k`` counts the
    ``u`` factors), a loop type for ``O(n)``, a ``(pi, rho)`` pair for
    ``O_n^+``. ``n0`` is ``None`` in symbolic mode.
    """

    group: GroupKind
    k: int
    n0: Fraction | None
    values: dict
    pseudo: bool = False
    _index: tuple = field(default=(), compare=False, repr=False)

    @property
    def symbolic(self) -> bool:
        return self.n0 is None

    @property
    def mode(self) -> str:
        return _mode_str(self.n0)

    def wg(self, sigma) -> RationalFunction | Fraction:
        """Unitary value on a permutation or a cycle type."""
        if self.group is not GroupKind.UNITARY:
            raise TypeError("wg(sigma) is only defined for unitary tables")
        key = cycle_type(sigma) if isinstance(sigma, Permutation) else CycleType(sigma)
        return self.values[key]

    def entry(self, a, b):
        """``W[a, b]``: permutations for ``U(n)``, pairings otherwise."""
        if self.group is GroupKind.UNITARY:
            return self.values[cycle_type(b * a.inverse())]
        if self.group is GroupKind.ORTHOGONAL:
            return self.values[loop_type(a, b)]
        return self.values[(a, b)]

    def index(self) -> list:
        if self.group is GroupKind.UNITARY:
            return list(enumerate_group(self.k))
        if self.group is GroupKind.ORTHOGONAL:
            return list(enumerate_pairings(self.k))
        return list(enumerate_noncrossing(self.k))

    def matrix(self) -> ExactMatrix:
        idx = self.index()
        return ExactMatrix._raw([[self.entry(a, b) for b in idx] for a in idx])

    def evaluate(self, n0) -> WeingartenTable:
        """Specialize a symbolic table at ``n0`` (raises PoleError on poles)."""
        if not self.symbolic:
            raise ValueError("table is already numeric")
        n0 = Fraction(n0)
        return WeingartenTable(self.group, self.k, n0,
                               {key: evaluate_at(v, n0) for key, v in self.values.items()})


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _check_n0(n0, group: GroupKind):
    if n0 is None:
        return None
    n0 = Fraction(n0)
    if group is GroupKind.FREE:
        if n0 <= 0:
            raise ValueError("n0 must be positive")
    elif n0.denominator != 1 or n0 < 1:
        raise ValueError(f"n0 must be an integer >= 1 for {group.value}, got {n0}")
    return n0


def _poly_from_counts(counts: dict[int, int]) -> IntPolynomial:
    top = max(counts)
    return IntPolynomial(counts.get(d, 0) for d in range(top + 1))


def _reduced_system(counts: list[list[dict[int, int]]], n0):
    """Matrix whose entries are ``sum_d counts[d] * n^d`` (symbolic or at ``n0``)."""
    rows = []
    for row in counts:
        out = []
        for c in row:
            if not c:
                out.append(Fraction(0) if n0 is not None else RationalFunction(0))
            elif n0 is None:
                out.append(RationalFunction(_poly_from_counts(c)))
            else:
                out.append(Fraction(sum(m * n0 ** d for d, m in c.items())))
        rows.append(out)
    return ExactMatrix._raw(rows)


def _solve_reduced(m: ExactMatrix, identity_col: int, n0) -> tuple[list, bool]:
    size = m.shape[0]
    rhs = [1 if i == identity_col else 0 for i in range(size)]
    try:
        return exact_solve(m, rhs), False
    except SingularMatrixError:
        if n0 is None:
            raise
    g = group_inverse(m)
    return [g[i, identity_col] for i in range(size)], True


# ---------------------------------------------------------------------------
# Unitary
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _unitary_counts(k: int):
    """``counts[mu][nu][d] = #{tau in C_nu : #(tau rho_mu^-1) = d}``."""
    classes = [CycleType(p) for p in partitions(k)]
    pos = {c: i for i, c in enumerate(classes)}
    perms = [tuple(x - 1 for x in p.images) for p in enumerate_group(k)]
    perm_class = [pos[_cycle_type_tuple(p)] for p in perms]
    counts = []
    for mu in classes:
        rho_inv = tuple(x - 1 for x in mu.representative().inverse().images)
        row = [dict() for _ in classes]
        for tau, c in zip(perms, perm_class):
            prod = tuple(tau[y] for y in rho_inv)
            d = len(_cycle_type_tuple(prod))
            row[c][d] = row[c].get(d, 0) + 1
        counts.append(row)
    return classes, counts


def unitary_reduced_gram(k: int, n0=None) -> tuple[list[CycleType], ExactMatrix]:
    """Class-reduced Gram operator ``M[mu, nu] = sum_{tau in C_nu} n^{#(tau rho_mu^-1)}``."""
    classes, counts = _unitary_counts(k)
    return classes, _reduced_system(counts, n0)


def wg_unitary_gram(k: int, n0=None) -> WeingartenTable:
    """Unitary Weingarten table from the Gram matrix ``G[sigma, tau] = n^{#(tau sigma^-1)}``.

    Symbolic mode is valid for ``n >= k``. Numeric mode accepts any integer
    ``n0 >= 1``; below ``k`` the Gram matrix is singular and the
    pseudo-inverse is used.
    """
    if k > MAX_UNITARY_K:
        raise CapExceededError("k", k, MAX_UNITARY_K)
    if k < 1:
        raise ValueError("k must be at least 1")
    n0 = _check_n0(n0, GroupKind.UNITARY)
    classes, m = unitary_reduced_gram(k, n0)
    ident = classes.index(CycleType((1,) * k))
    sol, pseudo = _solve_reduced(m, ident, n0)
    return WeingartenTable(GroupKind.UNITARY, k, n0, dict(zip(classes, sol)), pseudo)


def unitary_gram_matrix(k: int, n0=None) -> tuple[list[Permutation], ExactMatrix]:
    """Full ``k! x k!`` Gram matrix indexed by ``enumerate_group(k)``."""
    perms = list(enumerate_group(k))
    rows = []
    for s in perms:
        s_inv = s.inverse()
        row = []
        for t in perms:
            d = (t * s_inv).ncycles
            row.append(RationalFunction.n_power(d) if n0 is None else Fraction(n0) ** d)
        rows.append(row)
    return perms, ExactMatrix._raw(rows)


def wg_unitary_full_gram(k: int, n0=None) -> tuple[list[Permutation], ExactMatrix]:
    """Invert (or pseudo-invert) the unreduced Gram matrix. Only for small ``k``."""
    perms, g = unitary_gram_matrix(k, n0)
    if n0 is None:
        return perms, exact_inverse(g)
    try:
        return perms, exact_inverse(g)
    except SingularMatrixError:
        return perms, exact_pseudo_inverse(g)


# ---------------------------------------------------------------------------
# Orthogonal
# ---------------------------------------------------------------------------


def _base_pairing(k: int) -> PairPartition:
    return PairPartition(tuple((2 * i + 1, 2 * i + 2) for i in range(k // 2)))


@lru_cache(maxsize=None)
def _orthogonal_counts(k: int):
    types = [tuple(p) for p in partitions(k // 2)]
    pos = {t: i for i, t in enumerate(types)}
    pairings = list(enumerate_pairings(k))
    base = _base_pairing(k)
    reps: dict[tuple, PairPartition] = {}
    for p in pairings:
        reps.setdefault(loop_type(base, p), p)
        if len(reps) == len(types):
            break
    base_loops = [loops(base, rho) for rho in pairings]
    counts = []
    for nu in types:
        rep = reps[nu]
        row = [dict() for _ in types]
        for rho, d in zip(pairings, base_loops):
            c = pos[loop_type(rho, rep)]
            row[c][d] = row[c].get(d, 0) + 1
        counts.append(row)
    return types, counts


def orthogonal_reduced_gram(k: int, n0=None) -> tuple[list[tuple], ExactMatrix]:
    types, counts = _orthogonal_counts(k)
    return types, _reduced_system(counts, n0)


def wg_orthogonal(k: int, n0=None) -> WeingartenTable:
    """``O(n)`` Weingarten table: pseudo-inverse of ``Gram[pi, rho] = n^{loops(pi, rho)}`` over ``P_2(k)``.

    Values are keyed by loop type. The Gram matrix is invertible exactly
    when ``n >= k/2``; the symbolic table is valid there.
    """
    if k % 2:
        raise ValueError(f"orthogonal Weingarten needs even k, got {k}")
    if k > MAX_ORTHOGONAL_K:
        raise CapExceededError("k", k, MAX_ORTHOGONAL_K)
    if k < 2:
        raise ValueError("k must be at least 2")
    n0 = _check_n0(n0, GroupKind.ORTHOGONAL)
    types, m = orthogonal_reduced_gram(k, n0)
    ident = types.index((1,) * (k // 2))
    sol, pseudo = _solve_reduced(m, ident, n0)
    return WeingartenTable(GroupKind.ORTHOGONAL, k, n0, dict(zip(types, sol)), pseudo)


def pairing_gram_matrix(pairings: list[PairPartition], n0=None) -> ExactMatrix:
    rows = []
    for p in pairings:
        row = []
        for q in pairings:
            d = loops(p, q)
            row.append(RationalFunction.n_power(d) if n0 is None else Fraction(n0) ** d)
        rows.append(row)
    return ExactMatrix._raw(rows)


def _invert_gram(g: ExactMatrix, n0) -> tuple[ExactMatrix, bool]:
    try:
        return exact_inverse(g), False
    except SingularMatrixError:
        if n0 is None:
            raise
        return exact_pseudo_inverse(g), True


def wg_orthogonal_full(k: int, n0=None) -> tuple[list[PairPartition], ExactMatrix]:
    """Unreduced ``O(n)`` Weingarten matrix over ``P_2(k)``; small ``k`` only."""
    pairings = list(enumerate_pairings(k))
    w, _ = _invert_gram(pairing_gram_matrix(pairings, n0), n0)
    return pairings, w


# ---------------------------------------------------------------------------
# Free orthogonal quantum group
# ---------------------------------------------------------------------------


def wg_free(k: int, n0=None) -> WeingartenTable:
    """``O_n^+`` Weingarten table over ``NC_2(k)``.

    ``n0`` may be any positive rational; the Gram matrix is invertible on
    ``[2, oo)``.
    """
    if k % 2:
        raise ValueError(f"free Weingarten needs even k, got {k}")
    if k < 2:
        raise ValueError("k must be at least 2")
    cap = MAX_FREE_K_SYMBOLIC if n0 is None else MAX_FREE_K_NUMERIC
    if k > cap:
        raise CapExceededError("k", k, cap)
    n0 = _check_n0(n0, GroupKind.FREE)
    pairings = list(enumerate_noncrossing(k))
    w, pseudo = _invert_gram(pairing_gram_matrix(pairings, n0), n0)
    values = {(p, q): w[i, j] for i, p in enumerate(pairings) for j, q in enumerate(pairings)}
    return WeingartenTable(GroupKind.FREE, k, n0, values, pseudo)


# ---------------------------------------------------------------------------
# Dispatch, caching, verification
# ---------------------------------------------------------------------------

_BUILDERS = {
    GroupKind.UNITARY: wg_unitary_gram,
    GroupKind.ORTHOGONAL: wg_orthogonal,
    GroupKind.FREE: wg_free,
}

_memo: dict[tuple, WeingartenTable] = {}
_memo_lock = threading.Lock()


def build_table(group, k: int, n0=None) -> WeingartenTable:
    """Build a table with no caching."""
    group = GroupKind.parse(group)
    return _BUILDERS[group](k, n0)


def get_table(group, k: int, n0=None, store=None) -> WeingartenTable:
    """Memoized table lookup, optionally backed by an on-disk store.

    Reads after publication take no lock; builds are serialized per process.
    """
    group = GroupKind.parse(group)
    key = (group, k, None if n0 is None else Fraction(n0))
    table = _memo.get(key)
    if table is not None:
        return table
    with _memo_lock:
        table = _memo.get(key)
        if table is not None:
            return table
        if store is not None:
            table = store.load(group, k, key[2])
        if table is None:
            table = build_table(group, k, key[2])
            if store is not None:
                store.save(table)
        _memo[key] = table
        return table


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def _coords_times(m: ExactMatrix, v: list) -> list:
    out = []
    for r in m.rows:
        acc = 0
        for a, b in zip(r, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def verify_table(table: WeingartenTable, rng: random.Random | None = None) -> bool:
    """Re-check one inverse identity of ``table`` against a freshly built Gram row.

    Free tables: ``(Gram W)[i, :] = e_i`` for a random row ``i`` (or
    ``(Gram W Gram)[i, :] = Gram[i, :]`` for pseudo-inverses). Unitary and
    orthogonal tables are checked on every coordinate of the reduced system.
    """
    rng = rng or random.Random(f"{table.group.value}-{table.k}-{table.mode}")
    n0 = table.n0
    if table.group is GroupKind.FREE:
        pairings = list(enumerate_noncrossing(table.k))
        i = rng.randrange(len(pairings))
        g_row = [RationalFunction.n_power(loops(pairings[i], q)) if n0 is None
                 else n0 ** loops(pairings[i], q) for q in pairings]
        w = table.matrix()
        gw = _coords_times(w.transpose(), g_row)
        if not table.pseudo:
            return all(x == (1 if j == i else 0) for j, x in enumerate(gw))
        g = pairing_gram_matrix(pairings, n0)
        return _coords_times(g.transpose(), gw) == g_row
    if table.group is GroupKind.UNITARY:
        keys, m = unitary_reduced_gram(table.k, n0)
        ident_key = CycleType((1,) * table.k)
    else:
        keys, m = orthogonal_reduced_gram(table.k, n0)
        ident_key = (1,) * (table.k // 2)
    w = [table.values[key] for key in keys]
    mw = _coords_times(m, w)
    if not table.pseudo:
        # the reduced system is tiny, so check every coordinate
        return all(x == (1 if key == ident_key else 0) for x, key in zip(mw, keys))
    # G (G W) = G, written in orbit coordinates; G itself has coordinates n0^{loops}
    g_coords = _coords_times(m, [1 if key == ident_key else 0 for key in keys])
    return _coords_times(m, mw) == g_coords
