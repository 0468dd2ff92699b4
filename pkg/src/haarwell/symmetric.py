"""Symmetric group combinatorics.

Permutations are 1-indexed and stored in one-line notation; text I/O uses
cycle notation such as ``"(1 3 2)(4 5)"``. Conjugacy classes and Young
diagrams are both integer partitions.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import CapExceededError, ParseError, SizeMismatchError
from .exactmath import (
    N,
    ONE_POLY,
    RATFUNC_ZERO,
    IntPolynomial,
    RationalFunction,
)

MAX_ENUMERATION_DEGREE = 8
MAX_ALGEBRA_DEGREE = 7
DEFAULT_MAX_FACTORIZATION_LENGTH = 12


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}{tuple(self)}"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


class CycleType(Partition):
    """Cycle lengths of a permutation, fixed points included."""

    @property
    def ncycles(self) -> int:
        """``#sigma``: number of cycles."""
        return len(self)

    @property
    def length(self) -> int:
        """``|sigma| = k - #sigma``, the minimal number of transpositions."""
        return self.size - len(self)

    def class_size(self) -> int:
        return math.factorial(self.size) // centralizer_order(self)

    def representative(self) -> Permutation:
        """The permutation ``(1 .. p1)(p1+1 .. p1+p2)...`` of this type."""
        images = []
        start = 1
        for p in self:
            images.extend(range(start + 1, start + p))
            images.append(start)
            start += p
        return Permutation(tuple(images))


class YoungDiagram(Partition):
    """A Young diagram ``lambda``; row ``i`` holds ``self[i]`` boxes."""

    def boxes(self) -> Iterator[tuple[int, int]]:
        """1-indexed ``(row, column)`` pairs."""
        for i, r in enumerate(self, start=1):
            for j in range(1, r + 1):
                yield i, j

    def conjugate(self) -> YoungDiagram:
        if not self:
            return YoungDiagram()
        return YoungDiagram(sum(1 for r in self if r >= j) for j in range(1, self[0] + 1))

    def hook(self, i: int, j: int) -> int:
        arm = self[i - 1] - j
        leg = sum(1 for r in self[i:] if r >= j)
        return arm + leg + 1

    def content(self, i: int, j: int) -> int:
        return j - i

    def hooks(self) -> list[int]:
        return [self.hook(i, j) for i, j in self.boxes()]

    def contents(self) -> list[int]:
        return [j - i for i, j in self.boxes()]


def partitions(k: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``k`` in reverse lexicographic order, ``(k,)`` first."""

    def rec(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(k, k)


def centralizer_order(mu) -> int:
    """``z_mu = prod_i i^{m_i} m_i!``."""
    z = 1
    for part, mult in Counter(mu).items():
        z *= part ** mult * math.factorial(mult)
    return z


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of ``{1..k}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def k(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, k: int) -> Permutation:
        images = list(range(1, k + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, cycles, k: int) -> Permutation:
        """Build from cycle notation text or an iterable of cycles."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        images = list(range(1, k + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= k:
                    raise ParseError(f"element {x} outside 1..{k}")
                if x in seen:
                    raise ParseError(f"element {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, k: int) -> Permutation:
        return cls.from_cycles(text, k)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def compose(self, other: Permutation) -> Permutation:
        """``(self o other)(x) = self(other(x))``."""
        return compose(self, other)

    __mul__ = compose

    def inverse(self) -> Permutation:
        inv = [0] * self.k
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        seen = [False] * (self.k + 1)
        out = []
        for start in range(1, self.k + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x - 1]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> CycleType:
        return cycle_type(self)

    @property
    def ncycles(self) -> int:
        return len(self.cycles())

    @property
    def length(self) -> int:
        return self.k - self.ncycles

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def __str__(self) -> str:
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "e"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, k={self.k})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse ``"(1 3 2)(4 5)"``; ``"e"`` and ``"()"`` mean the identity."""
    s = text.strip()
    if s in ("e", "", "()"):
        return []
    pos = 0
    cycles = []
    compact = re.sub(r"\s*([()])\s*", r"\1", s)
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise ParseError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            cycles.append(tuple(int(x) for x in body))
        except ValueError:
            raise ParseError(f"non-integer in cycle notation: {text!r}") from None
    if pos != len(compact):
        raise ParseError(f"malformed cycle notation: {text!r}")
    return cycles


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a o b)(x) = a(b(x))``."""
    if a.k != b.k:
        raise SizeMismatchError(f"cannot compose degrees {a.k} and {b.k}")
    ai = a.images
    return Permutation(tuple(ai[y - 1] for y in b.images))


def cycle_type(sigma: Permutation) -> CycleType:
    return CycleType(sorted((len(c) for c in sigma.cycles()), reverse=True))


def enumerate_group(k: int) -> Iterator[Permutation]:
    """All ``k!`` permutations in lexicographic order of one-line notation."""
    if k > MAX_ENUMERATION_DEGREE:
        raise CapExceededError("k", k, MAX_ENUMERATION_DEGREE)
    if k < 0:
        raise ValueError("k must be nonnegative")
    for images in itertools.permutations(range(1, k + 1)):
        yield Permutation(images)


def _cycle_type_tuple(images: tuple[int, ...]) -> tuple[int, ...]:
    # 0-indexed one-line notation; hot path for table construction
    k = len(images)
    seen = [False] * k
    lengths = []
    for s in range(k):
        if not seen[s]:
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = images[x]
                length += 1
            lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


# ---------------------------------------------------------------------------
# Characters and dimensions
# ---------------------------------------------------------------------------


def _to_beta(shape: tuple[int, ...]) -> tuple[int, ...]:
    length = len(shape)
    return tuple(p + (length - 1 - i) for i, p in enumerate(shape))


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    return tuple(x for x in (b - (length - 1 - i) for i, b in enumerate(beta)) if x > 0)


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not shape else 0
    r = mu[0]
    rest = mu[1:]
    beta = _to_beta(shape)
    beta_set = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beta_set:
            continue
        height = sum(1 for x in beta if target < x < b)
        new_beta = [target if x == b else x for x in beta]
        sub = _mn(_from_beta(new_beta), rest)
        if sub:
            total += -sub if height % 2 else sub
    return total


def character(lam, mu) -> int:
    """Irreducible character ``chi_lambda`` on the class ``mu``.

    Murnaghan-Nakayama recursion: a border strip of length ``mu[0]`` (the
    largest part) is removed at each step, with sign ``(-1)^height``.
    """
    lam = tuple(YoungDiagram(lam))
    mu = tuple(sorted(Partition(sorted(mu, reverse=True)), reverse=True))
    if sum(lam) != sum(mu):
        raise SizeMismatchError(f"|lambda|={sum(lam)} but |mu|={sum(mu)}")
    return _mn(lam, mu)


def dimension_sn(lam) -> int:
    """``f^lambda``, the dimension of the Specht module, by the hook length formula."""
    lam = YoungDiagram(lam)
    prod = 1
    for h in lam.hooks():
        prod *= h
    return math.factorial(lam.size) // prod


def dimension_un_poly(lam) -> tuple[IntPolynomial, int]:
    """``(prod (n + content), prod hooks)``; their ratio is ``dim V_lambda(n)``."""
    lam = YoungDiagram(lam)
    num = ONE_POLY
    den = 1
    for (i, j) in lam.boxes():
        num = num * IntPolynomial((j - i, 1))
        den *= lam.hook(i, j)
    return num, den


def dimension_un(lam) -> RationalFunction:
    """Dimension of the irreducible ``U(n)``-module ``V_lambda`` as a polynomial in ``n``."""
    num, den = dimension_un_poly(lam)
    return RationalFunction(num, den)


def content_product(lam, n0) -> int:
    """Eigenvalue ``prod_{boxes}(n0 + j - i)`` of ``G`` on the ``lambda``-isotypic part."""
    out = 1
    for i, j in YoungDiagram(lam).boxes():
        out *= n0 + j - i
    return out


# ---------------------------------------------------------------------------
# Group algebra
# ---------------------------------------------------------------------------


class GroupAlgebraElement:
    """Finitely supported element of ``C[S_k]`` with RationalFunction coefficients."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Mapping[Permutation, object] | None = None):
        self.k = k
        clean: dict[Permutation, RationalFunction] = {}
        for p, c in (coeffs or {}).items():
            if p.k != k:
                raise SizeMismatchError(f"permutation of degree {p.k} in C[S_{k}]")
            c = RationalFunction.coerce(c)
            if c:
                clean[p] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, sigma: Permutation, coeff=1) -> GroupAlgebraElement:
        return cls(sigma.k, {sigma: coeff})

    @classmethod
    def scalar(cls, c, k: int) -> GroupAlgebraElement:
        return cls(k, {Permutation.identity(k): c})

    def __getitem__(self, sigma: Permutation) -> RationalFunction:
        return self.coeffs.get(sigma, RATFUNC_ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        if not isinstance(other, GroupAlgebraElement):
            other = GroupAlgebraElement.scalar(other, self.k)
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, RATFUNC_ZERO) + c
        return GroupAlgebraElement(self.k, out)

    __radd__ = __add__

    def __mul__(self, other) -> GroupAlgebraElement:
        if not isinstance(other, GroupAlgebraElement):
            c = RationalFunction.coerce(other)
            return GroupAlgebraElement(self.k, {p: v * c for p, v in self.coeffs.items()})
        if self.k != other.k:
            raise SizeMismatchError("group algebra degree mismatch")
        out: dict[Permutation, RationalFunction] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                r = compose(p, q)
                out[r] = out.get(r, RATFUNC_ZERO) + a * b
        return GroupAlgebraElement(self.k, out)

    def __rmul__(self, other) -> GroupAlgebraElement:
        return self * other

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items())
        return " + ".join(f"({c})*[{p}]" for p, c in terms)


def build_G(k: int) -> GroupAlgebraElement:
    """``G = sum_sigma n^{#sigma} lambda_sigma``."""
    if k > MAX_ALGEBRA_DEGREE:
        raise CapExceededError("k", k, MAX_ALGEBRA_DEGREE)
    return GroupAlgebraElement(
        k, {s: RationalFunction.n_power(s.ncycles) for s in enumerate_group(k)})


def jm_element(i: int, k: int) -> GroupAlgebraElement:
    """Jucys-Murphy element ``J_i = sum_{j > i} lambda_{(i j)}``.

    With this indexing ``J_k = 0`` and
    ``G = (n + J_1)(n + J_2)...(n + J_k)``; the final factor is the scalar
    ``n``. See :func:`jm_product`.
    """
    if not 1 <= i <= k:
        raise ValueError(f"JM index {i} outside 1..{k}")
    return GroupAlgebraElement(
        k, {Permutation.transposition(i, j, k): 1 for j in range(i + 1, k + 1)})


def jm_product(k: int) -> GroupAlgebraElement:
    """Expand ``prod_{i=1..k} (n + J_i)`` in ``C[S_k]``."""
    if k > MAX_ALGEBRA_DEGREE:
        raise CapExceededError("k", k, MAX_ALGEBRA_DEGREE)
    out = GroupAlgebraElement.scalar(1, k)
    for i in range(1, k + 1):
        out = out * (jm_element(i, k) + GroupAlgebraElement.scalar(N, k))
    return out


# ---------------------------------------------------------------------------
# Monotone factorizations
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _monotone_count(images: tuple[int, ...], length: int, jmax: int) -> int:
    # images is 0-indexed; count words t_1...t_length equal to images whose
    # transpositions (i j), i < j, have weakly increasing j, all j <= jmax
    if length == 0:
        return 1 if all(x == i for i, x in enumerate(images)) else 0
    moved = [i for i, x in enumerate(images) if x != i]
    if moved and moved[-1] > jmax:
        return 0
    k = len(images)
    lengths = _cycle_type_tuple(images)
    dist = k - len(lengths)
    if dist > length or (length - dist) % 2:
        return 0
    total = 0
    img = list(images)
    for j in range(1, jmax + 1):
        for i in range(j):
            # sigma o (i j): swap the images of i and j
            img[i], img[j] = img[j], img[i]
            total += _monotone_count(tuple(img), length - 1, j)
            img[i], img[j] = img[j], img[i]
    return total


def count_monotone_factorizations(sigma: Permutation, l: int,
                                  max_length: int = DEFAULT_MAX_FACTORIZATION_LENGTH) -> int:
    """``#P(sigma, l)``: factorizations ``sigma = (i1 j1)...(il jl)``, ``i < j``, ``j`` weakly increasing."""
    if l > max_length:
        raise CapExceededError("l", l, max_length)
    if l < 0:
        raise ValueError("length must be nonnegative")
    images = tuple(x - 1 for x in sigma.images)
    return _monotone_count(images, l, sigma.k - 1)
