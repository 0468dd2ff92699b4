"""Pair partitions: enumeration, crossings, loop counting and index deltas."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapExceededError, ParseError, SizeMismatchError
from .symmetric import Permutation, enumerate_group

MAX_PAIRING_SIZE = 16
MAX_UNITARY_DEGREE = 7


@dataclass(frozen=True, order=True)
class PairPartition:
    """Perfect matching of ``{1..k}``; blocks ``(a, b)`` with ``a < b``, sorted by ``a``."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, len(flat) + 1)) or any(len(b) != 2 for b in blocks):
            raise ValueError(f"not a pair partition of 1..{len(flat)}: {self.blocks}")

    @property
    def k(self) -> int:
        return 2 * len(self.blocks)

    @classmethod
    def parse(cls, text: str) -> PairPartition:
        """Parse ``"{1,2}{3,4}"``."""
        compact = re.sub(r"\s+", "", text)
        blocks = re.findall(r"\{(\d+),(\d+)\}", compact)
        if not blocks or "".join(f"{{{a},{b}}}" for a, b in blocks) != compact:
            raise ParseError(f"malformed pairing {text!r}")
        try:
            return cls(tuple((int(a), int(b)) for a, b in blocks))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def partner(self) -> list[int]:
        """0-indexed array: ``partner[i]`` is matched with ``i``."""
        out = [0] * self.k
        for a, b in self.blocks:
            out[a - 1], out[b - 1] = b - 1, a - 1
        return out

    def is_noncrossing(self) -> bool:
        return is_noncrossing(self)

    def __str__(self) -> str:
        return "".join(f"{{{a},{b}}}" for a, b in self.blocks)


def is_noncrossing(pi: PairPartition) -> bool:
    """No two blocks ``{a,b}``, ``{c,d}`` with ``a < c < b < d``."""
    for a, b in pi.blocks:
        for c, d in pi.blocks:
            if a < c < b < d:
                return False
    return True


def _check_size(k: int) -> None:
    if k > MAX_PAIRING_SIZE:
        raise CapExceededError("k", k, MAX_PAIRING_SIZE)
    if k < 0:
        raise ValueError("k must be nonnegative")


def _all_matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for m in _all_matchings(remaining):
            yield [(first, other)] + m


def enumerate_pairings(k: int) -> Iterator[PairPartition]:
    """All ``(k-1)!!`` pair partitions of ``{1..k}``; empty when ``k`` is odd."""
    _check_size(k)
    if k % 2:
        return
    for m in _all_matchings(list(range(1, k + 1))):
        yield PairPartition(tuple(m))


def _nc_matchings(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
    # non-crossing matchings of the interval lo..hi (inclusive)
    if lo > hi:
        yield []
        return
    for j in range(lo + 1, hi + 1, 2):
        for inner in _nc_matchings(lo + 1, j - 1):
            for outer in _nc_matchings(j + 1, hi):
                yield [(lo, j)] + inner + outer


def enumerate_noncrossing(k: int) -> Iterator[PairPartition]:
    """The ``Catalan(k/2)`` non-crossing pair partitions of ``{1..k}``."""
    _check_size(k)
    if k % 2:
        return
    for m in _nc_matchings(1, k):
        yield PairPartition(tuple(m))


def unitary_pairing(sigma: Permutation) -> PairPartition:
    """The pairing ``{{i, k' + sigma(i)}}`` of ``{1..2k'}``."""
    kp = sigma.k
    return PairPartition(tuple((i, kp + sigma(i)) for i in range(1, kp + 1)))


def unitary_pairings(kp: int) -> Iterator[tuple[PairPartition, Permutation]]:
    """Pairings matching ``{1..k'}`` with ``{k'+1..2k'}``, paired with their permutation."""
    if kp > MAX_UNITARY_DEGREE:
        raise CapExceededError("kp", kp, MAX_UNITARY_DEGREE)
    for sigma in enumerate_group(kp):
        yield unitary_pairing(sigma), sigma


def _components(pi: PairPartition, rho: PairPartition) -> list[int]:
    """Vertex counts of the connected components of the union multigraph."""
    if pi.k != rho.k:
        raise SizeMismatchError(f"pairings of sizes {pi.k} and {rho.k}")
    parent = list(range(pi.k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pi.blocks + rho.blocks:
        ra, rb = find(a - 1), find(b - 1)
        if ra != rb:
            parent[ra] = rb
    sizes: dict[int, int] = {}
    for v in range(pi.k):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return list(sizes.values())


def loops(pi: PairPartition, rho: PairPartition) -> int:
    """Number of cycles in the union of the two matchings."""
    return len(_components(pi, rho))


def loop_type(pi: PairPartition, rho: PairPartition) -> tuple[int, ...]:
    """Half-lengths of the cycles of ``pi ∪ rho``, descending (a partition of ``k/2``).

    Two pairs of pairings lie in the same orbit of the simultaneous
    ``S_k`` action iff they have the same loop type.
    """
    return tuple(sorted((c // 2 for c in _components(pi, rho)), reverse=True))


def delta(pi: PairPartition, index: Sequence[int]) -> int:
    """1 if ``index[a] == index[b]`` for every block ``{a, b}``, else 0."""
    if len(index) != pi.k:
        raise SizeMismatchError(f"multi-index of length {len(index)} for pairing of {pi.k}")
    return int(all(index[a - 1] == index[b - 1] for a, b in pi.blocks))


def parse_pairing_pair(text: str) -> tuple[PairPartition, PairPartition]:
    """Parse ``"{1,2}{3,4}|{1,4}{2,3}"``."""
    left, sep, right = text.partition("|")
    if not sep:
        raise ParseError(f"expected two pairings separated by '|': {text!r}")
    return PairPartition.parse(left), PairPartition.parse(right)
