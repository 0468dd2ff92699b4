"""On-disk store for Weingarten tables.

One text file per ``(group, k, mode)``::

    # haarwell weingarten table
    schema: 1
    group: unitary
    k: 2
    mode: symbolic
    pseudo: false
    ---
    (1,1) -> 1*n^0 / 1*n^2 + -1*n^0
    (2) -> -1*n^0 / 1*n^3 + -1*n^1

Numeric tables use the same entry syntax with constant polynomials.
A loaded table is trusted only after :func:`verify_table` succeeds.
"""

from __future__ import annotations

import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from ..exactmath import RationalFunction
from ..pairings import PairPartition, parse_pairing_pair
from ..symmetric import CycleType, Partition
from .tables import GroupKind, WeingartenTable, verify_table

SCHEMA_VERSION = 1
ENV_VAR = "HAARWELL_CACHE"

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "haarwell"


def _key_to_text(group: GroupKind, key) -> str:
    if group is GroupKind.FREE:
        return f"{key[0]}|{key[1]}"
    return "(" + ",".join(map(str, key)) + ")"


def _key_from_text(group: GroupKind, text: str):
    if group is GroupKind.FREE:
        return parse_pairing_pair(text)
    parts = tuple(int(x) for x in text.strip("()").split(","))
    return CycleType(parts) if group is GroupKind.UNITARY else tuple(Partition(parts))


def _mode_token(n0) -> str:
    if n0 is None:
        return "symbolic"
    return f"n{n0.numerator}_{n0.denominator}"


def dumps(table: WeingartenTable) -> str:
    lines = [
        "# haarwell weingarten table",
        f"schema: {SCHEMA_VERSION}",
        f"group: {table.group.value}",
        f"k: {table.k}",
        f"mode: {table.mode}",
        f"pseudo: {'true' if table.pseudo else 'false'}",
        "---",
    ]
    for key, value in table.values.items():
        rf = RationalFunction.coerce(value)
        lines.append(f"{_key_to_text(table.group, key)} -> {rf.to_sparse()}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> WeingartenTable:
    header, sep, body = text.partition("\n---\n")
    if not sep:
        raise ValueError("missing header separator")
    meta = {}
    for line in header.splitlines():
        if line.startswith("#") or not line.strip():
            continue
        name, _, value = line.partition(":")
        meta[name.strip()] = value.strip()
    if int(meta.get("schema", -1)) != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {meta.get('schema')}")
    group = GroupKind.parse(meta["group"])
    k = int(meta["k"])
    mode = meta["mode"]
    n0 = None if mode == "symbolic" else Fraction(mode[len("numeric("):-1])
    values = {}
    for line in body.splitlines():
        if not line.strip():
            continue
        key_text, _, value_text = line.partition(" -> ")
        value = RationalFunction.from_sparse(value_text)
        values[_key_from_text(group, key_text)] = value if n0 is None else value.to_fraction()
    return WeingartenTable(group, k, n0, values, meta.get("pseudo") == "true")


class TableStore:
    """Directory of cached tables."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path_for(self, group, k: int, n0) -> Path:
        group = GroupKind.parse(group)
        n0 = None if n0 is None else Fraction(n0)
        return self.directory / f"{group.value}-k{k}-{_mode_token(n0)}.wgt"

    def load(self, group, k: int, n0=None) -> WeingartenTable | None:
        path = self.path_for(group, k, n0)
        if not path.exists():
            return None
        try:
            table = loads(path.read_text())
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", path, exc)
            return None
        if (table.group, table.k, table.n0) != (GroupKind.parse(group), k,
                                                 None if n0 is None else Fraction(n0)):
            log.warning("cache file %s does not match its name", path)
            return None
        if not verify_table(table):
            log.warning("cache file %s failed the inverse identity check", path)
            return None
        return table

    def save(self, table: WeingartenTable) -> Path:
        path = self.path_for(table.group, table.k, table.n0)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(table))
        os.replace(tmp, path)
        return path
